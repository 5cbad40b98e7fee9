//! Lexicographic ranking on `(pi_in, pi_out)` pairs.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::af::{ArgumentId, ArgumentationFramework};
use crate::error::{Error, Result};
use crate::power::{ArgumentScore, ExactValue};

/// A decimal with exactly five fractional digits, stored in units of 10⁻⁵.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fixed5(i64);

impl Fixed5 {
    pub const SCALE: i64 = 100_000;

    pub const fn from_units(units: i64) -> Self {
        Self(units)
    }

    pub const fn units(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / Self::SCALE as f64
    }

    /// Nearest multiple of 10⁻⁵ to `x`, halves rounded away from zero.
    pub fn round(x: &ExactValue) -> Self {
        let numer = x.numer().abs() * Self::SCALE;
        let denom = x.denom().clone();
        // floor((2·|p|·10⁵ + q) / 2q) rounds |x| half-up.
        let units: BigInt = Integer::div_floor(&(numer * 2 + &denom), &(denom * 2));
        let units = units.to_i64().expect("index values stay far below i64 range");
        Self(if x.numer().sign() == Sign::Minus {
            -units
        } else {
            units
        })
    }

    /// Rounds the value `x` (already a decimal) to 5 places.
    pub fn from_f64(x: f64) -> Self {
        Self((x * Self::SCALE as f64).round() as i64)
    }
}

impl fmt::Display for Fixed5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        write!(
            f,
            "{sign}{}.{:05}",
            abs / Self::SCALE as u64,
            abs % Self::SCALE as u64
        )
    }
}

pub fn round5(x: &ExactValue) -> Fixed5 {
    Fixed5::round(x)
}

/// Per-argument score with both exact and rounded components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiScore {
    pub argument: ArgumentId,
    pub pi_in: ExactValue,
    pub pi_out: ExactValue,
    pub pi_in_5dp: Fixed5,
    pub pi_out_5dp: Fixed5,
}

impl PiScore {
    pub fn new(argument: ArgumentId, pi_in: ExactValue, pi_out: ExactValue) -> Self {
        Self {
            pi_in_5dp: Fixed5::round(&pi_in),
            pi_out_5dp: Fixed5::round(&pi_out),
            argument,
            pi_in,
            pi_out,
        }
    }
}

impl From<ArgumentScore> for PiScore {
    fn from(s: ArgumentScore) -> Self {
        PiScore::new(s.argument, s.pi_in, s.pi_out)
    }
}

/// Whether comparisons use the 5-decimal values or the exact rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Rounded,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    Greater,
    Less,
    Equivalent,
}

fn key_order(s1: &PiScore, s2: &PiScore, precision: Precision) -> Ordering {
    // Higher pi_in ranks first; on a tie, lower pi_out ranks first.
    match precision {
        Precision::Rounded => s1
            .pi_in_5dp
            .cmp(&s2.pi_in_5dp)
            .then_with(|| s2.pi_out_5dp.cmp(&s1.pi_out_5dp)),
        Precision::Exact => s1.pi_in.cmp(&s2.pi_in).then_with(|| s2.pi_out.cmp(&s1.pi_out)),
    }
}

pub fn compare(s1: &PiScore, s2: &PiScore) -> Preference {
    compare_with(s1, s2, Precision::Rounded)
}

pub fn compare_with(s1: &PiScore, s2: &PiScore, precision: Precision) -> Preference {
    match key_order(s1, s2, precision) {
        Ordering::Greater => Preference::Greater,
        Ordering::Less => Preference::Less,
        Ordering::Equal => Preference::Equivalent,
    }
}

/// A total preorder as an ordered list of equivalence classes, best first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    classes: Vec<Vec<ArgumentId>>,
}

impl Ranking {
    pub fn from_classes(classes: Vec<Vec<ArgumentId>>) -> Self {
        Self { classes }
    }

    pub fn classes(&self) -> &[Vec<ArgumentId>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Position of `a`'s class, 0 for the best.
    pub fn class_of(&self, a: &str) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.iter().any(|x| x.as_str() == a))
    }

    fn classes_of(&self, a: &str, b: &str) -> (usize, usize) {
        let ca = self.class_of(a).unwrap_or_else(|| panic!("{a} is not ranked"));
        let cb = self.class_of(b).unwrap_or_else(|| panic!("{b} is not ranked"));
        (ca, cb)
    }

    /// `a ≽ b`.
    pub fn geq(&self, a: &str, b: &str) -> bool {
        let (ca, cb) = self.classes_of(a, b);
        ca <= cb
    }

    /// `a ≻ b`.
    pub fn strictly_above(&self, a: &str, b: &str) -> bool {
        let (ca, cb) = self.classes_of(a, b);
        ca < cb
    }

    /// `a ≃ b`.
    pub fn equivalent(&self, a: &str, b: &str) -> bool {
        let (ca, cb) = self.classes_of(a, b);
        ca == cb
    }

    /// Classes joined by `" > "`, members by `" = "`.
    pub fn render(&self) -> String {
        self.classes
            .iter()
            .map(|c| c.iter().map(ArgumentId::as_str).collect::<Vec<_>>().join(" = "))
            .collect::<Vec<_>>()
            .join(" > ")
    }

    /// Shade per argument: 1.0 for the best class down to 0.0 for the worst,
    /// evenly spaced.
    pub fn greyscale(&self) -> Vec<(ArgumentId, f64)> {
        let k = self.classes.len();
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(idx, c)| {
                let shade = if k <= 1 {
                    1.0
                } else {
                    1.0 - idx as f64 / (k - 1) as f64
                };
                c.iter().map(move |a| (a.clone(), shade))
            })
            .collect()
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn rank(scores: &[PiScore]) -> Result<Ranking> {
    rank_with(scores, Precision::Rounded)
}

pub fn rank_with(scores: &[PiScore], precision: Precision) -> Result<Ranking> {
    let mut seen = HashSet::new();
    if let Some(dup) = scores.iter().find(|s| !seen.insert(&s.argument)) {
        return Err(Error::InvalidScores(format!(
            "argument {} scored twice",
            dup.argument
        )));
    }
    let mut sorted: Vec<&PiScore> = scores.iter().collect();
    sorted.sort_by(|a, b| key_order(b, a, precision).then_with(|| a.argument.cmp(&b.argument)));
    let mut classes: Vec<Vec<ArgumentId>> = Vec::new();
    let mut prev: Option<&PiScore> = None;
    for s in sorted {
        match prev {
            Some(p) if key_order(p, s, precision) == Ordering::Equal => {
                classes.last_mut().expect("class open").push(s.argument.clone())
            }
            _ => classes.push(vec![s.argument.clone()]),
        }
        prev = Some(s);
    }
    Ok(Ranking { classes })
}

/// Like [`rank_with`], additionally requiring exactly one score per argument
/// of `af`.
pub fn rank_framework(
    af: &ArgumentationFramework,
    scores: &[PiScore],
    precision: Precision,
) -> Result<Ranking> {
    let ranking = rank_with(scores, precision)?;
    if let Some(missing) = af
        .arguments()
        .iter()
        .find(|a| !scores.iter().any(|s| &s.argument == *a))
    {
        return Err(Error::InvalidScores(format!("argument {missing} has no score")));
    }
    if scores.len() != af.len() {
        return Err(Error::InvalidScores("scores name unknown arguments".into()));
    }
    Ok(ranking)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn score(name: &str, pi_in: f64, pi_out: f64) -> PiScore {
        // Table values are already 5-decimal; build exact values from units.
        let units = |x: f64| (x * 100_000.0).round() as i64;
        PiScore::new(
            ArgumentId::new(name).unwrap(),
            q(units(pi_in), 100_000),
            q(units(pi_out), 100_000),
        )
    }

    #[test]
    fn round5_examples() {
        assert_eq!(round5(&q(-7, 15)).to_string(), "-0.46667");
        assert_eq!(round5(&q(0, 1)).to_string(), "0.00000");
        assert_eq!(round5(&q(1, 3)).to_string(), "0.33333");
        assert_eq!(round5(&q(-19, 6)).to_string(), "-3.16667");
        assert_eq!(round5(&q(1, 200_000)).to_string(), "0.00001");
        assert_eq!(round5(&q(-1, 200_000)).to_string(), "-0.00001");
        assert_eq!(round5(&q(-1, 300_000)).to_string(), "0.00000");
    }

    #[test]
    fn compare_examples() {
        let a = score("a", 0.2, -0.5);
        let b = score("b", 0.2, -0.4);
        assert_eq!(compare(&a, &b), Preference::Greater);
        assert_eq!(compare(&b, &a), Preference::Less);
        assert_eq!(compare(&a, &a.clone()), Preference::Equivalent);
        let d = score("d", -0.11667, -0.23333);
        let e = score("e", -0.11667, -0.23333);
        assert_eq!(compare(&d, &e), Preference::Equivalent);
    }

    #[test]
    fn rounded_and_exact_comparison_differ_below_five_decimals() {
        let a = PiScore::new(ArgumentId::new("a").unwrap(), q(1, 1_000_000), q(0, 1));
        let b = PiScore::new(ArgumentId::new("b").unwrap(), q(0, 1), q(0, 1));
        assert_eq!(compare(&a, &b), Preference::Equivalent);
        assert_eq!(compare_with(&a, &b, Precision::Exact), Preference::Greater);
    }

    #[test]
    fn table_one_rankings() {
        let cf = [
            score("a", -0.05, -0.35),
            score("b", -0.46667, 0.06667),
            score("c", -0.05, -0.26667),
            score("d", -0.21667, -0.18333),
            score("e", -0.21667, -0.26667),
        ];
        assert_eq!(rank(&cf).unwrap().render(), "a > c > e > d > b");
        let com = [
            score("a", 0.11667, -0.11667),
            score("b", -0.13333, 0.3),
            score("c", 0.11667, -0.11667),
            score("d", -0.05, -0.03333),
            score("e", -0.05, -0.03333),
        ];
        let r = rank(&com).unwrap();
        assert_eq!(r.render(), "a = c > d = e > b");
        assert!(r.equivalent("d", "e"));
        assert!(r.strictly_above("c", "d"));
        assert!(r.geq("a", "c") && r.geq("c", "a"));
    }

    #[test]
    fn all_zero_is_one_class() {
        let scores = [score("b", 0.0, 0.0), score("a", 0.0, 0.0), score("c", 0.0, 0.0)];
        let r = rank(&scores).unwrap();
        assert_eq!(r.classes().len(), 1);
        assert_eq!(r.render(), "a = b = c");
    }

    #[test]
    fn rank_rejects_duplicates_and_missing() {
        let dup = [score("a", 0.0, 0.0), score("a", 1.0, 0.0)];
        assert!(matches!(rank(&dup), Err(Error::InvalidScores(_))));
        let af = ArgumentationFramework::new(["a", "b"], []).unwrap();
        assert!(rank_framework(&af, &[score("a", 0.0, 0.0)], Precision::Rounded).is_err());
    }

    #[test]
    fn render_examples() {
        let one = rank(&[score("a", 0.0, 0.0)]).unwrap();
        assert_eq!(one.render(), "a");
        assert!(rank(&[]).unwrap().render().is_empty());
    }

    #[test]
    fn greyscale_spacing() {
        let r = rank(&[score("a", 1.0, 0.0), score("b", 0.5, 0.0), score("c", 0.0, 0.0)]).unwrap();
        let shades: Vec<f64> = r.greyscale().into_iter().map(|(_, s)| s).collect();
        assert_eq!(shades, vec![1.0, 0.5, 0.0]);
        let flat = rank(&[score("a", 0.0, 0.0), score("b", 0.0, 0.0)]).unwrap();
        assert!(flat.greyscale().iter().all(|(_, s)| *s == 1.0));
    }

    #[test]
    fn fixed5_display() {
        assert_eq!(Fixed5::from_units(-5000).to_string(), "-0.05000");
        assert_eq!(Fixed5::from_units(316_667).to_string(), "3.16667");
        assert_eq!(Fixed5::from_f64(0.5).to_string(), "0.50000");
    }
}
