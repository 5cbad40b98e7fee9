//! Coalition games induced by a semantics, and exact power indexes over them.
//!
//! A game `v` is 0/1: `v(S) = 1` exactly when `S` is a member of the winning
//! family (an extension for polarity `in`, the out-set of one for polarity
//! `out`). The game is generally not monotone, so marginal contributions
//! `v(S ∪ {i}) − v(S)` range over `{-1, 0, 1}`.
//!
//! Every index is computed from the winning coalitions alone: a marginal is
//! nonzero only when `S` or `S ∪ {i}` wins, so each winning `W` yields at most
//! one positive term (at `S = W \ {i}`, when `i ∈ W`) and one negative term (at
//! `S = W`, when `i ∉ W`).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::af::{ArgSet, ArgumentId, ArgumentationFramework};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::semantics::{enumerate_within, out_family, ExtensionFamily, Semantics};

pub type ExactValue = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    In,
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerIndex {
    Shapley,
    Banzhaf,
    DeeganPackel,
    Johnston,
}

impl PowerIndex {
    pub const ALL: [PowerIndex; 4] = [
        PowerIndex::Shapley,
        PowerIndex::Banzhaf,
        PowerIndex::DeeganPackel,
        PowerIndex::Johnston,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PowerIndex::Shapley => "shapley",
            PowerIndex::Banzhaf => "banzhaf",
            PowerIndex::DeeganPackel => "deegan-packel",
            PowerIndex::Johnston => "johnston",
        }
    }

    pub fn evaluate(self, v: &CharacteristicFunction, i: usize) -> ExactValue {
        match self {
            PowerIndex::Shapley => shapley(v, i),
            PowerIndex::Banzhaf => banzhaf(v, i),
            PowerIndex::DeeganPackel => deegan_packel(v, i),
            PowerIndex::Johnston => johnston(v, i),
        }
    }
}

impl fmt::Display for PowerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PowerIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PowerIndex::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidRequest(format!("unknown index {s:?}")))
    }
}

/// A 0/1 game over the arguments of one framework.
#[derive(Debug, Clone)]
pub struct CharacteristicFunction {
    players: usize,
    polarity: Polarity,
    winning: ExtensionFamily,
    lookup: HashSet<ArgSet>,
}

impl CharacteristicFunction {
    /// A game over `players` players whose winning coalitions are exactly
    /// the members of `winning`.
    pub fn new(players: usize, polarity: Polarity, winning: ExtensionFamily) -> Self {
        let lookup = winning.iter().collect();
        Self {
            players,
            polarity,
            winning,
            lookup,
        }
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn winning(&self) -> &ExtensionFamily {
        &self.winning
    }

    pub fn wins(&self, s: ArgSet) -> bool {
        self.lookup.contains(&s)
    }

    pub fn value(&self, s: ArgSet) -> i32 {
        i32::from(self.wins(s))
    }

    /// `v(S ∪ {i}) − v(S)`; `i` must not be in `S`.
    pub fn marginal(&self, s: ArgSet, i: usize) -> Result<i32> {
        if s.contains(i) {
            return Err(Error::MemberOfCoalition(i.to_string()));
        }
        Ok(self.value(s.insert(i)) - self.value(s))
    }

    /// Nonzero marginals of `i`, as `(S, ±1)` with `i ∉ S`.
    fn swings(&self, i: usize) -> impl Iterator<Item = (ArgSet, i32)> + '_ {
        self.winning.iter().filter_map(move |w| {
            if w.contains(i) {
                let s = w.remove(i);
                (!self.wins(s)).then_some((s, 1))
            } else {
                (!self.wins(w.insert(i))).then_some((w, -1))
            }
        })
    }
}

pub fn characteristic(
    af: &ArgumentationFramework,
    sigma: Semantics,
    polarity: Polarity,
) -> Result<CharacteristicFunction> {
    characteristic_within(af, sigma, polarity, &Budget::unlimited())
}

pub fn characteristic_within(
    af: &ArgumentationFramework,
    sigma: Semantics,
    polarity: Polarity,
    budget: &Budget,
) -> Result<CharacteristicFunction> {
    let extensions = enumerate_within(af, sigma, budget)?;
    Ok(game_from_extensions(af, &extensions, polarity))
}

/// Builds the in or out game from an already enumerated extension family.
pub fn game_from_extensions(
    af: &ArgumentationFramework,
    extensions: &ExtensionFamily,
    polarity: Polarity,
) -> CharacteristicFunction {
    let winning = match polarity {
        Polarity::In => extensions.clone(),
        Polarity::Out => out_family(af, extensions).expect("extensions belong to af"),
    };
    CharacteristicFunction::new(af.len(), polarity, winning)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Shapley weights `|S|! (n − |S| − 1)! / n!` indexed by `|S|`.
fn shapley_weights(n: usize) -> Vec<BigRational> {
    let total = factorial(n);
    (0..n)
        .map(|s| BigRational::new(factorial(s) * factorial(n - s - 1), total.clone()))
        .collect()
}

pub fn shapley(v: &CharacteristicFunction, i: usize) -> ExactValue {
    let weights = shapley_weights(v.players);
    v.swings(i).fold(BigRational::zero(), |acc, (s, sign)| {
        let w = &weights[s.len()];
        if sign > 0 {
            acc + w
        } else {
            acc - w
        }
    })
}

pub fn banzhaf(v: &CharacteristicFunction, i: usize) -> ExactValue {
    if v.players == 0 {
        return BigRational::zero();
    }
    let net: i64 = v.swings(i).map(|(_, sign)| i64::from(sign)).sum();
    BigRational::new(BigInt::from(net), BigInt::one() << (v.players - 1))
}

/// The ⊆-minimal winning coalitions. `{∅}` whenever the empty coalition wins.
pub fn minimal_winning(v: &CharacteristicFunction) -> ExtensionFamily {
    if v.wins(ArgSet::EMPTY) {
        return ExtensionFamily::new([ArgSet::EMPTY]);
    }
    let sets = v.winning.sets();
    // Canonical order lists smaller sets first, so a proper subset of `w`
    // always precedes it.
    let minimal = sets.iter().enumerate().filter(|&(k, &w)| {
        if (1usize << w.len()) < k {
            !proper_subsets(w).any(|s| v.wins(s))
        } else {
            !sets[..k].iter().any(|s| s.is_proper_subset(w))
        }
    });
    ExtensionFamily::new(minimal.map(|(_, &w)| w))
}

fn proper_subsets(w: ArgSet) -> impl Iterator<Item = ArgSet> {
    let full = w.bits();
    let mut sub = full;
    std::iter::from_fn(move || {
        if sub == 0 {
            return None;
        }
        sub = (sub - 1) & full;
        Some(ArgSet::from_bits(sub))
    })
}

/// Deegan-Packel index over the minimal winning coalitions `M(v)`, which is
/// always taken to contain `∅`. With `U_i` the union of the minimal winning
/// coalitions containing `i`, the score is `1/|M(v)|` times the sum of
/// `v_{S_i} / |S|` over nonempty `S ⊆ U_i \ {i}`.
pub fn deegan_packel(v: &CharacteristicFunction, i: usize) -> ExactValue {
    let minimal = minimal_winning(v);
    let padded = minimal.len() + usize::from(!minimal.contains(ArgSet::EMPTY));
    let reach = minimal
        .iter()
        .filter(|m| m.contains(i))
        .fold(ArgSet::EMPTY, ArgSet::union)
        .remove(i);
    let sum = v
        .swings(i)
        .filter(|(s, _)| !s.is_empty() && s.is_subset(reach))
        .fold(BigRational::zero(), |acc, (s, sign)| {
            acc + BigRational::new(BigInt::from(sign), BigInt::from(s.len()))
        });
    sum / BigInt::from(padded)
}

/// Members of `t` whose removal leaves a losing coalition.
pub fn kappa(v: &CharacteristicFunction, t: ArgSet) -> usize {
    t.iter().filter(|&j| !v.wins(t.remove(j))).count()
}

/// Johnston index: each nonzero marginal `v_{S_i}` is divided by
/// `kappa(S ∪ {i})`; terms whose coalition has no critical member are
/// dropped.
pub fn johnston(v: &CharacteristicFunction, i: usize) -> ExactValue {
    v.swings(i).fold(BigRational::zero(), |acc, (s, sign)| {
        match kappa(v, s.insert(i)) {
            0 => acc,
            k => acc + BigRational::new(BigInt::from(sign), BigInt::from(k)),
        }
    })
}

/// One argument's pair of index values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentScore {
    pub argument: ArgumentId,
    pub pi_in: ExactValue,
    pub pi_out: ExactValue,
}

/// Evaluates `index` on the in and out games of `sigma` for every argument,
/// in argument order.
pub fn score_all(
    af: &ArgumentationFramework,
    sigma: Semantics,
    index: PowerIndex,
) -> Result<Vec<ArgumentScore>> {
    score_all_within(af, sigma, index, &Budget::unlimited())
}

pub fn score_all_within(
    af: &ArgumentationFramework,
    sigma: Semantics,
    index: PowerIndex,
    budget: &Budget,
) -> Result<Vec<ArgumentScore>> {
    let extensions = enumerate_within(af, sigma, budget)?;
    score_extensions(af, &extensions, index, budget)
}

pub fn score_extensions(
    af: &ArgumentationFramework,
    extensions: &ExtensionFamily,
    index: PowerIndex,
    budget: &Budget,
) -> Result<Vec<ArgumentScore>> {
    let v_in = game_from_extensions(af, extensions, Polarity::In);
    let v_out = game_from_extensions(af, extensions, Polarity::Out);
    (0..af.len())
        .into_par_iter()
        .map(|i| {
            budget.check("scoring")?;
            Ok(ArgumentScore {
                argument: af.argument(i).clone(),
                pi_in: index.evaluate(&v_in, i),
                pi_out: index.evaluate(&v_out, i),
            })
        })
        .collect()
}
