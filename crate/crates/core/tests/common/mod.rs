//! Brute-force reference implementations shared by the integration tests.
//!
//! Nothing here calls into the library's semantics or index code: extensions
//! come from enumerating every 3-valued labelling of an adjacency matrix, and
//! index values from summing over every coalition.

#![allow(dead_code)]

use std::collections::BTreeSet;

use argrank::{ArgumentationFramework, Semantics};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Extension as a sorted list of argument names.
pub type NamedSet = Vec<String>;

#[derive(Debug, Clone)]
pub struct Matrix {
    pub names: Vec<String>,
    pub att: Vec<Vec<bool>>,
}

impl Matrix {
    pub fn of(af: &ArgumentationFramework) -> Self {
        let names: Vec<String> = af.arguments().iter().map(|a| a.to_string()).collect();
        let pos = |x: &str| names.iter().position(|n| n == x).unwrap();
        let mut att = vec![vec![false; names.len()]; names.len()];
        for (x, y) in af.attacks() {
            att[pos(x.as_str())][pos(y.as_str())] = true;
        }
        Self { names, att }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    fn named(&self, members: &[bool]) -> NamedSet {
        let mut v: Vec<String> = (0..self.n())
            .filter(|&i| members[i])
            .map(|i| self.names[i].clone())
            .collect();
        v.sort();
        v
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Lab {
    In,
    Out,
    Undec,
}

fn all_labellings(n: usize) -> impl Iterator<Item = Vec<Lab>> {
    (0..3usize.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let l = [Lab::In, Lab::Out, Lab::Undec][code % 3];
                code /= 3;
                l
            })
            .collect()
    })
}

fn attackers(m: &Matrix, a: usize) -> impl Iterator<Item = usize> + '_ {
    (0..m.n()).filter(move |&b| m.att[b][a])
}

/// In-sets of the legal labellings of `sigma`.
pub fn extensions(m: &Matrix, sigma: Semantics) -> BTreeSet<NamedSet> {
    let n = m.n();
    let ins = |l: &[Lab]| m.named(&l.iter().map(|&x| x == Lab::In).collect::<Vec<_>>());
    let conflict_free =
        |l: &[Lab]| (0..n).all(|a| l[a] != Lab::In || attackers(m, a).all(|b| l[b] != Lab::In));
    // in: every attacker out. out: some attacker in.
    let admissible = |l: &[Lab]| {
        (0..n).all(|a| match l[a] {
            Lab::In => attackers(m, a).all(|b| l[b] == Lab::Out),
            Lab::Out => attackers(m, a).any(|b| l[b] == Lab::In),
            Lab::Undec => true,
        })
    };
    // additionally undec: not all attackers out and none in.
    let complete = |l: &[Lab]| {
        admissible(l)
            && (0..n).all(|a| {
                l[a] != Lab::Undec
                    || (!attackers(m, a).all(|b| l[b] == Lab::Out)
                        && !attackers(m, a).any(|b| l[b] == Lab::In))
            })
    };
    let pick = |pred: &dyn Fn(&[Lab]) -> bool| -> BTreeSet<NamedSet> {
        all_labellings(n).filter(|l| pred(l)).map(|l| ins(&l)).collect()
    };
    match sigma {
        Semantics::ConflictFree => pick(&|l: &[Lab]| conflict_free(l) && l.iter().all(|&x| x != Lab::Out)),
        Semantics::Admissible => pick(&admissible),
        Semantics::Complete => pick(&complete),
        Semantics::Stable => pick(&|l: &[Lab]| complete(l) && l.iter().all(|&x| x != Lab::Undec)),
        Semantics::Grounded => {
            let all = pick(&complete);
            all.iter()
                .filter(|e| all.iter().all(|f| e.iter().all(|x| f.contains(x))))
                .cloned()
                .collect()
        }
        Semantics::Preferred => {
            let all = pick(&complete);
            all.iter()
                .filter(|e| {
                    !all.iter()
                        .any(|f| f.len() > e.len() && e.iter().all(|x| f.contains(x)))
                })
                .cloned()
                .collect()
        }
    }
}

/// Arguments attacked by some member of `e`.
pub fn out_set(m: &Matrix, e: &NamedSet) -> NamedSet {
    let members: Vec<usize> = e
        .iter()
        .map(|x| m.names.iter().position(|n| n == x).unwrap())
        .collect();
    let hit: Vec<bool> = (0..m.n()).map(|b| members.iter().any(|&a| m.att[a][b])).collect();
    m.named(&hit)
}

/// A 0/1 game over players `0..n`, coalitions as bitmasks.
#[derive(Debug, Clone)]
pub struct Game {
    pub n: usize,
    pub value: Vec<i64>,
}

impl Game {
    pub fn from_family(m: &Matrix, family: &BTreeSet<NamedSet>) -> Self {
        let n = m.n();
        let value = (0..1usize << n)
            .map(|s| {
                let named: Vec<bool> = (0..n).map(|i| s >> i & 1 == 1).collect();
                family.contains(&m.named(&named)) as i64
            })
            .collect();
        Self { n, value }
    }

    pub fn v(&self, s: usize) -> i64 {
        self.value[s]
    }
}

/// `(v^I, v^O)` for `sigma`.
pub fn games(m: &Matrix, sigma: Semantics) -> (Game, Game) {
    let ext = extensions(m, sigma);
    let outs: BTreeSet<NamedSet> = ext.iter().map(|e| out_set(m, e)).collect();
    (Game::from_family(m, &ext), Game::from_family(m, &outs))
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, x| acc * BigInt::from(x))
}

fn ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn coalitions_without(n: usize, i: usize) -> impl Iterator<Item = usize> {
    (0..1usize << n).filter(move |s| s >> i & 1 == 0)
}

pub fn shapley(g: &Game, i: usize) -> BigRational {
    let n = g.n;
    let mut total = BigRational::zero();
    for s in coalitions_without(n, i) {
        let k = s.count_ones() as usize;
        let weight = ratio(factorial(k) * factorial(n - k - 1), factorial(n));
        total += weight * BigInt::from(g.v(s | 1 << i) - g.v(s));
    }
    total
}

pub fn banzhaf(g: &Game, i: usize) -> BigRational {
    let sum: i64 = coalitions_without(g.n, i).map(|s| g.v(s | 1 << i) - g.v(s)).sum();
    ratio(sum, BigInt::one() << (g.n - 1))
}

/// Players of `t` whose removal leaves a losing coalition.
pub fn critical_count(g: &Game, t: usize) -> usize {
    (0..g.n)
        .filter(|&j| t >> j & 1 == 1 && g.v(t & !(1 << j)) == 0)
        .count()
}

pub fn johnston(g: &Game, i: usize) -> BigRational {
    let mut total = BigRational::zero();
    for s in coalitions_without(g.n, i) {
        let t = s | 1 << i;
        let k = critical_count(g, t);
        let marginal = g.v(t) - g.v(s);
        if marginal != 0 && k > 0 {
            total += ratio(marginal, k as i64);
        }
    }
    total
}

/// Random framework over `names`, each ordered pair (self-attacks included)
/// an attack with probability `p`.
pub fn random_af(rng: &mut impl Rng, names: &[String], p: f64) -> ArgumentationFramework {
    let mut attacks = Vec::new();
    for x in names {
        for y in names {
            if rng.random_bool(p) {
                attacks.push((x.as_str(), y.as_str()));
            }
        }
    }
    ArgumentationFramework::new(names.iter().map(String::as_str), attacks).unwrap()
}

pub fn letters(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

fn af_from_mask(n: usize, mask: u64) -> ArgumentationFramework {
    let names = letters(n);
    let attacks: Vec<(&str, &str)> = (0..n * n)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (names[b / n].as_str(), names[b % n].as_str()))
        .collect();
    ArgumentationFramework::new(names.iter().map(String::as_str), attacks).unwrap()
}

fn heap_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            go(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    let mut out = Vec::new();
    go(n, &mut (0..n).collect(), &mut out);
    out
}

/// One framework per isomorphism class of digraphs (loops allowed) on
/// `n ≤ 4` arguments.
pub fn all_digraphs(n: usize) -> Vec<ArgumentationFramework> {
    let perms = heap_permutations(n);
    let relabel = |mask: u64, p: &[usize]| -> u64 {
        (0..n * n)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| 1u64 << (p[b / n] * n + p[b % n]))
            .sum()
    };
    (0..1u64 << (n * n))
        .filter(|&m| perms.iter().all(|p| relabel(m, p) >= m))
        .map(|m| af_from_mask(n, m))
        .collect()
}

/// Exhaustive frameworks up to four arguments followed by `samples` seeded
/// random ones with five or six.
pub fn corpus(samples: usize, seed: u64) -> Vec<ArgumentationFramework> {
    let mut out: Vec<ArgumentationFramework> = (0..=4).flat_map(all_digraphs).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.random_range(5..=6);
        let p = rng.random_range(0.1..0.45);
        out.push(random_af(&mut rng, &letters(n), p));
    }
    out
}

pub fn family_names(af: &ArgumentationFramework, family: &argrank::ExtensionFamily) -> BTreeSet<NamedSet> {
    family
        .iter()
        .map(|e| {
            let mut v: Vec<String> = af.names(e).into_iter().map(|a| a.to_string()).collect();
            v.sort();
            v
        })
        .collect()
}
