//! Ranking-property checkers, group comparison, and a seeded counterexample
//! search over small frameworks.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::af::{ArgSet, ArgumentationFramework, Isomorphism};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::format::{parse_apx_with_limit, serialize, Format};
use crate::power::{score_extensions, PowerIndex};
use crate::ranking::{rank_with, PiScore, Precision, Ranking};
use crate::semantics::{enumerate_within, Acceptance, ExtensionFamily, Semantics};
use crate::HARD_MAX_ARGS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyId {
    Abstraction,
    Independence,
    SelfContradiction,
    CardinalityPrecedence,
    QualityPrecedence,
    NonAttackedEquivalence,
    Totality,
    Scp,
    Crp,
}

impl PropertyId {
    pub const ALL: [PropertyId; 9] = [
        PropertyId::Abstraction,
        PropertyId::Independence,
        PropertyId::SelfContradiction,
        PropertyId::CardinalityPrecedence,
        PropertyId::QualityPrecedence,
        PropertyId::NonAttackedEquivalence,
        PropertyId::Totality,
        PropertyId::Scp,
        PropertyId::Crp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::Abstraction => "abstraction",
            PropertyId::Independence => "independence",
            PropertyId::SelfContradiction => "self-contradiction",
            PropertyId::CardinalityPrecedence => "cardinality-precedence",
            PropertyId::QualityPrecedence => "quality-precedence",
            PropertyId::NonAttackedEquivalence => "non-attacked-equivalence",
            PropertyId::Totality => "totality",
            PropertyId::Scp => "scp",
            PropertyId::Crp => "crp",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidRequest(format!("unknown property {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsOnInstance,
    Violated,
    /// The semantics has no extension on this framework.
    SkippedDegenerate,
    HoldsOnAllTested,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub apx: String,
    pub pair: [String; 2],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub isomorphism: Option<Isomorphism>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub semantics: Semantics,
    pub index: PowerIndex,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

/// Extensions, scores and ranking of one framework under one semantics and
/// index.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub af: ArgumentationFramework,
    pub semantics: Semantics,
    pub index: PowerIndex,
    pub extensions: ExtensionFamily,
    pub scores: Vec<PiScore>,
    pub ranking: Ranking,
}

impl Evaluation {
    pub fn new(
        af: &ArgumentationFramework,
        semantics: Semantics,
        index: PowerIndex,
        precision: Precision,
    ) -> Result<Self> {
        Self::within(af, semantics, index, precision, &Budget::unlimited())
    }

    pub fn within(
        af: &ArgumentationFramework,
        semantics: Semantics,
        index: PowerIndex,
        precision: Precision,
        budget: &Budget,
    ) -> Result<Self> {
        let extensions = enumerate_within(af, semantics, budget)?;
        let scores: Vec<PiScore> = score_extensions(af, &extensions, index, budget)?
            .into_iter()
            .map(PiScore::from)
            .collect();
        let ranking = rank_with(&scores, precision)?;
        Ok(Self {
            af: af.clone(),
            semantics,
            index,
            extensions,
            scores,
            ranking,
        })
    }

    pub fn is_degenerate(&self) -> bool {
        self.extensions.is_empty()
    }

    pub fn acceptance(&self, i: usize) -> Acceptance {
        Acceptance::in_family(&self.extensions, i)
    }

    fn name(&self, i: usize) -> &str {
        self.af.argument(i).as_str()
    }

    fn geq(&self, a: usize, b: usize) -> bool {
        self.ranking.geq(self.name(a), self.name(b))
    }

    fn above(&self, a: usize, b: usize) -> bool {
        self.ranking.strictly_above(self.name(a), self.name(b))
    }

    fn equivalent(&self, a: usize, b: usize) -> bool {
        self.ranking.equivalent(self.name(a), self.name(b))
    }
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    /// Isomorphism used by the abstraction check; a random permutation drawn
    /// from `seed` when absent.
    pub isomorphism: Option<Isomorphism>,
    pub seed: u64,
    pub precision: Precision,
}

pub fn check_property(
    af: &ArgumentationFramework,
    semantics: Semantics,
    index: PowerIndex,
    property: PropertyId,
) -> Result<PropertyReport> {
    check_property_with(af, semantics, index, property, &CheckOptions::default())
}

pub fn check_property_with(
    af: &ArgumentationFramework,
    semantics: Semantics,
    index: PowerIndex,
    property: PropertyId,
    options: &CheckOptions,
) -> Result<PropertyReport> {
    let eval = Evaluation::new(af, semantics, index, options.precision)?;
    check_evaluated(&eval, property, options)
}

/// Checks `property` against an existing evaluation.
pub fn check_evaluated(
    eval: &Evaluation,
    property: PropertyId,
    options: &CheckOptions,
) -> Result<PropertyReport> {
    let report = |verdict, witness| PropertyReport {
        property,
        semantics: eval.semantics,
        index: eval.index,
        verdict,
        witness,
    };
    if eval.is_degenerate() {
        return Ok(report(Verdict::SkippedDegenerate, None));
    }
    let witness = match property {
        PropertyId::Abstraction => abstraction_violation(eval, options)?,
        PropertyId::Independence => independence_violation(eval, options.precision)?,
        _ => pairwise_violation(eval, property).map(|(a, b)| witness(eval, a, b, None)),
    };
    Ok(match witness {
        Some(w) => report(Verdict::Violated, Some(w)),
        None => report(Verdict::HoldsOnInstance, None),
    })
}

fn witness(eval: &Evaluation, a: usize, b: usize, iso: Option<Isomorphism>) -> Witness {
    Witness {
        apx: serialize(&eval.af, Format::Apx),
        pair: [eval.name(a).to_owned(), eval.name(b).to_owned()],
        isomorphism: iso,
    }
}

/// First ordered pair `(a, b)` for which the property's implication fails.
fn pairwise_violation(eval: &Evaluation, property: PropertyId) -> Option<(usize, usize)> {
    let af = &eval.af;
    let n = af.len();
    let violates = |a: usize, b: usize| -> bool {
        match property {
            PropertyId::SelfContradiction => {
                !af.is_self_attacking(a) && af.is_self_attacking(b) && !eval.above(a, b)
            }
            PropertyId::CardinalityPrecedence => {
                af.attackers_of(a).len() < af.attackers_of(b).len() && !eval.above(a, b)
            }
            PropertyId::QualityPrecedence => {
                let strong_attacker = af
                    .attackers_of(b)
                    .iter()
                    .any(|c| af.attackers_of(a).iter().all(|d| eval.above(c, d)));
                strong_attacker && !eval.above(a, b)
            }
            PropertyId::NonAttackedEquivalence => {
                af.attackers_of(a).is_empty() && af.attackers_of(b).is_empty() && !eval.equivalent(a, b)
            }
            PropertyId::Totality => !(eval.geq(a, b) || eval.geq(b, a)),
            PropertyId::Scp => {
                eval.acceptance(a) == Acceptance::Sceptical
                    && eval.acceptance(b) != Acceptance::Sceptical
                    && !eval.above(a, b)
            }
            PropertyId::Crp => {
                eval.acceptance(a).is_credulous()
                    && eval.acceptance(b) == Acceptance::Rejected
                    && !eval.above(a, b)
            }
            PropertyId::Abstraction | PropertyId::Independence => false,
        }
    };
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b)
        .find(|&(a, b)| violates(a, b))
}

fn abstraction_violation(eval: &Evaluation, options: &CheckOptions) -> Result<Option<Witness>> {
    let af = &eval.af;
    let iso = match &options.isomorphism {
        Some(iso) => iso.clone(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            let mut perm: Vec<usize> = (0..af.len()).collect();
            perm.shuffle(&mut rng);
            Isomorphism::from_permutation(af, &perm)
        }
    };
    let image = af.apply_isomorphism(&iso)?;
    let other = Evaluation::new(&image, eval.semantics, eval.index, options.precision)?;
    for a in 0..af.len() {
        for b in 0..af.len() {
            let ia = iso.apply(af.argument(a)).expect("validated bijection");
            let ib = iso.apply(af.argument(b)).expect("validated bijection");
            if eval.geq(a, b) != other.ranking.geq(ia.as_str(), ib.as_str()) {
                return Ok(Some(witness(eval, a, b, Some(iso))));
            }
        }
    }
    Ok(None)
}

fn independence_violation(eval: &Evaluation, precision: Precision) -> Result<Option<Witness>> {
    let components = eval.af.connected_components();
    if components.len() < 2 {
        return Ok(None);
    }
    for component in components {
        let local = Evaluation::new(&component, eval.semantics, eval.index, precision)?;
        for a in component.arguments() {
            for b in component.arguments() {
                if local.ranking.geq(a.as_str(), b.as_str()) != eval.ranking.geq(a.as_str(), b.as_str()) {
                    let ia = eval.af.index_of(a.as_str())?;
                    let ib = eval.af.index_of(b.as_str())?;
                    return Ok(Some(witness(eval, ia, ib, None)));
                }
            }
        }
    }
    Ok(None)
}

/// Re-runs the check a violated report came from and confirms it still fails.
pub fn revalidate(report: &PropertyReport, precision: Precision) -> Result<bool> {
    let Some(w) = &report.witness else {
        return Ok(false);
    };
    let af = parse_apx_with_limit(&w.apx, HARD_MAX_ARGS)?;
    let options = CheckOptions {
        isomorphism: w.isomorphism.clone(),
        seed: 0,
        precision,
    };
    let again = check_property_with(&af, report.semantics, report.index, report.property, &options)?;
    Ok(again.verdict == Verdict::Violated)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupComparison {
    /// `S1 > S2`.
    Strict,
    /// `S1 ≥ S2` without a strict witness.
    Geq,
    Neither,
}

/// Compares two groups of arguments under `ranking`.
///
/// `S1 ≥ S2` iff some injection `f: S2 → S1` has `f(a) ≽ a` everywhere. Such
/// an injection exists iff pairing both groups best-first succeeds, and that
/// pairing has a strict pair whenever any valid injection does.
pub fn group_compare(
    af: &ArgumentationFramework,
    ranking: &Ranking,
    s1: ArgSet,
    s2: ArgSet,
) -> Result<GroupComparison> {
    af.check_set(s1)?;
    af.check_set(s2)?;
    if s2.len() > s1.len() {
        return Ok(GroupComparison::Neither);
    }
    let classes = |s: ArgSet| -> Result<Vec<usize>> {
        let mut c = s
            .iter()
            .map(|i| {
                let name = af.argument(i).as_str();
                ranking
                    .class_of(name)
                    .ok_or_else(|| Error::UnknownArgument(name.to_owned()))
            })
            .collect::<Result<Vec<_>>>()?;
        c.sort_unstable();
        Ok(c)
    };
    let c1 = classes(s1)?;
    let c2 = classes(s2)?;
    if c1.iter().zip(&c2).any(|(x, y)| x > y) {
        return Ok(GroupComparison::Neither);
    }
    let strict = s2.len() < s1.len() || c1.iter().zip(&c2).any(|(x, y)| x < y);
    Ok(if strict {
        GroupComparison::Strict
    } else {
        GroupComparison::Geq
    })
}

const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// A framework over arguments `a, b, ...` with attacks given as an `n × n`
/// row-major bitmask (bit `x·n + y` means `x` attacks `y`).
pub fn framework_from_mask(n: usize, mask: u64) -> ArgumentationFramework {
    let attacks = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| mask >> (x * n + y) & 1 == 1)
        .map(|(x, y)| (NAMES[x], NAMES[y]));
    ArgumentationFramework::new(NAMES[..n].iter().copied(), attacks).expect("generated names are valid")
}

/// Random framework with `n ≤ 8` arguments, each ordered pair (self-attacks
/// included) present with probability `p`.
pub fn random_framework(rng: &mut impl Rng, n: usize, p: f64) -> ArgumentationFramework {
    let mut mask = 0u64;
    for bit in 0..n * n {
        if rng.random_bool(p) {
            mask |= 1 << bit;
        }
    }
    framework_from_mask(n, mask)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative (the numerically smallest mask) of every digraph with
/// `n` unlabelled vertices, loops allowed.
pub fn canonical_digraph_masks(n: usize) -> Vec<u64> {
    assert!(n <= 4, "exhaustive enumeration is limited to 4 arguments");
    let perms = permutations(n);
    let permute = |mask: u64, perm: &[usize]| -> u64 {
        let mut out = 0;
        for x in 0..n {
            for y in 0..n {
                if mask >> (x * n + y) & 1 == 1 {
                    out |= 1 << (perm[x] * n + perm[y]);
                }
            }
        }
        out
    };
    (0..1u64 << (n * n))
        .filter(|&mask| perms.iter().all(|p| permute(mask, p) >= mask))
        .collect()
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub max_args: usize,
    pub samples: usize,
    pub seed: u64,
    pub precision: Precision,
    pub budget: Budget,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_args: 6,
            samples: 10_000,
            seed: 1,
            precision: Precision::Rounded,
            budget: Budget::unlimited(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub report: PropertyReport,
    pub tested: usize,
    pub skipped_degenerate: usize,
}

const MAX_SEARCH_ARGS: usize = 7;
const BATCH: usize = 256;

/// Candidate frameworks in search order: every digraph on up to four
/// arguments, then `samples` random ones with five or more arguments (or
/// fewer when `max_args` is small).
pub fn search_candidates(max_args: usize, samples: usize, seed: u64) -> Vec<ArgumentationFramework> {
    let mut out: Vec<ArgumentationFramework> = (1..=max_args.min(4))
        .flat_map(|n| {
            canonical_digraph_masks(n)
                .into_iter()
                .map(move |m| framework_from_mask(n, m))
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let low = if max_args >= 5 { 5 } else { 1 };
    for _ in 0..samples {
        let n = rng.random_range(low..=max_args);
        let p = rng.random_range(0.1..0.5);
        out.push(random_framework(&mut rng, n, p));
    }
    out
}

pub fn search_counterexample(
    property: PropertyId,
    semantics: Semantics,
    index: PowerIndex,
    config: &SearchConfig,
) -> Result<SearchOutcome> {
    if config.max_args == 0 || config.max_args > MAX_SEARCH_ARGS {
        return Err(Error::InvalidRequest(format!(
            "search supports 1 to {MAX_SEARCH_ARGS} arguments, got {}",
            config.max_args
        )));
    }
    let candidates = search_candidates(config.max_args, config.samples, config.seed);
    let mut tested = 0;
    let mut skipped = 0;
    let report = |verdict, witness| PropertyReport {
        property,
        semantics,
        index,
        verdict,
        witness,
    };
    for (b, batch) in candidates.chunks(BATCH).enumerate() {
        if config.budget.is_exhausted() {
            return Ok(SearchOutcome {
                report: report(Verdict::BudgetExhausted, None),
                tested,
                skipped_degenerate: skipped,
            });
        }
        let results = batch
            .par_iter()
            .enumerate()
            .map(|(k, af)| {
                let options = CheckOptions {
                    isomorphism: None,
                    seed: config.seed ^ ((b * BATCH + k) as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
                    precision: config.precision,
                };
                check_property_with(af, semantics, index, property, &options)
            })
            .collect::<Result<Vec<_>>>()?;
        for r in results {
            match r.verdict {
                Verdict::SkippedDegenerate => skipped += 1,
                Verdict::Violated => {
                    tested += 1;
                    return Ok(SearchOutcome {
                        report: r,
                        tested,
                        skipped_degenerate: skipped,
                    });
                }
                _ => tested += 1,
            }
        }
    }
    Ok(SearchOutcome {
        report: report(Verdict::HoldsOnAllTested, None),
        tested,
        skipped_degenerate: skipped,
    })
}
