//! Labelling-based semantics and extension enumeration.
//!
//! Every labelling is identified by its in-set `E`; its out-set is always
//! `E⁺`, the arguments attacked by `E`, and the remaining arguments are undec.
//! Enumeration is exhaustive over the `2^n` subsets with bitset tests.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::af::{ArgSet, ArgumentationFramework};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::HARD_MAX_ARGS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    In,
    Out,
    Undec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    ConflictFree,
    Admissible,
    Complete,
    Grounded,
    Preferred,
    Stable,
}

impl Semantics {
    pub const ALL: [Semantics; 6] = [
        Semantics::ConflictFree,
        Semantics::Admissible,
        Semantics::Complete,
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::Stable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::ConflictFree => "conflict-free",
            Semantics::Admissible => "admissible",
            Semantics::Complete => "complete",
            Semantics::Grounded => "grounded",
            Semantics::Preferred => "preferred",
            Semantics::Stable => "stable",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.as_str() == s)
            .ok_or_else(|| Error::InvalidRequest(format!("unknown semantics {s:?}")))
    }
}

/// A total labelling, stored as its three label classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Labelling {
    pub in_set: ArgSet,
    pub out_set: ArgSet,
    pub undec_set: ArgSet,
}

impl Labelling {
    pub fn label(&self, i: usize) -> Label {
        if self.in_set.contains(i) {
            Label::In
        } else if self.out_set.contains(i) {
            Label::Out
        } else {
            Label::Undec
        }
    }

    /// Caminada's reinstatement conditions: attackers of an in argument are
    /// out, and every out argument has an in attacker.
    pub fn is_reinstatement(&self, af: &ArgumentationFramework) -> bool {
        (0..af.len()).all(|i| {
            let attackers = af.attackers_of(i);
            match self.label(i) {
                Label::In => attackers.is_subset(self.out_set),
                Label::Out => !attackers.intersection(self.in_set).is_empty(),
                Label::Undec => true,
            }
        })
    }
}

/// Labels `e` in, `e⁺` out and everything else undec. Members of `e` that
/// `e` itself attacks stay in, so the classes always partition the arguments.
pub fn labelling_from_inset(af: &ArgumentationFramework, e: ArgSet) -> Result<Labelling> {
    let out = af.attacked_by(e)?.difference(e);
    Ok(Labelling {
        in_set: e,
        out_set: out,
        undec_set: af.all().difference(e.union(out)),
    })
}

/// A deduplicated family of argument sets in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtensionFamily {
    sets: Vec<ArgSet>,
}

impl ExtensionFamily {
    pub fn new(sets: impl IntoIterator<Item = ArgSet>) -> Self {
        let mut sets: Vec<ArgSet> = sets.into_iter().collect();
        sets.sort_by(ArgSet::canonical_cmp);
        sets.dedup();
        Self { sets }
    }

    pub fn sets(&self) -> &[ArgSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: ArgSet) -> bool {
        self.sets.binary_search_by(|x| x.canonical_cmp(&s)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = ArgSet> + '_ {
        self.sets.iter().copied()
    }

    /// Renders as `{},{a},{a,c}`.
    pub fn render(&self, af: &ArgumentationFramework) -> String {
        self.sets
            .iter()
            .map(|&s| render_set(af, s))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn to_names(&self, af: &ArgumentationFramework) -> Vec<Vec<String>> {
        self.sets
            .iter()
            .map(|&s| af.names(s).into_iter().map(|a| a.to_string()).collect())
            .collect()
    }
}

pub fn render_set(af: &ArgumentationFramework, s: ArgSet) -> String {
    let names: Vec<&str> = af.names(s).into_iter().map(|a| a.as_str()).collect();
    format!("{{{}}}", names.join(","))
}

fn is_conflict_free(_: &ArgumentationFramework, e: ArgSet, plus: ArgSet) -> bool {
    plus.intersection(e).is_empty()
}

fn is_admissible(af: &ArgumentationFramework, e: ArgSet, plus: ArgSet) -> bool {
    is_conflict_free(af, e, plus) && af.attackers_of_set(e).is_subset(plus)
}

fn is_complete(af: &ArgumentationFramework, e: ArgSet, plus: ArgSet) -> bool {
    is_admissible(af, e, plus) && (0..af.len()).all(|a| e.contains(a) || !af.attackers_of(a).is_subset(plus))
}

fn is_stable(af: &ArgumentationFramework, e: ArgSet, plus: ArgSet) -> bool {
    is_conflict_free(af, e, plus) && e.union(plus) == af.all()
}

/// Whether `e` is the in-set of a `sigma` labelling.
pub fn satisfies(af: &ArgumentationFramework, e: ArgSet, sigma: Semantics) -> Result<bool> {
    let plus = af.attacked_by(e)?;
    Ok(match sigma {
        Semantics::ConflictFree => is_conflict_free(af, e, plus),
        Semantics::Admissible => is_admissible(af, e, plus),
        Semantics::Complete => is_complete(af, e, plus),
        Semantics::Stable => is_stable(af, e, plus),
        Semantics::Grounded => grounded_fixpoint(af) == e,
        Semantics::Preferred => enumerate(af, Semantics::Preferred)?.contains(e),
    })
}

pub fn enumerate(af: &ArgumentationFramework, sigma: Semantics) -> Result<ExtensionFamily> {
    enumerate_within(af, sigma, &Budget::unlimited())
}

const CHUNK_BITS: u32 = 12;

pub fn enumerate_within(
    af: &ArgumentationFramework,
    sigma: Semantics,
    budget: &Budget,
) -> Result<ExtensionFamily> {
    if af.len() > HARD_MAX_ARGS {
        return Err(Error::TooManyArguments {
            count: af.len(),
            max: HARD_MAX_ARGS,
        });
    }
    let test: fn(&ArgumentationFramework, ArgSet, ArgSet) -> bool = match sigma {
        Semantics::Grounded => return Ok(ExtensionFamily::new([grounded_fixpoint(af)])),
        Semantics::Preferred => {
            let complete = enumerate_within(af, Semantics::Complete, budget)?;
            return Ok(maximal(&complete));
        }
        Semantics::ConflictFree => is_conflict_free,
        Semantics::Admissible => is_admissible,
        Semantics::Complete => is_complete,
        Semantics::Stable => is_stable,
    };
    let total: u64 = 1 << af.len();
    let chunk = 1u64 << CHUNK_BITS;
    let chunks = total.div_ceil(chunk);
    let found = (0..chunks)
        .into_par_iter()
        .map(|c| {
            budget.check("enumeration")?;
            let lo = c * chunk;
            let hi = (lo + chunk).min(total);
            Ok((lo..hi)
                .map(ArgSet::from_bits)
                .filter(|&e| test(af, e, af.attacked_by_unchecked(e)))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtensionFamily::new(found.into_iter().flatten()))
}

/// The ⊆-maximal members of a family.
fn maximal(family: &ExtensionFamily) -> ExtensionFamily {
    ExtensionFamily::new(
        family
            .iter()
            .filter(|&s| !family.iter().any(|t| s.is_proper_subset(t))),
    )
}

/// Least fixpoint of the characteristic function: label in every argument
/// whose attackers are all out, label out everything attacked by an in
/// argument, repeat.
pub fn grounded_fixpoint(af: &ArgumentationFramework) -> ArgSet {
    let mut inn = ArgSet::EMPTY;
    loop {
        let out = af.attacked_by_unchecked(inn);
        let next = (0..af.len())
            .filter(|&a| af.attackers_of(a).is_subset(out))
            .collect::<ArgSet>()
            .union(inn);
        if next == inn {
            return inn;
        }
        inn = next;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Acceptance {
    Sceptical,
    CredulousOnly,
    Rejected,
    /// The family is empty, so acceptance is undefined.
    Degenerate,
}

impl Acceptance {
    pub fn in_family(family: &ExtensionFamily, i: usize) -> Self {
        if family.is_empty() {
            return Acceptance::Degenerate;
        }
        let hits = family.iter().filter(|e| e.contains(i)).count();
        if hits == family.len() {
            Acceptance::Sceptical
        } else if hits > 0 {
            Acceptance::CredulousOnly
        } else {
            Acceptance::Rejected
        }
    }

    pub fn is_credulous(self) -> bool {
        matches!(self, Acceptance::Sceptical | Acceptance::CredulousOnly)
    }
}

pub fn acceptance_status(
    af: &ArgumentationFramework,
    sigma: Semantics,
    argument: &str,
) -> Result<Acceptance> {
    let i = af.index_of(argument)?;
    Ok(Acceptance::in_family(&enumerate(af, sigma)?, i))
}

/// `{ E⁺ : E ∈ family }`, deduplicated.
pub fn out_family(af: &ArgumentationFramework, family: &ExtensionFamily) -> Result<ExtensionFamily> {
    family
        .iter()
        .map(|e| af.attacked_by(e))
        .collect::<Result<Vec<_>>>()
        .map(ExtensionFamily::new)
}
