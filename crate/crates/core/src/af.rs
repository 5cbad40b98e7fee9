//! Framework data model and structural graph operations.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{DEFAULT_MAX_ARGS, HARD_MAX_ARGS};

/// Argument name: a nonempty token over `[A-Za-z0-9_]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ArgumentId(String);

impl ArgumentId {
    pub fn new(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        if Self::is_valid(&token) {
            Ok(Self(token))
        } else {
            Err(Error::InvalidId(token))
        }
    }

    pub fn is_valid(token: &str) -> bool {
        !token.is_empty() && token.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for ArgumentId {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Self::new(value)
    }
}

impl From<ArgumentId> for String {
    fn from(id: ArgumentId) -> Self {
        id.0
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

// Hash and Eq agree with `str`, so maps keyed by ids can be queried by name.
impl std::borrow::Borrow<str> for ArgumentId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for ArgumentId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A set of arguments, as a bitmask over the owning framework's argument order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ArgSet(u64);

impl ArgSet {
    pub const EMPTY: ArgSet = ArgSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n < 64);
        Self((1u64 << n) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        Self(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Self(indices.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        Self(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> Self {
        Self(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Canonical order: by size, then lexicographically on the ascending list
    /// of member indices.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                std::cmp::Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // The lowest differing index is ours, the other set continues
                // with a larger one.
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        })
    }
}

impl FromIterator<usize> for ArgSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_indices(iter)
    }
}

/// An argumentation framework: arguments in declaration order plus the attack
/// relation. Immutable once built.
#[derive(Debug, Clone)]
pub struct ArgumentationFramework {
    arguments: Vec<ArgumentId>,
    index: HashMap<ArgumentId, usize>,
    /// Attacks in declaration order, as index pairs.
    attacks: Vec<(usize, usize)>,
    attackers: Vec<ArgSet>,
    targets: Vec<ArgSet>,
}

impl PartialEq for ArgumentationFramework {
    fn eq(&self, other: &Self) -> bool {
        self.arguments == other.arguments && self.attackers == other.attackers
    }
}

impl Eq for ArgumentationFramework {}

/// Incremental constructor enforcing the framework invariants.
#[derive(Debug, Clone)]
pub struct Builder {
    max_args: usize,
    arguments: Vec<ArgumentId>,
    index: HashMap<ArgumentId, usize>,
    attacks: Vec<(usize, usize)>,
    seen: HashSet<(usize, usize)>,
}

impl Default for Builder {
    fn default() -> Self {
        Self::with_limit(DEFAULT_MAX_ARGS)
    }
}

impl Builder {
    pub fn with_limit(max_args: usize) -> Self {
        Self {
            max_args: max_args.min(HARD_MAX_ARGS),
            arguments: Vec::new(),
            index: HashMap::new(),
            attacks: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn argument(&mut self, name: &str) -> Result<usize> {
        let id = ArgumentId::new(name)?;
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateArgument(name.to_owned()));
        }
        if self.arguments.len() >= self.max_args {
            return Err(Error::TooManyArguments {
                count: self.arguments.len() + 1,
                max: self.max_args,
            });
        }
        let i = self.arguments.len();
        self.index.insert(id.clone(), i);
        self.arguments.push(id);
        Ok(i)
    }

    pub fn attack(&mut self, attacker: &str, target: &str) -> Result<()> {
        let lookup = |name: &str| {
            self.index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownArgument(name.to_owned()))
        };
        let pair = (lookup(attacker)?, lookup(target)?);
        if !self.seen.insert(pair) {
            return Err(Error::DuplicateAttack(attacker.to_owned(), target.to_owned()));
        }
        self.attacks.push(pair);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn build(self) -> ArgumentationFramework {
        ArgumentationFramework::from_parts(self.arguments, self.index, self.attacks)
    }
}

impl ArgumentationFramework {
    pub fn builder() -> Builder {
        Builder::default()
    }

    /// Builds a framework from names, with the default argument limit.
    pub fn new<'a>(
        arguments: impl IntoIterator<Item = &'a str>,
        attacks: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        Self::with_limit(arguments, attacks, DEFAULT_MAX_ARGS)
    }

    pub fn with_limit<'a>(
        arguments: impl IntoIterator<Item = &'a str>,
        attacks: impl IntoIterator<Item = (&'a str, &'a str)>,
        max_args: usize,
    ) -> Result<Self> {
        let mut b = Builder::with_limit(max_args);
        for a in arguments {
            b.argument(a)?;
        }
        for (x, y) in attacks {
            b.attack(x, y)?;
        }
        Ok(b.build())
    }

    fn from_parts(
        arguments: Vec<ArgumentId>,
        index: HashMap<ArgumentId, usize>,
        attacks: Vec<(usize, usize)>,
    ) -> Self {
        let n = arguments.len();
        let mut attackers = vec![ArgSet::EMPTY; n];
        let mut targets = vec![ArgSet::EMPTY; n];
        for &(x, y) in &attacks {
            attackers[y] = attackers[y].insert(x);
            targets[x] = targets[x].insert(y);
        }
        Self {
            arguments,
            index,
            attacks,
            attackers,
            targets,
        }
    }

    fn from_indexed(arguments: Vec<ArgumentId>, attacks: Vec<(usize, usize)>) -> Result<Self> {
        if arguments.len() > HARD_MAX_ARGS {
            return Err(Error::TooManyArguments {
                count: arguments.len(),
                max: HARD_MAX_ARGS,
            });
        }
        let index = arguments
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Ok(Self::from_parts(arguments, index, attacks))
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn arguments(&self) -> &[ArgumentId] {
        &self.arguments
    }

    pub fn argument(&self, i: usize) -> &ArgumentId {
        &self.arguments[i]
    }

    /// Attacks in declaration order.
    pub fn attacks(&self) -> impl Iterator<Item = (&ArgumentId, &ArgumentId)> + '_ {
        self.attacks
            .iter()
            .map(|&(x, y)| (&self.arguments[x], &self.arguments[y]))
    }

    pub fn attack_indices(&self) -> &[(usize, usize)] {
        &self.attacks
    }

    pub fn attack_count(&self) -> usize {
        self.attacks.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArgument(name.to_owned()))
    }

    pub fn attacks_pair(&self, attacker: usize, target: usize) -> bool {
        self.targets[attacker].contains(target)
    }

    pub fn is_self_attacking(&self, i: usize) -> bool {
        self.attacks_pair(i, i)
    }

    pub fn all(&self) -> ArgSet {
        ArgSet::full(self.len())
    }

    /// Attackers of the argument at index `i`, as a set.
    pub fn attackers_of(&self, i: usize) -> ArgSet {
        self.attackers[i]
    }

    /// Arguments attacked by the argument at index `i`.
    pub fn targets_of(&self, i: usize) -> ArgSet {
        self.targets[i]
    }

    /// Builds a set from argument names.
    pub fn set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<ArgSet> {
        names
            .into_iter()
            .map(|n| self.index_of(n))
            .collect::<Result<Vec<_>>>()
            .map(ArgSet::from_indices)
    }

    pub fn names(&self, s: ArgSet) -> Vec<&ArgumentId> {
        s.iter().map(|i| &self.arguments[i]).collect()
    }

    pub fn check_set(&self, s: ArgSet) -> Result<()> {
        if s.is_subset(self.all()) {
            Ok(())
        } else {
            Err(Error::ForeignSet)
        }
    }

    /// `S⁺`: every argument attacked by some member of `s`.
    pub fn attacked_by(&self, s: ArgSet) -> Result<ArgSet> {
        self.check_set(s)?;
        Ok(self.attacked_by_unchecked(s))
    }

    pub(crate) fn attacked_by_unchecked(&self, s: ArgSet) -> ArgSet {
        s.iter().fold(ArgSet::EMPTY, |acc, i| acc.union(self.targets[i]))
    }

    /// `S⁻`: every argument attacking some member of `s`.
    pub(crate) fn attackers_of_set(&self, s: ArgSet) -> ArgSet {
        s.iter()
            .fold(ArgSet::EMPTY, |acc, i| acc.union(self.attackers[i]))
    }

    pub fn direct_attackers(&self, a: &str) -> Result<ArgSet> {
        Ok(self.attackers[self.index_of(a)?])
    }

    /// Renames every argument through `iso`. Argument order follows the
    /// original order.
    pub fn apply_isomorphism(&self, iso: &Isomorphism) -> Result<Self> {
        iso.validate_for(self)?;
        let arguments = self.arguments.iter().map(|a| iso.mapping[a].clone()).collect();
        Self::from_indexed(arguments, self.attacks.clone())
    }

    /// Weakly connected components, ordered by their first argument. Each
    /// component keeps the relative argument and attack order of `self`.
    pub fn connected_components(&self) -> Vec<Self> {
        let n = self.len();
        let mut component = vec![usize::MAX; n];
        let mut order = Vec::new();
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let id = order.len();
            let mut members = ArgSet::EMPTY;
            let mut stack = vec![start];
            component[start] = id;
            while let Some(x) = stack.pop() {
                members = members.insert(x);
                for y in self.targets[x].union(self.attackers[x]).iter() {
                    if component[y] == usize::MAX {
                        component[y] = id;
                        stack.push(y);
                    }
                }
            }
            order.push(members);
        }
        order.into_iter().map(|m| self.induced(m)).collect()
    }

    /// The subframework induced by `members`.
    pub fn induced(&self, members: ArgSet) -> Self {
        let mut remap = vec![usize::MAX; self.len()];
        let mut arguments = Vec::with_capacity(members.len());
        for i in members.iter() {
            remap[i] = arguments.len();
            arguments.push(self.arguments[i].clone());
        }
        let attacks = self
            .attacks
            .iter()
            .filter(|&&(x, y)| members.contains(x) && members.contains(y))
            .map(|&(x, y)| (remap[x], remap[y]))
            .collect();
        Self::from_indexed(arguments, attacks).expect("subframework is never larger")
    }

    /// Places `other` after `self`. Argument names must be disjoint.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if let Some(a) = other.arguments.iter().find(|a| self.index.contains_key(*a)) {
            return Err(Error::IdCollision(a.to_string()));
        }
        let offset = self.len();
        let arguments = self.arguments.iter().chain(&other.arguments).cloned().collect();
        let attacks = self
            .attacks
            .iter()
            .copied()
            .chain(other.attacks.iter().map(|&(x, y)| (x + offset, y + offset)))
            .collect();
        Self::from_indexed(arguments, attacks)
    }

    /// Out-degree and in-degree of every argument, sorted.
    pub fn degree_multiset(&self) -> Vec<(usize, usize)> {
        let mut d: Vec<_> = (0..self.len())
            .map(|i| (self.targets[i].len(), self.attackers[i].len()))
            .collect();
        d.sort_unstable();
        d
    }
}

/// A renaming of arguments, `ι: A → A'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    pub mapping: BTreeMap<ArgumentId, ArgumentId>,
}

impl Isomorphism {
    pub fn new(pairs: impl IntoIterator<Item = (ArgumentId, ArgumentId)>) -> Self {
        Self {
            mapping: pairs.into_iter().collect(),
        }
    }

    pub fn from_names<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        pairs
            .into_iter()
            .map(|(a, b)| Ok((ArgumentId::new(a)?, ArgumentId::new(b)?)))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn identity(af: &ArgumentationFramework) -> Self {
        Self::new(af.arguments().iter().map(|a| (a.clone(), a.clone())))
    }

    /// Maps `af`'s argument at position `i` to the argument at `perm[i]`.
    pub fn from_permutation(af: &ArgumentationFramework, perm: &[usize]) -> Self {
        Self::new(
            af.arguments()
                .iter()
                .zip(perm)
                .map(|(a, &j)| (a.clone(), af.argument(j).clone())),
        )
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.mapping.iter().map(|(a, b)| (b.clone(), a.clone())))
    }

    pub fn apply(&self, a: &ArgumentId) -> Option<&ArgumentId> {
        self.mapping.get(a)
    }

    fn validate_for(&self, af: &ArgumentationFramework) -> Result<()> {
        if self.mapping.len() != af.len() {
            return Err(Error::NotBijective(format!(
                "maps {} arguments, framework has {}",
                self.mapping.len(),
                af.len()
            )));
        }
        let mut images = HashSet::new();
        for a in af.arguments() {
            let image = self
                .mapping
                .get(a)
                .ok_or_else(|| Error::NotBijective(format!("{a} is not mapped")))?;
            if !images.insert(image) {
                return Err(Error::NotBijective(format!("{image} is hit twice")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::fixtures;

    #[test]
    fn argument_ids() {
        assert!(ArgumentId::new("a_1").is_ok());
        assert_eq!(ArgumentId::new(""), Err(Error::InvalidId(String::new())));
        assert!(ArgumentId::new("a-b").is_err());
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let af = fixtures::fig9();
        let mut sets: Vec<_> = [vec!["c", "d"], vec!["a", "e"], vec!["a"], vec![], vec!["a", "c"]]
            .into_iter()
            .map(|v| af.set(v).unwrap())
            .collect();
        sets.sort_by(ArgSet::canonical_cmp);
        let rendered: Vec<Vec<&str>> = sets
            .iter()
            .map(|&s| af.names(s).into_iter().map(|a| a.as_str()).collect())
            .collect();
        assert_eq!(
            rendered,
            vec![vec![], vec!["a"], vec!["a", "c"], vec!["a", "e"], vec!["c", "d"]]
        );
    }

    #[test]
    fn attacked_by_examples() {
        let af = fixtures::fig9();
        let s = |v: &[&str]| af.set(v.iter().copied()).unwrap();
        assert_eq!(af.attacked_by(s(&["a"])).unwrap(), s(&["b"]));
        assert_eq!(af.attacked_by(ArgSet::EMPTY).unwrap(), ArgSet::EMPTY);
        assert_eq!(af.attacked_by(s(&["a", "c", "d"])).unwrap(), s(&["b", "e"]));
        assert_eq!(af.attacked_by(ArgSet::singleton(7)), Err(Error::ForeignSet));
    }

    #[test]
    fn direct_attackers_examples() {
        let af = fixtures::fig9();
        assert_eq!(af.direct_attackers("a").unwrap(), ArgSet::EMPTY);
        assert_eq!(
            af.direct_attackers("b").unwrap(),
            af.set(["a", "d", "e"]).unwrap()
        );
        assert_eq!(
            af.direct_attackers("zz"),
            Err(Error::UnknownArgument("zz".into()))
        );
        let selfloop = ArgumentationFramework::new(["x"], [("x", "x")]).unwrap();
        assert_eq!(selfloop.direct_attackers("x").unwrap(), ArgSet::singleton(0));
    }

    #[test]
    fn builder_rejects_bad_input() {
        assert_eq!(
            ArgumentationFramework::new(["a", "a"], []),
            Err(Error::DuplicateArgument("a".into()))
        );
        assert_eq!(
            ArgumentationFramework::new(["a", "b"], [("a", "b"), ("a", "b")]),
            Err(Error::DuplicateAttack("a".into(), "b".into()))
        );
        assert_eq!(
            ArgumentationFramework::new(["a"], [("a", "c")]),
            Err(Error::UnknownArgument("c".into()))
        );
        let names: Vec<String> = (0..21).map(|i| format!("x{i}")).collect();
        assert_eq!(
            ArgumentationFramework::new(names.iter().map(String::as_str), []),
            Err(Error::TooManyArguments { count: 21, max: 20 })
        );
    }

    #[test]
    fn isomorphism_examples() {
        let af = fixtures::fig9();
        assert_eq!(af.apply_isomorphism(&Isomorphism::identity(&af)).unwrap(), af);

        let swap =
            Isomorphism::from_names([("a", "c"), ("b", "b"), ("c", "a"), ("d", "d"), ("e", "e")]).unwrap();
        let renamed = af.apply_isomorphism(&swap).unwrap();
        assert_eq!(renamed.direct_attackers("c").unwrap(), ArgSet::EMPTY);
        assert!(renamed.attacks_pair(renamed.index_of("b").unwrap(), renamed.index_of("a").unwrap()));

        let two = ArgumentationFramework::new(["a", "b"], [("a", "b")]).unwrap();
        let flipped = two
            .apply_isomorphism(&Isomorphism::from_names([("a", "b"), ("b", "a")]).unwrap())
            .unwrap();
        assert_eq!(
            flipped,
            ArgumentationFramework::new(["b", "a"], [("b", "a")]).unwrap()
        );

        let bad = Isomorphism::from_names([("a", "x"), ("b", "x")]).unwrap();
        assert!(matches!(two.apply_isomorphism(&bad), Err(Error::NotBijective(_))));
    }

    #[test]
    fn components_and_union() {
        let af = fixtures::fig9();
        assert_eq!(af.connected_components(), vec![af.clone()]);

        let pair = ArgumentationFramework::new(["a", "b"], []).unwrap();
        let comps = pair.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], ArgumentationFramework::new(["a"], []).unwrap());

        let f8a = fixtures::f8a();
        let f8b = fixtures::f8b()
            .apply_isomorphism(&Isomorphism::from_names([("a", "x"), ("b", "y"), ("c", "z")]).unwrap())
            .unwrap();
        let union = f8a.disjoint_union(&f8b).unwrap();
        assert_eq!(union.len(), 6);
        assert_eq!(union.connected_components(), vec![f8a.clone(), f8b]);

        let empty = ArgumentationFramework::new([], []).unwrap();
        assert_eq!(f8a.disjoint_union(&empty).unwrap(), f8a);
        assert_eq!(
            f8a.disjoint_union(&fixtures::f8b()),
            Err(Error::IdCollision("a".into()))
        );
        let single = ArgumentationFramework::new(["a"], []).unwrap();
        let other = ArgumentationFramework::new(["b"], []).unwrap();
        assert_eq!(single.disjoint_union(&other).unwrap(), pair);
    }
}
