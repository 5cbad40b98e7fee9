use std::collections::BTreeSet;

use argrank::format::{parse_apx, parse_json, serialize, Format};
use argrank::power::score_all;
use argrank::properties::{group_compare, GroupComparison};
use argrank::ranking::{rank, Fixed5, PiScore};
use argrank::semantics::{enumerate, grounded_fixpoint};
use argrank::{ArgSet, ArgumentId, ArgumentationFramework, Isomorphism, PowerIndex, Semantics};
use num_rational::BigRational;
use proptest::prelude::*;

const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn framework() -> impl Strategy<Value = ArgumentationFramework> {
    (1usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let attacks: Vec<(&str, &str)> = bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(k, _)| (NAMES[k / n], NAMES[k % n]))
                .collect();
            ArgumentationFramework::new(NAMES[..n].iter().copied(), attacks).unwrap()
        })
    })
}

fn permuted(af: ArgumentationFramework) -> impl Strategy<Value = (ArgumentationFramework, Vec<usize>)> {
    let n = af.len();
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |p| (af.clone(), p))
}

fn named(af: &ArgumentationFramework, s: ArgSet) -> BTreeSet<String> {
    af.names(s).into_iter().map(|a| a.to_string()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apx_and_json_round_trip(af in framework()) {
        prop_assert_eq!(parse_apx(&serialize(&af, Format::Apx)).unwrap(), af.clone());
        prop_assert_eq!(parse_json(&serialize(&af, Format::Json)).unwrap(), af);
    }

    #[test]
    fn family_inclusions(af in framework()) {
        let fam = |s| enumerate(&af, s).unwrap();
        let (cf, adm, com, pre, stb, gr) = (
            fam(Semantics::ConflictFree),
            fam(Semantics::Admissible),
            fam(Semantics::Complete),
            fam(Semantics::Preferred),
            fam(Semantics::Stable),
            fam(Semantics::Grounded),
        );
        prop_assert!(adm.iter().all(|e| cf.contains(e)));
        prop_assert!(com.iter().all(|e| adm.contains(e)));
        prop_assert!(pre.iter().all(|e| com.contains(e)));
        prop_assert!(stb.iter().all(|e| pre.contains(e)));
        prop_assert_eq!(gr.sets(), &[grounded_fixpoint(&af)]);
        prop_assert!(com.contains(grounded_fixpoint(&af)));
        prop_assert!(com.iter().all(|e| grounded_fixpoint(&af).is_subset(e)));
        prop_assert!(!pre.is_empty());
    }

    #[test]
    fn renaming_preserves_families_and_scores((af, perm) in framework().prop_flat_map(permuted)) {
        let iso = Isomorphism::from_permutation(&af, &perm);
        let image = af.apply_isomorphism(&iso).unwrap();
        let rename = |s: BTreeSet<String>| -> BTreeSet<String> {
            s.into_iter()
                .map(|a| iso.apply(&ArgumentId::new(a).unwrap()).unwrap().to_string())
                .collect()
        };
        for sigma in Semantics::ALL {
            let before: BTreeSet<_> = enumerate(&af, sigma).unwrap().iter().map(|e| rename(named(&af, e))).collect();
            let after: BTreeSet<_> = enumerate(&image, sigma).unwrap().iter().map(|e| named(&image, e)).collect();
            prop_assert_eq!(before, after);
        }
        let scores = score_all(&af, Semantics::Complete, PowerIndex::Banzhaf).unwrap();
        let moved = score_all(&image, Semantics::Complete, PowerIndex::Banzhaf).unwrap();
        for s in &scores {
            let target = iso.apply(&s.argument).unwrap();
            let t = moved.iter().find(|m| &m.argument == target).unwrap();
            prop_assert_eq!(&s.pi_in, &t.pi_in);
            prop_assert_eq!(&s.pi_out, &t.pi_out);
        }
    }

    #[test]
    fn components_partition_arguments_and_attacks(af in framework()) {
        let parts = af.connected_components();
        let total: usize = parts.iter().map(|c| c.len()).sum();
        prop_assert_eq!(total, af.len());
        let attacks: usize = parts.iter().map(|c| c.attack_count()).sum();
        prop_assert_eq!(attacks, af.attack_count());
        let mut seen = BTreeSet::new();
        for c in &parts {
            for a in c.arguments() {
                prop_assert!(seen.insert(a.to_string()));
            }
        }
    }

    #[test]
    fn rounding_is_nearest_half_away(p in -2_000_000i64..2_000_000, q in 1i64..5_000) {
        let x = BigRational::new(p.into(), q.into());
        let got = Fixed5::round(&x).units() as i128;
        // |x·10⁵ − got| ≤ 1/2, ties away from zero.
        let scaled_num = p as i128 * 100_000;
        let diff2 = 2 * (scaled_num - got * q as i128);
        prop_assert!(diff2.abs() <= q as i128);
        if diff2.abs() == q as i128 {
            prop_assert!(got.signum() == (p as i128).signum());
        }
    }

    #[test]
    fn ranking_is_a_total_preorder(values in proptest::collection::vec((-5i64..5, -5i64..5), 1..7)) {
        let scores: Vec<PiScore> = values
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| PiScore::new(
                ArgumentId::new(NAMES[i % 6].to_owned() + &i.to_string()).unwrap(),
                BigRational::from_integer(x.into()),
                BigRational::from_integer(y.into()),
            ))
            .collect();
        let r = rank(&scores).unwrap();
        for a in &scores {
            for b in &scores {
                let (x, y) = (a.argument.as_str(), b.argument.as_str());
                prop_assert!(r.geq(x, y) || r.geq(y, x));
                let key_a = (a.pi_in.clone(), -a.pi_out.clone());
                let key_b = (b.pi_in.clone(), -b.pi_out.clone());
                prop_assert_eq!(r.geq(x, y), key_a >= key_b);
            }
        }
    }

    #[test]
    fn group_compare_matches_injection_search(
        classes in proptest::collection::vec(0usize..3, 5),
        s1 in 0u64..32,
        s2 in 0u64..32,
    ) {
        let af = ArgumentationFramework::new(NAMES[..5].iter().copied(), []).unwrap();
        let mut by_class = vec![Vec::new(); 3];
        for (i, &c) in classes.iter().enumerate() {
            by_class[c].push(ArgumentId::new(NAMES[i]).unwrap());
        }
        let ranking = argrank::Ranking::from_classes(by_class.into_iter().filter(|c| !c.is_empty()).collect());
        let class = |i: usize| ranking.class_of(NAMES[i]).unwrap();
        let (a, b) = (ArgSet::from_bits(s1), ArgSet::from_bits(s2));
        let a_items: Vec<usize> = a.iter().collect();
        let b_items: Vec<usize> = b.iter().collect();
        // Brute force over injections b → a.
        fn search(b: &[usize], a: &[usize], used: &mut Vec<bool>, class: &dyn Fn(usize) -> usize, strict: bool, best: &mut Option<bool>) {
            let Some((&x, rest)) = b.split_first() else {
                *best = Some(best.unwrap_or(false) || strict);
                return;
            };
            for (k, &y) in a.iter().enumerate() {
                if !used[k] && class(y) <= class(x) {
                    used[k] = true;
                    search(rest, a, used, class, strict || class(y) < class(x), best);
                    used[k] = false;
                }
            }
        }
        let mut best = None;
        search(&b_items, &a_items, &mut vec![false; a_items.len()], &class, a_items.len() > b_items.len(), &mut best);
        let want = match best {
            None => GroupComparison::Neither,
            Some(true) => GroupComparison::Strict,
            Some(false) => GroupComparison::Geq,
        };
        prop_assert_eq!(group_compare(&af, &ranking, a, b).unwrap(), want);
    }
}
