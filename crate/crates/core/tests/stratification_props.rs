mod common;

use eqcoh::rings::{euler, euler_product, Theory};
use eqcoh::root_system::Weight;
use eqcoh::stratification::{assemble_module, assemble_module_along, StratificationError, StratumPoset};
use proptest::prelude::*;

/// A random poset on up to 8 strata: covers `i < j` for `i < j` chosen by a
/// bit mask, with each stratum carrying a random normal weight multiset.
fn poset_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<Vec<Weight>>)> {
    (1usize..=8).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
        let np = pairs.len();
        let weights = prop::collection::vec(
            prop::collection::vec(
                prop::collection::vec(-2i64..=2, 2)
                    .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
                    .prop_map(Weight::new),
                0..=3,
            ),
            n,
        );
        (Just(n), prop::collection::vec(prop::bool::weighted(0.3), np), weights).prop_map(move |(n, mask, ws)| {
            let covers = pairs.iter().zip(mask).filter(|(_, m)| *m).map(|(p, _)| *p).collect();
            (n, covers, ws)
        })
    })
}

fn build(n: usize, covers: &[(usize, usize)], weights: &[Vec<Weight>], theory: Theory) -> StratumPoset {
    let labels: Vec<String> = (0..n).map(|i| format!("b{i}")).collect();
    let cover_labels: Vec<(String, String)> =
        covers.iter().map(|&(a, b)| (labels[a].clone(), labels[b].clone())).collect();
    let mut p = StratumPoset::from_covers(&labels, &cover_labels).unwrap();
    for (l, ws) in labels.iter().zip(weights) {
        let e = euler(theory, 2, ws).unwrap();
        p = p.with_payload(l, ws.len() as u32, e).unwrap();
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn assembly_is_independent_of_the_extension(
        (n, covers, weights) in poset_strategy(),
        t in 0usize..3,
    ) {
        let theory = [Theory::H, Theory::K, Theory::mu()][t];
        let poset = build(n, &covers, &weights, theory);
        let leq = common::closure(n, &covers);
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(poset.leq_idx(a, b), leq[a][b]);
            }
        }
        let reference = assemble_module(&poset, theory).unwrap();
        prop_assert_eq!(reference.rank(), n);
        prop_assert_eq!(reference.poincare_series().at_one(), n as u64);
        for g in &reference.generators {
            prop_assert_eq!(g.class.degree(), Some(g.shift as i64));
        }
        for ext in common::all_linear_extensions(&leq) {
            let order: Vec<&str> = ext.iter().map(|&k| poset.labels()[k].as_str()).collect();
            let dec = assemble_module_along(&poset, theory, &order).unwrap();
            prop_assert_eq!(dec.rank(), reference.rank());
            prop_assert_eq!(dec.shifts(), reference.shifts());
            prop_assert_eq!(dec.class_multiset(), reference.class_multiset());
        }
    }

    #[test]
    fn prefixes_of_the_extension_are_open((n, covers, weights) in poset_strategy()) {
        let poset = build(n, &covers, &weights, Theory::H);
        let ext = poset.linear_extension();
        for k in 0..=ext.len() {
            prop_assert!(poset.is_open(ext[..k].iter().map(String::as_str)).unwrap());
        }
        let extensions = common::all_linear_extensions(&common::closure(n, &covers));
        let ours: Vec<usize> = ext.iter().map(|l| poset.index_of(l).unwrap()).collect();
        prop_assert!(extensions.contains(&ours));
    }
}

#[test]
fn a_zero_weight_anywhere_is_rejected() {
    let zero = Weight::new(vec![0, 0]);
    for theory in [Theory::H, Theory::K, Theory::mu()] {
        let labels = ["a", "b", "c"];
        let good = euler(theory, 2, &[Weight::new(vec![1, 0])]).unwrap();
        let bad = euler_product(theory, 2, &[Weight::new(vec![1, 0]), zero.clone()]).unwrap();
        let poset = StratumPoset::from_covers(&labels, &[("c", "b"), ("b", "a")])
            .unwrap()
            .with_payload("a", 0, euler(theory, 2, &[]).unwrap())
            .unwrap()
            .with_payload("b", 1, good)
            .unwrap()
            .with_payload("c", 2, bad)
            .unwrap();
        assert_eq!(
            assemble_module(&poset, theory),
            Err(StratificationError::ZeroDivisorEulerClass("c".into()))
        );
    }
}

#[test]
fn a2_bruhat_extension_starts_at_the_longest_element() {
    let model = eqcoh::flag::flag_model(&eqcoh::flag::FlagSpec::full("A2".parse().unwrap())).unwrap();
    let strata = eqcoh::bb::bb_stratify(&model, model.coweight.as_ref().unwrap(), Theory::H).unwrap();
    let ext = strata.poset.linear_extension();
    assert_eq!(ext.first().unwrap(), "s1s2s1");
    assert_eq!(ext.last().unwrap(), "e");
}
