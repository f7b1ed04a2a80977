//! Randomised checks on partitions larger than the exhaustive ranges.

use proptest::prelude::*;
use spinhom::bars::{bar_core, reg_preimages};
use spinhom::branching::{eps_drop, extremal, ladder_obstruction, Direction};
use spinhom::classify::{classify_homogeneous, special_decompose, Verdict};
use spinhom::dimensions::{ddeg, regn_multiplicity, spin_dim};
use spinhom::ladders::{content, regularize};
use spinhom::partitions::scaled_add;
use spinhom::{OddPrime, Partition};

const P3: OddPrime = OddPrime::THREE;

fn strict() -> impl Strategy<Value = Partition> {
    prop::collection::btree_set(1usize..40, 0..8).prop_map(|s| Partition::from_unsorted(s.into_iter().collect()))
}

fn prime() -> impl Strategy<Value = OddPrime> {
    prop_oneof![Just(OddPrime::THREE), Just(OddPrime::FIVE), Just(OddPrime::SEVEN)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn text_form_round_trips(l in strict()) {
        prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
    }

    #[test]
    fn regularisation_keeps_content_and_block(l in strict(), p in prime()) {
        let r = regularize(&l, p).unwrap();
        prop_assert!(r.is_restricted(p));
        prop_assert_eq!(r.size(), l.size());
        prop_assert_eq!(content(&r, p).unwrap(), content(&l, p).unwrap());
        prop_assert_eq!(bar_core(&r, p).unwrap(), bar_core(&l, p).unwrap());
        prop_assert_eq!(regularize(&r, p).unwrap(), r.clone());
    }

    #[test]
    fn fibres_contain_their_source(l in prop::collection::btree_set(1usize..16, 0..5)
        .prop_map(|s| Partition::from_unsorted(s.into_iter().collect())))
    {
        let r = regularize(&l, P3).unwrap();
        prop_assert!(reg_preimages(&r, P3).unwrap().contains(&l));
    }

    #[test]
    fn ddeg_times_multiplicity_is_dimension(l in strict(), p in prime()) {
        let m = regn_multiplicity(&l, p).unwrap();
        prop_assert_eq!(ddeg(&l, p).unwrap() * m.s_to_d, spin_dim(&l).unwrap().dim);
    }

    #[test]
    fn top_residue_obstruction_is_eps_drop(l in strict(), p in prime()) {
        let i = p.half();
        prop_assert_eq!(ladder_obstruction(&l, i, p).unwrap(), eps_drop(&l, i, p).unwrap());
    }

    #[test]
    fn extremal_moves_count_nodes(l in strict(), i in 0usize..2) {
        if let Ok(e) = extremal(&l, i, P3, Direction::Up) {
            prop_assert_eq!(e.result.size(), l.size() + e.count);
            let back = extremal(&e.result, i, P3, Direction::Down).unwrap();
            prop_assert!(back.result.size() <= l.size());
        }
    }

    #[test]
    fn special_partitions_decompose(l in strict()) {
        if let Some(d) = special_decompose(&l).unwrap() {
            prop_assert_eq!(scaled_add(&d.core, 3, &d.alpha).unwrap(), l);
        }
    }

    #[test]
    fn verdicts_round_trip_through_json(l in prop::collection::btree_set(1usize..14, 0..5)
        .prop_map(|s| Partition::from_unsorted(s.into_iter().collect())))
    {
        let v = classify_homogeneous(&l).unwrap();
        let back: Verdict = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        prop_assert_eq!(back, v);
    }
}
