//! Cross-module invariants, exhaustive at small sizes and randomized beyond.

use std::collections::BTreeSet;

use nccube_core::categories::{closure, pi_k, CategorySpec, NamedCategory};
use nccube_core::groups::{GroupPresentation, Word};
use nccube_core::partition::{enumerate, Partition, Sign};
use nccube_core::spheres::{
    congruence_close, relations_twisted, relations_untwisted, standard_parametrization,
    MonomialRelation, SphereSpec,
};
use nccube_core::tensor::{
    mobius, span_dim, span_dim_dense, t_map, tbar_map, verify_categorical, ExactMatrix,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn shapes_up_to(total: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 0..=total {
        for k in 0..=m {
            out.push((k, m - k));
        }
    }
    out
}

fn all_partitions(total: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for (k, l) in shapes_up_to(total) {
        out.extend(enumerate(k, l).unwrap());
    }
    out
}

#[test]
fn signature_survives_rotations_and_involution() {
    for pi in all_partitions(8) {
        if !pi.is_even() {
            continue;
        }
        let s = pi.signature().unwrap();
        assert_eq!(pi.involution().signature().unwrap(), s, "{pi:?}");
        if pi.upper_count() > 0 {
            assert_eq!(pi.rotate().unwrap().signature().unwrap(), s, "{pi:?}");
            assert_eq!(pi.rotate_right_down().unwrap().signature().unwrap(), s, "{pi:?}");
        }
        if pi.lower_count() > 0 {
            assert_eq!(pi.unrotate().unwrap().signature().unwrap(), s, "{pi:?}");
            assert_eq!(pi.rotate_right_up().unwrap().signature().unwrap(), s, "{pi:?}");
        }
    }
}

#[test]
fn noncrossing_even_partitions_have_positive_signature() {
    for pi in all_partitions(8) {
        if pi.is_even() && pi.is_noncrossing() {
            assert_eq!(pi.signature().unwrap(), Sign::Plus, "{pi:?}");
        }
    }
}

#[test]
fn rotations_invert_each_other() {
    for pi in all_partitions(6) {
        if pi.upper_count() > 0 {
            assert_eq!(pi.rotate().unwrap().unrotate().unwrap(), pi);
            assert_eq!(pi.rotate_right_down().unwrap().rotate_right_up().unwrap(), pi);
        }
        if pi.lower_count() > 0 {
            assert_eq!(pi.unrotate().unwrap().rotate().unwrap(), pi);
            assert_eq!(pi.rotate_right_up().unwrap().rotate_right_down().unwrap(), pi);
        }
        assert_eq!(pi.involution().involution(), pi);
    }
}

#[test]
fn coarsening_is_a_partial_order() {
    let all: Vec<Partition> = enumerate(2, 3).unwrap().collect();
    for pi in &all {
        assert!(pi.coarsens(pi));
        let coarser = pi.coarsenings();
        // Every produced coarsening compares correctly and nothing is missed.
        for tau in &all {
            assert_eq!(tau.coarsens(pi), coarser.contains(tau), "{tau:?} vs {pi:?}");
        }
        for tau in &coarser {
            if tau.coarsens(pi) && pi.coarsens(tau) {
                assert_eq!(tau, pi);
            }
            for rho in tau.coarsenings() {
                assert!(rho.coarsens(pi), "transitivity {rho:?} {tau:?} {pi:?}");
            }
        }
    }
}

#[test]
fn kernel_of_own_labels_reproduces_partition() {
    for pi in all_partitions(6) {
        let (k, l) = pi.shape();
        let upper: Vec<u32> = (0..k).map(|t| pi.label_at(t)).collect();
        let lower: Vec<u32> = (1..=l).map(|p| pi.label_at(k + l - p)).collect();
        assert_eq!(Partition::kernel(&upper, &lower), pi);
    }
}

#[test]
fn named_families_are_closed_under_the_operations() {
    let rotation_closed = [
        NamedCategory::P,
        NamedCategory::P2,
        NamedCategory::PEven,
        NamedCategory::NC,
        NamedCategory::NC2,
        NamedCategory::NCEven,
        NamedCategory::PEvenStar,
        NamedCategory::PEvenInf,
    ];
    let graded = [
        NamedCategory::PVert,
        NamedCategory::PVertStar,
        NamedCategory::PVertInf,
        NamedCategory::SInf,
        NamedCategory::SInfStar,
    ];
    let small = all_partitions(4);
    for name in rotation_closed.iter().chain(&graded) {
        let spec = CategorySpec::named(*name);
        let members: Vec<&Partition> =
            small.iter().filter(|pi| spec.member(pi).unwrap()).collect();
        for pi in &members {
            assert!(spec.member(&pi.involution()).unwrap(), "{name:?} involution {pi:?}");
            for sigma in &members {
                assert!(spec.member(&pi.tensor(sigma)).unwrap(), "{name:?} tensor");
                if pi.lower_count() == sigma.upper_count() {
                    let (composite, _) = pi.compose(sigma).unwrap();
                    assert!(spec.member(&composite).unwrap(), "{name:?} compose");
                }
            }
        }
    }
    for name in rotation_closed {
        let spec = CategorySpec::named(name);
        for pi in small.iter().filter(|pi| spec.member(pi).unwrap()) {
            if pi.upper_count() > 0 {
                assert!(spec.member(&pi.rotate().unwrap()).unwrap());
                assert!(spec.member(&pi.rotate_right_down().unwrap()).unwrap());
            }
            if pi.lower_count() > 0 {
                assert!(spec.member(&pi.unrotate().unwrap()).unwrap());
                assert!(spec.member(&pi.rotate_right_up().unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn signature_families_form_a_chain() {
    let nc_even = CategorySpec::named(NamedCategory::NCEven);
    let inf = CategorySpec::named(NamedCategory::PEvenInf);
    let star = CategorySpec::named(NamedCategory::PEvenStar);
    let even = CategorySpec::named(NamedCategory::PEven);
    let mut strict = [false; 3];
    for pi in all_partitions(8) {
        let chain = [
            nc_even.member(&pi).unwrap(),
            inf.member(&pi).unwrap(),
            star.member(&pi).unwrap(),
            even.member(&pi).unwrap(),
        ];
        for i in 0..3 {
            assert!(!chain[i] || chain[i + 1], "{pi:?}");
            strict[i] |= !chain[i] && chain[i + 1];
        }
    }
    // The chain is strict somewhere within eight legs.
    assert_eq!(strict, [true; 3]);
}

#[test]
fn signature_forms_bound_the_word_forms() {
    use nccube_core::categories::{all_coarsenings_positive, two_block_coarsenings_positive};
    let star = CategorySpec::named(NamedCategory::PEvenStar);
    let inf = CategorySpec::named(NamedCategory::PEvenInf);
    let mut diverged = false;
    for pi in all_partitions(8) {
        let star_sig = pi.is_even() && two_block_coarsenings_positive(&pi);
        let inf_sig = pi.is_even() && all_coarsenings_positive(&pi);
        let star_word = star.member(&pi).unwrap();
        let inf_word = inf.member(&pi).unwrap();
        // The word forms are never weaker, and match exactly below eight legs.
        assert!(!star_word || star_sig, "{pi:?}");
        assert!(!inf_word || inf_sig, "{pi:?}");
        if pi.leg_count() < 8 {
            assert_eq!(star_word, star_sig, "{pi:?}");
            assert_eq!(inf_word, inf_sig, "{pi:?}");
        } else {
            diverged |= star_word != star_sig;
        }
    }
    assert!(diverged);
}

#[test]
fn tensor_and_composition_laws_hold_exhaustively() {
    let shapes = shapes_up_to(2);
    for n in [2usize, 3] {
        for (k1, l1) in &shapes {
            for (k2, l2) in &shapes {
                for pi in enumerate(*k1, *l1).unwrap() {
                    for sigma in enumerate(*k2, *l2).unwrap() {
                        assert!(verify_categorical(&pi, &sigma, n).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn twisted_maps_match_untwisted_on_noncrossing_even_partitions() {
    for pi in all_partitions(8) {
        if !(pi.is_even() && pi.is_noncrossing()) {
            continue;
        }
        assert_eq!(tbar_map(&pi, 2).unwrap(), t_map(&pi, 2).unwrap(), "{pi:?}");
    }
    for pi in all_partitions(6) {
        if pi.is_even() && pi.is_noncrossing() {
            assert_eq!(tbar_map(&pi, 3).unwrap(), t_map(&pi, 3).unwrap(), "{pi:?}");
        }
    }
}

#[test]
fn mobius_sums_telescope_over_intervals() {
    for pi in enumerate(0, 5).unwrap() {
        for sigma in pi.coarsenings() {
            let total: BigInt = pi
                .coarsenings()
                .iter()
                .filter(|tau| sigma.coarsens(tau))
                .map(|tau| mobius(&sigma, tau))
                .sum();
            let expected = if sigma == pi { BigInt::one() } else { BigInt::zero() };
            assert_eq!(total, expected, "{sigma:?} within {pi:?}");
        }
    }
}

#[test]
fn span_dimension_methods_agree() {
    for n in 1..=3usize {
        for (k, l) in [(1, 1), (2, 1), (2, 2)] {
            let all: Vec<Partition> = enumerate(k, l).unwrap().collect();
            assert_eq!(span_dim(&all, n).unwrap(), span_dim_dense(&all, n).unwrap());
            let pairings: Vec<Partition> =
                all.iter().filter(|pi| pi.is_pairing()).cloned().collect();
            assert_eq!(span_dim(&pairings, n).unwrap(), span_dim_dense(&pairings, n).unwrap());
        }
    }
}

#[test]
fn full_partition_families_span_freely_for_large_alphabets() {
    for k in 1..=3usize {
        let all: Vec<Partition> = enumerate(k, k).unwrap().collect();
        assert_eq!(span_dim(&all, 2 * k).unwrap(), all.len());
    }
}

#[test]
fn empty_generators_close_to_noncrossing_pairings() {
    let got = closure(&[], 6).unwrap();
    let nc2 = CategorySpec::named(NamedCategory::NC2);
    for (k, l) in shapes_up_to(6) {
        let expected: BTreeSet<Partition> =
            enumerate(k, l).unwrap().filter(|pi| nc2.member(pi).unwrap()).collect();
        let found: BTreeSet<Partition> =
            got.iter().filter(|pi| pi.shape() == (k, l)).cloned().collect();
        assert_eq!(found, expected, "shape ({k},{l})");
    }
}

#[test]
fn pi_k_is_vertical_even_and_mirrored() {
    for k in 1..=4usize {
        let pi = pi_k(k);
        assert_eq!(pi.shape(), (2 * k, 2 * k));
        assert!(pi.is_vertical());
        assert!(pi.is_even());
        assert_eq!(pi.block_count(), k);
        assert_eq!(pi.involution(), pi);
    }
}

#[test]
fn sphere_relations_grow_with_the_presentation() {
    // More relations can only enlarge the family of partitions that hold.
    for k_max in 1..=2usize {
        let free = standard_parametrization(&SphereSpec::free(4), k_max).unwrap();
        let commutative = standard_parametrization(&SphereSpec::commutative(4), k_max).unwrap();
        for k in 0..k_max {
            let free_set: BTreeSet<_> = free.untwisted[k].iter().cloned().collect();
            let comm_set: BTreeSet<_> = commutative.untwisted[k].iter().cloned().collect();
            assert!(free_set.is_subset(&comm_set));
            let free_tw: BTreeSet<_> = free.twisted[k].iter().cloned().collect();
            let comm_tw: BTreeSet<_> = commutative.twisted[k].iter().cloned().collect();
            assert!(free_tw.is_subset(&comm_tw));
        }
    }
}

#[test]
fn twisted_relations_match_untwisted_when_kernels_are_noncrossing() {
    for (k, l) in shapes_up_to(6) {
        if k != l {
            continue;
        }
        for pi in enumerate(k, l).unwrap() {
            if !pi.is_vertical() {
                continue;
            }
            let all_noncrossing = pi.coarsenings().iter().all(|tau| tau.is_noncrossing());
            if all_noncrossing {
                assert_eq!(
                    relations_twisted(&pi, 3).unwrap(),
                    relations_untwisted(&pi, 3).unwrap(),
                    "{pi:?}"
                );
            }
        }
    }
}

#[test]
fn congruence_tables_refine_under_added_relations() {
    let coarse = congruence_close(&SphereSpec::commutative(3).relations().unwrap(), 3, 3, false)
        .unwrap();
    let fine = congruence_close(&SphereSpec::free(3).relations().unwrap(), 3, 3, false).unwrap();
    for len in 0..=3usize {
        assert!(fine.class_count(len).unwrap() >= coarse.class_count(len).unwrap());
    }
    // Words equal in the fine table stay equal in the coarse one.
    assert_eq!(fine.class_count(2).unwrap(), 9);
    assert_eq!(coarse.class_count(2).unwrap(), 6);
}

fn arb_partition(max_total: usize) -> impl Strategy<Value = Partition> {
    (0..=max_total).prop_flat_map(move |k| {
        let l = max_total - k;
        (
            proptest::collection::vec(0u32..4, k),
            proptest::collection::vec(0u32..4, 0..=l),
        )
            .prop_map(|(u, v)| Partition::kernel(&u, &v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn partition_json_round_trips(pi in arb_partition(7)) {
        let json = serde_json::to_string(&pi).unwrap();
        let back: Partition = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, pi);
    }

    #[test]
    fn tensor_is_associative(
        a in arb_partition(4),
        b in arb_partition(4),
        c in arb_partition(4),
    ) {
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
    }

    #[test]
    fn involution_distributes_over_tensor(
        a in arb_partition(4),
        b in arb_partition(4),
    ) {
        // Mirroring swaps rows but keeps the side-by-side order.
        prop_assert_eq!(a.tensor(&b).involution(), a.involution().tensor(&b.involution()));
    }

    #[test]
    fn monomial_relation_json_round_trips(
        lhs in proptest::collection::vec(1u32..5, 1..5),
        rhs in proptest::collection::vec(1u32..5, 1..5),
        sign in prop_oneof![Just(Sign::Plus), Just(Sign::Minus)],
        zero in any::<bool>(),
    ) {
        let rel = if zero || lhs.len() != rhs.len() {
            MonomialRelation::zero(Word(lhs)).unwrap()
        } else {
            MonomialRelation::equality(Word(lhs), Word(rhs), sign).unwrap()
        };
        let json = serde_json::to_string(&rel).unwrap();
        let back: MonomialRelation = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, rel);
    }

    #[test]
    fn presentation_json_round_trips(
        relations in proptest::collection::vec(
            (proptest::collection::vec(1u32..4, 0..4), proptest::collection::vec(1u32..4, 0..4)),
            0..4,
        ),
    ) {
        let pres = GroupPresentation::new(
            3,
            relations.into_iter().map(|(a, b)| (Word(a), Word(b))).collect(),
        ).unwrap();
        let json = serde_json::to_string(&pres).unwrap();
        let back: GroupPresentation = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, pres);
    }

    #[test]
    fn matrix_json_round_trips(
        entries in proptest::collection::vec(-1000i64..1000, 6),
    ) {
        let mut m = ExactMatrix::zero(2, 3).unwrap();
        for (i, v) in entries.iter().enumerate() {
            m.set(i / 3, i % 3, BigInt::from(*v));
        }
        let json = serde_json::to_string(&m).unwrap();
        let back: ExactMatrix = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, m);
    }
}
