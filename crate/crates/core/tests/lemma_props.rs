use num_rational::Ratio;
use proptest::prelude::*;
use spw_core::combin::Combinations;
use spw_core::energy::multiplicative_energy_value;
use spw_core::lemmas::{
    chang_decompose, descent_subset, gk_witness, greedy_cover, katz_shen_subset, min_subset_card,
    mixed_plunnecke, plunnecke_audit, select_j0, union_of_translates, xi_search, WitnessVariant,
};
use spw_core::ops::{ratio_set_is_proper, signed_combination, Sign};
use spw_core::{make_field, FSet};

/// Smallest `expr_card / |A₁|²` over the exhaustive sweep, as `(num, den)`.
const WITNESS_FLOOR: (usize, usize) = (1, 1);

fn arb_sets(max: usize) -> impl Strategy<Value = (FSet, FSet)> {
    prop_oneof![
        Just(5u64),
        Just(7),
        Just(11),
        Just(13),
        Just(31),
        Just(61),
        Just(101)
    ]
    .prop_flat_map(move |p| {
        let f = make_field(p).unwrap();
        let v = || proptest::collection::vec(0..p as u32, 1..max);
        (v(), v()).prop_map(move |(x, y)| (FSet::from_elems(&f, x), FSet::from_elems(&f, y)))
    })
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

proptest! {
    #[test]
    fn cover_meets_coverage_and_budget((b1, b2) in arb_sets(30), mode in sign()) {
        let c = greedy_cover(&b1, &b2, mode).unwrap();
        prop_assert!(c.coverage_holds());
        prop_assert!(c.budget_holds());
        prop_assert!(c.covered.is_subset(&b1));
        let union = union_of_translates(&b2, mode, &c.translates);
        prop_assert_eq!(&union.intersection(&b1), &c.covered);
        let shape = match mode { Sign::Plus => b2.clone(), Sign::Minus => b2.negate() };
        let k = signed_combination(&[(&b1, Sign::Plus), (&shape, Sign::Minus)]).unwrap().len();
        prop_assert_eq!(&c.ratio_k.num * b2.len() as u64, &c.ratio_k.den * k as u64);
    }

    #[test]
    fn chang_partition_pigeonhole_constant((y, z) in arb_sets(30)) {
        let d = chang_decompose(&y, &z).unwrap();
        prop_assert!(d.partition_holds());
        prop_assert!(d.pigeonhole_holds());
        prop_assert!(d.general_constant_holds());
        prop_assert_eq!(d.energy, multiplicative_energy_value(&y, &z));
        let union = d.buckets.values().fold(FSet::empty(y.field()), |u, b| u.union(b));
        let hit: Vec<_> = d.profile.iter().filter(|(_, c)| *c > 0).map(|(e, _)| *e).collect();
        prop_assert_eq!(union, FSet::from_elems(y.field(), hit));
        if let Ok(j) = select_j0(&d) {
            prop_assert!(j.holds(&d));
        }
    }

    #[test]
    fn chang_spec_constant_on_equal_sets((y, _z) in arb_sets(30)) {
        let d = chang_decompose(&y, &y).unwrap();
        prop_assert!(d.chang_constant_holds());
    }

    #[test]
    fn xi_bound((a, _b) in arb_sets(20)) {
        prop_assume!(a.len() >= 2);
        prop_assert!(xi_search(&a).unwrap().bound_holds());
    }

    #[test]
    fn plunnecke_checks((a, b) in arb_sets(25), k in 2u32..=6) {
        prop_assert!(plunnecke_audit(&a, &b, k).unwrap().pass());
        prop_assert!(mixed_plunnecke(&a, &b).unwrap().pass);
    }

    #[test]
    fn subset_size_floor((a, b) in arb_sets(9), num in 1u64..10) {
        let eps = Ratio::new(num, 10);
        let floor = min_subset_card(a.len(), eps);
        let best = katz_shen_subset(&a, std::slice::from_ref(&b), eps).unwrap();
        prop_assert!(best.subset.is_subset(&a));
        prop_assert!(best.subset.len() >= floor);
        let greedy = descent_subset(&a, &[b], eps).unwrap();
        prop_assert!(greedy.subset.len() >= floor);
        prop_assert!(best.ratio <= greedy.ratio);
    }
}

#[test]
fn witness_regression_floor() {
    for variant in [WitnessVariant::PlusPlus, WitnessVariant::PlusMinus] {
        for p in [5u64, 7, 11, 13] {
            let f = make_field(p).unwrap();
            for n in 2..=5 {
                for idx in Combinations::new(p as usize, n) {
                    let a = FSet::from_elems(&f, idx.iter().map(|&i| i as u32));
                    if !ratio_set_is_proper(&a).unwrap() {
                        continue;
                    }
                    let w = gk_witness(&a, variant, &[]).unwrap();
                    assert!(
                        w.expr_card * WITNESS_FLOOR.1 >= WITNESS_FLOOR.0 * n * n,
                        "{variant:?} {a:?}: {}",
                        w.expr_card
                    );
                }
            }
        }
    }
}
