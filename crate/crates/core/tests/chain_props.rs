use proptest::prelude::*;
use spw_core::chains::{
    chain_balanced, chain_large, chain_small, chain_unbalanced, energy_bound_audit, prop51_audit,
    Case, ChainReport, StepKind,
};
use spw_core::ops::Sign;
use spw_core::{make_field, FSet};

fn arb_set(max: usize) -> impl Strategy<Value = FSet> {
    prop_oneof![
        Just(5u64),
        Just(7),
        Just(11),
        Just(13),
        Just(17),
        Just(31),
        Just(61)
    ]
    .prop_flat_map(move |p| {
        let f = make_field(p).unwrap();
        proptest::collection::vec(0..p as u32, 1..max).prop_map(move |v| FSet::from_elems(&f, v))
    })
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

fn sound(r: &ChainReport) -> Result<(), TestCaseError> {
    prop_assert!(!r.violation, "{:?}", r.failures());
    for s in &r.steps {
        prop_assert!(
            s.lhs.is_positive() || s.kind == StepKind::Exact,
            "{}",
            s.name
        );
        if s.kind == StepKind::Diagnostic {
            prop_assert!(s.ratio().is_positive(), "{}", s.name);
        }
    }
    Ok(())
}

fn cards(r: &ChainReport) -> Vec<(String, String, String)> {
    r.steps
        .iter()
        .map(|s| {
            (
                s.name.clone(),
                s.lhs.reduced().to_string(),
                s.rhs.reduced().to_string(),
            )
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn single_set_chains_are_sound(a in arb_set(9), s in sign()) {
        sound(&chain_small(&a, s).unwrap())?;
        let large = chain_large(&a, s).unwrap();
        sound(&large)?;
        if large.case == Some(Case::Club) {
            prop_assert!((a.len() * a.len()) as u64 > a.p() as u64);
        }
        sound(&energy_bound_audit(&a).unwrap())?;
    }

    #[test]
    fn pair_chains_are_sound(a in arb_set(8), seed in any::<u64>()) {
        let f = a.field().clone();
        let b = FSet::from_elems(&f, (0..5u64).map(|i| ((seed >> (8 * i)) % a.p() as u64) as u32));
        sound(&prop51_audit(&a, &b).unwrap())?;
        sound(&chain_unbalanced(&a, &b).unwrap())?;
        sound(&chain_balanced(&a, &b).unwrap())?;
    }

    #[test]
    fn reports_are_dilation_invariant(a in arb_set(8), u in 1u32..1000, s in sign()) {
        let u = 1 + u % (a.p() - 1);
        let ua = a.scale(u);
        let pairs = [
            (chain_small(&a, s).unwrap(), chain_small(&ua, s).unwrap()),
            (chain_large(&a, s).unwrap(), chain_large(&ua, s).unwrap()),
            (chain_balanced(&a, &a).unwrap(), chain_balanced(&ua, &ua).unwrap()),
            (prop51_audit(&a, &a).unwrap(), prop51_audit(&ua, &ua).unwrap()),
        ];
        for (x, y) in pairs {
            prop_assert_eq!(cards(&x), cards(&y));
            prop_assert_eq!(
                x.final_ratio.map(|f| f.exact.to_string()),
                y.final_ratio.map(|f| f.exact.to_string())
            );
            prop_assert_eq!(x.case, y.case);
        }
    }

    #[test]
    fn reports_are_deterministic(a in arb_set(8), s in sign()) {
        let x = serde_json::to_string(&chain_large(&a, s).unwrap()).unwrap();
        let y = serde_json::to_string(&chain_large(&a, s).unwrap()).unwrap();
        prop_assert_eq!(x, y);
    }
}
