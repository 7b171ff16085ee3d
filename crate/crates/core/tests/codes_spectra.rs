use num_bigint::BigUint;
use proptest::prelude::*;
use tdl_core::cyclic::code_dimension;
use tdl_core::spectra::{
    count_nonzero_on, count_nonzero_on_direct, dual_weight4_count, enumerate_distribution, macwilliams_transform,
    moment_holds, predicted_punctured, predicted_shortened, predicted_three_weight, puncture, shorten,
};
use tdl_core::{build_code, CyclicCode, ExponentSet, FieldContext, PositionSet, TernaryCode, TernaryMatrix};

fn family(m: usize) -> CyclicCode {
    let ctx = FieldContext::new(m).unwrap();
    build_code(&ctx, &ExponentSet::first_family(m).unwrap()).unwrap()
}

fn exponent_sets(m: usize) -> Vec<ExponentSet> {
    let top = m / 2;
    (1u32..1 << (top + 1))
        .map(|mask| (0..=top).filter(|k| mask >> k & 1 == 1).collect::<Vec<_>>())
        .map(|ks| ExponentSet::new(m, &ks).unwrap())
        .collect()
}

#[test]
fn dimension_matches_prediction_for_every_exponent_set() {
    for m in 3..=5 {
        let ctx = FieldContext::new(m).unwrap();
        for e in exponent_sets(m) {
            let code = build_code(&ctx, &e).unwrap();
            assert_eq!(code.dim(), code_dimension(m, &e).unwrap(), "m = {m}, E = {:?}", e.exponents());
            assert!(code.shift_closure_check(), "m = {m}, E = {:?}", e.exponents());
        }
    }
}

#[test]
fn three_weight_family_for_small_m() {
    for m in [3, 5, 7] {
        assert_eq!(enumerate_distribution(&family(m)).unwrap(), predicted_three_weight(m as u32).unwrap());
    }
}

#[test]
fn power_moments_hold_between_code_and_dual() {
    for m in [3, 5] {
        let code = family(m);
        let a = enumerate_distribution(&code).unwrap();
        let b = macwilliams_transform(&a).unwrap();
        for t in 0..=4 {
            assert!(moment_holds(&a, &b, t), "m = {m}, t = {t}");
            assert!(moment_holds(&b, &a, t), "m = {m}, t = {t}, reversed");
        }
        assert_eq!(b.get_int(4), dual_weight4_count(m as u32));
    }
}

#[test]
fn shortening_and_puncturing_are_dual() {
    let code = family(3);
    let dual = code.dual();
    for positions in [vec![0], vec![5], vec![0, 1], vec![3, 11]] {
        let t = PositionSet::new(code.n(), &positions).unwrap();
        let shortened = shorten(&code, &t).unwrap();
        let punctured_dual = puncture(&dual, &t).unwrap();
        assert!(shortened.dual().same_code(&punctured_dual), "T = {positions:?}");
        assert!(puncture(&code, &t).unwrap().dual().same_code(&shorten(&dual, &t).unwrap()));
    }
}

#[test]
fn punctured_dual_low_weights() {
    let code = family(3);
    for (positions, a1, a2) in [(vec![0], 0u32, 0u32), (vec![2, 9], 0, 2)] {
        let t = PositionSet::new(code.n(), &positions).unwrap();
        let d = enumerate_distribution(&shorten(&code, &t).unwrap().dual()).unwrap();
        assert_eq!((d.get(1), d.get(2)), (a1.into(), a2.into()), "T = {positions:?}");
    }
}

#[test]
fn closed_forms_agree_with_enumeration_at_m3_and_m5() {
    for m in [3usize, 5] {
        let code = family(m);
        for t in 1..=2usize {
            let p = PositionSet::prefix(code.n(), t).unwrap();
            let short = enumerate_distribution(&shorten(&code, &p).unwrap()).unwrap();
            let punct = enumerate_distribution(&puncture(&code, &p).unwrap()).unwrap();
            assert_eq!(short, predicted_shortened(m as u32, t as u32).unwrap(), "m = {m}, t = {t}");
            assert_eq!(punct, predicted_punctured(m as u32, t as u32).unwrap(), "m = {m}, t = {t}");
            // The transforms of the closed forms are integral and non-negative.
            macwilliams_transform(&short).unwrap();
            macwilliams_transform(&punct).unwrap();
        }
    }
}

#[test]
fn nonzero_counts_by_inclusion_exclusion() {
    let code = family(5);
    let t = PositionSet::new(code.n(), &[17, 40]).unwrap();
    assert_eq!(count_nonzero_on_direct(&code, &t, 72).unwrap(), BigUint::from(3834u32));
    for i in [72, 81, 90] {
        assert_eq!(count_nonzero_on(&code, &t, i).unwrap(), count_nonzero_on_direct(&code, &t, i).unwrap());
    }
}

fn random_code() -> impl Strategy<Value = TernaryCode> {
    (1usize..14, 0usize..7)
        .prop_flat_map(|(n, r)| (Just(n), prop::collection::vec(prop::collection::vec(0u8..3, n), r)))
        .prop_map(|(n, rows)| TernaryCode::from_spanning(&TernaryMatrix::from_symbol_rows(n, &rows).unwrap(), "random"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn macwilliams_agrees_with_dual_enumeration(code in random_code()) {
        let a = enumerate_distribution(&code).unwrap();
        let b = macwilliams_transform(&a).unwrap();
        prop_assert_eq!(&b, &enumerate_distribution(&code.dual()).unwrap());
        prop_assert_eq!(macwilliams_transform(&b).unwrap(), a.clone());
        for t in 0..=4 {
            prop_assert!(moment_holds(&a, &b, t));
        }
    }

    #[test]
    fn distribution_sums_to_code_size(code in random_code()) {
        let a = enumerate_distribution(&code).unwrap();
        prop_assert_eq!(a.total(), BigUint::from(3u32).pow(code.dim() as u32));
        prop_assert!(a.is_linear_code_distribution());
    }
}
