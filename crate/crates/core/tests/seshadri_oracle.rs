use delpezzo_core::atlas::enumerate_minus_one_classes;
use delpezzo_core::exact::{q, q_frac};
use delpezzo_core::seshadri::{
    anticanonical_member_value, brute_force_seshadri, nef_threshold, nef_threshold_certificate, seshadri_constant,
    within_volume_bound, witness_rational_curve,
};
use delpezzo_core::{DivisorClass, PointSpec};
use proptest::prelude::*;

#[test]
fn oracle_matches_threshold_at_default_degree() {
    for r in 1..=7 {
        let o = brute_force_seshadri(r, &PointSpec::General, 12).unwrap();
        assert_eq!(o.value, nef_threshold(r, &PointSpec::General).unwrap(), "r = {r}");
    }
}

#[test]
fn oracle_value_is_stable_in_the_degree_bound() {
    for r in 1..=7 {
        let lo = brute_force_seshadri(r, &PointSpec::General, 6).unwrap();
        let hi = brute_force_seshadri(r, &PointSpec::General, 10).unwrap();
        assert_eq!(lo.value, hi.value, "r = {r}");
        assert_eq!(lo.argmin, hi.argmin, "r = {r}");
        assert!(hi.candidates > lo.candidates);
    }
}

#[test]
fn oracle_argmin_is_the_witness() {
    for r in 1..=7 {
        let o = brute_force_seshadri(r, &PointSpec::General, 12).unwrap();
        let w = witness_rational_curve(r, &PointSpec::General).unwrap();
        assert_eq!(o.argmin, w.class.extended(w.mult), "r = {r}");
    }
}

#[test]
fn r8_oracle_bounds_from_above() {
    let o = brute_force_seshadri(8, &PointSpec::General, 12).unwrap();
    assert_eq!(o.value, q(1));
    assert_eq!(o.argmin, DivisorClass::uniform(3, 1, 9));
}

#[test]
fn member_argument_agrees() {
    for r in 1..=7 {
        assert_eq!(anticanonical_member_value(r).unwrap(), nef_threshold(r, &PointSpec::General).unwrap(), "r = {r}");
    }
    assert!(anticanonical_member_value(8).is_err());
}

#[test]
fn binding_generators() {
    let six = nef_threshold_certificate(6, &PointSpec::General).unwrap();
    assert!(six.binding.contains(&DivisorClass::new(3, [1, 1, 1, 1, 1, 1, 2])));
    let seven = nef_threshold_certificate(7, &PointSpec::General).unwrap();
    assert_eq!(seven.binding, vec![DivisorClass::new(6, [2, 2, 2, 2, 2, 2, 2, 3])]);
    assert_eq!(seven.value, q_frac(4, 3));
}

#[test]
fn volume_bound_holds() {
    for r in 1..=8 {
        let v = seshadri_constant(r, &PointSpec::General).unwrap().value;
        assert!(within_volume_bound(r, &v), "r = {r}");
    }
}

#[test]
fn every_minus_one_curve_gives_one() {
    for r in 1..=7 {
        for c in enumerate_minus_one_classes(r).unwrap() {
            let res = seshadri_constant(r, &PointSpec::OnDistinguished(c.into_class())).unwrap();
            assert_eq!(res.value, q(1));
            let w = res.witness.unwrap();
            assert_eq!(w.ratio(), q(1));
            assert_eq!(w.genus_after_assignment(), 0);
        }
    }
}

proptest! {
    #[test]
    fn distinguished_value_is_permutation_invariant(
        (r, pick, perm) in (1usize..=7).prop_flat_map(|r| (Just(r), 0usize..240, Just((0..r).collect::<Vec<usize>>()).prop_shuffle()))
    ) {
        let classes = enumerate_minus_one_classes(r).unwrap();
        let c = classes[pick % classes.len()].class().clone();
        let permuted = DivisorClass::new(c.d, perm.iter().map(|&i| c.a[i]).collect::<Vec<_>>());
        let a = seshadri_constant(r, &PointSpec::OnDistinguished(c)).unwrap();
        let b = seshadri_constant(r, &PointSpec::OnDistinguished(permuted)).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert_eq!(a.attained, b.attained);
    }

    #[test]
    fn non_minus_one_classes_are_rejected(d in 0i64..5, a in prop::collection::vec(-1i64..4, 1..=7)) {
        let r = a.len();
        let c = DivisorClass::new(d, a);
        let res = seshadri_constant(r, &PointSpec::OnDistinguished(c.clone()));
        prop_assert_eq!(res.is_ok(), delpezzo_core::atlas::is_minus_one_class(&c));
    }
}
