mod common;

use algdyn::harmonic::{ExpansivenessStatus, InversionBudget};
use algdyn::simulator::{defect, ConfigurationWindow, WindowBox};
use algdyn::structure::{
    decide_goe, decide_goe_with, fixed_points, mult_injective_mod, EndomorphismSpec,
    FixedPointSpec, GoeBudget, GoeOutcome, RefusalKind,
};
use algdyn::GroupRingElement;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pair(rng: &mut ChaCha8Rng, d: usize) -> (GroupRingElement, GroupRingElement) {
    loop {
        let f = common::random_element(rng, d, 4, 2, 3);
        if !common::primitive(&f) {
            continue;
        }
        let r = if rng.random_bool(0.4) {
            let s = common::random_element(rng, d, 2, 1, 2);
            &f * &s
        } else {
            common::random_element(rng, d, 4, 2, 3)
        };
        return (f, r);
    }
}

#[test]
fn involution_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a7);
    for i in 0..150 {
        let (f, r) = pair(&mut rng, 1 + i % 2);
        let a = mult_injective_mod(&f, &r).unwrap().0;
        let b = mult_injective_mod(&f.involute(), &r.involute()).unwrap().0;
        assert_eq!(a, b, "f = {f}, r = {r}");
    }
}

#[test]
fn monomial_invariance_of_injectivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3c1);
    for i in 0..150 {
        let d = 1 + i % 2;
        let (f, r) = pair(&mut rng, d);
        let a = mult_injective_mod(&f, &r).unwrap().0;
        let fu = &f * &common::random_unit(&mut rng, d);
        let ru = &r * &common::random_unit(&mut rng, d);
        assert_eq!(a, mult_injective_mod(&fu, &ru).unwrap().0, "f = {f}, r = {r}");
    }
}

#[test]
fn fixed_points_have_zero_defect() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf1);
    for _ in 0..100 {
        let d = rng.random_range(1..=2);
        let f = common::random_element(&mut rng, d, 4, 2, 3);
        if f.is_zero() {
            continue;
        }
        let s = f.evaluate_at_one();
        let b = WindowBox::centered(d, 3);
        if let Some(list) = fixed_points(&f).elements(64) {
            for t in &list {
                let x = ConfigurationWindow::constant(b.clone(), t.value());
                assert!(defect(&x, &f).unwrap() < 1e-12, "{f} at {t}");
            }
            // and one constant that is not in the list
            let m = list.len() as i64 + 1;
            let probe = FixedPointSpec::constant(1, m);
            let is_fixed = (&s % num_bigint::BigInt::from(m)).is_zero();
            assert_eq!(fixed_points(&f).contains(&probe), is_fixed, "{f}");
            let x = ConfigurationWindow::constant(b.clone(), probe.value());
            assert_eq!(defect(&x, &f).unwrap() < 1e-12, is_fixed, "{f} at {probe}");
        }
    }
}

#[test]
fn no_verdict_without_certified_expansiveness() {
    // root of 100u - 99 sits at 0.99: invertible, but not at a 64-point grid
    let f = GroupRingElement::from_univariate(0, &[-99, 100]);
    let budget = GoeBudget {
        inversion: InversionBudget {
            max_grid: Some(64),
            ..InversionBudget::default()
        },
        ..GoeBudget::default()
    };
    let e = EndomorphismSpec::linear(GroupRingElement::from_univariate(0, &[1, 1]));
    match decide_goe_with(&f, &e, 1e-9, &budget).unwrap() {
        GoeOutcome::Refused(x) => {
            assert_eq!(x.kind, RefusalKind::HypothesisNotCertified);
            assert_eq!(x.expansiveness.status, ExpansivenessStatus::Unknown);
        }
        GoeOutcome::Verdict(_) => panic!("verdict without a certificate"),
    }
    // with the default budget the same request gets a verdict
    assert!(decide_goe(&f, &e, 1e-9).unwrap().verdict().is_some());
}

#[test]
fn disconnected_is_refused() {
    let f = GroupRingElement::from_univariate(0, &[-2, 4]);
    let e = EndomorphismSpec::linear(GroupRingElement::one(1));
    match decide_goe(&f, &e, 1e-9).unwrap() {
        GoeOutcome::Refused(x) => assert_eq!(x.kind, RefusalKind::HypothesisFailed),
        GoeOutcome::Verdict(_) => panic!("non-primitive f got a verdict"),
    }
}
