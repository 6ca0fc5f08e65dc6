//! Measures as functionals and the pushforward functor.

mod common;

use std::sync::Arc;

use common::{arb_measure, arb_measures, arb_space};
use imetric_core::{sample, Error, IdempotentMeasure, MaxPlus, PointMap, TestFunction};
use proptest::prelude::*;

fn arb_function(n: usize) -> impl Strategy<Value = TestFunction> {
    proptest::collection::vec(
        prop_oneof![1 => Just(MaxPlus::NegInf), 4 => (-64i32..=64).prop_map(|v| MaxPlus::lit(v as f64 / 16.0))],
        n,
    )
    .prop_map(TestFunction::new)
}

fn with_functions(
    count: usize,
) -> impl Strategy<Value = (IdempotentMeasure, Vec<TestFunction>)> {
    arb_measures(1..=6, 1).prop_flat_map(move |(s, mut mus)| {
        let mu = mus.pop().unwrap();
        (Just(mu), proptest::collection::vec(arb_function(s.len()), count))
    })
}

proptest! {
    #[test]
    fn evaluation_is_normalised_homogeneous_and_additive(
        (mu, fs) in with_functions(2),
        c in (-32i32..=32).prop_map(|v| MaxPlus::lit(v as f64 / 8.0)),
    ) {
        let n = mu.space().len();
        let (phi, psi) = (&fs[0], &fs[1]);
        prop_assert_eq!(mu.evaluate(&TestFunction::constant(n, c)).unwrap(), c);
        prop_assert_eq!(mu.evaluate(&phi.shift(c)).unwrap(), c.odot(mu.evaluate(phi).unwrap()));
        prop_assert_eq!(
            mu.evaluate(&phi.oplus(psi)).unwrap(),
            mu.evaluate(phi).unwrap().oplus(mu.evaluate(psi).unwrap())
        );
    }

    #[test]
    fn evaluation_is_monotone((mu, fs) in with_functions(2)) {
        let (phi, psi) = (&fs[0], &fs[1]);
        let upper = phi.oplus(psi);
        prop_assert!(phi.le(&upper));
        prop_assert!(mu.evaluate(phi).unwrap() <= mu.evaluate(&upper).unwrap());
    }

    #[test]
    fn density_is_the_value_on_a_point_indicator((_, mus) in arb_measures(1..=6, 1)) {
        let mu = &mus[0];
        let n = mu.space().len();
        for x in 0..n {
            prop_assert_eq!(mu.evaluate(&TestFunction::point(n, x)).unwrap(), mu.density(x));
        }
        let back = IdempotentMeasure::from_functional(mu.space().clone(), |phi| mu.evaluate(phi).unwrap()).unwrap();
        prop_assert_eq!(&back, mu);
    }

    #[test]
    fn support_is_where_the_density_is_finite((_, mus) in arb_measures(1..=6, 1)) {
        let mu = &mus[0];
        let supp = mu.support();
        prop_assert!(!supp.is_empty());
        for x in 0..mu.space().len() {
            prop_assert_eq!(supp.contains(&x), mu.density(x).is_finite());
        }
        prop_assert_eq!(mu.density(mu.zero_point()), MaxPlus::ONE);
    }
}

// Maps between independently drawn spaces; the sizes vary from 1 to 5.
fn arb_chain() -> impl Strategy<Value = (IdempotentMeasure, PointMap, PointMap, TestFunction)> {
    (arb_space(1..=5), arb_space(1..=5), arb_space(1..=5)).prop_flat_map(|(a, b, c)| {
        let f = proptest::collection::vec(0..b.len(), a.len());
        let g = proptest::collection::vec(0..c.len(), b.len());
        (arb_measure(a.clone()), f, g, arb_function(c.len())).prop_map(move |(mu, f, g, psi)| {
            let f = PointMap::new(a.clone(), b.clone(), f).unwrap();
            let g = PointMap::new(b.clone(), c.clone(), g).unwrap();
            (mu, f, g, psi)
        })
    })
}

proptest! {
    #[test]
    fn pushforward_is_a_functor((mu, f, g, _) in arb_chain()) {
        let id = PointMap::identity(mu.space().clone());
        prop_assert_eq!(&mu.pushforward(&id).unwrap(), &mu);
        let gf = f.then(&g).unwrap();
        prop_assert_eq!(mu.pushforward(&gf).unwrap(), mu.pushforward(&f).unwrap().pushforward(&g).unwrap());
    }

    #[test]
    fn pushforward_is_dual_to_pullback((mu, f, g, psi) in arb_chain()) {
        let gf = f.then(&g).unwrap();
        let pushed = mu.pushforward(&gf).unwrap();
        prop_assert_eq!(pushed.evaluate(&psi).unwrap(), mu.evaluate(&psi.pullback(&gf)).unwrap());
    }
}

#[test]
fn pushforward_to_a_point_is_the_dirac_measure() {
    let mut rng = sample::rng(11);
    let s = sample::space(&mut rng, 4);
    let point = sample::space(&mut rng, 1);
    let mu = sample::measure(&mut rng, &s, 0.3);
    let collapse = PointMap::constant(s, point.clone(), 0).unwrap();
    assert_eq!(mu.pushforward(&collapse).unwrap(), IdempotentMeasure::dirac(point, 0));
}

#[test]
fn invalid_densities_are_rejected() {
    let s = common::two_points();
    let err = IdempotentMeasure::new(s.clone(), vec![MaxPlus::lit(0.5), MaxPlus::ONE]).unwrap_err();
    assert!(matches!(err, Error::DensityAboveZero { index: 0, .. }));
    let err = IdempotentMeasure::new(s.clone(), vec![MaxPlus::lit(-1.0), MaxPlus::NegInf]).unwrap_err();
    assert!(matches!(err, Error::NotNormalised { .. }));
    let err = IdempotentMeasure::new(s, vec![MaxPlus::ONE]).unwrap_err();
    assert!(matches!(err, Error::IndexMismatch { .. } | Error::ShapeMismatch { .. }));
}

#[test]
fn composition_requires_matching_spaces() {
    let mut rng = sample::rng(5);
    let a = sample::space(&mut rng, 3);
    let b = sample::space(&mut rng, 2);
    let f = PointMap::identity(a.clone());
    let g = PointMap::identity(b);
    assert_eq!(f.then(&g).unwrap_err(), Error::SpaceMismatch);
    assert!(Arc::ptr_eq(f.source(), &a));
}
