#![allow(dead_code)]

use std::sync::Arc;

use imetric_core::{check_admissible, FiniteMetricSpace, IdempotentMeasure, MaxPlus};
use proptest::prelude::*;

pub const TOL: f64 = 1e-9;

pub fn two_points() -> Arc<FiniteMetricSpace> {
    Arc::new(FiniteMetricSpace::new(vec!["x".into(), "y".into()], vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap())
}

pub fn measure(space: &Arc<FiniteMetricSpace>, values: &[f64]) -> IdempotentMeasure {
    IdempotentMeasure::new(space.clone(), values.iter().map(|&v| MaxPlus::lit(v)).collect()).unwrap()
}

/// `μ₁ = 0⊙δ_x ⊕ (−2)⊙δ_y`, `μ₂ = 0⊙δ_x ⊕ (−4)⊙δ_y` on two points at distance 1.
pub fn example_one() -> (IdempotentMeasure, IdempotentMeasure) {
    let s = two_points();
    (measure(&s, &[0.0, -2.0]), measure(&s, &[0.0, -4.0]))
}

/// The coupling written down for the two measures above:
/// `0⊙δ_(x,x) ⊕ (−2)⊙δ_(y,x) ⊕ (−4)⊙δ_(x,y)`.
pub fn example_one_coupling() -> Vec<Vec<MaxPlus>> {
    vec![vec![MaxPlus::lit(0.0), MaxPlus::lit(-4.0)], vec![MaxPlus::lit(-2.0), MaxPlus::NegInf]]
}

/// Brute-force values of `(d_I, ρ_I)`.
///
/// Any admissible coupling can be thinned to one whose finite entries are
/// `min(λ₁(x), λ₂(y))` on a subset of `supp μ₁ × supp μ₂` without raising
/// either objective, so enumerating those subsets and keeping the admissible
/// ones gives both infima exactly.
pub fn subset_oracle(mu1: &IdempotentMeasure, mu2: &IdempotentMeasure) -> (f64, f64) {
    let space = mu1.space();
    let n = space.len();
    let pairs: Vec<(usize, usize)> = mu1
        .support()
        .into_iter()
        .flat_map(|x| mu2.support().into_iter().map(move |y| (x, y)))
        .collect();
    assert!(pairs.len() <= 16, "subset oracle is exponential in the pair count");
    let mut best = (f64::INFINITY, f64::INFINITY);
    for mask in 1u32..(1 << pairs.len()) {
        let mut gamma = vec![vec![MaxPlus::NegInf; n]; n];
        for (k, &(x, y)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                gamma[x][y] = mu1.density(x).meet(mu2.density(y));
            }
        }
        if check_admissible(&gamma, mu1, mu2).is_err() {
            continue;
        }
        let mut cost = f64::NEG_INFINITY;
        let mut width = 0.0_f64;
        for (k, &(x, y)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                cost = cost.max(gamma[x][y].to_f64() + space.rho(x, y));
                width = width.max(space.rho(x, y));
            }
        }
        best.0 = best.0.min(cost);
        best.1 = best.1.min(cost.max(width));
    }
    best
}

/// A metric on `n` points with integer edge weights, closed under shortest
/// paths.
pub fn arb_space(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Arc<FiniteMetricSpace>> {
    n.prop_flat_map(|n| proptest::collection::vec(1u8..=8, n * n)).prop_map(|w| {
        let n = (w.len() as f64).sqrt() as usize;
        let mut d = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                d[i][j] = w[i * n + j] as f64;
                d[j][i] = d[i][j];
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    d[i][j] = f64::min(d[i][j], d[i][k] + d[k][j]);
                }
            }
        }
        Arc::new(FiniteMetricSpace::unlabeled(d).unwrap())
    })
}

/// A density on `space` with quarter-integer values in `[−4, 0]`, some
/// entries `−∞`, normalised at a chosen point.
pub fn arb_measure(space: Arc<FiniteMetricSpace>) -> impl Strategy<Value = IdempotentMeasure> {
    let n = space.len();
    (proptest::collection::vec(proptest::option::weighted(0.75, 0u8..=16), n), 0..n).prop_map(move |(raw, top)| {
        let mut lambda: Vec<MaxPlus> =
            raw.iter().map(|v| v.map_or(MaxPlus::NegInf, |v| MaxPlus::lit(-(v as f64) / 4.0))).collect();
        lambda[top] = MaxPlus::ONE;
        IdempotentMeasure::new(space.clone(), lambda).unwrap()
    })
}

pub fn arb_measures(
    n: std::ops::RangeInclusive<usize>,
    count: usize,
) -> impl Strategy<Value = (Arc<FiniteMetricSpace>, Vec<IdempotentMeasure>)> {
    arb_space(n).prop_flat_map(move |s| (Just(s.clone()), proptest::collection::vec(arb_measure(s), count)))
}
