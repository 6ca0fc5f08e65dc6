//! Seeded generators for randomized suites.
//!
//! Every generated number is dyadic (distances are multiples of 1/8,
//! densities of 1/64, test-function values of 1/16), so sums and maxima in
//! the suites are exact in `f64`.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coupling::Coupling;
use crate::maxplus::{MaxPlus, NegInf};
use crate::measure::{IdempotentMeasure, PointMap, TestFunction};
use crate::space::FiniteMetricSpace;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random metric on `n` points: symmetric edge weights in `[1, 10]`
/// closed under shortest paths.
#[allow(clippy::needless_range_loop)]
pub fn space<R: Rng>(rng: &mut R, n: usize) -> Arc<FiniteMetricSpace> {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.gen_range(8..=80) as f64 / 8.0;
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    // Floyd–Warshall over (min, +)
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    Arc::new(FiniteMetricSpace::unlabeled(d).expect("shortest-path closure is a metric"))
}

/// A random density: each point is `−∞` with probability `p_neg_inf`,
/// exactly `0` with probability 1/5, otherwise in `[−5, 0)`. One random point
/// is forced to `0`.
pub fn measure<R: Rng>(rng: &mut R, space: &Arc<FiniteMetricSpace>, p_neg_inf: f64) -> IdempotentMeasure {
    let n = space.len();
    let mut lambda: Vec<MaxPlus> = (0..n)
        .map(|_| {
            if rng.gen_bool(p_neg_inf) {
                NegInf
            } else if rng.gen_bool(0.2) {
                MaxPlus::ONE
            } else {
                MaxPlus::Finite(-(rng.gen_range(1..=320) as f64) / 64.0)
            }
        })
        .collect();
    lambda[rng.gen_range(0..n)] = MaxPlus::ONE;
    IdempotentMeasure::new(space.clone(), lambda).expect("normalised by construction")
}

/// A finite test function with values in `[−4, 4]`.
pub fn test_function<R: Rng>(rng: &mut R, n: usize) -> TestFunction {
    TestFunction::new((0..n).map(|_| MaxPlus::Finite(rng.gen_range(-64..=64) as f64 / 16.0)).collect())
}

pub fn map<R: Rng>(rng: &mut R, source: &Arc<FiniteMetricSpace>, target: &Arc<FiniteMetricSpace>) -> PointMap {
    let image = (0..source.len()).map(|_| rng.gen_range(0..target.len())).collect();
    PointMap::new(source.clone(), target.clone(), image).expect("image in range")
}

/// A random member of the `ξ⁰ ⊕ R(μ₁, μ₂)` family: entries off the
/// `x₁₀` row and `x₂₀` column are drawn from `[−∞, min(λ₁(x), λ₂(y))]`.
pub fn admissible<R: Rng>(rng: &mut R, mu1: &IdempotentMeasure, mu2: &IdempotentMeasure) -> Coupling {
    let base = Coupling::xi_zero(mu1, mu2).expect("same space");
    let (x0, y0) = (mu1.zero_point(), mu2.zero_point());
    let mut rows = base.rows();
    for (x, row) in rows.iter_mut().enumerate() {
        if x == x0 {
            continue;
        }
        for (y, entry) in row.iter_mut().enumerate() {
            if y == y0 {
                continue;
            }
            *entry = entry.oplus(below(rng, mu1.density(x).meet(mu2.density(y))));
        }
    }
    Coupling::new(rows, mu1.clone(), mu2.clone()).expect("R(μ₁, μ₂) keeps admissibility")
}

/// A random value in `[−∞, bound]`; `−∞` with probability 1/2.
pub fn below<R: Rng>(rng: &mut R, bound: MaxPlus) -> MaxPlus {
    match bound {
        NegInf => NegInf,
        MaxPlus::Finite(b) => {
            if rng.gen_bool(0.5) {
                NegInf
            } else {
                MaxPlus::Finite(b - rng.gen_range(0..=192) as f64 / 64.0)
            }
        }
    }
}

/// How a generated sequence approaches (or fails to approach) its limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    /// Finite densities off one anchor point move by `c·2^{−(n+1)}`.
    Geometric,
    /// Finite densities off one anchor point move by `c/(n+1)`, `c ≤ 1`.
    Harmonic,
    /// Noise for the first one or two terms, then exactly the limit.
    EventuallyExact,
    /// Every term is the same measure, different from the limit.
    ConstantOffset,
    /// Terms alternate between the limit and a different measure.
    Oscillating,
    /// Terms cycle through three measures, each at gap at least 1 from the
    /// limit.
    Wandering,
}

impl SequenceKind {
    pub const CONVERGENT: [SequenceKind; 3] = [Self::Geometric, Self::Harmonic, Self::EventuallyExact];
    pub const DIVERGENT: [SequenceKind; 3] = [Self::ConstantOffset, Self::Oscillating, Self::Wandering];

    pub fn converges(self) -> bool {
        Self::CONVERGENT.contains(&self)
    }
}

/// `(limit, terms)` for a sequence of the given kind.
pub fn sequence<R: Rng>(
    rng: &mut R,
    space: &Arc<FiniteMetricSpace>,
    kind: SequenceKind,
    len: usize,
) -> (IdempotentMeasure, Vec<IdempotentMeasure>) {
    let limit = measure(rng, space, 0.25);
    let others: Vec<IdempotentMeasure> = (0..3).map(|_| different_measure(rng, space, &limit)).collect();
    let other = others[0].clone();
    let anchor = limit.zero_point();
    let n = space.len();
    let coefficients: Vec<f64> = (0..n).map(|_| rng.gen_range(1..=64) as f64 / 64.0).collect();
    let perturbed = |scale: &dyn Fn(usize) -> f64, i: usize| {
        let lambda = (0..n)
            .map(|x| match limit.density(x) {
                MaxPlus::Finite(v) if x != anchor => MaxPlus::Finite(v - coefficients[x] * scale(i)),
                other => other,
            })
            .collect();
        IdempotentMeasure::new(space.clone(), lambda).expect("anchor keeps the maximum at 0")
    };
    let switch = rng.gen_range(0..=2);
    let terms = (0..len)
        .map(|i| match kind {
            SequenceKind::Geometric => perturbed(&|i| 3.0 * 0.5f64.powi(i as i32 + 1), i),
            SequenceKind::Harmonic => perturbed(&|i| 1.0 / (i as f64 + 1.0), i),
            SequenceKind::EventuallyExact => {
                if i < switch {
                    other.clone()
                } else {
                    limit.clone()
                }
            }
            SequenceKind::ConstantOffset => other.clone(),
            SequenceKind::Oscillating => {
                if i % 2 == 0 {
                    other.clone()
                } else {
                    limit.clone()
                }
            }
            SequenceKind::Wandering => others[i % 3].clone(),
        })
        .collect();
    (limit, terms)
}

fn different_measure<R: Rng>(rng: &mut R, space: &Arc<FiniteMetricSpace>, avoid: &IdempotentMeasure) -> IdempotentMeasure {
    // on a one-point space every measure is the Dirac measure
    assert!(space.len() > 1, "need two points for a different measure");
    loop {
        let candidate = measure(rng, space, 0.25);
        let gap = candidate
            .lambda()
            .iter()
            .zip(avoid.lambda())
            .map(|(a, b)| a.abs_diff(*b))
            .fold(0.0, f64::max);
        // a visible gap, so constant-offset sequences stay away from the limit
        if gap >= 1.0 {
            return candidate;
        }
    }
}
