//! The two coupling distances on `I(X)`.
//!
//! * `d_I(μ₁, μ₂) = inf { ξ(ρ) : ξ ∈ Λ(μ₁, μ₂) }`, a transport-style
//!   pseudometric.
//! * `ρ_I(μ₁, μ₂) = inf { sup { ξ(ρ) ⊕ ρ(x, y) : (x, y) ∈ supp ξ } }`, a
//!   bottleneck-style metric extending `ρ`.
//!
//! Both infima over the uncountable set `Λ(μ₁, μ₂)` reduce to *witness
//! couplings*. An admissible `γ` must reach `λ₁(x)` somewhere in row `x`, at a
//! column `y` with `λ₂(y) ≥ λ₁(x)`, and symmetrically for every column. Keeping
//! one such entry per support row and column and dropping everything else to
//! `−∞` stays admissible and can only lower both objectives. So each infimum
//! is a minimum over finitely many witness patterns, and since rows and
//! columns choose independently it splits into a max of per-row and
//! per-column minima.
//!
//! The `*_oracle` functions enumerate every pattern and evaluate it with the
//! literal [`Coupling::transport_cost`] / [`Coupling::support_width`]. The
//! `*_fast` functions use the per-row/per-column decomposition.

use std::fmt;

use crate::coupling::Coupling;
use crate::error::Error;
use crate::maxplus::{MaxPlus, NegInf};
use crate::measure::{same_space, IdempotentMeasure};

/// Default limit on `|supp μ₁| · |supp μ₂|` for the enumerating oracles.
pub const ORACLE_PAIR_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// `d_I`
    DI,
    /// `ρ_I`
    RhoI,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::DI => "dI",
            Metric::RhoI => "rhoI",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    Fast,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::Fast => "fast",
        })
    }
}

/// A distance value together with a coupling that attains it.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    pub metric: Metric,
    pub method: Method,
    pub value: f64,
    pub witness: Coupling,
}

impl DistanceReport {
    /// Re-evaluates the witness with the metric's objective.
    pub fn witness_value(&self) -> f64 {
        objective(self.metric, &self.witness)
    }
}

fn objective(metric: Metric, xi: &Coupling) -> f64 {
    match metric {
        Metric::DI => xi.transport_cost(),
        Metric::RhoI => xi.support_width(),
    }
}

pub fn distance(metric: Metric, method: Method, mu1: &IdempotentMeasure, mu2: &IdempotentMeasure) -> Result<DistanceReport, Error> {
    match (metric, method) {
        (Metric::DI, Method::Fast) => d_i_fast(mu1, mu2),
        (Metric::DI, Method::Oracle) => d_i_oracle(mu1, mu2),
        (Metric::RhoI, Method::Fast) => rho_i_fast(mu1, mu2),
        (Metric::RhoI, Method::Oracle) => rho_i_oracle(mu1, mu2),
    }
}

/// `d_I` in `O(n²)`:
///
/// ```text
/// max( max_{x ∈ supp μ₁} min_{λ₂(y) ≥ λ₁(x)} λ₁(x) + ρ(x, y),
///      max_{y ∈ supp μ₂} min_{λ₁(x) ≥ λ₂(y)} λ₂(y) + ρ(x, y) )
/// ```
pub fn d_i_fast(mu1: &IdempotentMeasure, mu2: &IdempotentMeasure) -> Result<DistanceReport, Error> {
    let space = mu1.space().clone();
    decomposed(mu1, mu2, Metric::DI, |x, y, level| level + space.rho(x, y))
}

/// `ρ_I` in `O(n² log n)`: the smallest distance level `t` at which every
/// support row and column has a feasible partner within distance `t`, found
/// by binary search over the sorted distinct entries of `ρ`.
pub fn rho_i_fast(mu1: &IdempotentMeasure, mu2: &IdempotentMeasure) -> Result<DistanceReport, Error> {
    if !same_space(mu1.space(), mu2.space()) {
        return Err(Error::SpaceMismatch);
    }
    let space = mu1.space();
    let levels = space.distance_levels();
    let feasible = |t: f64| {
        rows_and_columns(mu1, mu2).all(|(fixed, _, partners)| {
            partners.into_iter().any(|p| {
                let (x, y) = fixed.orient(p);
                space.rho(x, y) <= t
            })
        })
    };
    // levels[hi] = diam is always feasible: every feasible set is nonempty
    let (mut lo, mut hi) = (0usize, levels.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(levels[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let t = levels[lo];
    let n = space.len();
    let mut gamma = vec![NegInf; n * n];
    for (fixed, level, partners) in rows_and_columns(mu1, mu2) {
        let partner = partners
            .into_iter()
            .find(|&p| {
                let (x, y) = fixed.orient(p);
                space.rho(x, y) <= t
            })
            .expect("threshold is feasible");
        let (x, y) = fixed.orient(partner);
        gamma[x * n + y] = gamma[x * n + y].oplus(MaxPlus::Finite(level));
    }
    let witness = Coupling::from_flat(gamma, mu1.clone(), mu2.clone());
    Ok(DistanceReport { metric: Metric::RhoI, method: Method::Fast, value: t, witness })
}

pub fn d_i_oracle(mu1: &IdempotentMeasure, mu2: &IdempotentMeasure) -> Result<DistanceReport, Error> {
    enumerate(mu1, mu2, Metric::DI, ORACLE_PAIR_LIMIT)
}

pub fn rho_i_oracle(mu1: &IdempotentMeasure, mu2: &IdempotentMeasure) -> Result<DistanceReport, Error> {
    enumerate(mu1, mu2, Metric::RhoI, ORACLE_PAIR_LIMIT)
}

/// Exact minimum of the metric's objective over all witness patterns, each
/// evaluated on an explicitly built coupling. Refuses instances with more
/// than `limit` support pairs.
pub fn oracle_with_limit(
    metric: Metric,
    mu1: &IdempotentMeasure,
    mu2: &IdempotentMeasure,
    limit: usize,
) -> Result<DistanceReport, Error> {
    enumerate(mu1, mu2, metric, limit)
}

/// Which side of the coupling a constraint belongs to.
#[derive(Debug, Clone, Copy)]
enum Fixed {
    Row(usize),
    Column(usize),
}

impl Fixed {
    /// The `(x, y)` entry pairing this row/column with `partner`.
    fn orient(self, partner: usize) -> (usize, usize) {
        match self {
            Fixed::Row(x) => (x, partner),
            Fixed::Column(y) => (partner, y),
        }
    }
}

/// Every support row of `μ₁` and support column of `μ₂`, with its density
/// level and its feasible partners in point order.
fn rows_and_columns<'a>(
    mu1: &'a IdempotentMeasure,
    mu2: &'a IdempotentMeasure,
) -> impl Iterator<Item = (Fixed, f64, Vec<usize>)> + 'a {
    let partners = |own: f64, other: &IdempotentMeasure| -> Vec<usize> {
        (0..other.space().len())
            .filter(|&p| other.density(p) >= MaxPlus::Finite(own))
            .collect()
    };
    let rows = mu1
        .support()
        .into_iter()
        .map(move |x| {
            let level = mu1.density(x).finite().expect("support point");
            (Fixed::Row(x), level, partners(level, mu2))
        });
    let columns = mu2
        .support()
        .into_iter()
        .map(move |y| {
            let level = mu2.density(y).finite().expect("support point");
            (Fixed::Column(y), level, partners(level, mu1))
        });
    rows.chain(columns)
}

fn decomposed(
    mu1: &IdempotentMeasure,
    mu2: &IdempotentMeasure,
    metric: Metric,
    cost: impl Fn(usize, usize, f64) -> f64,
) -> Result<DistanceReport, Error> {
    if !same_space(mu1.space(), mu2.space()) {
        return Err(Error::SpaceMismatch);
    }
    let n = mu1.space().len();
    let mut gamma = vec![NegInf; n * n];
    let mut value = f64::NEG_INFINITY;
    for (fixed, level, partners) in rows_and_columns(mu1, mu2) {
        // strict < keeps the first minimiser in point order
        let mut best: Option<(f64, usize, usize)> = None;
        for p in partners {
            let (x, y) = fixed.orient(p);
            let c = cost(x, y, level);
            if best.is_none_or(|(b, _, _)| c < b) {
                best = Some((c, x, y));
            }
        }
        let (c, x, y) = best.expect("feasible set contains a zero-density point");
        value = value.max(c);
        gamma[x * n + y] = gamma[x * n + y].oplus(MaxPlus::Finite(level));
    }
    let witness = Coupling::from_flat(gamma, mu1.clone(), mu2.clone());
    Ok(DistanceReport { metric, method: Method::Fast, value, witness })
}

fn enumerate(mu1: &IdempotentMeasure, mu2: &IdempotentMeasure, metric: Metric, limit: usize) -> Result<DistanceReport, Error> {
    if !same_space(mu1.space(), mu2.space()) {
        return Err(Error::SpaceMismatch);
    }
    let pairs = mu1.support().len() * mu2.support().len();
    if pairs > limit {
        return Err(Error::OracleGuard { pairs, limit });
    }
    let n = mu1.space().len();
    let constraints: Vec<(Fixed, f64, Vec<usize>)> = rows_and_columns(mu1, mu2).collect();
    // mixed-radix counter over the partner choices, first constraint most
    // significant, so patterns come out in lexicographic order
    let mut choice = vec![0usize; constraints.len()];
    let mut best: Option<(f64, Coupling)> = None;
    loop {
        let mut gamma = vec![NegInf; n * n];
        for ((fixed, level, partners), &c) in constraints.iter().zip(&choice) {
            let (x, y) = fixed.orient(partners[c]);
            gamma[x * n + y] = gamma[x * n + y].oplus(MaxPlus::Finite(*level));
        }
        let rows: Vec<Vec<MaxPlus>> = gamma.chunks(n).map(<[MaxPlus]>::to_vec).collect();
        let xi = Coupling::new(rows, mu1.clone(), mu2.clone())?;
        let v = objective(metric, &xi);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, xi));
        }

        let mut k = choice.len();
        loop {
            if k == 0 {
                let (value, witness) = best.expect("at least one pattern");
                return Ok(DistanceReport { metric, method: Method::Oracle, value, witness });
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < constraints[k].2.len() {
                break;
            }
            choice[k] = 0;
        }
    }
}
