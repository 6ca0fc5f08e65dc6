//! Finite checks of convergence in `I(X)`.
//!
//! Pointwise convergence is tested against a family of test functions (all
//! `⊕χ_x` plus seeded random ones); metric convergence against `ρ_I` (or
//! `d_I`). A finite sequence is judged with a [`Schedule`] of
//! `(ε, deadline)` levels: from index `deadline` on, every gap must be below
//! `ε`. Gaps involving `−∞` are `0` for matching `−∞` and `+∞` otherwise, so
//! a `−∞` density is only approached by being equal to it eventually.

use std::fmt;
use std::sync::Arc;

use crate::coupling::Coupling;
use crate::distances::{d_i_fast, rho_i_fast, Metric};
use crate::error::Error;
use crate::maxplus::{MaxPlus, NegInf};
use crate::measure::{same_space, IdempotentMeasure, TestFunction};
use crate::sample;
use crate::space::FiniteMetricSpace;

/// Prebase membership `|ν(φ) − μ(φ)| < ε`.
pub fn in_prebase(nu: &IdempotentMeasure, center: &IdempotentMeasure, phi: &TestFunction, epsilon: f64) -> Result<bool, Error> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::NonPositiveEpsilon(epsilon));
    }
    Ok(nu.evaluate(phi)?.abs_diff(center.evaluate(phi)?) < epsilon)
}

/// A base set `⟨μ; U₁, …, Uₙ; ε⟩`.
#[derive(Debug, Clone)]
pub struct CoverNeighborhood {
    center: IdempotentMeasure,
    cover: Vec<Vec<usize>>,
    epsilon: f64,
}

impl CoverNeighborhood {
    /// Requires every `Uᵢ` to meet `supp μ` and `∪Uᵢ ⊇ supp μ`.
    pub fn new(center: IdempotentMeasure, cover: Vec<Vec<usize>>, epsilon: f64) -> Result<Self, Error> {
        if epsilon.is_nan() || epsilon <= 0.0 {
            return Err(Error::NonPositiveEpsilon(epsilon));
        }
        let n = center.space().len();
        if let Some(&bad) = cover.iter().flatten().find(|&&x| x >= n) {
            return Err(Error::IndexMismatch { expected: n, actual: bad + 1 });
        }
        if let Some(i) = cover.iter().position(|u| !u.iter().any(|&x| center.density(x).is_finite())) {
            return Err(Error::CoverMissesSupport(i));
        }
        if let Some(x) = center.support().into_iter().find(|x| !cover.iter().any(|u| u.contains(x))) {
            return Err(Error::CoverIncomplete(x));
        }
        Ok(Self { center, cover, epsilon })
    }

    /// The neighbourhood `⟨μ; U; ε/2⟩` that sits inside the prebase set
    /// `⟨μ; φ; ε⟩`.
    ///
    /// For each `x ∈ supp μ`, `U_x` holds the points `y` with
    /// `|φ(y) − φ(x)| < ε/4` whose density is `−∞` or within `ε/4` of
    /// `λ(x)`. So `φ` varies by less than `ε/2` on every `U_x`, and the
    /// densities of `μ` inside `U_x` are pairwise closer than `ε/2`, which
    /// keeps `μ` in its own neighbourhood.
    pub fn inside_prebase(center: IdempotentMeasure, phi: &TestFunction, epsilon: f64) -> Result<Self, Error> {
        let n = center.space().len();
        if phi.len() != n {
            return Err(Error::IndexMismatch { expected: n, actual: phi.len() });
        }
        let close = |x: usize, y: usize| {
            phi.at(y).abs_diff(phi.at(x)) < epsilon / 4.0
                && (center.density(y).is_neg_inf() || center.density(y).abs_diff(center.density(x)) < epsilon / 4.0)
        };
        let cover = center.support().into_iter().map(|x| (0..n).filter(|&y| close(x, y)).collect()).collect();
        Self::new(center, cover, epsilon / 2.0)
    }

    pub fn center(&self) -> &IdempotentMeasure {
        &self.center
    }

    pub fn cover(&self) -> &[Vec<usize>] {
        &self.cover
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `supp ν` meets every `Uᵢ`, lies in `∪Uᵢ`, and inside each `Uᵢ` every
    /// density of `μ` on its support is within `ε` of every density of `ν`
    /// on its support.
    pub fn contains(&self, nu: &IdempotentMeasure) -> bool {
        if !same_space(nu.space(), self.center.space()) {
            return false;
        }
        let supp = nu.support();
        if !self.cover.iter().all(|u| u.iter().any(|x| supp.contains(x))) {
            return false;
        }
        if !supp.iter().all(|y| self.cover.iter().any(|u| u.contains(y))) {
            return false;
        }
        self.cover.iter().all(|u| {
            u.iter().all(|&x| {
                let lx = self.center.density(x);
                lx.is_neg_inf()
                    || u.iter().all(|&y| {
                        let gy = nu.density(y);
                        gy.is_neg_inf() || lx.abs_diff(gy) < self.epsilon
                    })
            })
        })
    }
}

/// A set of point pairs, e.g. a neighbourhood of the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSet {
    n: usize,
    allowed: Vec<bool>,
}

impl PairSet {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let allowed = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, allowed }
    }

    pub fn diagonal(n: usize) -> Self {
        Self::from_fn(n, |x, y| x == y)
    }

    /// `{ (x, y) : ρ(x, y) < a }`.
    pub fn closer_than(space: &FiniteMetricSpace, a: f64) -> Self {
        Self::from_fn(space.len(), |x, y| space.rho(x, y) < a)
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.allowed[x * self.n + y]
    }

    /// Largest distance over the pairs in the set.
    pub fn max_distance(&self, space: &FiniteMetricSpace) -> f64 {
        (0..self.n * self.n)
            .filter(|&k| self.allowed[k])
            .map(|k| space.rho(k / self.n, k % self.n))
            .fold(0.0, f64::max)
    }
}

/// The support row or column that has no partner inside the pair set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Blocker {
    Row(usize),
    Column(usize),
}

impl fmt::Display for Blocker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Blocker::Row(x) => write!(f, "row {x} has no partner inside the set"),
            Blocker::Column(y) => write!(f, "column {y} has no partner inside the set"),
        }
    }
}

/// A `(μ₀, μₙ)`-admissible coupling whose support lies in `allowed`, if a
/// witness pattern inside `allowed` exists.
///
/// Every support row `x` needs some `y` with `(x, y)` allowed and
/// `λₙ(y) ≥ λ₀(x)`; every support column likewise. The first such partner in
/// point order is used.
pub fn small_support_coupling(mu0: &IdempotentMeasure, mun: &IdempotentMeasure, allowed: &PairSet) -> Result<Coupling, Error> {
    if !same_space(mu0.space(), mun.space()) {
        return Err(Error::SpaceMismatch);
    }
    let n = mu0.space().len();
    let mut rows = vec![vec![NegInf; n]; n];
    for x in mu0.support() {
        let level = mu0.density(x);
        let y = (0..n)
            .find(|&y| allowed.contains(x, y) && mun.density(y) >= level)
            .ok_or(Error::Infeasible(Blocker::Row(x)))?;
        rows[x][y] = rows[x][y].oplus(level);
    }
    for y in mun.support() {
        let level = mun.density(y);
        let x = (0..n)
            .find(|&x| allowed.contains(x, y) && mu0.density(x) >= level)
            .ok_or(Error::Infeasible(Blocker::Column(y)))?;
        rows[x][y] = rows[x][y].oplus(level);
    }
    Coupling::new(rows, mu0.clone(), mun.clone())
}

/// A finite sequence of measures and a candidate limit on one space.
#[derive(Debug, Clone)]
pub struct MeasureSequence {
    space: Arc<FiniteMetricSpace>,
    terms: Vec<IdempotentMeasure>,
    limit: IdempotentMeasure,
}

impl MeasureSequence {
    pub fn new(terms: Vec<IdempotentMeasure>, limit: IdempotentMeasure) -> Result<Self, Error> {
        let space = limit.space().clone();
        if terms.iter().any(|t| !same_space(t.space(), &space)) {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self { space, terms, limit })
    }

    pub fn space(&self) -> &Arc<FiniteMetricSpace> {
        &self.space
    }

    pub fn terms(&self) -> &[IdempotentMeasure] {
        &self.terms
    }

    pub fn limit(&self) -> &IdempotentMeasure {
        &self.limit
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `(ε, deadline)` pairs a sequence of gaps must meet.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    levels: Vec<(f64, usize)>,
}

impl Default for Schedule {
    /// `ε_k = 2^{−k}` from index `2^k` on, `k = 1..=20`.
    fn default() -> Self {
        Self::geometric(20)
    }
}

/// Outcome of judging a gap sequence against a [`Schedule`].
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub converged: bool,
    /// Levels whose deadline falls inside the sequence.
    pub levels_checked: usize,
    /// First `(ε, index, gap)` with `gap ≥ ε` past the deadline.
    pub failure: Option<(f64, usize, f64)>,
}

impl Schedule {
    pub fn geometric(max_level: u32) -> Self {
        Self { levels: (1..=max_level).map(|k| (0.5f64.powi(k as i32), 1usize << k)).collect() }
    }

    pub fn new(levels: Vec<(f64, usize)>) -> Result<Self, Error> {
        if let Some(&(eps, _)) = levels.iter().find(|(eps, _)| eps.is_nan() || *eps <= 0.0) {
            return Err(Error::NonPositiveEpsilon(eps));
        }
        Ok(Self { levels })
    }

    pub fn levels(&self) -> &[(f64, usize)] {
        &self.levels
    }

    /// Levels with a deadline past the end of `gaps` are skipped; at least
    /// one level must be checkable.
    pub fn judge(&self, gaps: &[f64]) -> Result<Verdict, Error> {
        let mut levels_checked = 0;
        for &(eps, deadline) in &self.levels {
            if deadline >= gaps.len() {
                continue;
            }
            levels_checked += 1;
            if let Some((index, &gap)) = gaps.iter().enumerate().skip(deadline).find(|(_, &g)| g.is_nan() || g >= eps) {
                return Ok(Verdict { converged: false, levels_checked, failure: Some((eps, index, gap)) });
            }
        }
        if levels_checked == 0 {
            let needed = self.levels.iter().map(|&(_, d)| d).min().unwrap_or(0);
            return Err(Error::SequenceTooShort { len: gaps.len(), needed });
        }
        Ok(Verdict { converged: true, levels_checked, failure: None })
    }
}

/// All `⊕χ_x` followed by `extra` seeded random finite test functions.
pub fn test_family(n: usize, extra: usize, seed: u64) -> Vec<TestFunction> {
    let mut rng = sample::rng(seed);
    (0..n)
        .map(|x| TestFunction::point(n, x))
        .chain((0..extra).map(|_| sample::test_function(&mut rng, n)))
        .collect()
}

/// Per term, `max_φ |μₙ(φ) − μ₀(φ)|` over the family.
pub fn pointwise_gaps(seq: &MeasureSequence, family: &[TestFunction]) -> Result<Vec<f64>, Error> {
    let targets: Vec<MaxPlus> = family.iter().map(|phi| seq.limit.evaluate(phi)).collect::<Result<_, _>>()?;
    seq.terms
        .iter()
        .map(|term| {
            family.iter().zip(&targets).try_fold(0.0_f64, |acc, (phi, target)| {
                Ok(acc.max(term.evaluate(phi)?.abs_diff(*target)))
            })
        })
        .collect()
}

/// Per term, the distance from the limit under `metric` (fast method).
pub fn metric_gaps(seq: &MeasureSequence, metric: Metric) -> Result<Vec<f64>, Error> {
    seq.terms
        .iter()
        .map(|term| {
            let report = match metric {
                Metric::DI => d_i_fast(term, &seq.limit)?,
                Metric::RhoI => rho_i_fast(term, &seq.limit)?,
            };
            Ok(report.value)
        })
        .collect()
}

pub fn pointwise_converges(seq: &MeasureSequence, family: &[TestFunction], schedule: &Schedule) -> Result<Verdict, Error> {
    schedule.judge(&pointwise_gaps(seq, family)?)
}

/// `ρ_I(μₙ, μ₀) → 0` under the schedule.
pub fn metric_converges(seq: &MeasureSequence, schedule: &Schedule) -> Result<Verdict, Error> {
    schedule.judge(&metric_gaps(seq, Metric::RhoI)?)
}

/// `d_I(μₙ, μ₀) → 0` under the schedule.
pub fn d_i_converges(seq: &MeasureSequence, schedule: &Schedule) -> Result<Verdict, Error> {
    schedule.judge(&metric_gaps(seq, Metric::DI)?)
}

/// One line of the per-term harness report.
#[derive(Debug, Clone, PartialEq)]
pub struct HarnessRow {
    pub index: usize,
    pub rho_i: f64,
    pub d_i: f64,
    pub pointwise_gap: f64,
}

pub fn harness_rows(seq: &MeasureSequence, family: &[TestFunction]) -> Result<Vec<HarnessRow>, Error> {
    let rho = metric_gaps(seq, Metric::RhoI)?;
    let d = metric_gaps(seq, Metric::DI)?;
    let pw = pointwise_gaps(seq, family)?;
    Ok((0..seq.len())
        .map(|index| HarnessRow { index, rho_i: rho[index], d_i: d[index], pointwise_gap: pw[index] })
        .collect())
}
