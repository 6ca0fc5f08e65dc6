//! Idempotent probability measures on a finite space, stored as densities.
//!
//! On a finite space every idempotent probability measure is
//! `μ = ⊕_x λ(x) ⊙ δ_x` for a density `λ: X → [−∞, 0]` attaining `0`, and it
//! acts on test functions by `μ(φ) = max_x (λ(x) + φ(x))`. Dirac measures are
//! ordinary measures whose density is a max-plus characteristic function.

use std::sync::Arc;

use crate::error::Error;
use crate::maxplus::{Finite, MaxPlus, NegInf};
use crate::space::FiniteMetricSpace;

/// A function `X → ℝ ∪ {−∞}`, aligned with the point order of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    values: Vec<MaxPlus>,
}

impl TestFunction {
    pub fn new(values: Vec<MaxPlus>) -> Self {
        Self { values }
    }

    /// A real-valued function.
    pub fn from_reals(values: &[f64]) -> Result<Self, Error> {
        values
            .iter()
            .map(|&v| {
                if v.is_finite() {
                    MaxPlus::new(v)
                } else {
                    Err(Error::NotMaxPlus(format!("test function value {v}")))
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }

    /// The constant function `c_X`.
    pub fn constant(n: usize, c: MaxPlus) -> Self {
        Self::new(vec![c; n])
    }

    /// `⊕χ_A`: `0` on `A`, `−∞` elsewhere.
    pub fn characteristic(n: usize, set: &[usize]) -> Self {
        let mut values = vec![NegInf; n];
        for &i in set {
            values[i] = MaxPlus::ONE;
        }
        Self::new(values)
    }

    /// `⊕χ_x`.
    pub fn point(n: usize, x: usize) -> Self {
        Self::characteristic(n, &[x])
    }

    /// Max-plus step function: level `aᵢ ≤ 0` on `Fᵢ`, `−∞` off `∪Fᵢ`.
    ///
    /// The sets must be pairwise disjoint; an empty list yields the constant
    /// `−∞` function.
    pub fn step(n: usize, sets: &[Vec<usize>], levels: &[f64]) -> Result<Self, Error> {
        if sets.len() != levels.len() {
            return Err(Error::LevelCountMismatch { sets: sets.len(), levels: levels.len() });
        }
        let mut owner: Vec<Option<usize>> = vec![None; n];
        let mut values = vec![NegInf; n];
        for (k, (set, &level)) in sets.iter().zip(levels).enumerate() {
            if level.is_nan() || level > 0.0 {
                return Err(Error::PositiveLevel(level));
            }
            for &x in set {
                if x >= n {
                    return Err(Error::IndexMismatch { expected: n, actual: x + 1 });
                }
                if let Some(first) = owner[x] {
                    if first != k {
                        return Err(Error::OverlappingSets { first, second: k, point: x });
                    }
                }
                owner[x] = Some(k);
                values[x] = MaxPlus::new(level)?;
            }
        }
        Ok(Self::new(values))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[MaxPlus] {
        &self.values
    }

    pub fn at(&self, i: usize) -> MaxPlus {
        self.values[i]
    }

    /// Pointwise `φ ⊕ ψ`.
    pub fn oplus(&self, other: &Self) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a.oplus(*b)).collect())
    }

    /// `c ⊙ φ`.
    pub fn shift(&self, c: MaxPlus) -> Self {
        Self::new(self.values.iter().map(|v| c.odot(*v)).collect())
    }

    /// `ψ ∘ f` for a map `f` into the space this function lives on.
    pub fn pullback(&self, map: &PointMap) -> Self {
        Self::new(map.image.iter().map(|&y| self.values[y]).collect())
    }

    /// Pointwise `φ ≤ ψ`.
    pub fn le(&self, other: &Self) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// `‖φ‖ = max |φ(x)|`; `None` if some value is `−∞`.
    pub fn sup_norm(&self) -> Option<f64> {
        self.values.iter().try_fold(0.0_f64, |acc, v| v.finite().map(|x| acc.max(x.abs())))
    }
}

/// A total map between two finite spaces, `image[i]` is `f(i)`.
#[derive(Debug, Clone)]
pub struct PointMap {
    source: Arc<FiniteMetricSpace>,
    target: Arc<FiniteMetricSpace>,
    image: Vec<usize>,
}

impl PointMap {
    pub fn new(source: Arc<FiniteMetricSpace>, target: Arc<FiniteMetricSpace>, image: Vec<usize>) -> Result<Self, Error> {
        if image.len() != source.len() {
            return Err(Error::IndexMismatch { expected: source.len(), actual: image.len() });
        }
        if let Some((i, &y)) = image.iter().enumerate().find(|(_, &y)| y >= target.len()) {
            return Err(Error::MapOutOfRange { source_point: i, image: y });
        }
        Ok(Self { source, target, image })
    }

    pub fn identity(space: Arc<FiniteMetricSpace>) -> Self {
        let image = (0..space.len()).collect();
        Self { source: space.clone(), target: space, image }
    }

    pub fn constant(source: Arc<FiniteMetricSpace>, target: Arc<FiniteMetricSpace>, point: usize) -> Result<Self, Error> {
        let image = vec![point; source.len()];
        Self::new(source, target, image)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PointMap) -> Result<Self, Error> {
        if !same_space(&self.target, &next.source) {
            return Err(Error::SpaceMismatch);
        }
        let image = self.image.iter().map(|&y| next.image[y]).collect();
        Ok(Self { source: self.source.clone(), target: next.target.clone(), image })
    }

    pub fn source(&self) -> &Arc<FiniteMetricSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteMetricSpace> {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }
}

pub(crate) fn same_space(a: &Arc<FiniteMetricSpace>, b: &Arc<FiniteMetricSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An idempotent probability measure, given by its density.
#[derive(Debug, Clone)]
pub struct IdempotentMeasure {
    space: Arc<FiniteMetricSpace>,
    lambda: Vec<MaxPlus>,
}

impl PartialEq for IdempotentMeasure {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.lambda == other.lambda
    }
}

impl IdempotentMeasure {
    /// Checks `λ ≤ 0` entrywise and `max λ = 0` exactly.
    pub fn new(space: Arc<FiniteMetricSpace>, lambda: Vec<MaxPlus>) -> Result<Self, Error> {
        if lambda.len() != space.len() {
            return Err(Error::IndexMismatch { expected: space.len(), actual: lambda.len() });
        }
        check_density(&lambda)?;
        Ok(Self { space, lambda })
    }

    /// Density from `label → value` pairs; unlisted points get `−∞`.
    pub fn from_labels(space: Arc<FiniteMetricSpace>, entries: &[(&str, MaxPlus)]) -> Result<Self, Error> {
        let mut lambda = vec![NegInf; space.len()];
        for (label, value) in entries {
            lambda[space.index_of(label)?] = *value;
        }
        Self::new(space, lambda)
    }

    /// `δ_x`.
    pub fn dirac(space: Arc<FiniteMetricSpace>, x: usize) -> Self {
        let mut lambda = vec![NegInf; space.len()];
        lambda[x] = MaxPlus::ONE;
        Self { space, lambda }
    }

    pub fn space(&self) -> &Arc<FiniteMetricSpace> {
        &self.space
    }

    pub fn lambda(&self) -> &[MaxPlus] {
        &self.lambda
    }

    #[inline]
    pub fn density(&self, x: usize) -> MaxPlus {
        self.lambda[x]
    }

    /// Points with finite density, in point order. Never empty.
    pub fn support(&self) -> Vec<usize> {
        (0..self.lambda.len()).filter(|&x| self.lambda[x].is_finite()).collect()
    }

    /// First point with density exactly `0`.
    pub fn zero_point(&self) -> usize {
        self.lambda
            .iter()
            .position(|&v| v == MaxPlus::ONE)
            .expect("normalised density attains 0")
    }

    /// `μ(φ) = ⊕_x λ(x) ⊙ φ(x)`.
    pub fn evaluate(&self, phi: &TestFunction) -> Result<MaxPlus, Error> {
        if phi.len() != self.lambda.len() {
            return Err(Error::IndexMismatch { expected: self.lambda.len(), actual: phi.len() });
        }
        Ok(MaxPlus::sum(self.lambda.iter().zip(phi.values()).map(|(l, p)| l.odot(*p))))
    }

    /// Recovers a measure from its action on test functions.
    ///
    /// On a finite space the infimum defining the density at `x` is attained
    /// at `⊕χ_x`, so `λ(x) = oracle(⊕χ_x)`.
    pub fn from_functional<F>(space: Arc<FiniteMetricSpace>, oracle: F) -> Result<Self, Error>
    where
        F: Fn(&TestFunction) -> MaxPlus,
    {
        let n = space.len();
        let lambda = (0..n).map(|x| oracle(&TestFunction::point(n, x))).collect();
        Self::new(space, lambda)
    }

    /// `I(f)(μ)`: density `max_{f(x) = y} λ(x)`, `−∞` on empty fibres.
    pub fn pushforward(&self, map: &PointMap) -> Result<Self, Error> {
        if !same_space(&self.space, map.source()) {
            return Err(Error::SpaceMismatch);
        }
        let mut lambda = vec![NegInf; map.target().len()];
        for (x, &y) in map.image().iter().enumerate() {
            lambda[y] = lambda[y].oplus(self.lambda[x]);
        }
        Ok(Self { space: map.target().clone(), lambda })
    }
}

fn check_density(lambda: &[MaxPlus]) -> Result<(), Error> {
    for (index, v) in lambda.iter().enumerate() {
        if let Finite(x) = v {
            if *x > 0.0 {
                return Err(Error::DensityAboveZero { index, value: *x });
            }
        }
    }
    let max = MaxPlus::sum(lambda.iter().copied());
    if max != MaxPlus::ONE {
        return Err(Error::NotNormalised { max: max.to_string() });
    }
    Ok(())
}
