//! Admissible measures on `X × X`.
//!
//! A coupling of `(μ₁, μ₂)` is an idempotent probability measure `ξ` on
//! `X²` whose two pushforwards along the coordinate projections are `μ₁`
//! and `μ₂`. With density `γ` that means
//!
//! ```text
//! max_y γ(x, y) = λ₁(x)    for every x
//! max_x γ(x, y) = λ₂(y)    for every y
//! ```
//!
//! which forces `γ(x, y) ≤ min(λ₁(x), λ₂(y))` entrywise.

use std::fmt;

use crate::error::Error;
use crate::maxplus::{MaxPlus, NegInf};
use crate::measure::{same_space, IdempotentMeasure};

/// First marginal equality that fails, or a structural mismatch.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Shape { expected: usize, rows: usize },
    SpaceMismatch,
    Row { x: usize, found: MaxPlus, expected: MaxPlus },
    Column { y: usize, found: MaxPlus, expected: MaxPlus },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { expected, rows } => {
                write!(f, "expected a {expected}x{expected} matrix, found a row count or row length of {rows}")
            }
            Violation::SpaceMismatch => f.write_str("marginals live on different spaces"),
            Violation::Row { x, found, expected } => {
                write!(f, "row {x}: max is {found}, left marginal is {expected}")
            }
            Violation::Column { y, found, expected } => {
                write!(f, "column {y}: max is {found}, right marginal is {expected}")
            }
        }
    }
}

/// Checks both tropical marginal equalities exactly.
///
/// Rows are checked before columns; the first failure is reported.
pub fn check_admissible(
    gamma: &[Vec<MaxPlus>],
    mu1: &IdempotentMeasure,
    mu2: &IdempotentMeasure,
) -> Result<(), Violation> {
    if !same_space(mu1.space(), mu2.space()) {
        return Err(Violation::SpaceMismatch);
    }
    let n = mu1.space().len();
    if gamma.len() != n {
        return Err(Violation::Shape { expected: n, rows: gamma.len() });
    }
    if let Some(row) = gamma.iter().find(|row| row.len() != n) {
        return Err(Violation::Shape { expected: n, rows: row.len() });
    }
    for (x, row) in gamma.iter().enumerate() {
        let found = MaxPlus::sum(row.iter().copied());
        if found != mu1.density(x) {
            return Err(Violation::Row { x, found, expected: mu1.density(x) });
        }
    }
    for y in 0..n {
        let found = MaxPlus::sum(gamma.iter().map(|row| row[y]));
        if found != mu2.density(y) {
            return Err(Violation::Column { y, found, expected: mu2.density(y) });
        }
    }
    Ok(())
}

/// A `(μ₁, μ₂)`-admissible measure on `X²`, stored as its density.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling {
    left: IdempotentMeasure,
    right: IdempotentMeasure,
    gamma: Vec<MaxPlus>,
}

impl Coupling {
    /// Validates `gamma` with [`check_admissible`].
    pub fn new(gamma: Vec<Vec<MaxPlus>>, left: IdempotentMeasure, right: IdempotentMeasure) -> Result<Self, Error> {
        check_admissible(&gamma, &left, &right).map_err(Error::NotAdmissible)?;
        Ok(Self { left, right, gamma: gamma.into_iter().flatten().collect() })
    }

    /// For callers that built `gamma` by a construction known to be
    /// admissible. Checked in debug builds.
    pub(crate) fn from_flat(gamma: Vec<MaxPlus>, left: IdempotentMeasure, right: IdempotentMeasure) -> Self {
        let c = Self { left, right, gamma };
        debug_assert_eq!(check_admissible(&c.rows(), &c.left, &c.right), Ok(()));
        c
    }

    /// `ξ⁰`: everything routed through a pair of zero-density points.
    ///
    /// With `x₁₀`, `x₂₀` the first points where `λ₁`, `λ₂` vanish:
    /// `γ(x₁₀, x₂₀) = 0`, `γ(x₁₀, y) = λ₂(y)`, `γ(x, x₂₀) = λ₁(x)`, and `−∞`
    /// elsewhere.
    pub fn xi_zero(mu1: &IdempotentMeasure, mu2: &IdempotentMeasure) -> Result<Self, Error> {
        if !same_space(mu1.space(), mu2.space()) {
            return Err(Error::SpaceMismatch);
        }
        let n = mu1.space().len();
        let (x0, y0) = (mu1.zero_point(), mu2.zero_point());
        let mut gamma = vec![NegInf; n * n];
        for y in 0..n {
            gamma[x0 * n + y] = mu2.density(y);
        }
        for x in 0..n {
            gamma[x * n + y0] = mu1.density(x);
        }
        gamma[x0 * n + y0] = MaxPlus::ONE;
        Ok(Self::from_flat(gamma, mu1.clone(), mu2.clone()))
    }

    /// `μ₁ ⊗ μ₂`: `γ(x, y) = λ₁(x) ⊙ λ₂(y)`.
    pub fn tensor(mu1: &IdempotentMeasure, mu2: &IdempotentMeasure) -> Result<Self, Error> {
        if !same_space(mu1.space(), mu2.space()) {
            return Err(Error::SpaceMismatch);
        }
        let gamma = mu1
            .lambda()
            .iter()
            .flat_map(|a| mu2.lambda().iter().map(move |b| a.odot(*b)))
            .collect();
        Ok(Self::from_flat(gamma, mu1.clone(), mu2.clone()))
    }

    /// `ξ_μ = ⊕ λ(x) ⊙ δ_(x,x)`, the coupling of `μ` with itself on the
    /// diagonal.
    pub fn diagonal(mu: &IdempotentMeasure) -> Self {
        let n = mu.space().len();
        let mut gamma = vec![NegInf; n * n];
        for x in 0..n {
            gamma[x * n + x] = mu.density(x);
        }
        Self::from_flat(gamma, mu.clone(), mu.clone())
    }

    pub fn left(&self) -> &IdempotentMeasure {
        &self.left
    }

    pub fn right(&self) -> &IdempotentMeasure {
        &self.right
    }

    pub fn len(&self) -> usize {
        self.left.space().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn gamma(&self, x: usize, y: usize) -> MaxPlus {
        self.gamma[x * self.len() + y]
    }

    pub fn rows(&self) -> Vec<Vec<MaxPlus>> {
        self.gamma.chunks(self.len()).map(<[MaxPlus]>::to_vec).collect()
    }

    /// Pairs with finite density, row-major.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n * n)
            .filter(|&k| self.gamma[k].is_finite())
            .map(|k| (k / n, k % n))
            .collect()
    }

    /// `ξ(ρ) = max_(x,y) γ(x, y) + ρ(x, y)`.
    ///
    /// Nonnegative: some entry has `γ = 0` and `ρ ≥ 0`.
    pub fn transport_cost(&self) -> f64 {
        let space = self.left.space();
        let n = self.len();
        let mut best = f64::NEG_INFINITY;
        for x in 0..n {
            for y in 0..n {
                if let Some(g) = self.gamma(x, y).finite() {
                    best = best.max(g + space.rho(x, y));
                }
            }
        }
        best
    }

    /// `sup { ξ(ρ) ⊕ ρ(x, y) : (x, y) ∈ supp ξ }`.
    ///
    /// Computed literally; since `γ ≤ 0` this equals the largest distance
    /// used by the support.
    pub fn support_width(&self) -> f64 {
        let cost = self.transport_cost();
        let space = self.left.space();
        self.support()
            .into_iter()
            .map(|(x, y)| cost.max(space.rho(x, y)))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Whether every support pair lies in `allowed`.
    pub fn supported_in(&self, allowed: impl Fn(usize, usize) -> bool) -> bool {
        self.support().into_iter().all(|(x, y)| allowed(x, y))
    }
}

/// A density on `X³` obtained by gluing two couplings along their shared
/// middle marginal.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleDensity {
    n: usize,
    data: Vec<MaxPlus>,
}

impl TripleDensity {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn at(&self, x1: usize, x2: usize, x3: usize) -> MaxPlus {
        self.data[(x1 * self.n + x2) * self.n + x3]
    }

    /// Max over `x₃`.
    pub fn project_12(&self) -> Vec<Vec<MaxPlus>> {
        self.project(|x1, x2, x3| (x1, x2, x3))
    }

    /// Max over `x₁`.
    pub fn project_23(&self) -> Vec<Vec<MaxPlus>> {
        self.project(|x2, x3, x1| (x1, x2, x3))
    }

    /// Max over `x₂`.
    pub fn project_13(&self) -> Vec<Vec<MaxPlus>> {
        self.project(|x1, x3, x2| (x1, x2, x3))
    }

    // `order(a, b, c)` maps (kept row, kept column, eliminated) to (x1, x2, x3).
    fn project(&self, order: impl Fn(usize, usize, usize) -> (usize, usize, usize)) -> Vec<Vec<MaxPlus>> {
        let n = self.n;
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        MaxPlus::sum((0..n).map(|c| {
                            let (x1, x2, x3) = order(a, b, c);
                            self.at(x1, x2, x3)
                        }))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Glues `ξ₁₂ ∈ Λ(μ₁, μ₂)` and `ξ₂₃ ∈ Λ(μ₂, μ₃)` into
/// `d(x₁, x₂, x₃) = min(γ₁₂(x₁, x₂), γ₂₃(x₂, x₃))`.
///
/// Because `γ₁₂(x₁, x₂) ≤ λ₂(x₂) = max_{x₃} γ₂₃(x₂, x₃)`, the max over `x₃`
/// recovers `γ₁₂` exactly, and symmetrically for `γ₂₃`. The `(1, 3)`
/// projection is then a coupling of `(μ₁, μ₃)`.
pub fn glue(xi12: &Coupling, xi23: &Coupling) -> Result<TripleDensity, Error> {
    if !same_space(xi12.right.space(), xi23.left.space()) {
        return Err(Error::SpaceMismatch);
    }
    if let Some(x) = (0..xi12.len()).find(|&x| xi12.right.density(x) != xi23.left.density(x)) {
        return Err(Error::MiddleMismatch(x));
    }
    let n = xi12.len();
    let mut data = Vec::with_capacity(n * n * n);
    for x1 in 0..n {
        for x2 in 0..n {
            let g12 = xi12.gamma(x1, x2);
            for x3 in 0..n {
                data.push(g12.meet(xi23.gamma(x2, x3)));
            }
        }
    }
    Ok(TripleDensity { n, data })
}

/// The `(μ₁, μ₃)` coupling obtained by gluing and projecting out the middle
/// coordinate.
pub fn compose(xi12: &Coupling, xi23: &Coupling) -> Result<Coupling, Error> {
    let glued = glue(xi12, xi23)?;
    Coupling::new(glued.project_13(), xi12.left.clone(), xi23.right.clone())
}
