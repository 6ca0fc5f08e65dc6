//! Finite metric spaces: a labelled point set with a validated distance
//! matrix.

use crate::error::Error;
use crate::maxplus::DEFAULT_TOLERANCE;

/// A finite metric space `(X, ρ)`.
///
/// Points are addressed by index `0..len()`. The matrix is stored row-major
/// and satisfies the metric axioms (triangle up to [`DEFAULT_TOLERANCE`]).
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    rho: Vec<f64>,
}

impl FiniteMetricSpace {
    /// Validates `rho` against the metric axioms.
    ///
    /// Checks run in a fixed order (shape, labels, entries, diagonal,
    /// symmetry, separation, triangle) and the first violation is returned
    /// with the indices that witness it.
    #[allow(clippy::needless_range_loop)]
    pub fn new(labels: Vec<String>, rho: Vec<Vec<f64>>) -> Result<Self, Error> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        if rho.len() != n {
            return Err(Error::ShapeMismatch { points: n, rows: rho.len() });
        }
        if let Some(row) = rho.iter().find(|row| row.len() != n) {
            return Err(Error::ShapeMismatch { points: n, rows: row.len() });
        }
        for i in 0..n {
            if let Some(j) = (0..i).find(|&j| labels[j] == labels[i]) {
                return Err(Error::DuplicateLabel { label: labels[i].clone(), first: j, second: i });
            }
        }
        for (i, row) in rho.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                if !value.is_finite() || value < 0.0 {
                    return Err(Error::InvalidDistance { i, j, value });
                }
            }
        }
        for (i, row) in rho.iter().enumerate() {
            if row[i] != 0.0 {
                return Err(Error::NonzeroDiagonal { i, value: row[i] });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rho[i][j] != rho[j][i] {
                    return Err(Error::Asymmetric { i, j, forward: rho[i][j], backward: rho[j][i] });
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rho[i][j] == 0.0 {
                    return Err(Error::Indistinct { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let via = rho[i][j] + rho[j][k];
                    if rho[i][k] > via + DEFAULT_TOLERANCE {
                        return Err(Error::Triangle { i, j, k, direct: rho[i][k], via });
                    }
                }
            }
        }
        Ok(Self { labels, rho: rho.into_iter().flatten().collect() })
    }

    /// A space with labels `p0, p1, …`.
    pub fn unlabeled(rho: Vec<Vec<f64>>) -> Result<Self, Error> {
        let labels = (0..rho.len()).map(|i| format!("p{i}")).collect();
        Self::new(labels, rho)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: validation rejects empty spaces.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, Error> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    #[inline]
    pub fn rho(&self, i: usize, j: usize) -> f64 {
        self.rho[i * self.len() + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.rho.chunks(self.len()).map(<[f64]>::to_vec).collect()
    }

    /// Largest distance; `0` for a single point.
    pub fn diam(&self) -> f64 {
        self.rho.iter().copied().fold(0.0, f64::max)
    }

    /// A pair `(i, j)` with `rho(i, j) = diam()`, first in row-major order.
    pub fn diametral_pair(&self) -> (usize, usize) {
        let d = self.diam();
        let pos = self.rho.iter().position(|&r| r == d).unwrap_or(0);
        (pos / self.len(), pos % self.len())
    }

    /// Sorted distinct distance values, `0` included.
    pub fn distance_levels(&self) -> Vec<f64> {
        let mut levels = self.rho.clone();
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        levels
    }
}
