//! Idempotent (max-plus) probability measures on finite metric spaces.
//!
//! A measure is a density `λ: X → [−∞, 0]` with `max λ = 0`, acting on
//! functions by `μ(φ) = max_x λ(x) + φ(x)`. Two measures are compared
//! through *couplings*, measures on `X × X` whose tropical marginals are the
//! two given ones:
//!
//! * [`distances::d_i_fast`] / [`distances::d_i_oracle`] compute
//!   `d_I = inf ξ(ρ)`, a transport-style distance that fails to separate
//!   points;
//! * [`distances::rho_i_fast`] / [`distances::rho_i_oracle`] compute the
//!   bottleneck distance `ρ_I`, a metric with `ρ_I(δ_x, δ_y) = ρ(x, y)`.
//!
//! ```
//! use std::sync::Arc;
//! use imetric_core::{FiniteMetricSpace, IdempotentMeasure, MaxPlus};
//! use imetric_core::distances::{d_i_fast, rho_i_fast};
//!
//! let space = Arc::new(FiniteMetricSpace::new(
//!     vec!["x".into(), "y".into()],
//!     vec![vec![0.0, 1.0], vec![1.0, 0.0]],
//! ).unwrap());
//! let mu1 = IdempotentMeasure::new(space.clone(), vec![MaxPlus::ONE, MaxPlus::lit(-2.0)]).unwrap();
//! let mu2 = IdempotentMeasure::new(space, vec![MaxPlus::ONE, MaxPlus::lit(-4.0)]).unwrap();
//!
//! assert_eq!(d_i_fast(&mu1, &mu2).unwrap().value, 0.0);
//! assert_eq!(rho_i_fast(&mu1, &mu2).unwrap().value, 1.0);
//! ```

pub mod convergence;
pub mod coupling;
pub mod distances;
mod error;
pub mod io;
pub mod maxplus;
pub mod measure;
pub mod sample;
pub mod space;

pub use convergence::{CoverNeighborhood, MeasureSequence, PairSet, Schedule, Verdict};
pub use coupling::{check_admissible, glue, Coupling, TripleDensity, Violation};
pub use distances::{DistanceReport, Method, Metric};
pub use error::Error;
pub use maxplus::{oplus_h, MaxPlus};
pub use measure::{IdempotentMeasure, PointMap, TestFunction};
pub use space::FiniteMetricSpace;
