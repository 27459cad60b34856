//! Entanglement of two bright pump fields in a closed double-Λ atom with
//! spontaneous-emission interference.
//!
//! The pipeline runs in five stages, each in its own module:
//!
//! 1. [`atom`] builds the rotating-frame Hamiltonian and the correlated
//!    Lindblad generator.
//! 2. [`steady`] finds the mean-field steady state and absorption.
//! 3. [`fluctuation`] linearizes the Heisenberg–Langevin equations about it
//!    (drift, field coupling, diffusion from the Einstein relation).
//! 4. [`propagation`] carries the field-fluctuation correlations through
//!    the medium.
//! 5. [`entanglement`] evaluates quadrature variances and the Duan sum V₁₂.
//!
//! [`oracle`] re-derives the linearized quantities by brute-force master
//! equation evolution; [`experiments`] runs the figure sweeps and [`io`]
//! handles configs, tables, plots and manifests.
//!
//! ```
//! use sgc_entanglement::{experiments::evaluate_point, params::SystemParams};
//!
//! let point = evaluate_point(&SystemParams::default(), 0.0, 200).unwrap();
//! assert!((point.observables.populations.iter().sum::<f64>() - 1.0).abs() < 1e-10);
//! ```

// NaN-rejecting comparisons are written as negations on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod atom;
pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod fluctuation;
pub mod io;
mod linalg;
pub mod oracle;
pub mod params;
pub mod propagation;
pub mod steady;

pub use error::{Error, Result};
pub use params::SystemParams;

pub type C64 = nalgebra::Complex<f64>;
/// Operator on the four-level atomic Hilbert space.
pub type Op = nalgebra::Matrix4<C64>;
