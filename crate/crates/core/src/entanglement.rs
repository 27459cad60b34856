//! Quadrature variances and the Duan inseparability sum.
//!
//! Quadratures are x = a + a† and p = −i(a − a†); the joint operators are
//! u = x₁ + x₂ and v = p₁ − p₂. Variances use symmetrized ordering.

use serde::{Deserialize, Serialize};

use crate::propagation::{FieldCovariance, Mat4};
use crate::C64;

pub const DUAN_BOUND: f64 = 4.0;

const U_WEIGHTS: [C64; 4] = [C64::new(1.0, 0.0); 4];
const V_WEIGHTS: [C64; 4] = [C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0)];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DuanResult {
    pub v12: f64,
    pub du2: f64,
    pub dv2: f64,
    pub entangled: bool,
}

/// Σᵢⱼ wᵢwⱼ(Cᵢⱼ + Cⱼᵢ)/2 without discarding the imaginary part.
pub fn quadrature_variance_complex(c: &Mat4, weights: &[C64; 4]) -> C64 {
    let mut sum = C64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            sum += weights[i] * weights[j] * (c[(i, j)] + c[(j, i)]) * 0.5;
        }
    }
    sum
}

/// Symmetrized variance of Σᵢ wᵢvᵢ.
///
/// Panics in debug builds if the imaginary residual exceeds 1e−10 relative
/// to the magnitude of the result.
pub fn quadrature_variance(cov: &FieldCovariance, weights: &[C64; 4]) -> f64 {
    let z = quadrature_variance_complex(&cov.c, weights);
    debug_assert!(z.im.abs() <= 1e-10 * z.re.abs().max(1.0), "non-Hermitian quadrature: {z}");
    z.re
}

pub fn duan_v12(cov: &FieldCovariance) -> DuanResult {
    let du2 = quadrature_variance(cov, &U_WEIGHTS);
    let dv2 = quadrature_variance(cov, &V_WEIGHTS);
    let v12 = du2 + dv2;
    DuanResult { v12, du2, dv2, entangled: v12 < DUAN_BOUND }
}

/// Exchanges the two modes.
pub fn swap_modes(cov: &FieldCovariance) -> FieldCovariance {
    const PERM: [usize; 4] = [2, 3, 0, 1];
    FieldCovariance { c: Mat4::from_fn(|i, j| cov.c[(PERM[i], PERM[j])]), ..cov.clone() }
}
