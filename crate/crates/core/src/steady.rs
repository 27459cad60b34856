//! Mean-field steady state of the driven atom and the absorption it
//! produces.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::atom::{AtomicBasis, Generator, DIM, LEVELS};
use crate::error::{Error, Result};
use crate::linalg::{self, rk4_propagator, unvec_row_major, vec_row_major};
use crate::params::SystemParams;
use crate::{Op, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    NullSpace,
    LongTimeIntegration,
}

impl std::fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolveMethod::NullSpace => "null-space",
            SolveMethod::LongTimeIntegration => "long-time-integration",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyStateOptions {
    /// Relative threshold on the second-smallest singular value of 𝓛 below
    /// which the null space counts as degenerate.
    pub degeneracy_tol: f64,
    /// Residual ‖𝓛ρ‖ / ‖𝓛‖ accepted from the integration fallback.
    pub residual_tol: f64,
    pub max_doublings: usize,
}

impl Default for SteadyStateOptions {
    fn default() -> Self {
        Self { degeneracy_tol: 1e-8, residual_tol: 1e-13, max_doublings: 80 }
    }
}

/// Steady-state expectation values ⟨σᵢⱼ⟩ in [`AtomicBasis`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomState {
    pub expectations: DVector<C64>,
    pub method: SolveMethod,
    /// ‖𝓛ρ‖ of the returned state.
    pub residual: f64,
}

impl AtomState {
    pub fn from_density(rho: &Op, method: SolveMethod, residual: f64) -> Self {
        // ⟨σᵢⱼ⟩ = Tr(ρ|i⟩⟨j|) = ρⱼᵢ
        let expectations = DVector::from_iterator(
            DIM,
            (0..DIM).map(|k| {
                let (i, j) = AtomicBasis::levels(k);
                rho[(j, i)]
            }),
        );
        Self { expectations, method, residual }
    }

    pub fn density_matrix(&self) -> Op {
        let mut rho = Op::zeros();
        for k in 0..DIM {
            let (i, j) = AtomicBasis::levels(k);
            rho[(j, i)] = self.expectations[k];
        }
        rho
    }

    pub fn expectation(&self, i: usize, j: usize) -> C64 {
        self.expectations[AtomicBasis::index(i, j)]
    }

    /// ⟨X⟩ = Tr(ρX).
    pub fn mean(&self, x: &Op) -> C64 {
        linalg::trace(&(self.density_matrix() * x))
    }

    pub fn populations(&self) -> [f64; LEVELS] {
        std::array::from_fn(|k| self.expectation(k, k).re)
    }

    pub fn trace(&self) -> f64 {
        self.populations().iter().sum()
    }

    /// max |⟨σᵢⱼ⟩ − conj⟨σⱼᵢ⟩|
    pub fn hermiticity_error(&self) -> f64 {
        (0..DIM)
            .map(|k| (self.expectations[k] - self.expectations[AtomicBasis::adjoint(k)].conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::min_eigenvalue_hermitian(&self.density_matrix())
    }
}

pub fn solve_steady_state(generator: &Generator) -> Result<AtomState> {
    solve_steady_state_with(generator, &SteadyStateOptions::default())
}

/// Null space of 𝓛 with the trace condition appended; falls back to long
/// integration from the unpolarized lower-level mixture when the null space
/// is degenerate.
pub fn solve_steady_state_with(generator: &Generator, options: &SteadyStateOptions) -> Result<AtomState> {
    let l = generator.superoperator();
    let sv = linalg::sorted_singular_values(&l);
    let scale = sv[DIM - 1].max(f64::MIN_POSITIVE);
    if sv[1] < options.degeneracy_tol * scale {
        let rho0 = unpolarized_lower_mixture();
        let rho = integrate_to_steady_state(generator, &rho0, options)?;
        let residual = generator.apply(&rho).norm();
        return Ok(AtomState::from_density(&rho, SolveMethod::LongTimeIntegration, residual));
    }

    let mut augmented = DMatrix::<C64>::zeros(DIM + 1, DIM);
    augmented.rows_mut(0, DIM).copy_from(&l);
    for k in 0..LEVELS {
        augmented[(DIM, AtomicBasis::index(k, k))] = C64::new(1.0, 0.0);
    }
    let mut rhs = DVector::<C64>::zeros(DIM + 1);
    rhs[DIM] = C64::new(1.0, 0.0);
    let x = augmented.svd(true, true).solve(&rhs, 1e-14 * scale).expect("SVD computed with both factors");
    let rho = normalize(&linalg::hermitian_part(&unvec_row_major(&x)));
    let residual = generator.apply(&rho).norm();
    Ok(AtomState::from_density(&rho, SolveMethod::NullSpace, residual))
}

/// (|1⟩⟨1| + |3⟩⟨3|)/2
pub fn unpolarized_lower_mixture() -> Op {
    let mut rho = Op::zeros();
    rho[(0, 0)] = C64::new(0.5, 0.0);
    rho[(2, 2)] = C64::new(0.5, 0.0);
    rho
}

/// Long-time RK4 integration of dρ/dt = 𝓛ρ, advanced by repeatedly
/// squaring the one-step propagator so the simulated time doubles each
/// round.
pub fn integrate_to_steady_state(generator: &Generator, rho0: &Op, options: &SteadyStateOptions) -> Result<Op> {
    let l = generator.superoperator();
    let norm = l.norm().max(f64::MIN_POSITIVE);
    let step = rk4_propagator(&l, 0.25 / norm);
    let v0 = vec_row_major(rho0);
    let mut propagator = step;
    let mut residual = f64::INFINITY;
    for _ in 0..options.max_doublings {
        let v = &propagator * &v0;
        residual = (&l * &v).norm() / norm;
        if residual < options.residual_tol {
            return Ok(normalize(&linalg::hermitian_part(&unvec_row_major(&v))));
        }
        propagator = &propagator * &propagator;
    }
    Err(Error::SteadyStateNotConverged { residual, doublings: options.max_doublings })
}

fn normalize(rho: &Op) -> Op {
    rho / linalg::trace(rho)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observables {
    pub populations: [f64; LEVELS],
    /// Intensity absorption coefficient of P1 (m⁻¹); absent at zero amplitude.
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    /// ⟨σ₁₄⟩ + ⟨σ₁₂⟩ as (re, im).
    pub s1: (f64, f64),
    /// ⟨σ₃₄⟩ + ⟨σ₃₂⟩ as (re, im).
    pub s2: (f64, f64),
}

/// Populations and the input-plane intensity loss rates
/// αᵢ = 2χᵢ Im(sᵢ)/⟨aᵢ⟩.
pub fn observables(state: &AtomState, params: &SystemParams) -> Observables {
    let s1 = state.expectation(0, 3) + state.expectation(0, 1);
    let s2 = state.expectation(2, 3) + state.expectation(2, 1);
    let (chi1, chi2) = params.chi();
    let alpha = |chi: f64, s: C64, a: f64| (a > 0.0).then(|| 2.0 * chi * s.im / a);
    Observables {
        populations: state.populations(),
        alpha1: alpha(chi1, s1, params.a1_mean),
        alpha2: alpha(chi2, s2, params.a2_mean),
        s1: (s1.re, s1.im),
        s2: (s2.re, s2.im),
    }
}
