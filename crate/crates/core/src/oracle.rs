//! Brute-force Lindblad machinery for validating the analytic pipeline.
//!
//! Nothing here reads the drift, coupling or diffusion matrices built by
//! [`crate::fluctuation`] except where a check compares against them.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::atom::{build_generator, AtomicBasis, Generator, DIM};
use crate::entanglement::duan_v12;
use crate::error::{Error, Result};
use crate::fluctuation::{self, LinearizedSystem};
use crate::linalg::{self, matrix_power, rk4_propagator, unvec_row_major, vec_row_major};
use crate::params::SystemParams;
use crate::propagation::{input_covariance, propagate_covariance, transfer_matrix, InputState, DEFAULT_SLABS};
use crate::steady::{
    integrate_to_steady_state, solve_steady_state, unpolarized_lower_mixture, AtomState, SteadyStateOptions,
};
use crate::{Op, C64};

/// Upper bound on dt·‖𝓛‖ accepted by [`time_evolve`].
pub const MAX_STEP_PRODUCT: f64 = 0.1;
const POSITIVITY_TOL: f64 = 1e-6;
const SAMPLES: usize = 100;

#[derive(Debug, Clone)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub states: Vec<Op>,
    /// ‖𝓛(ρ_final)‖
    pub final_residual: f64,
}

impl EvolutionResult {
    pub fn final_state(&self) -> &Op {
        self.states.last().expect("at least the initial sample")
    }
}

/// Fixed-step RK4 integration of dρ/dt = 𝓛ρ. The trace is never
/// renormalized so that drift stays visible.
pub fn time_evolve(generator: &Generator, rho0: &Op, t_final: f64, dt: f64) -> Result<EvolutionResult> {
    let l = generator.superoperator();
    let product = dt * l.norm();
    if !(product < MAX_STEP_PRODUCT) || !(dt > 0.0) {
        return Err(Error::StepTooLarge { product });
    }
    let steps = (t_final / dt).ceil() as usize;
    let stride = (steps / SAMPLES).max(1);
    let step = rk4_propagator(&l, dt);
    let mut v = vec_row_major(rho0);
    let mut times = vec![0.0];
    let mut states = vec![*rho0];
    for n in 1..=steps {
        v = &step * v;
        let sampled = n % stride == 0 || n == steps;
        if sampled || n % 16 == 0 {
            let rho = unvec_row_major(&v);
            let min = linalg::min_eigenvalue_hermitian(&rho);
            if min < -POSITIVITY_TOL {
                return Err(Error::PositivityViolation {
                    time: n as f64 * dt,
                    min_eigenvalue: min,
                    suggested_dt: dt / 2.0,
                });
            }
            if sampled {
                times.push(n as f64 * dt);
                states.push(rho);
            }
        }
    }
    let final_residual = generator.apply(states.last().unwrap()).norm();
    Ok(EvolutionResult { times, states, final_residual })
}

/// ⟨σ_μσ_ν⟩ − ⟨σ_μ⟩⟨σ_ν⟩ on the full 16-dimensional basis.
pub fn direct_covariance(state: &AtomState) -> DMatrix<C64> {
    let rho = state.density_matrix();
    let mean = |x: &Op| linalg::trace(&(rho * x));
    DMatrix::from_fn(DIM, DIM, |mu, nu| {
        let (a, b) = (AtomicBasis::operator(mu), AtomicBasis::operator(nu));
        mean(&(a * b)) - mean(&a) * mean(&b)
    })
}

/// ⟨δσ_μ(τ) δσ_ν(0)⟩ from the quantum regression theorem: σ_ν ρ is evolved
/// under 𝓛 for τ and traced against σ_μ.
pub fn regression_covariance(generator: &Generator, state: &AtomState, tau: f64) -> DMatrix<C64> {
    let l = generator.superoperator();
    // dt·‖𝓛‖ ≤ 0.01 keeps the RK4 error near 1e−12 per unit time
    let steps = ((tau * l.norm()) / 0.01).ceil().max(1.0) as u64;
    let propagator = if tau == 0.0 {
        DMatrix::identity(DIM, DIM)
    } else {
        matrix_power(&rk4_propagator(&l, tau / steps as f64), steps)
    };
    let rho = state.density_matrix();
    let means: Vec<C64> = (0..DIM).map(|k| state.expectations[k]).collect();
    let mut out = DMatrix::zeros(DIM, DIM);
    for nu in 0..DIM {
        let evolved = unvec_row_major(&(&propagator * vec_row_major(&(AtomicBasis::operator(nu) * rho))));
        for mu in 0..DIM {
            out[(mu, nu)] = linalg::trace(&(AtomicBasis::operator(mu) * evolved)) - means[mu] * means[nu];
        }
    }
    out
}

/// Stationary Σ solving AΣ + ΣAᵀ + 2D = 0 on the traceless subspace.
pub fn lyapunov_covariance(lin: &LinearizedSystem) -> Result<DMatrix<C64>> {
    let max_real = lin.max_real_eigenvalue();
    if !(max_real < -1e-10) {
        return Err(Error::UnstableDrift { max_real });
    }
    let n = lin.drift.nrows();
    let id = DMatrix::<C64>::identity(n, n);
    // row-major vec: vec(AΣ) = (A⊗I)vecΣ, vec(ΣAᵀ) = (I⊗A)vecΣ
    let system = lin.drift.kronecker(&id) + id.kronecker(&lin.drift);
    let rhs = DVector::from_iterator(n * n, (0..n * n).map(|k| -2.0 * lin.diffusion[(k / n, k % n)]));
    let x = system.lu().solve(&rhs).ok_or(Error::UnstableDrift { max_real })?;
    Ok(DMatrix::from_fn(n, n, |i, j| x[i * n + j]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), residual, tolerance, passed: residual <= tolerance, detail: None }
    }

    fn failed(name: &str, detail: String) -> Self {
        Self { name: name.into(), residual: f64::INFINITY, tolerance: 0.0, passed: false, detail: Some(detail) }
    }
}

fn relative_deviation(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    linalg::max_abs(&(a - b)) / linalg::max_abs(b).max(f64::MIN_POSITIVE)
}

/// Lag times at which e^{Aτ}Σ is compared against the regression theorem.
pub const REGRESSION_LAGS: [f64; 4] = [0.0, 0.1, 1.0, 10.0];

/// Largest deviation between the Lyapunov covariance propagated by the
/// drift, e^{Aτ}Σ, and the regression-theorem correlations, relative to the
/// largest equal-time correlation (lagged correlations may decay to
/// roundoff).
pub fn lyapunov_vs_regression(
    lin: &LinearizedSystem,
    generator: &Generator,
    state: &AtomState,
    lags: &[f64],
) -> Result<f64> {
    let sigma = lyapunov_covariance(lin)?;
    let scale =
        linalg::max_abs(&fluctuation::reduce(&regression_covariance(generator, state, 0.0))).max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for &tau in lags {
        let reference = fluctuation::reduce(&regression_covariance(generator, state, tau));
        let lagged = (&lin.drift * C64::new(tau, 0.0)).exp() * &sigma;
        worst = worst.max(linalg::max_abs(&(lagged - reference)) / scale);
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub params: SystemParams,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Full consistency battery at one parameter point.
pub fn cross_validate(params: &SystemParams) -> Result<ValidationReport> {
    params.validate()?;
    let generator = build_generator(params)?;
    let state = solve_steady_state(&generator)?;
    let mut checks = Vec::new();

    let rho = state.density_matrix();
    let invariants = (state.trace() - 1.0).abs().max(state.hermiticity_error()).max((-state.min_eigenvalue()).max(0.0));
    checks.push(Check::new("steady-state invariants", invariants, 1e-8));

    match integrate_to_steady_state(&generator, &unpolarized_lower_mixture(), &SteadyStateOptions::default()) {
        Ok(other) => checks.push(Check::new("steady-state dual method", linalg::max_abs(&(other - rho)), 1e-8)),
        Err(e) => checks.push(Check::failed("steady-state dual method", e.to_string())),
    }

    let sandwich = fluctuation::diffusion_matrix(&generator, &state);
    let channels = fluctuation::diffusion_matrix_by_channels(&generator, &state);
    checks.push(Check::new("einstein relation", linalg::max_abs(&(sandwich - channels)), 1e-12));

    let lin = fluctuation::linearize(params, &generator, &state);
    let tau0 =
        lyapunov_covariance(&lin).map(|s| relative_deviation(&s, &fluctuation::reduce(&direct_covariance(&state))));
    match tau0 {
        Ok(r) => checks.push(Check::new("lyapunov vs direct covariance", r, 1e-6)),
        Err(e) => checks.push(Check::failed("lyapunov vs direct covariance", e.to_string())),
    }
    match lyapunov_vs_regression(&lin, &generator, &state, &REGRESSION_LAGS) {
        Ok(r) => checks.push(Check::new("lyapunov vs regression", r, 1e-6)),
        Err(e) => checks.push(Check::failed("lyapunov vs regression", e.to_string())),
    }

    match transfer_matrix(&lin, params, 0.0, DEFAULT_SLABS) {
        Ok(setup) => {
            let out = propagate_covariance(&setup, &input_covariance(InputState::Vacuum)?);
            let mut check = Check::new("commutator preservation", out.covariance.commutator_error(), 1e-6);
            check.detail = Some(format!("V12 = {}", duan_v12(&out.covariance).v12));
            checks.push(check);
        }
        Err(e) => checks.push(Check::failed("commutator preservation", e.to_string())),
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(ValidationReport { params: *params, checks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::{sigma, DecayChannel};
    use crate::steady::SolveMethod;

    #[test]
    fn step_size_precondition() {
        let g = build_generator(&SystemParams::default()).unwrap();
        assert!(matches!(time_evolve(&g, &unpolarized_lower_mixture(), 1.0, 1.0), Err(Error::StepTooLarge { .. })));
    }

    #[test]
    fn exchange_equilibrates_lower_levels() {
        let p = SystemParams { g: 0.0, gamma0: 0.5, ..Default::default() };
        let g = build_generator(&p).unwrap();
        let mut rho0 = Op::zeros();
        rho0[(0, 0)] = C64::new(1.0, 0.0);
        let dt = 0.05 / g.superoperator().norm();
        let r = time_evolve(&g, &rho0, 30.0, dt).unwrap();
        let f = r.final_state();
        assert!((f[(0, 0)].re - 0.5).abs() < 1e-10 && (f[(2, 2)].re - 0.5).abs() < 1e-10);
    }

    #[test]
    fn trace_drift_stays_small() {
        let g = build_generator(&SystemParams::default()).unwrap();
        let dt = 0.05 / g.superoperator().norm();
        let r = time_evolve(&g, &unpolarized_lower_mixture(), 100.0, dt).unwrap();
        for rho in &r.states {
            assert!((linalg::trace(rho).re - 1.0).abs() < 1e-10);
        }
    }

    fn two_level(gamma: f64) -> (Generator, AtomState) {
        let g = Generator::from_parts(Op::zeros(), vec![DecayChannel::single(2.0 * gamma, sigma(0, 1))]);
        let mut rho = Op::zeros();
        rho[(0, 0)] = C64::new(0.6, 0.0);
        rho[(1, 1)] = C64::new(0.4, 0.0);
        rho[(0, 1)] = C64::new(0.2, 0.1);
        rho[(1, 0)] = C64::new(0.2, -0.1);
        (g, AtomState::from_density(&rho, SolveMethod::NullSpace, 0.0))
    }

    #[test]
    fn two_level_regression_decays_at_gamma() {
        let gamma = 0.7;
        let (g, s) = two_level(gamma);
        let (i, j) = (AtomicBasis::index(0, 1), AtomicBasis::index(1, 0));
        let c0 = regression_covariance(&g, &s, 0.0)[(i, j)];
        // ⟨σ₁₂σ₂₁⟩ − |⟨σ₁₂⟩|² = ⟨σ₁₁⟩ − |⟨σ₁₂⟩|²
        let expected = 0.6 - s.expectations[i].norm_sqr();
        assert!((c0.re - expected).abs() < 1e-14 && c0.im.abs() < 1e-14);
        for tau in [0.5, 2.0] {
            // ⟨σ₁₂(τ)σ₂₁⟩ = e^{−γτ}⟨σ₁₂σ₂₁⟩ while the mean product term is static
            let full = regression_covariance(&g, &s, tau)[(i, j)] + s.expectations[i] * s.expectations[j];
            let expected_full = (-gamma * tau).exp() * 0.6;
            assert!((full.re - expected_full).abs() < 1e-10, "{full} vs {expected_full}");
        }
    }

    #[test]
    fn closed_system_correlations_keep_their_norm() {
        let p = SystemParams { gamma1: 0.0, gamma2: 0.0, gamma3: 0.0, gamma4: 0.0, gamma0: 0.0, ..Default::default() };
        let g = build_generator(&p).unwrap();
        let h = *g.hamiltonian();
        let eig = h.symmetric_eigen();
        let v = eig.eigenvectors.column(0).into_owned();
        let rho = v * v.adjoint();
        let s = AtomState::from_density(&rho, SolveMethod::NullSpace, 0.0);
        let c0 = regression_covariance(&g, &s, 0.0).norm();
        let c1 = regression_covariance(&g, &s, 1.7).norm();
        assert!((c0 - c1).abs() < 1e-8 * c0);
    }

    #[test]
    fn lyapunov_matches_direct_covariance() {
        let p = SystemParams { p1: 0.8, p2: 0.6, delta1: 0.5, gamma_phi: 0.05, ..Default::default() };
        let g = build_generator(&p).unwrap();
        let s = solve_steady_state(&g).unwrap();
        let lin = fluctuation::linearize(&p, &g, &s);
        let sigma = lyapunov_covariance(&lin).unwrap();
        let direct = fluctuation::reduce(&direct_covariance(&s));
        assert!(relative_deviation(&sigma, &direct) < 1e-6);
    }

    #[test]
    fn unstable_drift_is_refused() {
        let p = SystemParams { gamma0: 0.0, ..Default::default() };
        let g = build_generator(&p).unwrap();
        let s = solve_steady_state(&g).unwrap();
        let lin = fluctuation::linearize(&p, &g, &s);
        assert!(matches!(lyapunov_covariance(&lin), Err(Error::UnstableDrift { .. })));
    }

    #[test]
    fn corrupted_diffusion_is_caught() {
        let p = SystemParams::default();
        let g = build_generator(&p).unwrap();
        let s = solve_steady_state(&g).unwrap();
        let mut lin = fluctuation::linearize(&p, &g, &s);
        assert!(lyapunov_vs_regression(&lin, &g, &s, &REGRESSION_LAGS).unwrap() < 1e-6);
        let (i, j) = (AtomicBasis::index(0, 1), AtomicBasis::index(1, 0));
        lin.diffusion[(i, j)] += 1e-3;
        assert!(lyapunov_vs_regression(&lin, &g, &s, &REGRESSION_LAGS).unwrap() > 1e-6);
    }

    #[test]
    fn invalid_alignment_rejected() {
        let p = SystemParams { p1: 1.2, ..Default::default() };
        assert!(matches!(cross_validate(&p), Err(Error::InvalidParam { .. })));
    }
}
