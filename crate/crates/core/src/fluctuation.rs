//! Linearized Heisenberg–Langevin dynamics about the steady state.
//!
//! Fluctuations δσ_μ = σ_μ − ⟨σ_μ⟩ obey
//! d δσ/dt = A δσ + B v + f, with v = (δa₁, δa₁†, δa₂, δa₂†) and Langevin
//! forces ⟨f_μ(t) f_ν(t′)⟩ = 2D_μν δ(t − t′). Trace conservation removes
//! δσ₄₄ = −(δσ₁₁ + δσ₂₂ + δσ₃₃), leaving a 15-dimensional system.

use nalgebra::{DMatrix, DVector};

use crate::atom::{field_coupling_operators, AtomicBasis, Generator, DIM, REDUCED_DIM};
use crate::error::{Error, Result};
use crate::linalg;
use crate::params::{SystemParams, SPEED_OF_LIGHT};
use crate::steady::AtomState;
use crate::{Op, C64};

#[derive(Debug, Clone)]
pub struct LinearizedSystem {
    /// Drift on the traceless subspace.
    pub drift: DMatrix<C64>,
    /// Columns for δa₁, δa₁†, δa₂, δa₂†.
    pub coupling: DMatrix<C64>,
    /// D on the traceless subspace (the Langevin correlator is 2D).
    pub diffusion: DMatrix<C64>,
    /// Collective-noise normalization c/(γ₁N) in meters; infinite for an
    /// empty medium.
    pub noise_scale: f64,
    /// 16×15 embedding δσ_full = P δσ_reduced.
    pub projector: DMatrix<C64>,
    pub means: DVector<C64>,
}

impl LinearizedSystem {
    pub fn max_real_eigenvalue(&self) -> f64 {
        linalg::eigenvalues(&self.drift).iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Fails with the smallest-modulus eigenvalue when A is singular to
    /// within 1e−10 of its norm; zero-frequency inversion is then refused.
    pub fn check_regular(&self) -> Result<()> {
        let scale = self.drift.norm().max(f64::MIN_POSITIVE);
        let smallest = linalg::eigenvalues(&self.drift)
            .into_iter()
            .min_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap_or_default();
        if smallest.norm() < 1e-10 * scale {
            return Err(Error::SingularDrift { eigenvalue: smallest });
        }
        Ok(())
    }
}

pub fn projector() -> DMatrix<C64> {
    let mut p = DMatrix::zeros(DIM, REDUCED_DIM);
    for k in 0..REDUCED_DIM {
        p[(k, k)] = C64::new(1.0, 0.0);
    }
    for k in [0, 5, 10] {
        p[(DIM - 1, k)] = C64::new(-1.0, 0.0);
    }
    p
}

/// Reduced drift matrix and the projector used to build it. The full
/// 16-dimensional drift is [`Generator::adjoint_matrix`].
pub fn drift_matrix(generator: &Generator) -> (DMatrix<C64>, DMatrix<C64>) {
    let full = generator.adjoint_matrix();
    let p = projector();
    let reduced = (&full * &p).rows(0, REDUCED_DIM).into_owned();
    (reduced, p)
}

/// B_μk = ⟨i[∂H/∂vₖ, σ_μ]⟩, reduced to the traceless subspace.
pub fn field_coupling_matrices(params: &SystemParams, state: &AtomState) -> DMatrix<C64> {
    let rho = state.density_matrix();
    let ops = field_coupling_operators(params);
    DMatrix::from_fn(REDUCED_DIM, 4, |mu, k| {
        let s = AtomicBasis::operator(mu);
        let c = (ops[k] * s - s * ops[k]) * C64::new(0.0, 1.0);
        linalg::trace(&(rho * c))
    })
}

/// Full 16×16 diffusion matrix from the generalized Einstein relation
/// 2D_μν = ⟨𝓛†(σ_μσ_ν)⟩ − ⟨𝓛†(σ_μ)σ_ν⟩ − ⟨σ_μ𝓛†(σ_ν)⟩.
pub fn diffusion_matrix(generator: &Generator, state: &AtomState) -> DMatrix<C64> {
    einstein_sandwich(state, |x| generator.apply_adjoint(x))
}

/// Same matrix summed channel by channel:
/// 2D_μν = Σ Γₐᵦ ⟨[Lᵦ†, σ_μ][σ_ν, Lₐ]⟩.
pub fn diffusion_matrix_by_channels(generator: &Generator, state: &AtomState) -> DMatrix<C64> {
    let rho = state.density_matrix();
    let basis: Vec<Op> = (0..DIM).map(AtomicBasis::operator).collect();
    let mut d = DMatrix::<C64>::zeros(DIM, DIM);
    for channel in generator.channels() {
        for (a, la) in channel.jumps.iter().enumerate() {
            for (b, lb) in channel.jumps.iter().enumerate() {
                let rate = channel.rates[(a, b)];
                if rate == 0.0 {
                    continue;
                }
                let lbd = lb.adjoint();
                let left: Vec<Op> = basis.iter().map(|s| lbd * s - s * lbd).collect();
                let right: Vec<Op> = basis.iter().map(|s| s * la - la * s).collect();
                for mu in 0..DIM {
                    for nu in 0..DIM {
                        d[(mu, nu)] += linalg::trace(&(rho * left[mu] * right[nu])) * (0.5 * rate);
                    }
                }
            }
        }
    }
    d
}

/// Einstein-relation sandwich evaluated with the Hamiltonian part of 𝓛†
/// alone; vanishes identically because a commutator is a derivation.
pub fn hamiltonian_diffusion(generator: &Generator, state: &AtomState) -> DMatrix<C64> {
    einstein_sandwich(state, |x| generator.apply_adjoint_hamiltonian(x))
}

fn einstein_sandwich(state: &AtomState, adjoint: impl Fn(&Op) -> Op) -> DMatrix<C64> {
    let rho = state.density_matrix();
    let basis: Vec<Op> = (0..DIM).map(AtomicBasis::operator).collect();
    let images: Vec<Op> = basis.iter().map(&adjoint).collect();
    let mean = |x: Op| linalg::trace(&(rho * x));
    DMatrix::from_fn(DIM, DIM, |mu, nu| {
        let (i, j) = AtomicBasis::levels(mu);
        let (k, l) = AtomicBasis::levels(nu);
        // σᵢⱼσₖₗ = δⱼₖ σᵢₗ
        let product = if j == k { mean(images[AtomicBasis::index(i, l)]) } else { C64::new(0.0, 0.0) };
        (product - mean(images[mu] * basis[nu]) - mean(basis[mu] * images[nu])) * 0.5
    })
}

pub fn reduce(full: &DMatrix<C64>) -> DMatrix<C64> {
    full.view((0, 0), (REDUCED_DIM, REDUCED_DIM)).into_owned()
}

/// Drift, field coupling and diffusion about `state` with the mean fields
/// frozen at their parameter values.
pub fn linearize(params: &SystemParams, generator: &Generator, state: &AtomState) -> LinearizedSystem {
    let (drift, projector) = drift_matrix(generator);
    let atoms = params.atom_number();
    let noise_scale = if atoms > 0.0 { SPEED_OF_LIGHT / (params.rate_unit * atoms) } else { f64::INFINITY };
    LinearizedSystem {
        drift,
        coupling: field_coupling_matrices(params, state),
        diffusion: reduce(&diffusion_matrix(generator, state)),
        noise_scale,
        projector,
        means: state.expectations.clone(),
    }
}

/// Threshold on the condition number of −iω − A.
pub const MAX_RESPONSE_CONDITION: f64 = 1e12;

/// R(ω) = (−iω − A)⁻¹ on the traceless subspace.
pub fn atomic_response(drift: &DMatrix<C64>, omega: f64) -> Result<DMatrix<C64>> {
    let n = drift.nrows();
    let shift = C64::new(0.0, -omega);
    let m = DMatrix::<C64>::identity(n, n) * shift - drift;
    let sv = linalg::sorted_singular_values(&m);
    let condition = sv[n - 1] / sv[0];
    if !(condition <= MAX_RESPONSE_CONDITION) {
        let eigenvalue = linalg::eigenvalues(drift)
            .into_iter()
            .min_by(|a, b| (a - shift).norm().total_cmp(&(b - shift).norm()))
            .unwrap_or_default();
        return Err(Error::NearSingularResponse { omega, condition, eigenvalue });
    }
    Ok(m.lu().try_inverse().expect("condition number checked"))
}
