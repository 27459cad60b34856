//! Liouvillian of the driven four-level atom with correlated decay.

use nalgebra::DMatrix;

use super::basis::{sigma, AtomicBasis, DIM, LEVELS};
use super::hamiltonian::build_hamiltonian;
use super::rates::build_rate_matrices;
use crate::error::Result;
use crate::params::SystemParams;
use crate::{Op, C64};

/// A group of jump operators sharing a Hermitian rate matrix Γ:
/// D(ρ) = Σₐᵦ Γₐᵦ (Lₐ ρ Lᵦ† − ½{Lᵦ† Lₐ, ρ}).
#[derive(Debug, Clone)]
pub struct DecayChannel {
    pub rates: DMatrix<f64>,
    pub jumps: Vec<Op>,
    // Σ Γₐᵦ Lᵦ† Lₐ
    effective: Op,
}

impl DecayChannel {
    pub fn new(rates: DMatrix<f64>, jumps: Vec<Op>) -> Self {
        assert_eq!(rates.nrows(), jumps.len());
        assert_eq!(rates.ncols(), jumps.len());
        let mut effective = Op::zeros();
        for (a, la) in jumps.iter().enumerate() {
            for (b, lb) in jumps.iter().enumerate() {
                effective += lb.adjoint() * la * C64::new(rates[(a, b)], 0.0);
            }
        }
        Self { rates, jumps, effective }
    }

    pub fn single(rate: f64, jump: Op) -> Self {
        Self::new(DMatrix::from_element(1, 1, rate), vec![jump])
    }

    /// Diagonalized form of the channel: operators Cₖ = √λₖ Σₐ Uₐₖ Lₐ with
    /// Γ = U diag(λ) Uᵀ. Zero-eigenvalue directions are dropped.
    pub fn collective_operators(&self) -> Vec<Op> {
        let eig = self.rates.clone().symmetric_eigen();
        let scale = self.rates.amax().max(f64::MIN_POSITIVE);
        let mut ops = Vec::new();
        for (k, lambda) in eig.eigenvalues.iter().enumerate() {
            if *lambda <= 1e-14 * scale {
                continue;
            }
            let mut c = Op::zeros();
            for (a, la) in self.jumps.iter().enumerate() {
                c += la * C64::new(lambda.sqrt() * eig.eigenvectors[(a, k)], 0.0);
            }
            ops.push(c);
        }
        ops
    }

    fn is_inert(&self) -> bool {
        self.rates.iter().all(|r| *r == 0.0)
    }

    fn apply(&self, rho: &Op) -> Op {
        let mut out = (self.effective * rho + rho * self.effective) * C64::new(-0.5, 0.0);
        for (a, la) in self.jumps.iter().enumerate() {
            for (b, lb) in self.jumps.iter().enumerate() {
                let r = self.rates[(a, b)];
                if r != 0.0 {
                    out += la * rho * lb.adjoint() * C64::new(r, 0.0);
                }
            }
        }
        out
    }

    fn apply_adjoint(&self, x: &Op) -> Op {
        let mut out = (self.effective * x + x * self.effective) * C64::new(-0.5, 0.0);
        for (a, la) in self.jumps.iter().enumerate() {
            for (b, lb) in self.jumps.iter().enumerate() {
                let r = self.rates[(a, b)];
                if r != 0.0 {
                    out += lb.adjoint() * x * la * C64::new(r, 0.0);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Generator {
    hamiltonian: Op,
    channels: Vec<DecayChannel>,
}

impl Generator {
    pub fn from_parts(hamiltonian: Op, channels: Vec<DecayChannel>) -> Self {
        let channels = channels.into_iter().filter(|c| !c.is_inert()).collect();
        Self { hamiltonian, channels }
    }

    pub fn hamiltonian(&self) -> &Op {
        &self.hamiltonian
    }

    pub fn channels(&self) -> &[DecayChannel] {
        &self.channels
    }

    /// Same dissipator with a different Hamiltonian.
    pub fn with_hamiltonian(&self, hamiltonian: Op) -> Self {
        Self { hamiltonian, channels: self.channels.clone() }
    }

    /// 𝓛(ρ) = −i[H, ρ] + D(ρ).
    pub fn apply(&self, rho: &Op) -> Op {
        let h = &self.hamiltonian;
        let mut out = (h * rho - rho * h) * C64::new(0.0, -1.0);
        for c in &self.channels {
            out += c.apply(rho);
        }
        out
    }

    /// Heisenberg-picture generator 𝓛†(X) = i[H, X] + D†(X).
    pub fn apply_adjoint(&self, x: &Op) -> Op {
        self.apply_adjoint_hamiltonian(x) + self.apply_adjoint_dissipator(x)
    }

    pub fn apply_adjoint_hamiltonian(&self, x: &Op) -> Op {
        let h = &self.hamiltonian;
        (h * x - x * h) * C64::new(0.0, 1.0)
    }

    pub fn apply_adjoint_dissipator(&self, x: &Op) -> Op {
        let mut out = Op::zeros();
        for c in &self.channels {
            out += c.apply_adjoint(x);
        }
        out
    }

    /// Matrix of 𝓛 acting on row-major vectorized density matrices.
    pub fn superoperator(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(DIM, DIM);
        for k in 0..DIM {
            let image = self.apply(&AtomicBasis::operator(k));
            for r in 0..DIM {
                let (i, j) = AtomicBasis::levels(r);
                m[(r, k)] = image[(i, j)];
            }
        }
        m
    }

    /// Matrix A with 𝓛†(σ_μ) = Σ_ν A_μν σ_ν in `AtomicBasis` order.
    pub fn adjoint_matrix(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(DIM, DIM);
        for mu in 0..DIM {
            let image = self.apply_adjoint(&AtomicBasis::operator(mu));
            for nu in 0..DIM {
                let (i, j) = AtomicBasis::levels(nu);
                m[(mu, nu)] = image[(i, j)];
            }
        }
        m
    }

    /// Frobenius norm of the superoperator, used to scale tolerances and
    /// integration steps.
    pub fn norm(&self) -> f64 {
        self.superoperator().norm()
    }
}

/// Liouvillian of the model: commutator with [`build_hamiltonian`], the two
/// correlated decay groups (final state 1 and final state 3), the 1↔3
/// exchange pair and the 1–3 dephasing channel.
pub fn build_generator(params: &SystemParams) -> Result<Generator> {
    let rates = build_rate_matrices(params)?;
    let to_matrix = |m: nalgebra::Matrix2<f64>| DMatrix::from_iterator(2, 2, m.iter().copied());
    let channels = vec![
        DecayChannel::new(to_matrix(rates.to_level1), vec![sigma(0, 3), sigma(0, 1)]),
        DecayChannel::new(to_matrix(rates.to_level3), vec![sigma(2, 3), sigma(2, 1)]),
        DecayChannel::single(rates.exchange, sigma(2, 0)),
        DecayChannel::single(rates.exchange, sigma(0, 2)),
        // L = σ₃₃ at rate 2γ_φ damps ρ₁₃ at γ_φ
        DecayChannel::single(2.0 * rates.dephasing, sigma(2, 2)),
    ];
    Ok(Generator::from_parts(build_hamiltonian(params), channels))
}

pub fn identity_op() -> Op {
    let mut m = Op::zeros();
    for k in 0..LEVELS {
        m[(k, k)] = C64::new(1.0, 0.0);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::basis::AtomicBasis;

    fn random_hermitian(seed: u64) -> Op {
        // small LCG so the unit tests stay dependency-light
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut m = Op::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = C64::new(next(), next());
            }
        }
        (m + m.adjoint()) * C64::new(0.5, 0.0)
    }

    #[test]
    fn adjoint_annihilates_identity() {
        let gen = build_generator(&SystemParams::default()).unwrap();
        assert!(gen.apply_adjoint(&identity_op()).norm() < 1e-14);
    }

    #[test]
    fn closed_system_spectrum_is_imaginary() {
        let p = SystemParams { gamma1: 0.0, gamma2: 0.0, gamma3: 0.0, gamma4: 0.0, gamma0: 0.0, ..Default::default() };
        let gen = build_generator(&p).unwrap();
        assert!(gen.channels().is_empty());
        let eig = gen.superoperator().schur().eigenvalues().unwrap();
        for e in eig.iter() {
            assert!(e.re.abs() < 1e-12, "eigenvalue {e}");
        }
    }

    #[test]
    fn level4_total_decay() {
        let gen = build_generator(&SystemParams::default()).unwrap();
        let a = gen.adjoint_matrix();
        let k = AtomicBasis::index(3, 3);
        assert!((a[(k, k)].re + 4.0).abs() < 1e-14);
    }

    #[test]
    fn superoperator_matches_adjoint_pairing() {
        // Tr(X 𝓛ρ) = Tr(𝓛†(X) ρ)
        let gen = build_generator(&SystemParams { p1: 0.3, p2: -0.6, gamma_phi: 0.2, ..Default::default() }).unwrap();
        let rho = random_hermitian(3);
        let x = random_hermitian(11);
        let lhs = (x * gen.apply(&rho)).trace();
        let rhs = (gen.apply_adjoint(&x) * rho).trace();
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn preserves_trace_and_hermiticity_random() {
        for seed in 0..200u64 {
            let f = |k: u64| ((seed * 7919 + k * 104729) % 1000) as f64 / 1000.0;
            let p = SystemParams {
                gamma1: 0.1 + 2.0 * f(1),
                gamma2: 0.1 + 2.0 * f(2),
                gamma3: 0.1 + 2.0 * f(3),
                gamma4: 0.1 + 2.0 * f(4),
                gamma0: f(5),
                gamma_phi: f(6),
                p1: 2.0 * f(7) - 1.0,
                p2: 2.0 * f(8) - 1.0,
                delta1: 8.0 * f(9) - 4.0,
                omega42: 4.0 * f(10),
                a1_mean: 2.0 * f(11),
                a2_mean: 2.0 * f(12),
                ..Default::default()
            };
            let gen = build_generator(&p).unwrap();
            assert!(gen.apply_adjoint(&identity_op()).norm() < 1e-12);
            let rho = random_hermitian(seed);
            let l = gen.apply(&rho);
            assert!((l.adjoint() - gen.apply(&rho.adjoint())).norm() < 1e-12);
        }
    }
}
