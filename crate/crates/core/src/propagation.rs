//! Propagation of the field-fluctuation correlation matrix through the cell.
//!
//! Components are ordered v = (δa₁, δa₁†, δa₂, δa₂†) with the pairing
//! ⟨vᵢ(ω) vⱼ(ω′)⟩ = 2π δ(ω + ω′) Cᵢⱼ.

use nalgebra::{DMatrix, Matrix4};
use serde::{Deserialize, Serialize};

use crate::atom::AtomicBasis;
use crate::error::{Error, Result};
use crate::fluctuation::{atomic_response, LinearizedSystem};
use crate::params::SystemParams;
use crate::C64;

pub type Mat4 = Matrix4<C64>;

/// Adjoint partner of each field component.
pub const PARTNER: [usize; 4] = [1, 0, 3, 2];

/// Default slab count for the z integration.
pub const DEFAULT_SLABS: usize = 200;

/// Largest entry change tolerated when the slab count is doubled.
pub const SLAB_CONVERGENCE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldCovariance {
    pub c: Mat4,
    pub omega: f64,
    /// Position in meters.
    pub z: f64,
}

impl FieldCovariance {
    /// (C₁₂ − C₂₁, C₃₄ − C₄₃); both equal 1 for canonical fields.
    pub fn commutator_blocks(&self) -> (C64, C64) {
        (self.c[(0, 1)] - self.c[(1, 0)], self.c[(2, 3)] - self.c[(3, 2)])
    }

    pub fn commutator_error(&self) -> f64 {
        let one = C64::new(1.0, 0.0);
        let (a, b) = self.commutator_blocks();
        (a - one).norm().max((b - one).norm())
    }

    /// Largest violation of Cᵢⱼ = conj(C_{j̄ī}).
    pub fn pairing_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.c[(i, j)] - self.c[(PARTNER[j], PARTNER[i])].conj()).norm());
            }
        }
        worst
    }

    /// 2×2 block of a single field (0 or 1).
    pub fn field_block(&self, field: usize) -> nalgebra::Matrix2<C64> {
        self.c.fixed_view::<2, 2>(2 * field, 2 * field).into_owned()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "mean_photons")]
pub enum InputState {
    Vacuum,
    Coherent,
    Thermal(f64),
}

pub fn input_covariance(kind: InputState) -> Result<FieldCovariance> {
    let n = match kind {
        InputState::Vacuum | InputState::Coherent => 0.0,
        InputState::Thermal(n) if n >= 0.0 && n.is_finite() => n,
        InputState::Thermal(n) => {
            return Err(Error::InvalidParam {
                name: "mean_photons",
                reason: format!("must be finite and >= 0, got {n}"),
            })
        }
    };
    let mut c = Mat4::zeros();
    for f in [0, 2] {
        c[(f, f + 1)] = C64::new(1.0 + n, 0.0);
        c[(f + 1, f)] = C64::new(n, 0.0);
    }
    Ok(FieldCovariance { c, omega: 0.0, z: 0.0 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropagationSetup {
    pub chi1: f64,
    pub chi2: f64,
    /// M(ω).
    pub m: Mat4,
    /// M(−ω), the partner generator acting from the right.
    pub m_partner: Mat4,
    pub nfield: Mat4,
    pub slabs: usize,
    pub omega: f64,
    /// Medium length in meters.
    pub length: f64,
}

/// Rows of the reduced atomic vector feeding each field component:
/// δa₁ ← σ₁₄ + σ₁₂, δa₁† ← σ₄₁ + σ₂₁, δa₂ ← σ₃₄ + σ₃₂, δa₂† ← σ₄₃ + σ₂₃.
pub fn source_rows() -> [[usize; 2]; 4] {
    let i = AtomicBasis::index;
    [[i(0, 3), i(0, 1)], [i(3, 0), i(1, 0)], [i(2, 3), i(2, 1)], [i(3, 2), i(1, 2)]]
}

fn selector(chi: [f64; 2], n: usize) -> DMatrix<C64> {
    let mut ks = DMatrix::zeros(4, n);
    for (row, cols) in source_rows().iter().enumerate() {
        let sign = if row % 2 == 0 { 1.0 } else { -1.0 };
        for &col in cols {
            ks[(row, col)] = C64::new(0.0, sign * chi[row / 2]);
        }
    }
    ks
}

fn to_mat4(m: &DMatrix<C64>) -> Mat4 {
    Mat4::from_fn(|i, j| m[(i, j)])
}

/// M(ω) and the noise injection for the model's own χ and atom number.
pub fn transfer_matrix(
    lin: &LinearizedSystem,
    params: &SystemParams,
    omega: f64,
    slabs: usize,
) -> Result<PropagationSetup> {
    let (chi1, chi2) = params.chi();
    transfer_matrix_with(lin, [chi1, chi2], params.length, omega, slabs)
}

/// Same as [`transfer_matrix`] with explicit propagation constants.
pub fn transfer_matrix_with(
    lin: &LinearizedSystem,
    chi: [f64; 2],
    length: f64,
    omega: f64,
    slabs: usize,
) -> Result<PropagationSetup> {
    if slabs == 0 {
        return Err(Error::InvalidParam { name: "slabs", reason: "must be at least 1".into() });
    }
    let zero = PropagationSetup {
        chi1: chi[0],
        chi2: chi[1],
        m: Mat4::zeros(),
        m_partner: Mat4::zeros(),
        nfield: Mat4::zeros(),
        slabs,
        omega,
        length,
    };
    if !lin.noise_scale.is_finite() || (chi[0] == 0.0 && chi[1] == 0.0) {
        return Ok(zero);
    }
    let ks = selector(chi, lin.drift.nrows());
    let plus = &ks * atomic_response(&lin.drift, omega)?;
    let minus = if omega == 0.0 { plus.clone() } else { &ks * atomic_response(&lin.drift, -omega)? };
    let two_d = &lin.diffusion * C64::new(2.0, 0.0);
    let nfield = (&plus * two_d * minus.transpose()) * C64::new(lin.noise_scale, 0.0);
    Ok(PropagationSetup {
        m: to_mat4(&(&plus * &lin.coupling)),
        m_partner: to_mat4(&(&minus * &lin.coupling)),
        nfield: to_mat4(&nfield),
        ..zero
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagationOutput {
    pub covariance: FieldCovariance,
    /// Largest entry change when the slab count is doubled.
    pub doubling_change: f64,
    pub warning: Option<String>,
}

fn rk4(setup: &PropagationSetup, c_in: &Mat4, slabs: usize) -> Mat4 {
    let h = C64::new(setup.length / slabs as f64, 0.0);
    let mt = setup.m_partner.transpose();
    let f = |c: &Mat4| setup.m * c + c * mt + setup.nfield;
    let mut c = *c_in;
    for _ in 0..slabs {
        let k1 = f(&c);
        let k2 = f(&(c + k1 * (h * 0.5)));
        let k3 = f(&(c + k2 * (h * 0.5)));
        let k4 = f(&(c + k3 * h));
        c += (k1 + (k2 + k3) * C64::new(2.0, 0.0) + k4) * (h / 6.0);
    }
    c
}

/// Integrates dC/dz = M(ω)C + C M(−ω)ᵀ + N over the cell with RK4 and
/// compares against a run with twice as many slabs.
pub fn propagate_covariance(setup: &PropagationSetup, input: &FieldCovariance) -> PropagationOutput {
    let c = rk4(setup, &input.c, setup.slabs);
    let fine = rk4(setup, &input.c, 2 * setup.slabs);
    let doubling_change = crate::linalg::max_abs(&(fine - c));
    let warning = (!(doubling_change <= SLAB_CONVERGENCE_TOL))
        .then(|| format!("doubling slabs from {} changes the output by {doubling_change:.3e}", setup.slabs));
    PropagationOutput {
        covariance: FieldCovariance { c, omega: setup.omega, z: input.z + setup.length },
        doubling_change,
        warning,
    }
}
