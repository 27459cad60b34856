//! Physical parameter set of the double-Λ model.
//!
//! Rates, detunings and couplings are expressed in units of γ₁. Geometry is
//! in meters and the atomic density in m⁻³. `rate_unit` is the value of γ₁ in
//! s⁻¹; it only enters the conversion to propagation constants per meter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Coupling constant fitted so the midpoint populations of the detuning
/// sweep equal 0.436 (level 1) and 0.064 (level 2). Regenerate with
/// `experiments::calibrate_coupling`.
pub const CALIBRATED_G: f64 = 0.2938069368844503;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemParams {
    /// Half decay rate 4→1.
    pub gamma1: f64,
    /// Half decay rate 2→1.
    pub gamma2: f64,
    /// Half decay rate 4→3.
    pub gamma3: f64,
    /// Half decay rate 2→3.
    pub gamma4: f64,
    /// Half population exchange rate between levels 1 and 3.
    pub gamma0: f64,
    /// Extra pure dephasing of the 1–3 coherence.
    pub gamma_phi: f64,
    /// Dipole alignment of the two decay channels ending in level 1.
    pub p1: f64,
    /// Dipole alignment of the two decay channels ending in level 3.
    pub p2: f64,
    /// Splitting of the upper doublet, level 4 above level 2.
    pub omega42: f64,
    /// Detuning of P1 from the 1–4 transition.
    pub delta1: f64,
    /// Atom–field coupling per photon, shared by all four transitions.
    pub g: f64,
    pub a1_mean: f64,
    pub a2_mean: f64,
    /// Atomic number density (m⁻³).
    pub n0: f64,
    /// Medium length (m).
    pub length: f64,
    /// Beam radius (m).
    pub radius: f64,
    /// Value of γ₁ in s⁻¹.
    pub rate_unit: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            gamma1: 1.0,
            gamma2: 1.0,
            gamma3: 1.0,
            gamma4: 1.0,
            gamma0: 0.001,
            gamma_phi: 0.0,
            p1: 1.0,
            p2: 1.0,
            omega42: 2.0,
            delta1: -1.0,
            g: CALIBRATED_G,
            a1_mean: 1.0,
            a2_mean: 1.0,
            n0: 3.0e16,
            length: 0.06,
            radius: 2.2e-4,
            rate_unit: 1.0,
        }
    }
}

impl SystemParams {
    /// Detuning of P1 from the 1–2 transition; two-photon resonance makes
    /// it exactly `delta1 + omega42`.
    pub fn delta2(&self) -> f64 {
        self.delta1 + self.omega42
    }

    /// The detuning at which both decay pathways interfere, midway between
    /// the two upper levels.
    pub fn midpoint_detuning(&self) -> f64 {
        -0.5 * self.omega42
    }

    /// Decay rate of the 1–3 coherence.
    pub fn gamma13(&self) -> f64 {
        2.0 * self.gamma0 + self.gamma_phi
    }

    /// Number of atoms in the interaction volume.
    pub fn atom_number(&self) -> f64 {
        self.n0 * std::f64::consts::PI * self.radius * self.radius * self.length
    }

    /// Field propagation constants χ₁, χ₂ = g N / c in m⁻¹.
    pub fn chi(&self) -> (f64, f64) {
        let chi = self.g * self.rate_unit * self.atom_number() / SPEED_OF_LIGHT;
        (chi, chi)
    }

    pub fn validate(&self) -> Result<()> {
        let rates = [
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("gamma3", self.gamma3),
            ("gamma4", self.gamma4),
            ("gamma0", self.gamma0),
            ("gamma_phi", self.gamma_phi),
            ("omega42", self.omega42),
            ("n0", self.n0),
        ];
        for (name, value) in rates {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(invalid(name, format!("must be finite and >= 0, got {value}")));
            }
        }
        for (name, value) in [("p1", self.p1), ("p2", self.p2)] {
            if !(value.abs() <= 1.0) {
                return Err(invalid(name, format!("alignment must lie in [-1, 1], got {value}")));
            }
        }
        for (name, value) in [("length", self.length), ("radius", self.radius), ("rate_unit", self.rate_unit)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(invalid(name, format!("must be finite and > 0, got {value}")));
            }
        }
        for (name, value) in
            [("delta1", self.delta1), ("g", self.g), ("a1_mean", self.a1_mean), ("a2_mean", self.a2_mean)]
        {
            if !value.is_finite() {
                return Err(invalid(name, format!("must be finite, got {value}")));
            }
        }
        if self.a1_mean < 0.0 || self.a2_mean < 0.0 {
            return Err(invalid("a1_mean", "mean amplitudes are real and non-negative".into()));
        }
        Ok(())
    }
}

fn invalid(name: &'static str, reason: String) -> Error {
    Error::InvalidParam { name, reason }
}
