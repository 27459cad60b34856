use nalgebra::Vector4;

use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::C64;

/// Dark-state structure of the driven double-Λ atom.
#[derive(Debug, Clone, PartialEq)]
pub struct DarkStateAnalysis {
    /// Mixing angle of the lower-level dark superposition.
    pub theta: f64,
    /// Mixing angle set by the doublet splitting against the drive.
    pub phi: f64,
    /// Amplitudes of cosθ|1⟩ − sinθ|3⟩.
    pub phi0: Vector4<C64>,
    /// Amplitudes of sinθ sinφ|1⟩ + cosφ(|2⟩ − |4⟩)/√2 + cosθ sinφ|3⟩.
    pub phi1: Vector4<C64>,
    /// μ₁₄²Δ₂ + μ₁₂²Δ₁ and μ₃₄²Δ₂ + μ₃₂²Δ₁ in units of the common dipole².
    pub interference_residuals: [f64; 2],
}

pub fn dark_state_analysis(params: &SystemParams) -> Result<DarkStateAnalysis> {
    let (a1, a2) = (params.a1_mean, params.a2_mean);
    if a1 == 0.0 && a2 == 0.0 {
        return Err(Error::AnglesUndefined);
    }
    let theta = a1.atan2(a2);
    let drive = (2.0 * params.g * params.g * (a1 * a1 + a2 * a2)).sqrt();
    let phi = (0.5 * params.omega42).atan2(drive);

    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let r = |x: f64| C64::new(x, 0.0);
    let phi0 = Vector4::new(r(ct), r(0.0), r(-st), r(0.0));
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let phi1 = Vector4::new(r(st * sp), r(cp * half), r(ct * sp), r(-cp * half));

    // equal dipoles: both conditions reduce to Δ₂ + Δ₁
    let residual = params.delta2() + params.delta1;
    Ok(DarkStateAnalysis { theta, phi, phi0, phi1, interference_residuals: [residual, residual] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::generator::build_generator;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn symmetric_amplitudes_give_quarter_pi() {
        let d = dark_state_analysis(&SystemParams { a1_mean: 0.7, a2_mean: 0.7, ..Default::default() }).unwrap();
        assert!((d.theta - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn doublet_angle() {
        let p = SystemParams { omega42: 2.0, g: 0.5, a1_mean: 1.0, a2_mean: 1.0, ..Default::default() };
        let d = dark_state_analysis(&p).unwrap();
        assert!((d.phi - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn midpoint_satisfies_interference_condition() {
        let p = SystemParams { delta1: -1.0, omega42: 2.0, ..Default::default() };
        let d = dark_state_analysis(&p).unwrap();
        assert_eq!(d.interference_residuals, [0.0, 0.0]);
        let off = dark_state_analysis(&SystemParams { delta1: 0.5, ..p }).unwrap();
        assert_eq!(off.interference_residuals[0], off.interference_residuals[1]);
        assert!(off.interference_residuals[0] != 0.0);
    }

    #[test]
    fn zero_fields_are_rejected() {
        let p = SystemParams { a1_mean: 0.0, a2_mean: 0.0, ..Default::default() };
        assert!(matches!(dark_state_analysis(&p), Err(Error::AnglesUndefined)));
    }

    #[test]
    fn states_are_normalized() {
        let p = SystemParams { a1_mean: 0.3, a2_mean: 1.7, omega42: 3.0, ..Default::default() };
        let d = dark_state_analysis(&p).unwrap();
        assert!((d.phi0.norm() - 1.0).abs() < 1e-15);
        assert!((d.phi1.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn upper_superposition_does_not_decay_at_perfect_alignment() {
        let p = SystemParams::default();
        let d = dark_state_analysis(&p).unwrap();
        let gen = build_generator(&p).unwrap();
        // the two correlated decay groups come first
        for channel in &gen.channels()[..2] {
            let ops = channel.collective_operators();
            assert_eq!(ops.len(), 1, "rank-one rate matrix at p = 1");
            let amplitudes: f64 = ops.iter().map(|c| (c * d.phi1).norm_squared()).sum();
            assert!(amplitudes.sqrt() < 1e-12);
        }
    }
}
