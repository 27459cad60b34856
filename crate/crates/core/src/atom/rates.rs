use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Spontaneous-emission rate matrices grouped by final state, plus the
/// incoherent lower-level channels.
///
/// `to_level1` acts on the jump pair (|1⟩⟨4|, |1⟩⟨2|) and `to_level3` on
/// (|3⟩⟨4|, |3⟩⟨2|). Off-diagonal entries carry the decay-path interference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateMatrices {
    pub to_level1: Matrix2<f64>,
    pub to_level3: Matrix2<f64>,
    /// Full rate 2γ₀ of each direction of the 1↔3 exchange.
    pub exchange: f64,
    /// Pure dephasing rate of the 1–3 coherence.
    pub dephasing: f64,
}

pub fn build_rate_matrices(params: &SystemParams) -> Result<RateMatrices> {
    for (name, p) in [("p1", params.p1), ("p2", params.p2)] {
        if !(p.abs() <= 1.0) {
            return Err(Error::InvalidParam {
                name,
                reason: format!("|{name}| = {} > 1 makes the rate matrix indefinite", p.abs()),
            });
        }
    }
    Ok(RateMatrices {
        to_level1: pair(params.gamma1, params.gamma2, params.p1),
        to_level3: pair(params.gamma3, params.gamma4, params.p2),
        exchange: 2.0 * params.gamma0,
        dephasing: params.gamma_phi,
    })
}

fn pair(upper4: f64, upper2: f64, p: f64) -> Matrix2<f64> {
    let cross = 2.0 * p * (upper4 * upper2).sqrt();
    Matrix2::new(2.0 * upper4, cross, cross, 2.0 * upper2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g1: f64, g2: f64, p1: f64) -> SystemParams {
        SystemParams { gamma1: g1, gamma2: g2, p1, ..Default::default() }
    }

    #[test]
    fn perfect_alignment_is_rank_one() {
        let r = build_rate_matrices(&params(1.0, 1.0, 1.0)).unwrap();
        assert_eq!(r.to_level1, Matrix2::new(2.0, 2.0, 2.0, 2.0));
        let mut ev: Vec<f64> = r.to_level1.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        assert!(ev[0].abs() < 1e-14 && (ev[1] - 4.0).abs() < 1e-14);
    }

    #[test]
    fn orthogonal_dipoles_have_no_cross_term() {
        let r = build_rate_matrices(&params(1.0, 1.0, 0.0)).unwrap();
        assert_eq!(r.to_level1, Matrix2::new(2.0, 0.0, 0.0, 2.0));
    }

    #[test]
    fn antiparallel_unequal_rates() {
        let r = build_rate_matrices(&params(1.0, 4.0, -1.0)).unwrap();
        assert_eq!(r.to_level1, Matrix2::new(2.0, -4.0, -4.0, 8.0));
        assert!(r.to_level1.determinant().abs() < 1e-14);
    }

    #[test]
    fn rejects_alignment_above_one() {
        assert!(build_rate_matrices(&params(1.0, 1.0, 1.2)).is_err());
    }

    proptest::proptest! {
        #[test]
        fn psd_and_singular_only_at_unit_alignment(g1 in 0.05..3.0f64, g2 in 0.05..3.0f64, p in -1.0..=1.0f64) {
            let r = build_rate_matrices(&params(g1, g2, p)).unwrap();
            let ev = r.to_level1.symmetric_eigenvalues();
            let min = ev.min();
            proptest::prop_assert!(min >= -1e-12);
            let det = r.to_level1.determinant();
            let expected = 4.0 * g1 * g2 * (1.0 - p * p);
            proptest::prop_assert!((det - expected).abs() < 1e-12 * (1.0 + expected));
        }
    }
}
