use super::basis::sigma;
use crate::params::SystemParams;
use crate::{Op, C64};

/// Operators multiplying (a₁, a₁†, a₂, a₂†) in the interaction Hamiltonian,
/// i.e. ∂H/∂vₖ.
pub fn field_coupling_operators(params: &SystemParams) -> [Op; 4] {
    let g = C64::new(-params.g, 0.0);
    [
        (sigma(3, 0) + sigma(1, 0)) * g,
        (sigma(0, 3) + sigma(0, 1)) * g,
        (sigma(3, 2) + sigma(1, 2)) * g,
        (sigma(2, 3) + sigma(2, 1)) * g,
    ]
}

/// Diagonal of the rotating-frame Hamiltonian for levels 1–4.
///
/// Level 3 sits at zero energy: the two pumps are kept in two-photon
/// resonance, so the 1–3 Raman detuning vanishes.
pub fn bare_energies(params: &SystemParams) -> [f64; 4] {
    [0.0, -params.delta2(), 0.0, -params.delta1]
}

/// Hamiltonian with the four field entries treated as independent complex
/// numbers `(a₁, a₁†, a₂, a₂†)`. Only Hermitian when entries 1 and 3 are the
/// conjugates of entries 0 and 2.
pub fn hamiltonian_with_fields(params: &SystemParams, fields: [C64; 4]) -> Op {
    let energies = bare_energies(params);
    let mut h = Op::zeros();
    for (k, e) in energies.iter().enumerate() {
        h[(k, k)] = C64::new(*e, 0.0);
    }
    for (op, v) in field_coupling_operators(params).iter().zip(fields) {
        h += op * v;
    }
    h
}

/// Single-atom Hamiltonian (divided by ħ) with the mean fields as real
/// amplitudes.
pub fn build_hamiltonian(params: &SystemParams) -> Op {
    let a1 = C64::new(params.a1_mean, 0.0);
    let a2 = C64::new(params.a2_mean, 0.0);
    hamiltonian_with_fields(params, [a1, a1, a2, a2])
}
