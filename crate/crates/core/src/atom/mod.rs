//! Single-atom model: operator basis, Hamiltonian, correlated dissipator
//! and dark-state diagnostics.

pub mod basis;
mod dark_state;
mod generator;
mod hamiltonian;
mod rates;

pub use basis::{sigma, AtomicBasis, DIM, LEVELS, REDUCED_DIM};
pub use dark_state::{dark_state_analysis, DarkStateAnalysis};
pub use generator::{build_generator, identity_op, DecayChannel, Generator};
pub use hamiltonian::{bare_energies, build_hamiltonian, field_coupling_operators, hamiltonian_with_fields};
pub use rates::{build_rate_matrices, RateMatrices};
