//! Error types shared across the simulation modules.

use thiserror::Error;

/// Errors raised by state preparation, gate application, and the dense
/// verification oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("site {site} out of range for a lattice of {n_sites} points")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("coin value {value} is not a bit")]
    InvalidCoin { value: u8 },

    #[error("qubit {qubit} out of range for a register of {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("register size mismatch: expected {expected} qubits, got {actual}")]
    RegisterMismatch { expected: usize, actual: usize },

    #[error("dense construction over {n_qubits} qubits exceeds the {max}-qubit cap")]
    RegisterTooLarge { n_qubits: usize, max: usize },

    #[error("Pauli string of length {len} does not fit a register of {n_qubits} qubits")]
    PauliLengthMismatch { len: usize, n_qubits: usize },

    #[error("matrix is not Hermitian (anti-Hermitian residue {residue:.3e})")]
    NotHermitian { residue: f64 },

    #[error("matrix dimension {dim} is not a power of two")]
    NotPowerOfTwo { dim: usize },

    #[error(
        "no closed-form two-phase generator for n={n_walker}; only n=2 and n=3 are available"
    )]
    UnsupportedBoundarySize { n_walker: usize },

    #[error("Hamiltonian has an empty kernel; no bound state exists")]
    EmptyKernel,

    #[error("kernel has no support at site {site}")]
    NoBoundState { site: usize },

    #[error("invalid walk configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("evolution parameters require at least one slice")]
    ZeroSlices,
}

pub type Result<T> = std::result::Result<T, CoreError>;
