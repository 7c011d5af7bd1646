//! Algebraic gate IR. Rotation gates use the full-angle convention
//! `RY(θ) = e^{-iθY}`, `RZ(θ) = e^{-iθZ}`, `PauliRot(θ, P) = e^{-iθP}`;
//! conversion to half-angle conventions happens only at the QASM boundary.

use crate::pauli::PauliString;

/// One gate of a [`crate::Circuit`]. Qubit 0 is the coin when the circuit
/// spans the full register.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H {
        target: usize,
    },
    /// `e^{-iθY}` on `target`.
    Ry {
        angle: f64,
        target: usize,
    },
    /// `e^{-iθZ}` on `target`.
    Rz {
        angle: f64,
        target: usize,
    },
    /// `diag(1, e^{iφ})` on `target`.
    Phase {
        angle: f64,
        target: usize,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    /// `diag(1, 1, 1, e^{iφ})` on (control, target).
    ControlledPhase {
        angle: f64,
        control: usize,
        target: usize,
    },
    Swap {
        a: usize,
        b: usize,
    },
    /// `e^{-iθP}` for a Pauli string spanning the whole register.
    PauliRot {
        angle: f64,
        string: PauliString,
    },
    /// Multiplies the state by `e^{iφ}`. Lets operator factorizations hold
    /// at the matrix level, not just projectively.
    GlobalPhase {
        angle: f64,
    },
}

impl Gate {
    /// Qubits the gate acts on (empty for a global phase).
    pub fn support(&self) -> Vec<usize> {
        match self {
            Gate::H { target }
            | Gate::Ry { target, .. }
            | Gate::Rz { target, .. }
            | Gate::Phase { target, .. } => vec![*target],
            Gate::Cnot { control, target }
            | Gate::ControlledPhase {
                control, target, ..
            } => vec![*control, *target],
            Gate::Swap { a, b } => vec![*a, *b],
            Gate::PauliRot { string, .. } => string.support(),
            Gate::GlobalPhase { .. } => vec![],
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::H { .. } | Gate::Cnot { .. } | Gate::Swap { .. } => self.clone(),
            Gate::Ry { angle, target } => Gate::Ry {
                angle: -angle,
                target: *target,
            },
            Gate::Rz { angle, target } => Gate::Rz {
                angle: -angle,
                target: *target,
            },
            Gate::Phase { angle, target } => Gate::Phase {
                angle: -angle,
                target: *target,
            },
            Gate::ControlledPhase {
                angle,
                control,
                target,
            } => Gate::ControlledPhase {
                angle: -angle,
                control: *control,
                target: *target,
            },
            Gate::PauliRot { angle, string } => Gate::PauliRot {
                angle: -angle,
                string: string.clone(),
            },
            Gate::GlobalPhase { angle } => Gate::GlobalPhase { angle: -angle },
        }
    }

    /// True for the self-inverse kinds the cancellation pass may drop in
    /// adjacent identical pairs.
    pub fn is_self_inverse(&self) -> bool {
        matches!(self, Gate::H { .. } | Gate::Cnot { .. } | Gate::Swap { .. })
    }

    /// True when the gate is the identity (zero-angle rotation or phase).
    pub fn is_identity(&self) -> bool {
        match self {
            Gate::Ry { angle, .. }
            | Gate::Rz { angle, .. }
            | Gate::Phase { angle, .. }
            | Gate::ControlledPhase { angle, .. }
            | Gate::PauliRot { angle, .. }
            | Gate::GlobalPhase { angle } => *angle == 0.0,
            _ => false,
        }
    }
}
