//! Monte Carlo gate noise: a two-qubit depolarizing channel attached to
//! every CNOT. With probability `p` one of the fifteen non-identity
//! two-qubit Paulis lands on (control, target) after the gate.

use rand::Rng;

use crate::circuit::{apply_gate_in_place, apply_pauli, Circuit};
use crate::error::{CoreError, Result};
use crate::gate::Gate;
use crate::pauli::Pauli;
use crate::state::State;

const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// Apply a circuit as one noisy trajectory. `p = 0` reproduces the ideal
/// application exactly.
pub fn apply_circuit_noisy(
    state: &mut State,
    circuit: &Circuit,
    p: f64,
    rng: &mut impl Rng,
) -> Result<()> {
    if !(0.0..1.0).contains(&p) {
        return Err(CoreError::InvalidConfig {
            reason: format!("noise probability {p} outside [0, 1)"),
        });
    }
    if state.n_qubits() != circuit.n_qubits() {
        return Err(CoreError::RegisterMismatch {
            expected: circuit.n_qubits(),
            actual: state.n_qubits(),
        });
    }
    for gate in circuit.gates() {
        apply_gate_in_place(state, gate)?;
        if let Gate::Cnot { control, target } = gate {
            let draw: f64 = rng.gen();
            if draw < p {
                // Uniform over the 15 non-identity pairs (P_c, P_t).
                let idx = rng.gen_range(1..16usize);
                apply_pauli(state, PAULIS[idx / 4], *control)?;
                apply_pauli(state, PAULIS[idx % 4], *target)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::basis_state;
    use crate::walk::{walk_step_circuit, PhasePreset, WalkConfig};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_probability_equals_ideal_application() {
        let config = WalkConfig::preset(PhasePreset::Boundary, 2, 0.125);
        let circuit = walk_step_circuit(&config).unwrap();
        let ideal = circuit.applied_to(&basis_state(2, 0, 1).unwrap()).unwrap();
        let mut noisy = basis_state(2, 0, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        apply_circuit_noisy(&mut noisy, &circuit, 0.0, &mut rng).unwrap();
        assert_eq!(ideal.amplitudes(), noisy.amplitudes());
    }

    #[test]
    fn trajectories_stay_normalized() {
        let config = WalkConfig::preset(PhasePreset::Boundary, 2, 0.125);
        let circuit = walk_step_circuit(&config).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mut st = basis_state(2, 0, 1).unwrap();
            apply_circuit_noisy(&mut st, &circuit, 0.5, &mut rng).unwrap();
            assert!((st.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_probability_of_one_or_more()
    {
        let circuit = Circuit::new(2, "empty");
        let mut st = basis_state(1, 0, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(apply_circuit_noisy(&mut st, &circuit, 1.0, &mut rng).is_err());
    }
}
