//! First-order product-formula synthesis: each Pauli term of a generator
//! becomes a basis-changed CNOT-ladder rotation, repeated over time
//! slices. For mutually commuting term sets one slice is already exact.

use crate::circuit::Circuit;
use crate::error::{CoreError, Result};
use crate::gate::Gate;
use crate::hamiltonian::Hamiltonian;
use crate::pauli::{Pauli, PauliString};

/// Total evolution time and slice count for the product formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    pub t: f64,
    pub slices: u32,
}

impl EvolutionParams {
    pub fn new(t: f64, slices: u32) -> Result<Self> {
        if slices == 0 {
            return Err(CoreError::ZeroSlices);
        }
        if !t.is_finite() {
            return Err(CoreError::InvalidConfig {
                reason: "evolution time must be finite".into(),
            });
        }
        Ok(EvolutionParams { t, slices })
    }
}

/// Append `e^{-iθP}` lowered to basis gates: single-qubit basis changes
/// into the Z frame, a CNOT parity ladder, one RZ carrying the angle, and
/// the undo. An all-identity string is a pure global phase.
pub fn append_pauli_rotation(circuit: &mut Circuit, angle: f64, string: &PauliString) {
    let support = string.support();
    if support.is_empty() {
        circuit.push(Gate::GlobalPhase { angle: -angle });
        return;
    }

    let basis_in = |circuit: &mut Circuit, q: usize, p: Pauli| match p {
        Pauli::X => {
            circuit.push(Gate::H { target: q });
        }
        Pauli::Y => {
            circuit
                .push(Gate::Phase {
                    angle: -std::f64::consts::FRAC_PI_2,
                    target: q,
                })
                .push(Gate::H { target: q });
        }
        _ => {}
    };
    let basis_out = |circuit: &mut Circuit, q: usize, p: Pauli| match p {
        Pauli::X => {
            circuit.push(Gate::H { target: q });
        }
        Pauli::Y => {
            circuit.push(Gate::H { target: q }).push(Gate::Phase {
                angle: std::f64::consts::FRAC_PI_2,
                target: q,
            });
        }
        _ => {}
    };

    for &q in &support {
        basis_in(circuit, q, string.letters()[q]);
    }
    for pair in support.windows(2) {
        circuit.push(Gate::Cnot {
            control: pair[0],
            target: pair[1],
        });
    }
    circuit.push(Gate::Rz {
        angle,
        target: *support.last().unwrap(),
    });
    for pair in support.windows(2).rev() {
        circuit.push(Gate::Cnot {
            control: pair[0],
            target: pair[1],
        });
    }
    for &q in support.iter().rev() {
        basis_out(circuit, q, string.letters()[q]);
    }
}

/// Product-formula circuit for `e^{-iHt}`: per slice, every term is
/// exponentiated with angle `coeff·t/slices`. The slice unitary equals the
/// term product in stored order (first term leftmost), so the circuit
/// reproduces the displayed factorizations of the generators.
pub fn trotter_circuit(h: &Hamiltonian, params: &EvolutionParams) -> Result<Circuit> {
    if params.slices == 0 {
        return Err(CoreError::ZeroSlices);
    }
    let mut c = Circuit::new(h.n_qubits(), format!("trotter-{}", params.slices));
    let step = params.t / params.slices as f64;
    for _ in 0..params.slices {
        // Reverse iteration: the first stored term becomes the leftmost
        // factor of the slice unitary.
        for term in h.terms().iter().rev() {
            append_pauli_rotation(&mut c, term.coeff * step, &term.string);
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::expm_hermitian;
    use crate::hamiltonian::{
        hamiltonian_single_phase, hamiltonian_two_phase_boundary, Hamiltonian,
    };
    use crate::pauli::{terms_to_dense, PauliTerm};
    use crate::testutil::{assert_mat_close, mat_distance};
    use crate::walk::PhasePreset;
    use nalgebra::DMatrix;

    #[test]
    fn lowered_rotation_matches_direct_exponential() {
        for letters in ["Z", "X", "Y", "ZZ", "XY", "YZX", "IXI"] {
            let string: PauliString = letters.parse().unwrap();
            let m = string.len();
            let angle = 0.417;
            let mut c = Circuit::new(m, "rot");
            append_pauli_rotation(&mut c, angle, &string);
            let u = c.to_unitary().unwrap();
            let dense = terms_to_dense(m, &[PauliTerm::new(1.0, string)]).unwrap();
            let direct = expm_hermitian(&dense, angle);
            assert_mat_close(&u, &direct, 1e-12);
        }
    }

    #[test]
    fn zero_time_is_identity() {
        let h = hamiltonian_two_phase_boundary(2).unwrap();
        let c = trotter_circuit(&h, &EvolutionParams::new(0.0, 3).unwrap()).unwrap();
        let u = c.to_unitary().unwrap();
        assert_mat_close(&u, &DMatrix::identity(8, 8), 1e-12);
    }

    #[test]
    fn commuting_terms_are_exact_in_one_slice() {
        // Phase I at N=4: all three terms commute, one slice suffices.
        let h = hamiltonian_single_phase(PhasePreset::I, 2).unwrap();
        for t in [0.3, 1.0, 2.7] {
            let c = trotter_circuit(&h, &EvolutionParams::new(t, 1).unwrap()).unwrap();
            let d = mat_distance(&c.to_unitary().unwrap(), &expm_hermitian(h.dense(), t));
            assert!(d <= 1e-10, "t={t}: {d}");
        }
    }

    #[test]
    fn slice_unitary_is_the_ordered_term_product() {
        let h = hamiltonian_two_phase_boundary(3).unwrap();
        let t = 0.9;
        let c = trotter_circuit(&h, &EvolutionParams::new(t, 1).unwrap()).unwrap();
        let mut product = DMatrix::identity(16, 16);
        for term in h.terms() {
            let dense = terms_to_dense(4, std::slice::from_ref(term)).unwrap();
            product = product * expm_hermitian(&dense, t);
        }
        assert_mat_close(&c.to_unitary().unwrap(), &product, 1e-12);
    }

    #[test]
    fn first_order_error_halves_with_doubled_slices() {
        let h = hamiltonian_single_phase(PhasePreset::I, 3).unwrap();
        let t = 1.0;
        let exact = expm_hermitian(h.dense(), t);
        let err = |slices: u32| {
            let c = trotter_circuit(&h, &EvolutionParams::new(t, slices).unwrap()).unwrap();
            mat_distance(&c.to_unitary().unwrap(), &exact)
        };
        for slices in [4u32, 8, 16] {
            let ratio = err(2 * slices) / err(slices);
            assert!(
                (0.35..=0.65).contains(&ratio),
                "slices {slices}: ratio {ratio}"
            );
        }
    }

    #[test]
    fn rejects_zero_slices() {
        assert!(EvolutionParams::new(1.0, 0).is_err());
        let h = Hamiltonian::from_terms(1, vec![PauliTerm::parse(1.0, "Z").unwrap()]).unwrap();
        assert!(matches!(
            trotter_circuit(
                &h,
                &EvolutionParams {
                    t: 1.0,
                    slices: 0
                }
            ),
            Err(CoreError::ZeroSlices)
        ));
    }
}
