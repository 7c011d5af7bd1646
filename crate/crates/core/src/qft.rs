//! Quantum Fourier transform over the walker register.
//!
//! The convention here has kernel `⟨x|U|k⟩ = e^{-2πikx/N}/√N` (negative
//! exponent), which is the one that diagonalizes the shift operators as
//! `L± = U D± U†` with `D± = diag(e^{±2πik/N})`. It is the conjugate of
//! the textbook transform, so the controlled-phase ladder runs with
//! negative angles.

use std::f64::consts::PI;

use crate::circuit::Circuit;
use crate::gate::Gate;

/// QFT circuit on `n_walker` qubits (walker register only, qubit 0 = most
/// significant bit). Built from H, controlled-phase ladder, and a final
/// swap reversal.
pub fn qft_circuit(n_walker: usize) -> Circuit {
    assert!(n_walker >= 1, "QFT needs at least one qubit");
    let mut c = Circuit::new(n_walker, "qft");
    for i in 0..n_walker {
        c.push(Gate::H { target: i });
        for j in (i + 1)..n_walker {
            c.push(Gate::ControlledPhase {
                angle: -PI / (1 << (j - i)) as f64,
                control: j,
                target: i,
            });
        }
    }
    for i in 0..n_walker / 2 {
        c.push(Gate::Swap {
            a: i,
            b: n_walker - 1 - i,
        });
    }
    c
}

/// Dense reference matrix `e^{-2πikx/N}/√N`, row x, column k.
pub fn qft_oracle(n_walker: usize) -> nalgebra::DMatrix<num_complex::Complex64> {
    let n = 1usize << n_walker;
    let norm = 1.0 / (n as f64).sqrt();
    nalgebra::DMatrix::from_fn(n, n, |x, k| {
        num_complex::Complex64::from_polar(norm, -2.0 * PI * (k as f64) * (x as f64) / n as f64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::assert_mat_close;
    use num_complex::Complex64;

    #[test]
    fn qft_matches_kernel_matrix() {
        for n in 1..=5 {
            let u = qft_circuit(n).to_unitary().unwrap();
            assert_mat_close(&u, &qft_oracle(n), 1e-10);
        }
    }

    #[test]
    fn named_entries() {
        // n=1: Hadamard
        let u1 = qft_circuit(1).to_unitary().unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((u1[(0, 0)].re - s).abs() < 1e-12);
        assert!((u1[(1, 1)].re + s).abs() < 1e-12);

        // n=2: column k=0 all 1/2; entry (x=1,k=1) = -i/2
        let u2 = qft_circuit(2).to_unitary().unwrap();
        for x in 0..4 {
            assert!((u2[(x, 0)] - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        }
        assert!((u2[(1, 1)] - Complex64::new(0.0, -0.5)).norm() < 1e-12);
    }
}
