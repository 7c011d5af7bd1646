//! Ordered gate sequences, the in-place statevector kernels that apply
//! them, and an independent dense oracle (`to_unitary`) built from Pauli
//! algebra rather than the bit kernels.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::gate::Gate;
use crate::pauli::{Pauli, PauliString, PauliTerm};
use crate::state::State;

/// Hard cap on dense unitary construction; everything in scope fits in 4
/// qubits, the cap is the feasibility bound.
pub const DENSE_MAX_QUBITS: usize = 12;

/// Ordered list of gates over a fixed register. Gates are applied in list
/// order; `to_unitary` therefore returns `G_last · … · G_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    label: String,
}

impl Circuit {
    pub fn new(n_qubits: usize, label: impl Into<String>) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
            label: label.into(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Append a gate, enforcing the register invariants
    /// (indices in range, control ≠ target, Pauli string spans the register).
    ///
    /// # Panics
    /// On an invariant violation; circuits are built by constructors that
    /// only produce valid indices.
    pub fn push(&mut self, gate: Gate) -> &mut Self {
        for q in gate.support() {
            assert!(
                q < self.n_qubits,
                "gate qubit {q} out of range for {}-qubit circuit",
                self.n_qubits
            );
        }
        match &gate {
            Gate::Cnot { control, target }
            | Gate::ControlledPhase {
                control, target, ..
            } => assert_ne!(control, target, "control equals target"),
            Gate::Swap { a, b } => assert_ne!(a, b, "swap on a single qubit"),
            Gate::PauliRot { string, .. } => assert_eq!(
                string.len(),
                self.n_qubits,
                "Pauli string must span the register"
            ),
            _ => {}
        }
        self.gates.push(gate);
        self
    }

    pub fn extend(&mut self, other: &Circuit) -> &mut Self {
        assert_eq!(self.n_qubits, other.n_qubits, "register size mismatch");
        self.gates.extend(other.gates.iter().cloned());
        self
    }

    /// Inverse circuit: reversed order, each gate inverted.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            label: format!("{}-dagger", self.label),
        }
    }

    /// Re-index the circuit into a larger register, shifting every qubit by
    /// `offset`. Pauli strings get identity padding.
    pub fn embedded(&self, offset: usize, n_qubits: usize) -> Circuit {
        assert!(offset + self.n_qubits <= n_qubits, "embedding does not fit");
        let shift = |q: usize| q + offset;
        let gates = self
            .gates
            .iter()
            .map(|g| match g {
                Gate::H { target } => Gate::H { target: shift(*target) },
                Gate::Ry { angle, target } => Gate::Ry {
                    angle: *angle,
                    target: shift(*target),
                },
                Gate::Rz { angle, target } => Gate::Rz {
                    angle: *angle,
                    target: shift(*target),
                },
                Gate::Phase { angle, target } => Gate::Phase {
                    angle: *angle,
                    target: shift(*target),
                },
                Gate::Cnot { control, target } => Gate::Cnot {
                    control: shift(*control),
                    target: shift(*target),
                },
                Gate::ControlledPhase {
                    angle,
                    control,
                    target,
                } => Gate::ControlledPhase {
                    angle: *angle,
                    control: shift(*control),
                    target: shift(*target),
                },
                Gate::Swap { a, b } => Gate::Swap {
                    a: shift(*a),
                    b: shift(*b),
                },
                Gate::PauliRot { angle, string } => {
                    let mut letters = vec![Pauli::I; n_qubits];
                    for (q, &p) in string.letters().iter().enumerate() {
                        letters[q + offset] = p;
                    }
                    Gate::PauliRot {
                        angle: *angle,
                        string: PauliString::new(letters),
                    }
                }
                Gate::GlobalPhase { angle } => Gate::GlobalPhase { angle: *angle },
            })
            .collect();
        Circuit {
            n_qubits,
            gates,
            label: self.label.clone(),
        }
    }

    /// Cancellation pass: drops zero-angle rotations and adjacent identical
    /// self-inverse pairs (CNOT, SWAP, H) with no intervening gate on the
    /// same qubits. Runs to a fixed point.
    pub fn simplified(&self) -> Circuit {
        let mut gates = self.gates.clone();
        loop {
            let before = gates.len();
            gates.retain(|g| !g.is_identity());
            let mut out: Vec<Gate> = Vec::with_capacity(gates.len());
            let mut skip = vec![false; gates.len()];
            for i in 0..gates.len() {
                if skip[i] {
                    continue;
                }
                if gates[i].is_self_inverse() {
                    let support = gates[i].support();
                    // Find the next gate that touches any of these qubits.
                    let mut j = i + 1;
                    while j < gates.len() {
                        if skip[j] {
                            j += 1;
                            continue;
                        }
                        let touches = gates[j].support().iter().any(|q| support.contains(q));
                        if touches {
                            break;
                        }
                        j += 1;
                    }
                    if j < gates.len() && gates[j] == gates[i] {
                        skip[i] = true;
                        skip[j] = true;
                        continue;
                    }
                }
                out.push(gates[i].clone());
            }
            gates = out;
            if gates.len() == before {
                break;
            }
        }
        Circuit {
            n_qubits: self.n_qubits,
            gates,
            label: self.label.clone(),
        }
    }

    pub fn count(&self, pred: impl Fn(&Gate) -> bool) -> usize {
        self.gates.iter().filter(|g| pred(g)).count()
    }

    pub fn cnot_count(&self) -> usize {
        self.count(|g| matches!(g, Gate::Cnot { .. }))
    }

    /// Apply the circuit to a state in list order.
    pub fn apply_to(&self, state: &mut State) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(CoreError::RegisterMismatch {
                expected: self.n_qubits,
                actual: state.n_qubits(),
            });
        }
        for gate in &self.gates {
            apply_gate_in_place(state, gate)?;
        }
        Ok(())
    }

    /// Functional form of [`Circuit::apply_to`].
    pub fn applied_to(&self, state: &State) -> Result<State> {
        let mut out = state.clone();
        self.apply_to(&mut out)?;
        Ok(out)
    }

    /// Dense unitary of the circuit as the ordered gate product.
    ///
    /// Every gate is expanded through its Pauli-basis decomposition and the
    /// product is accumulated by matrix multiplication, so this path shares
    /// no code with the statevector kernels and serves as their oracle.
    pub fn to_unitary(&self) -> Result<DMatrix<Complex64>> {
        if self.n_qubits > DENSE_MAX_QUBITS {
            return Err(CoreError::RegisterTooLarge {
                n_qubits: self.n_qubits,
                max: DENSE_MAX_QUBITS,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut u = DMatrix::<Complex64>::identity(dim, dim);
        for gate in &self.gates {
            u = gate_unitary(gate, self.n_qubits)? * u;
        }
        Ok(u)
    }
}

/// Apply one gate to a state (functional form of the spec operation).
pub fn apply_gate(state: &State, gate: &Gate) -> Result<State> {
    let mut out = state.clone();
    apply_gate_in_place(&mut out, gate)?;
    Ok(out)
}

/// Apply an ordered gate sequence to a state.
pub fn apply_circuit(state: &State, circuit: &Circuit) -> Result<State> {
    circuit.applied_to(state)
}

fn check_qubit(state: &State, q: usize) -> Result<usize> {
    let m = state.n_qubits();
    if q >= m {
        return Err(CoreError::QubitOutOfRange {
            qubit: q,
            n_qubits: m,
        });
    }
    // Qubit q holds the global-index bit of weight 2^(m-1-q).
    Ok(1usize << (m - 1 - q))
}

pub(crate) fn apply_gate_in_place(state: &mut State, gate: &Gate) -> Result<()> {
    match gate {
        Gate::H { target } => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let (a, b, c, d) = (
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(-s, 0.0),
            );
            single_qubit_kernel(state, *target, a, b, c, d)
        }
        Gate::Ry { angle, target } => {
            let (cos, sin) = (angle.cos(), angle.sin());
            single_qubit_kernel(
                state,
                *target,
                Complex64::new(cos, 0.0),
                Complex64::new(-sin, 0.0),
                Complex64::new(sin, 0.0),
                Complex64::new(cos, 0.0),
            )
        }
        Gate::Rz { angle, target } => {
            let mask = check_qubit(state, *target)?;
            let lo = Complex64::from_polar(1.0, -angle);
            let hi = Complex64::from_polar(1.0, *angle);
            for (g, amp) in state.amplitudes_mut().iter_mut().enumerate() {
                *amp *= if g & mask == 0 { lo } else { hi };
            }
            Ok(())
        }
        Gate::Phase { angle, target } => {
            let mask = check_qubit(state, *target)?;
            let ph = Complex64::from_polar(1.0, *angle);
            for (g, amp) in state.amplitudes_mut().iter_mut().enumerate() {
                if g & mask != 0 {
                    *amp *= ph;
                }
            }
            Ok(())
        }
        Gate::Cnot { control, target } => {
            let cmask = check_qubit(state, *control)?;
            let tmask = check_qubit(state, *target)?;
            if cmask == tmask {
                return Err(CoreError::InvalidConfig {
                    reason: "CNOT control equals target".into(),
                });
            }
            let amps = state.amplitudes_mut();
            for g in 0..amps.len() {
                if g & cmask != 0 && g & tmask == 0 {
                    amps.swap(g, g | tmask);
                }
            }
            Ok(())
        }
        Gate::ControlledPhase {
            angle,
            control,
            target,
        } => {
            let cmask = check_qubit(state, *control)?;
            let tmask = check_qubit(state, *target)?;
            let ph = Complex64::from_polar(1.0, *angle);
            for (g, amp) in state.amplitudes_mut().iter_mut().enumerate() {
                if g & cmask != 0 && g & tmask != 0 {
                    *amp *= ph;
                }
            }
            Ok(())
        }
        Gate::Swap { a, b } => {
            let amask = check_qubit(state, *a)?;
            let bmask = check_qubit(state, *b)?;
            let amps = state.amplitudes_mut();
            for g in 0..amps.len() {
                if g & amask != 0 && g & bmask == 0 {
                    amps.swap(g, g ^ amask ^ bmask);
                }
            }
            Ok(())
        }
        Gate::PauliRot { angle, string } => pauli_rot_kernel(state, *angle, string),
        Gate::GlobalPhase { angle } => {
            let ph = Complex64::from_polar(1.0, *angle);
            for amp in state.amplitudes_mut() {
                *amp *= ph;
            }
            Ok(())
        }
    }
}

/// Pair-stride kernel for an arbitrary single-qubit matrix [[a,b],[c,d]].
fn single_qubit_kernel(
    state: &mut State,
    target: usize,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> Result<()> {
    let mask = check_qubit(state, target)?;
    let amps = state.amplitudes_mut();
    let len = amps.len();
    let mut base = 0;
    while base < len {
        for g0 in base..base + mask {
            let g1 = g0 | mask;
            let x0 = amps[g0];
            let x1 = amps[g1];
            amps[g0] = a * x0 + b * x1;
            amps[g1] = c * x0 + d * x1;
        }
        base += mask << 1;
    }
    Ok(())
}

/// `e^{-iθP} = cosθ·I - i sinθ·P` applied through the signed-permutation
/// structure of the Pauli string.
fn pauli_rot_kernel(state: &mut State, angle: f64, string: &PauliString) -> Result<()> {
    let m = state.n_qubits();
    if string.len() != m {
        return Err(CoreError::PauliLengthMismatch {
            len: string.len(),
            n_qubits: m,
        });
    }
    let cos = Complex64::new(angle.cos(), 0.0);
    let misin = Complex64::new(0.0, -angle.sin());
    let x_mask = string.x_mask();
    let amps = state.amplitudes_mut();
    if x_mask == 0 {
        // Diagonal string: amplitudes pick up e^{∓iθ} by Z-parity.
        let zy = string.zy_mask();
        for (g, amp) in amps.iter_mut().enumerate() {
            let sign = if (g & zy).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            *amp *= cos + misin * sign;
        }
        return Ok(());
    }
    let hb = 1usize << x_mask.ilog2();
    for g in 0..amps.len() {
        if g & hb != 0 {
            continue;
        }
        let h = g ^ x_mask;
        let xg = amps[g];
        let xh = amps[h];
        // P[g,h] is the column phase of h, and vice versa.
        amps[g] = cos * xg + misin * string.col_phase(h) * xh;
        amps[h] = cos * xh + misin * string.col_phase(g) * xg;
    }
    Ok(())
}

pub(crate) fn apply_pauli(state: &mut State, letter: Pauli, qubit: usize) -> Result<()> {
    let mask = check_qubit(state, qubit)?;
    let amps = state.amplitudes_mut();
    match letter {
        Pauli::I => {}
        Pauli::X => {
            for g in 0..amps.len() {
                if g & mask == 0 {
                    amps.swap(g, g | mask);
                }
            }
        }
        Pauli::Y => {
            let i = Complex64::new(0.0, 1.0);
            for g in 0..amps.len() {
                if g & mask == 0 {
                    let h = g | mask;
                    let x0 = amps[g];
                    let x1 = amps[h];
                    amps[g] = -i * x1;
                    amps[h] = i * x0;
                }
            }
        }
        Pauli::Z => {
            for (g, amp) in amps.iter_mut().enumerate() {
                if g & mask != 0 {
                    *amp = -*amp;
                }
            }
        }
    }
    Ok(())
}

/// Dense matrix of a single gate via its Pauli-basis expansion.
fn gate_unitary(gate: &Gate, m: usize) -> Result<DMatrix<Complex64>> {
    use crate::pauli::terms_to_dense;
    let dim = 1usize << m;
    let id = |c: f64| PauliTerm::new(c, PauliString::identity(m));
    let single = |c: f64, q: usize, p: Pauli| PauliTerm::new(c, PauliString::single(m, q, p));
    let pair = |c: f64, q1: usize, p1: Pauli, q2: usize, p2: Pauli| {
        let mut v = vec![Pauli::I; m];
        v[q1] = p1;
        v[q2] = p2;
        PauliTerm::new(c, PauliString::new(v))
    };

    // Real Pauli sums cover the real part; the imaginary part is folded in
    // by a second sum multiplied by i.
    let (re_terms, im_terms): (Vec<PauliTerm>, Vec<PauliTerm>) = match gate {
        Gate::H { target } => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            (
                vec![single(s, *target, Pauli::X), single(s, *target, Pauli::Z)],
                vec![],
            )
        }
        Gate::Ry { angle, target } => (
            vec![id(angle.cos())],
            vec![single(-angle.sin(), *target, Pauli::Y)],
        ),
        Gate::Rz { angle, target } => (
            vec![id(angle.cos())],
            vec![single(-angle.sin(), *target, Pauli::Z)],
        ),
        Gate::Phase { angle, target } => {
            // I + (e^{iφ}-1)·|1><1| with |1><1| = (I - Z)/2
            let (c, s) = (angle.cos(), angle.sin());
            (
                vec![id(1.0 + (c - 1.0) / 2.0), single(-(c - 1.0) / 2.0, *target, Pauli::Z)],
                vec![id(s / 2.0), single(-s / 2.0, *target, Pauli::Z)],
            )
        }
        Gate::Cnot { control, target } => (
            // |0><0|_c I + |1><1|_c X_t
            vec![
                id(0.5),
                single(0.5, *control, Pauli::Z),
                single(0.5, *target, Pauli::X),
                pair(-0.5, *control, Pauli::Z, *target, Pauli::X),
            ],
            vec![],
        ),
        Gate::ControlledPhase {
            angle,
            control,
            target,
        } => {
            // I + (e^{iφ}-1)·|11><11| with |11><11| = (I-Z_c)(I-Z_t)/4
            let (c, s) = (angle.cos() - 1.0, angle.sin());
            let proj = |w: f64| {
                vec![
                    id(w / 4.0),
                    single(-w / 4.0, *control, Pauli::Z),
                    single(-w / 4.0, *target, Pauli::Z),
                    pair(w / 4.0, *control, Pauli::Z, *target, Pauli::Z),
                ]
            };
            let mut re = vec![id(1.0)];
            re.extend(proj(c));
            (re, proj(s))
        }
        Gate::Swap { a, b } => (
            vec![
                id(0.5),
                pair(0.5, *a, Pauli::X, *b, Pauli::X),
                pair(0.5, *a, Pauli::Y, *b, Pauli::Y),
                pair(0.5, *a, Pauli::Z, *b, Pauli::Z),
            ],
            vec![],
        ),
        Gate::PauliRot { angle, string } => {
            if string.len() != m {
                return Err(CoreError::PauliLengthMismatch {
                    len: string.len(),
                    n_qubits: m,
                });
            }
            (
                vec![id(angle.cos())],
                vec![PauliTerm::new(-angle.sin(), string.clone())],
            )
        }
        Gate::GlobalPhase { angle } => (vec![id(angle.cos())], vec![id(angle.sin())]),
    };

    let mut u = terms_to_dense(m, &re_terms)?;
    if !im_terms.is_empty() {
        let imag = terms_to_dense(m, &im_terms)?;
        u += imag * Complex64::new(0.0, 1.0);
    }
    debug_assert_eq!(u.nrows(), dim);
    Ok(u)
}
