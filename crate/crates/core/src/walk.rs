//! Split-step walk circuits on the ring: QFT-based shift and step
//! operators, position-dependent coins, the assembled single-step unitary,
//! and dense brute-force oracles for each of them.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{CoreError, Result};
use crate::gate::Gate;
use crate::qft::qft_circuit;
use crate::state::State;

/// Direction of a shift or step operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }

    fn offset(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

/// Coin angles for the two lattice regions plus the deformation parameter.
/// The minus superscripts cover `0 ≤ x < N/2`, plus covers `N/2 ≤ x < N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub n_walker: usize,
    pub theta1_minus: f64,
    pub theta1_plus: f64,
    pub theta2_minus: f64,
    pub theta2_plus: f64,
    pub epsilon: f64,
}

impl WalkConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_walker == 0 {
            return Err(CoreError::InvalidConfig {
                reason: "walker register needs at least one qubit".into(),
            });
        }
        if self.epsilon < 0.0 {
            return Err(CoreError::InvalidConfig {
                reason: "epsilon must be nonnegative".into(),
            });
        }
        let angles = [
            self.theta1_minus,
            self.theta1_plus,
            self.theta2_minus,
            self.theta2_plus,
        ];
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(CoreError::InvalidConfig {
                reason: "coin angles must be finite".into(),
            });
        }
        Ok(())
    }

    pub fn is_single_phase(&self) -> bool {
        self.theta1_minus == self.theta1_plus && self.theta2_minus == self.theta2_plus
    }

    /// Deformed coin angles for one of the preset configurations.
    pub fn preset(preset: PhasePreset, n_walker: usize, epsilon: f64) -> WalkConfig {
        let (t1, t2) = match preset {
            PhasePreset::I => (epsilon, PI / 2.0 + epsilon),
            PhasePreset::II => (epsilon, -PI / 2.0 - epsilon),
            PhasePreset::III => (PI / 2.0 + epsilon, epsilon),
            PhasePreset::IV => (-PI / 2.0 - epsilon, epsilon),
            PhasePreset::Boundary => {
                // phase II on the low half, phase I on the high half
                return WalkConfig {
                    n_walker,
                    theta1_minus: epsilon,
                    theta1_plus: epsilon,
                    theta2_minus: -(PI / 2.0 + epsilon),
                    theta2_plus: PI / 2.0 + epsilon,
                    epsilon,
                };
            }
        };
        WalkConfig {
            n_walker,
            theta1_minus: t1,
            theta1_plus: t1,
            theta2_minus: t2,
            theta2_plus: t2,
            epsilon,
        }
    }
}

/// The four single-phase coin-parameter limits plus the two-phase boundary
/// configuration (written `I/II`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhasePreset {
    I,
    II,
    III,
    IV,
    Boundary,
}

impl fmt::Display for PhasePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PhasePreset::I => "I",
            PhasePreset::II => "II",
            PhasePreset::III => "III",
            PhasePreset::IV => "IV",
            PhasePreset::Boundary => "I/II",
        };
        write!(f, "{s}")
    }
}

impl FromStr for PhasePreset {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(PhasePreset::I),
            "II" => Ok(PhasePreset::II),
            "III" => Ok(PhasePreset::III),
            "IV" => Ok(PhasePreset::IV),
            "I/II" | "II/I" => Ok(PhasePreset::Boundary),
            other => Err(CoreError::InvalidConfig {
                reason: format!("unknown phase preset '{other}'"),
            }),
        }
    }
}

impl Serialize for PhasePreset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PhasePreset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Accumulated phase of the diagonal product in the step factorization;
/// tracked explicitly so circuit unitaries equal the oracle matrices, not
/// just their projective classes.
fn step_global_phase(n_walker: usize) -> f64 {
    (PI / 2.0) * (1.0 - 0.5f64.powi(n_walker as i32))
}

/// Permutation matrix of `x -> (x ± 1) mod N` on the walker register.
pub fn shift_oracle(n_walker: usize, direction: Direction) -> DMatrix<Complex64> {
    let n = 1usize << n_walker;
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for x in 0..n {
        let y = (x as i64 + direction.offset()).rem_euclid(n as i64) as usize;
        m[(y, x)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Shift circuit on the walker register alone: QFT† · phase rotations ·
/// QFT, plus the tracked global phase. Matches [`shift_oracle`] exactly.
pub fn shift_circuit(n_walker: usize, direction: Direction) -> Circuit {
    let qft = qft_circuit(n_walker);
    let mut c = Circuit::new(n_walker, format!("shift{}", direction_suffix(direction)));
    c.extend(&qft.inverse());
    for j in 0..n_walker {
        // e^{∓πi Z_j / 2^{j+1}} = RZ(±π/2^{j+1})
        c.push(Gate::Rz {
            angle: direction.sign() * PI / (1 << (j + 1)) as f64,
            target: j,
        });
    }
    c.extend(&qft);
    c.push(Gate::GlobalPhase {
        angle: direction.sign() * 2.0 * step_global_phase(n_walker),
    });
    c
}

fn direction_suffix(direction: Direction) -> &'static str {
    match direction {
        Direction::Forward => "+",
        Direction::Backward => "-",
    }
}

/// Coin-conditioned shift `S±` as a dense block matrix over the full
/// register: coin 0 moves under `S+`, coin 1 under `S-`.
pub fn step_oracle(n_walker: usize, direction: Direction) -> DMatrix<Complex64> {
    let n = 1usize << n_walker;
    let shift = shift_oracle(n_walker, direction);
    let id = DMatrix::<Complex64>::identity(n, n);
    let mut m = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    let (block0, block1) = match direction {
        Direction::Forward => (&shift, &id),
        Direction::Backward => (&id, &shift),
    };
    m.view_mut((0, 0), (n, n)).copy_from(block0);
    m.view_mut((n, n), (n, n)).copy_from(block1);
    m
}

/// Step circuit over the full register: QFT† on the walker, the diagonal
/// momentum-space factor, QFT back, and the tracked global phase.
///
/// The diagonal factor per walker qubit j is the pair
/// `e^{πi(Z_c ∓ Z_j)/2^{j+2}} · e^{-πi Z_c Z_j/2^{j+2}}`, with the
/// two-qubit exponential lowered through CNOT conjugation and the coin
/// rotations merged into a single RZ.
pub fn step_circuit(n_walker: usize, direction: Direction) -> Circuit {
    let m = n_walker + 1;
    let qft = qft_circuit(n_walker).embedded(1, m);
    let mut c = Circuit::new(m, format!("step{}", direction_suffix(direction)));
    c.extend(&qft.inverse());
    for j in 0..n_walker {
        let theta = PI / (1 << (j + 2)) as f64;
        // e^{-πi Z_c Z_j / 2^{j+2}} = CNOT(j→c) RZ(θ) on c, CNOT(j→c)
        c.push(Gate::Cnot {
            control: j + 1,
            target: 0,
        })
        .push(Gate::Rz {
            angle: theta,
            target: 0,
        })
        .push(Gate::Cnot {
            control: j + 1,
            target: 0,
        });
        // e^{∓πi Z_j / 2^{j+2}} = RZ(±θ) on walker qubit j
        c.push(Gate::Rz {
            angle: direction.sign() * theta,
            target: j + 1,
        });
    }
    // Merged coin factor ∏_j e^{πi Z_c/2^{j+2}} = RZ(-δ_n) on the coin.
    c.push(Gate::Rz {
        angle: -step_global_phase(n_walker),
        target: 0,
    });
    c.extend(&qft);
    c.push(Gate::GlobalPhase {
        angle: direction.sign() * step_global_phase(n_walker),
    });
    c
}

/// Position-dependent coin `Σ_x e^{-iθ(x)Y_c} ⊗ |x⟩⟨x|` with `θ(x) = θ⁻`
/// on the low half and `θ⁺` on the high half, as a dense oracle.
pub fn coin_oracle(n_walker: usize, theta_plus: f64, theta_minus: f64) -> DMatrix<Complex64> {
    let n = 1usize << n_walker;
    let mut m = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    for x in 0..n {
        let theta = if x < n / 2 { theta_minus } else { theta_plus };
        let (cos, sin) = (theta.cos(), theta.sin());
        m[(x, x)] = Complex64::new(cos, 0.0);
        m[(x, n + x)] = Complex64::new(-sin, 0.0);
        m[(n + x, x)] = Complex64::new(sin, 0.0);
        m[(n + x, n + x)] = Complex64::new(cos, 0.0);
    }
    m
}

/// Coin circuit: the region split depends only on the leading bit of x, so
/// a coin rotation pair conjugated by CNOTs from walker qubit 0 suffices.
/// With equal angles the CNOT pair cancels under [`Circuit::simplified`].
pub fn coin_circuit(n_walker: usize, theta_plus: f64, theta_minus: f64) -> Circuit {
    let m = n_walker + 1;
    let mut c = Circuit::new(m, "coin");
    c.push(Gate::Cnot {
        control: 1,
        target: 0,
    })
    .push(Gate::Ry {
        angle: (theta_minus - theta_plus) / 2.0,
        target: 0,
    })
    .push(Gate::Cnot {
        control: 1,
        target: 0,
    })
    .push(Gate::Ry {
        angle: (theta_plus + theta_minus) / 2.0,
        target: 0,
    });
    c
}

/// One full walk step `W = S⁻ 𝒯₂ S⁺ 𝒯₁` as a circuit.
pub fn walk_step_circuit(config: &WalkConfig) -> Result<Circuit> {
    config.validate()?;
    let n = config.n_walker;
    let mut c = Circuit::new(n + 1, "walk-step");
    c.extend(&coin_circuit(n, config.theta1_plus, config.theta1_minus));
    c.extend(&step_circuit(n, Direction::Forward));
    c.extend(&coin_circuit(n, config.theta2_plus, config.theta2_minus));
    c.extend(&step_circuit(n, Direction::Backward));
    Ok(c)
}

/// Dense oracle for the full step, multiplied out from the block oracles.
pub fn walk_step_oracle(config: &WalkConfig) -> Result<DMatrix<Complex64>> {
    config.validate()?;
    let n = config.n_walker;
    let t1 = coin_oracle(n, config.theta1_plus, config.theta1_minus);
    let t2 = coin_oracle(n, config.theta2_plus, config.theta2_minus);
    let sp = step_oracle(n, Direction::Forward);
    let sm = step_oracle(n, Direction::Backward);
    Ok(sm * t2 * sp * t1)
}

/// Run the discrete walk for `steps` steps and record the position
/// distribution after each one (including the initial distribution).
pub fn run_discrete_walk(
    initial: &State,
    steps: usize,
    config: &WalkConfig,
) -> Result<Vec<Vec<f64>>> {
    let circuit = walk_step_circuit(config)?;
    let mut state = initial.clone();
    let mut trace = Vec::with_capacity(steps + 1);
    trace.push(state.position_distribution());
    for _ in 0..steps {
        circuit.apply_to(&mut state)?;
        trace.push(state.position_distribution());
    }
    Ok(trace)
}

/// Step count for scenario time `t`: `t/(2ε)` rounded to the nearest
/// multiple of four, since only four-step blocks of the deformed walk
/// return near the identity. The second field reports whether rounding
/// moved the value by more than 1e-9.
pub fn steps_for_time(t: f64, epsilon: f64) -> (usize, bool) {
    let raw = t / (2.0 * epsilon);
    let steps = 4.0 * (raw / 4.0).round();
    let rounded = (steps - raw).abs() > 1e-9;
    (steps.max(0.0) as usize, rounded)
}
