//! Statevector over the coin ⊗ walker register.
//!
//! Amplitude layout: index `g = c·2^n + x` where `c` is the coin bit and
//! `x` the walker position. Walker qubit `j` holds the bit of `x` with
//! weight `2^(n-1-j)`, so qubit 0 of the register is the coin and qubit 1
//! is the most significant bit of `x`.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{CoreError, Result};

/// Pure state of one coin qubit and `n_walker` walker qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    n_walker: usize,
    amps: Vec<Complex64>,
}

impl State {
    /// Computational basis state `|coin⟩|x⟩`.
    pub fn basis(n_walker: usize, coin: u8, x: usize) -> Result<State> {
        if coin > 1 {
            return Err(CoreError::InvalidCoin { value: coin });
        }
        let n_sites = 1usize << n_walker;
        if x >= n_sites {
            return Err(CoreError::SiteOutOfRange { site: x, n_sites });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 2 * n_sites];
        amps[coin as usize * n_sites + x] = Complex64::new(1.0, 0.0);
        Ok(State { n_walker, amps })
    }

    /// State from a raw amplitude vector of length `2^(n_walker+1)`.
    pub fn from_amplitudes(n_walker: usize, amps: Vec<Complex64>) -> Result<State> {
        let expected = 2usize << n_walker;
        if amps.len() != expected {
            return Err(CoreError::RegisterMismatch {
                expected,
                actual: amps.len(),
            });
        }
        Ok(State { n_walker, amps })
    }

    /// Haar-random normalized state, for tests and benches.
    pub fn random(n_walker: usize, rng: &mut impl Rng) -> State {
        let len = 2usize << n_walker;
        let mut amps: Vec<Complex64> = (0..len)
            .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        State { n_walker, amps }
    }

    pub fn n_walker(&self) -> usize {
        self.n_walker
    }

    pub fn n_qubits(&self) -> usize {
        self.n_walker + 1
    }

    pub fn n_sites(&self) -> usize {
        1 << self.n_walker
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `P(x) = |⟨0,x|ψ⟩|² + |⟨1,x|ψ⟩|²`.
    pub fn position_distribution(&self) -> Vec<f64> {
        let n = self.n_sites();
        (0..n)
            .map(|x| self.amps[x].norm_sqr() + self.amps[n + x].norm_sqr())
            .collect()
    }

    /// Largest amplitude difference against another state.
    pub fn distance(&self, other: &State) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Prepare `|coin⟩|x⟩`; the usual starting point of the walk scenarios.
pub fn basis_state(n_walker: usize, coin: u8, x: usize) -> Result<State> {
    State::basis(n_walker, coin, x)
}

// Box-Muller standard normal; avoids pulling in rand_distr for one sampler.
fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
