//! Exact time evolution `e^{-iHt}` through Hermitian eigendecomposition,
//! null-space extraction, and bound-state preparation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::hamiltonian::Hamiltonian;
use crate::state::State;

/// Default relative tolerance for calling an eigenvalue zero.
pub const KERNEL_TOL: f64 = 1e-9;

/// `e^{-iHt}` for Hermitian `h` via eigendecomposition. Exact up to
/// diagonalization error; the dimensions in scope are tiny, so no series
/// or scaling-squaring is involved.
pub fn expm_hermitian(h: &DMatrix<Complex64>, t: f64) -> DMatrix<Complex64> {
    let se = h.clone().symmetric_eigen();
    let dim = h.nrows();
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for k in 0..dim {
        let phase = Complex64::from_polar(1.0, -se.eigenvalues[k] * t);
        let v = se.eigenvectors.column(k);
        for i in 0..dim {
            let vi = v[i] * phase;
            for j in 0..dim {
                out[(i, j)] += vi * v[j].conj();
            }
        }
    }
    out
}

/// Evolve a state exactly under `e^{-iHt}`.
pub fn evolve_exact(h: &Hamiltonian, state: &State, t: f64) -> Result<State> {
    if state.n_qubits() != h.n_qubits() {
        return Err(CoreError::RegisterMismatch {
            expected: h.n_qubits(),
            actual: state.n_qubits(),
        });
    }
    let u = expm_hermitian(h.dense(), t);
    let amps = DVector::from_column_slice(state.amplitudes());
    let evolved = u * amps;
    State::from_amplitudes(state.n_walker(), evolved.iter().copied().collect())
}

/// Orthonormal basis of the null space, with the per-site weight of the
/// kernel projector.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    pub vectors: Vec<DVector<Complex64>>,
    /// `Σ_b (|v_b[x]|² + |v_b[N+x]|²)` per site x; zero entries mean the
    /// kernel has no support there.
    pub site_support: Vec<f64>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Eigenvectors of `h` with `|eigenvalue| < tol · max|eigenvalue|`.
pub fn kernel(h: &Hamiltonian, tol: f64) -> KernelBasis {
    let se = h.dense().clone().symmetric_eigen();
    let scale = se.eigenvalues.iter().fold(0.0f64, |m, &e| m.max(e.abs()));
    let threshold = if scale > 0.0 { tol * scale } else { tol };
    let dim = h.dim();
    let n_sites = dim / 2;
    let mut vectors = Vec::new();
    let mut site_support = vec![0.0; n_sites];
    for k in 0..dim {
        if se.eigenvalues[k].abs() < threshold {
            let v: DVector<Complex64> = se.eigenvectors.column(k).into();
            for x in 0..n_sites {
                site_support[x] += v[x].norm_sqr() + v[n_sites + x].norm_sqr();
            }
            vectors.push(v);
        }
    }
    KernelBasis {
        vectors,
        site_support,
    }
}

/// Normalized kernel vector with maximal probability at `site`: the
/// site-coin basis states are projected onto the kernel and the larger
/// projection wins (coin 0 on a tie).
pub fn bound_eigenstate(h: &Hamiltonian, site: usize) -> Result<State> {
    let n_walker = h.n_qubits() - 1;
    let n_sites = 1usize << n_walker;
    if site >= n_sites {
        return Err(CoreError::SiteOutOfRange { site, n_sites });
    }
    let basis = kernel(h, KERNEL_TOL);
    if basis.dim() == 0 {
        return Err(CoreError::EmptyKernel);
    }
    let mut best: Option<(f64, DVector<Complex64>)> = None;
    for coin in [0usize, 1] {
        let g = coin * n_sites + site;
        let mut proj = DVector::<Complex64>::zeros(h.dim());
        for v in &basis.vectors {
            // projection of |coin, site> onto the kernel: Σ_b v_b <v_b|e_g>
            let overlap = v[g].conj();
            proj += v * overlap;
        }
        let norm_sq = proj.norm_squared();
        let better = match &best {
            Some((n, _)) => norm_sq > *n + 1e-12,
            None => true,
        };
        if better {
            best = Some((norm_sq, proj));
        }
    }
    let (norm_sq, proj) = best.unwrap();
    if norm_sq < 1e-12 {
        return Err(CoreError::NoBoundState { site });
    }
    let normalized = proj / Complex64::new(norm_sq.sqrt(), 0.0);
    State::from_amplitudes(n_walker, normalized.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{
        hamiltonian_single_phase, hamiltonian_two_phase_boundary,
    };
    use crate::state::basis_state;
    use crate::walk::PhasePreset;

    #[test]
    fn zero_time_is_identity() {
        let h = hamiltonian_two_phase_boundary(2).unwrap();
        let psi = basis_state(2, 0, 2).unwrap();
        let out = evolve_exact(&h, &psi, 0.0).unwrap();
        assert!(psi.distance(&out) < 1e-12);
    }

    #[test]
    fn norm_and_energy_conserved() {
        use rand::SeedableRng;
        let h = hamiltonian_single_phase(PhasePreset::I, 3).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let psi = State::random(3, &mut rng);
        let energy = |s: &State| {
            let v = DVector::from_column_slice(s.amplitudes());
            (v.adjoint() * h.dense() * &v)[(0, 0)].re
        };
        let e0 = energy(&psi);
        for t in [0.5, 1.0, 2.5, 7.0] {
            let out = evolve_exact(&h, &psi, t).unwrap();
            assert!((out.norm() - 1.0).abs() < 1e-10);
            assert!((energy(&out) - e0).abs() < 1e-9, "t={t}");
        }
    }

    #[test]
    fn boundary_kernel_is_four_dimensional_on_odd_sites() {
        let h = hamiltonian_two_phase_boundary(2).unwrap();
        let k = kernel(&h, 1e-9);
        assert_eq!(k.dim(), 4);
        assert!(k.site_support[0] < 1e-9);
        assert!(k.site_support[2] < 1e-9);
        assert!(k.site_support[1] > 1.0);
        assert!(k.site_support[3] > 1.0);
    }

    #[test]
    fn phase_one_kernel_dimension_is_two() {
        // The walker factor 2I + L+ + L- has eigenvalues 2 + 2cos(2πk/4)
        // = {4, 2, 0, 2}; the single zero gives a two-dimensional kernel
        // once tensored with the coin.
        let h = hamiltonian_single_phase(PhasePreset::I, 2).unwrap();
        assert_eq!(kernel(&h, 1e-9).dim(), 2);
    }

    #[test]
    fn boundary_n3_kernel_sits_at_the_phase_edges() {
        let h = hamiltonian_two_phase_boundary(3).unwrap();
        let k = kernel(&h, 1e-9);
        assert!(k.dim() > 0);
        assert!(k.site_support[3] > 0.5);
        assert!(k.site_support[7] > 0.5);
    }

    #[test]
    fn bound_state_at_site_one_is_stationary() {
        let h = hamiltonian_two_phase_boundary(2).unwrap();
        let psi = bound_eigenstate(&h, 1).unwrap();
        assert!((psi.position_distribution()[1] - 1.0).abs() < 1e-12);
        let evolved = evolve_exact(&h, &psi, 8.0).unwrap();
        let d: f64 = psi
            .position_distribution()
            .iter()
            .zip(evolved.position_distribution())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(d < 1e-9);
    }

    #[test]
    fn no_bound_state_off_the_kernel_support() {
        let h = hamiltonian_two_phase_boundary(2).unwrap();
        assert!(matches!(
            bound_eigenstate(&h, 0),
            Err(CoreError::NoBoundState { site: 0 })
        ));
    }

    #[test]
    fn exact_evolution_leaks_from_non_kernel_sites_in_a_single_phase() {
        // Phase I has no bound state at x=1: P(1) decays below 0.5 within
        // t ≤ 4 (the contrast scenario behind the no-bound-state figures).
        let h = hamiltonian_single_phase(PhasePreset::I, 2).unwrap();
        let psi = basis_state(2, 0, 1).unwrap();
        let mut min_p1 = f64::INFINITY;
        for i in 1..=40 {
            let t = 0.1 * i as f64;
            let p = evolve_exact(&h, &psi, t).unwrap().position_distribution()[1];
            min_p1 = min_p1.min(p);
        }
        assert!(min_p1 <= 0.5, "min P(1) = {min_p1}");
    }
}
