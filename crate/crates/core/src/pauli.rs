//! Pauli strings, real-weighted Pauli terms, and the trace-based
//! decomposition of Hermitian matrices into them.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{CoreError, Result};

/// Largest register accepted by [`decompose`]; 4^8 strings is the point
/// where the trace sweep stops being instantaneous.
pub const DECOMPOSE_MAX_QUBITS: usize = 8;

/// Coefficients below this are treated as numerically zero when
/// decomposing a matrix.
pub const COEFF_CUTOFF: f64 = 1e-12;

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> DMatrix<Complex64> {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => DMatrix::from_row_slice(2, 2, &[l, o, o, l]),
            Pauli::X => DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            Pauli::Y => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            Pauli::Z => DMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        }
    }

    fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis. Index 0 is the coin qubit when
/// the string spans the full register.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        PauliString(letters)
    }

    /// All-identity string on `len` qubits.
    pub fn identity(len: usize) -> Self {
        PauliString(vec![Pauli::I; len])
    }

    /// Identity everywhere except `letter` at `qubit`.
    pub fn single(len: usize, qubit: usize, letter: Pauli) -> Self {
        let mut v = vec![Pauli::I; len];
        v[qubit] = letter;
        PauliString(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// Qubits carrying a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .map(|(q, _)| q)
            .collect()
    }

    /// Basis-flip mask over global indices: bits set where the letter is X or Y.
    /// Qubit `q` maps to bit weight `2^(len-1-q)`.
    pub fn x_mask(&self) -> usize {
        let m = self.len();
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| matches!(p, Pauli::X | Pauli::Y))
            .fold(0, |acc, (q, _)| acc | (1 << (m - 1 - q)))
    }

    /// Sign mask: bits set where the letter is Z or Y.
    pub fn zy_mask(&self) -> usize {
        let m = self.len();
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| matches!(p, Pauli::Z | Pauli::Y))
            .fold(0, |acc, (q, _)| acc | (1 << (m - 1 - q)))
    }

    pub fn y_count(&self) -> usize {
        self.0.iter().filter(|&&p| p == Pauli::Y).count()
    }

    /// Column phase of the string as a signed permutation:
    /// `P |g> = col_phase(g) |g XOR x_mask>`.
    pub fn col_phase(&self, g: usize) -> Complex64 {
        let i_pow = match self.y_count() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        let sign = if (g & self.zy_mask()).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        i_pow * sign
    }

    /// Dense matrix of the string via Kronecker products.
    pub fn dense(&self) -> DMatrix<Complex64> {
        let mut out = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        for p in &self.0 {
            out = out.kronecker(&p.matrix());
        }
        out
    }
}

impl FromStr for PauliString {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                Pauli::from_char(c).ok_or_else(|| CoreError::InvalidConfig {
                    reason: format!("invalid Pauli letter '{c}'"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliString)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.to_char())?;
        }
        Ok(())
    }
}

/// One real-weighted Pauli string of a Hermitian sum.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coeff: f64,
    pub string: PauliString,
}

impl PauliTerm {
    pub fn new(coeff: f64, string: PauliString) -> Self {
        PauliTerm { coeff, string }
    }

    /// Parse from `(coeff, "YIX")` style input.
    pub fn parse(coeff: f64, letters: &str) -> Result<Self> {
        Ok(PauliTerm {
            coeff,
            string: letters.parse()?,
        })
    }
}

/// Dense matrix of a real-weighted Pauli sum.
pub fn terms_to_dense(n_qubits: usize, terms: &[PauliTerm]) -> Result<DMatrix<Complex64>> {
    let dim = 1usize << n_qubits;
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for term in terms {
        if term.string.len() != n_qubits {
            return Err(CoreError::PauliLengthMismatch {
                len: term.string.len(),
                n_qubits,
            });
        }
        let x_mask = term.string.x_mask();
        for g in 0..dim {
            let h = g ^ x_mask;
            out[(h, g)] += term.string.col_phase(g) * term.coeff;
        }
    }
    Ok(out)
}

/// Decompose a Hermitian matrix into real-weighted Pauli strings.
///
/// The coefficient of string `P` is `Re[tr(P M)] / 2^m`; strings with
/// coefficients below [`COEFF_CUTOFF`] are dropped. Terms come out in
/// lexicographic order (I < X < Y < Z, qubit 0 most significant), which
/// for the generators built here coincides with their displayed product
/// order.
pub fn decompose(matrix: &DMatrix<Complex64>) -> Result<Vec<PauliTerm>> {
    let dim = matrix.nrows();
    if dim != matrix.ncols() || !dim.is_power_of_two() {
        return Err(CoreError::NotPowerOfTwo { dim });
    }
    let m = dim.trailing_zeros() as usize;
    if m > DECOMPOSE_MAX_QUBITS {
        return Err(CoreError::RegisterTooLarge {
            n_qubits: m,
            max: DECOMPOSE_MAX_QUBITS,
        });
    }
    let residue = hermitian_residue(matrix);
    if residue > 1e-10 {
        return Err(CoreError::NotHermitian { residue });
    }

    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let mut terms = Vec::new();
    for idx in 0..4usize.pow(m as u32) {
        let mut v = Vec::with_capacity(m);
        for q in 0..m {
            // Base-4 digit of qubit q, most significant digit first.
            let digit = (idx >> (2 * (m - 1 - q))) & 3;
            v.push(letters[digit]);
        }
        let string = PauliString::new(v);
        let x_mask = string.x_mask();
        let mut trace = Complex64::new(0.0, 0.0);
        for g in 0..dim {
            let h = g ^ x_mask;
            trace += string.col_phase(h) * matrix[(h, g)];
        }
        let coeff = trace.re / dim as f64;
        if coeff.abs() > COEFF_CUTOFF {
            terms.push(PauliTerm::new(coeff, string));
        }
    }
    Ok(terms)
}

/// Largest entry of (M - M†)/2.
pub fn hermitian_residue(matrix: &DMatrix<Complex64>) -> f64 {
    let mut residue: f64 = 0.0;
    for i in 0..matrix.nrows() {
        for j in 0..matrix.ncols() {
            residue = residue.max(((matrix[(i, j)] - matrix[(j, i)].conj()) * 0.5).norm());
        }
    }
    residue
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::assert_mat_close;

    #[test]
    fn identity_decomposes_to_single_term() {
        let m = DMatrix::<Complex64>::identity(2, 2);
        let terms = decompose(&m).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].string.to_string(), "I");
        assert!((terms[0].coeff - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reconstruction_is_exact() {
        let terms = vec![
            PauliTerm::parse(2.0, "YI").unwrap(),
            PauliTerm::parse(-0.5, "XZ").unwrap(),
            PauliTerm::parse(0.25, "ZY").unwrap(),
        ];
        let dense = terms_to_dense(2, &terms).unwrap();
        let back = decompose(&dense).unwrap();
        let dense2 = terms_to_dense(2, &back).unwrap();
        assert_mat_close(&dense, &dense2, 1e-12);
    }

    #[test]
    fn dense_matches_kronecker() {
        let s: PauliString = "YXZ".parse().unwrap();
        let via_kron = s.dense();
        let via_masks = terms_to_dense(3, &[PauliTerm::new(1.0, s)]).unwrap();
        assert_mat_close(&via_kron, &via_masks, 1e-15);
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        match decompose(&m) {
            Err(CoreError::NotHermitian { residue }) => assert!(residue > 0.4),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn y_column_phases() {
        // Y|0> = i|1>, Y|1> = -i|0>
        let s: PauliString = "Y".parse().unwrap();
        assert_eq!(s.col_phase(0), Complex64::new(0.0, 1.0));
        assert_eq!(s.col_phase(1), Complex64::new(0.0, -1.0));
        assert_eq!(s.x_mask(), 1);
    }
}
