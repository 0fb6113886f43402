use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use super::state::QuditState;
use crate::error::{Error, Result};

/// Tolerance used when a `UnitaryMatrix` is constructed.
pub const UNITARY_TOL: f64 = 1e-10;

/// Dense square complex matrix, row-major, 0-based indexing.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| {
            if r == c {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from rows; every row must have as many entries as there are rows.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Self { dim, data })
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (k, z) in entries.iter().enumerate() {
            m[(k, k)] = *z;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Complex64> {
        self.data.iter()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn apply_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(
            v.len(),
            self.dim,
            "vector length must match matrix dimension"
        );
        (0..self.dim)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (a, b) = (self.dim, other.dim);
        Matrix::from_fn(a * b, |r, c| self[(r / b, c / b)] * other[(r % b, c % b)])
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// ‖M†M − I‖_F
    pub fn unitarity_residual(&self) -> f64 {
        (&self.adjoint() * self).frobenius_distance(&Matrix::identity(self.dim))
    }

    /// Largest off-diagonal modulus.
    pub fn off_diagonal_max(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r != c {
                    worst = worst.max(self[(r, c)].norm());
                }
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Returns true iff ‖M†M − I‖_F ≤ tol.
pub fn check_unitary(m: &Matrix, tol: f64) -> bool {
    m.unitarity_residual() <= tol
}

/// A square matrix that passed the unitarity gate at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix(Matrix);

impl UnitaryMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        Self::with_tolerance(m, UNITARY_TOL)
    }

    pub fn with_tolerance(m: Matrix, tol: f64) -> Result<Self> {
        if m.entries().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        let residual = m.unitarity_residual();
        if residual > tol {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self(m))
    }

    pub(crate) fn new_unchecked(m: Matrix) -> Self {
        Self(m)
    }

    pub fn identity(dim: usize) -> Self {
        Self(Matrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn compose(&self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        Self(&self.0 * &rhs.0)
    }

    /// Applies the matrix to a state. The result is renormalized so that the
    /// state invariant holds at 1e-12 even though construction only checks
    /// unitarity at `UNITARY_TOL`.
    pub fn apply(&self, state: &QuditState) -> Result<QuditState> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: state.dim(),
            });
        }
        let amps = self.0.apply_vec(state.amplitudes());
        QuditState::new(amps, state.encoding(), state.bin_separation())
    }
}

impl Index<(usize, usize)> for UnitaryMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}
