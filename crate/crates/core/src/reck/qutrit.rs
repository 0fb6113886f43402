//! The worked qutrit example: the three-point DFT and its reference
//! three-coupler factorization.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use super::embed;
use crate::qudit::{Matrix, UnitaryMatrix};

const GOLDEN_TOL: f64 = 1e-12;

fn cis(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, x)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Rows hold conj of the second-basis states, so `U |α'> = |α>`.
pub fn qutrit_dft() -> UnitaryMatrix {
    let w = cis(2.0 * PI / 3.0);
    let s = 1.0 / 3f64.sqrt();
    let one = real(1.0);
    let m = Matrix::from_rows(vec![
        vec![one, one, one],
        vec![one, w.conj(), w],
        vec![one, w, w.conj()],
    ])
    .expect("3x3")
    .scale(real(s));
    UnitaryMatrix::new_unchecked(m)
}

/// Reference 2×2 factors `(B₃,₂, B₃,₁, B₂,₁)`.
pub fn qutrit_dft_factors() -> (Matrix, Matrix, Matrix) {
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let b32 = Matrix::from_rows(vec![
        vec![cis(PI / 3.0), real(1.0)],
        vec![cis(4.0 * PI / 3.0), real(1.0)],
    ])
    .expect("2x2")
    .scale(real(1.0 / r2));
    let b31 = Matrix::from_rows(vec![
        vec![cis(-PI / 3.0) * r2, real(1.0)],
        vec![cis(-PI / 3.0), real(-r2)],
    ])
    .expect("2x2")
    .scale(real(1.0 / r3));
    let b21 = Matrix::from_rows(vec![
        vec![Complex64::new(0.0, 1.0), real(1.0)],
        vec![Complex64::new(0.0, -1.0), real(1.0)],
    ])
    .expect("2x2")
    .scale(real(1.0 / r2));
    (b32, b31, b21)
}

/// Outcome of checking `U = P · B'₂,₁ · B'₃,₁ · B'₃,₂` with `P = U · (B'₂,₁B'₃,₁B'₃,₂)†`.
#[derive(Clone, Debug)]
pub struct QutritExampleReport {
    /// Unitarity residuals of `U`, `B₃,₂`, `B₃,₁`, `B₂,₁`.
    pub unitarity_residuals: [f64; 4],
    /// Diagonal of the recovered phase screen.
    pub correction: Vec<Complex64>,
    /// Largest off-diagonal modulus of the recovered `P`.
    pub correction_off_diagonal: f64,
    /// max_k ||P_kk| − 1|
    pub correction_modulus_error: f64,
    /// ‖U − diag(P) · product‖_F
    pub residual: f64,
    /// max |(|product_ij| − 1/√3)|
    pub product_modulus_error: f64,
}

impl QutritExampleReport {
    pub fn unitary_ok(&self) -> bool {
        self.unitarity_residuals.iter().all(|r| *r <= GOLDEN_TOL)
    }

    pub fn correction_ok(&self) -> bool {
        self.correction_off_diagonal <= GOLDEN_TOL && self.correction_modulus_error <= GOLDEN_TOL
    }

    pub fn passed(&self) -> bool {
        self.unitary_ok()
            && self.correction_ok()
            && self.residual <= GOLDEN_TOL
            && self.product_modulus_error <= GOLDEN_TOL
    }
}

impl fmt::Display for QutritExampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["U", "B32", "B31", "B21"];
        for (name, r) in names.iter().zip(self.unitarity_residuals) {
            writeln!(f, "unitarity_residual_{name} {r:.12e}")?;
        }
        for (k, p) in self.correction.iter().enumerate() {
            writeln!(
                f,
                "correction_{} {:.12e},{:.12e} (arg {:.12e})",
                k + 1,
                p.re,
                p.im,
                p.arg()
            )?;
        }
        writeln!(
            f,
            "correction_off_diagonal {:.12e}",
            self.correction_off_diagonal
        )?;
        writeln!(
            f,
            "correction_modulus_error {:.12e}",
            self.correction_modulus_error
        )?;
        writeln!(f, "factorization_residual {:.12e}", self.residual)?;
        writeln!(
            f,
            "product_modulus_error {:.12e}",
            self.product_modulus_error
        )?;
        write!(f, "result {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

pub fn verify_qutrit_example() -> QutritExampleReport {
    let u = qutrit_dft();
    let (b32, b31, b21) = qutrit_dft_factors();
    let unitarity_residuals = [
        u.matrix().unitarity_residual(),
        b32.unitarity_residual(),
        b31.unitarity_residual(),
        b21.unitarity_residual(),
    ];
    let lift = |b: &Matrix, m, n| {
        embed(&UnitaryMatrix::new_unchecked(b.clone()), m, n, 3)
            .expect("valid rails")
            .into_matrix()
    };
    let product = &(&lift(&b21, 2, 1) * &lift(&b31, 3, 1)) * &lift(&b32, 3, 2);
    let p = u.matrix() * &product.adjoint();
    let correction: Vec<Complex64> = (0..3).map(|k| p[(k, k)]).collect();
    let correction_modulus_error = correction
        .iter()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let rebuilt = &Matrix::diagonal(&correction) * &product;
    let target = 1.0 / 3f64.sqrt();
    let product_modulus_error = product
        .entries()
        .map(|z| (z.norm() - target).abs())
        .fold(0.0, f64::max);
    QutritExampleReport {
        unitarity_residuals,
        correction_off_diagonal: p.off_diagonal_max(),
        correction,
        correction_modulus_error,
        residual: u.matrix().frobenius_distance(&rebuilt),
        product_modulus_error,
    }
}
