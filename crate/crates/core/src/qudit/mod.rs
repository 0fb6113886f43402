//! Complex state vectors and unitary matrices.

mod matrix;
mod random;
mod state;
pub mod text;

pub use matrix::{check_unitary, Matrix, UnitaryMatrix, UNITARY_TOL};
pub use random::{haar_unitary, random_state};
pub use state::{overlap, Encoding, QuditState, NORM_TOL};

pub use num_complex::Complex64 as ComplexScalar;

use crate::error::Result;

/// Builds a normalized state from raw amplitudes.
pub fn make_state(
    amplitudes: Vec<ComplexScalar>,
    encoding: Encoding,
    bin_separation: f64,
) -> Result<QuditState> {
    QuditState::new(amplitudes, encoding, bin_separation)
}

pub fn inner_product(a: &QuditState, b: &QuditState) -> Result<ComplexScalar> {
    a.inner_product(b)
}

pub fn apply(m: &UnitaryMatrix, s: &QuditState) -> Result<QuditState> {
    m.apply(s)
}
