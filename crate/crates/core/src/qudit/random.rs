use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{Matrix, UnitaryMatrix};
use super::state::{Encoding, QuditState};

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed unitary: Gram-Schmidt on the columns of a complex
/// Ginibre matrix (equivalent to QR with a positive-real R diagonal).
pub fn haar_unitary(dim: usize, rng: &mut impl Rng) -> UnitaryMatrix {
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while columns.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        // two passes of modified Gram-Schmidt keep orthogonality near machine precision
        for _ in 0..2 {
            for q in &columns {
                let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        columns.push(v.into_iter().map(|z| z / norm).collect());
    }
    UnitaryMatrix::new_unchecked(Matrix::from_fn(dim, |r, c| columns[c][r]))
}

/// Uniformly random pure state (normalized complex Gaussian vector).
pub fn random_state(
    dim: usize,
    encoding: Encoding,
    bin_separation: f64,
    rng: &mut impl Rng,
) -> QuditState {
    loop {
        let amps: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        if let Ok(s) = QuditState::new(amps, encoding, bin_separation) {
            return s;
        }
    }
}
