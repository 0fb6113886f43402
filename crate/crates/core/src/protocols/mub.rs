use std::f64::consts::PI;

use num_complex::Complex64;

use crate::circuit::DEFAULT_BIN_SEPARATION;
use crate::qudit::{Encoding, QuditState};

/// Four mutually unbiased qutrit bases.
#[derive(Clone, Debug, PartialEq)]
pub struct MubSet {
    bases: Vec<Vec<QuditState>>,
}

/// Rotates coefficients forward across `(a, b, c)`: `(x, y, z) → (z, x, y)`,
/// so the coefficient on `|a>` moves to `|b>`, then to `|c>`.
fn cyclic_shifts(v: [Complex64; 3]) -> [[Complex64; 3]; 3] {
    let [x, y, z] = v;
    [[x, y, z], [z, x, y], [y, z, x]]
}

impl MubSet {
    /// Basis 0: `{|a>, |b>, |c>}`. Basis 1: the Fourier states `|a'>, |b'>, |c'>`.
    /// Bases 2 and 3: cyclic shifts of `(e^{±2πi/3}, 1, 1)/√3`.
    pub fn qutrit(bin_separation: f64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let wb = w.conj();
        let make = |v: [Complex64; 3]| {
            QuditState::new(v.to_vec(), Encoding::TimeBin, bin_separation)
                .expect("non-zero amplitudes")
        };
        let computational = vec![
            make([one, zero, zero]),
            make([zero, one, zero]),
            make([zero, zero, one]),
        ];
        let fourier = vec![
            make([one, one, one]),
            make([one, w, wb]),
            make([one, wb, w]),
        ];
        let third = cyclic_shifts([w, one, one]).into_iter().map(make).collect();
        let fourth = cyclic_shifts([wb, one, one])
            .into_iter()
            .map(make)
            .collect();
        Self {
            bases: vec![computational, fourier, third, fourth],
        }
    }

    pub fn bases(&self) -> &[Vec<QuditState>] {
        &self.bases
    }

    pub fn state(&self, basis: usize, index: usize) -> &QuditState {
        &self.bases[basis][index]
    }

    /// Largest deviation of `<ψ_i|ψ_j>` from `δ_ij` within any basis.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for basis in &self.bases {
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let target = if i == j { 1.0 } else { 0.0 };
                    let ip = a.inner_product(b).expect("same dimension");
                    worst = worst.max((ip - Complex64::new(target, 0.0)).norm());
                }
            }
        }
        worst
    }

    /// All `|<ψ|φ>|²` for states in distinct bases (54 values for qutrits).
    pub fn cross_overlaps(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for (x, bx) in self.bases.iter().enumerate() {
            for by in &self.bases[x + 1..] {
                for a in bx {
                    for b in by {
                        out.push(a.fidelity(b).expect("same dimension"));
                    }
                }
            }
        }
        out
    }

    /// Largest deviation of a cross-basis overlap from `1/d`.
    pub fn unbiasedness_error(&self) -> f64 {
        let d = self.bases[0].len() as f64;
        self.cross_overlaps()
            .iter()
            .map(|p| (p - 1.0 / d).abs())
            .fold(0.0, f64::max)
    }
}

pub fn mub_qutrit() -> MubSet {
    MubSet::qutrit(DEFAULT_BIN_SEPARATION)
}
