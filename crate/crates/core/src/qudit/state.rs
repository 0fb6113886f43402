use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// States are normalized to within this bound.
pub const NORM_TOL: f64 = 1e-12;

/// Physical degree of freedom carrying the qudit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Encoding {
    TimeBin,
    Rail,
    Polarization,
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Encoding::TimeBin => "time-bin",
            Encoding::Rail => "rail",
            Encoding::Polarization => "polarization",
        })
    }
}

impl FromStr for Encoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "time-bin" | "timebin" => Ok(Encoding::TimeBin),
            "rail" => Ok(Encoding::Rail),
            "polarization" => Ok(Encoding::Polarization),
            other => Err(Error::InvalidArgument(format!(
                "unknown encoding '{other}'"
            ))),
        }
    }
}

/// Pure, normalized single-photon qudit state.
///
/// Amplitude `k` (0-based) belongs to time bin `k` for `TimeBin`, rail `k + 1`
/// for `Rail`, and to `|V>` (k = 0) / `|H>` (k = 1) for `Polarization`.
/// Global phase is kept as given; use [`QuditState::equals_up_to_phase`] to compare.
#[derive(Clone, Debug, PartialEq)]
pub struct QuditState {
    amplitudes: Vec<Complex64>,
    encoding: Encoding,
    bin_separation: f64,
}

impl QuditState {
    /// Normalizes `amplitudes` and records the encoding and bin separation (seconds).
    pub fn new(
        amplitudes: Vec<Complex64>,
        encoding: Encoding,
        bin_separation: f64,
    ) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: amplitudes.len(),
            });
        }
        if encoding == Encoding::Polarization && amplitudes.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: amplitudes.len(),
            });
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
            || !bin_separation.is_finite()
        {
            return Err(Error::NonFinite("state"));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
            encoding,
            bin_separation,
        })
    }

    /// Computational basis state `k` (0-based).
    pub fn basis(dim: usize, k: usize, encoding: Encoding, bin_separation: f64) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[k] = Complex64::new(1.0, 0.0);
        Self::new(amps, encoding, bin_separation)
    }

    /// `alpha |short> + beta |long>`
    pub fn time_bin_qubit(alpha: Complex64, beta: Complex64, bin_separation: f64) -> Result<Self> {
        Self::new(vec![alpha, beta], Encoding::TimeBin, bin_separation)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    pub fn bin_separation(&self) -> f64 {
        self.bin_separation
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Probability of finding the photon in bin/rail `k`.
    pub fn population(&self, k: usize) -> f64 {
        self.amplitudes[k].norm_sqr()
    }

    /// Same amplitudes under a different physical encoding.
    pub fn relabel(&self, encoding: Encoding) -> Result<Self> {
        Self::new(self.amplitudes.clone(), encoding, self.bin_separation)
    }

    /// `<self|other> = Σ conj(self_k) other_k`
    pub fn inner_product(&self, other: &QuditState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        if self.encoding != other.encoding {
            return Err(Error::EncodingMismatch(format!(
                "{} vs {}",
                self.encoding, other.encoding
            )));
        }
        Ok(overlap(&self.amplitudes, &other.amplitudes))
    }

    /// |<self|other>|²
    pub fn fidelity(&self, other: &QuditState) -> Result<f64> {
        Ok(self.inner_product(other)?.norm_sqr())
    }

    pub fn equals_up_to_phase(&self, other: &QuditState, tol: f64) -> bool {
        self.dim() == other.dim()
            && (overlap(&self.amplitudes, &other.amplitudes).norm() - 1.0).abs() <= tol
    }
}

/// Inner product of raw amplitude vectors, conjugating the left argument.
pub fn overlap(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}
