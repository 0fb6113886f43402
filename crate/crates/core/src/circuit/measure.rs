use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_measurement, simulate, GateCircuit, SimulationResult};
use crate::components::{loss_budget, ComponentLosses};
use crate::error::{Error, Result};
use crate::qudit::{Matrix, QuditState, UnitaryMatrix};
use crate::reck::decompose;

/// Generator for trial `index` of a run seeded with `seed`: ChaCha8 keyed
/// by `seed`, stream number `index`. Trials are independent and can be
/// evaluated in any order.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Click(usize),
    NoClick,
}

/// A measurement circuit compiled for one basis.
#[derive(Clone, Debug)]
pub struct MeasurementDevice {
    circuit: GateCircuit,
    /// Input bins → detectors.
    transfer: UnitaryMatrix,
    /// Uniform transmission times detector efficiency, per detector.
    detection: Vec<f64>,
}

impl MeasurementDevice {
    /// Compiles the circuit that routes basis state `k` to detector `k`.
    pub fn new(
        basis: &[QuditState],
        efficiency: f64,
        losses: &ComponentLosses,
        bin_separation: f64,
    ) -> Result<Self> {
        let change = basis_change(basis)?;
        let dec = decompose(&change)?;
        let circuit = build_measurement(&dec, efficiency, losses, bin_separation)?;
        let transfer = circuit.transfer_matrix()?;
        let uniform = loss_budget(circuit.netlist()).transmission;
        let detection = circuit
            .detectors()
            .iter()
            .map(|&(_, eff)| uniform * eff)
            .collect();
        Ok(Self {
            circuit,
            transfer,
            detection,
        })
    }

    pub fn circuit(&self) -> &GateCircuit {
        &self.circuit
    }

    pub fn dim(&self) -> usize {
        self.circuit.dim()
    }

    /// Input bins → detectors, in detector order.
    pub fn transfer(&self) -> &UnitaryMatrix {
        &self.transfer
    }

    /// Probability that detector `k` fires given the photon reaches it.
    pub fn detection(&self) -> &[f64] {
        &self.detection
    }

    /// Click probability per outcome.
    pub fn probabilities(&self, input: &QuditState) -> Result<Vec<f64>> {
        if input.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: input.dim(),
            });
        }
        Ok(self.probabilities_of(input.amplitudes()))
    }

    pub(crate) fn probabilities_of(&self, amplitudes: &[Complex64]) -> Vec<f64> {
        self.transfer
            .matrix()
            .apply_vec(amplitudes)
            .iter()
            .zip(&self.detection)
            .map(|(a, p)| a.norm_sqr() * p)
            .collect()
    }

    /// Full component-by-component propagation.
    pub fn simulate(&self, input: &QuditState) -> Result<SimulationResult> {
        simulate(&self.circuit, input)
    }

    pub fn sample(&self, input: &QuditState, rng: &mut impl Rng) -> Result<Outcome> {
        Ok(sample_outcome(&self.probabilities(input)?, rng))
    }
}

/// Draws one outcome: `Click(k)` with probability `probs[k]`, otherwise `NoClick`.
pub fn sample_outcome(probs: &[f64], rng: &mut impl Rng) -> Outcome {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (k, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return Outcome::Click(k);
        }
    }
    Outcome::NoClick
}

/// Rows are the conjugated basis states, so basis state `k` maps to `e_k`.
fn basis_change(basis: &[QuditState]) -> Result<UnitaryMatrix> {
    let d = basis.len();
    if d < 2 || basis.iter().any(|s| s.dim() != d) {
        return Err(Error::BasisNotOrthonormal {
            residual: f64::INFINITY,
        });
    }
    let m = Matrix::from_fn(d, |r, c| basis[r].amplitudes()[c].conj());
    let residual = m.unitarity_residual();
    if residual > 1e-10 {
        return Err(Error::BasisNotOrthonormal { residual });
    }
    Ok(UnitaryMatrix::new_unchecked(m))
}

/// Measures `input` in `basis` with detectors of the given efficiency.
pub fn measure_in_basis(
    basis: &[QuditState],
    input: &QuditState,
    efficiency: f64,
    losses: &ComponentLosses,
    seed: u64,
) -> Result<Outcome> {
    let device = MeasurementDevice::new(basis, efficiency, losses, input.bin_separation())?;
    device.sample(input, &mut trial_rng(seed, 0))
}
