//! Time-bin gate through polarization: the short bin becomes `|V>`, the
//! long bin `|H>`, a polarization controller applies the operation, and the
//! inverse conversion restores the time-bin qubit.

use super::{SimulationResult, DEFAULT_BIN_SEPARATION};
use crate::components::{loss_budget, Component, ComponentKind, ComponentLosses};
use crate::error::{Error, Result};
use crate::qudit::{Encoding, QuditState, UnitaryMatrix};

/// Component inventory: two switches, two PBSCs, one controller, and the
/// bin-synchronizing delays.
pub fn polarization_gate_netlist(
    losses: &ComponentLosses,
    bin_separation: f64,
) -> Result<Vec<Component>> {
    let kinds = [
        ComponentKind::SwitchDemux { ports: 2 },
        ComponentKind::Delay {
            rail: 1,
            duration: bin_separation,
        },
        ComponentKind::Pbsc,
        ComponentKind::PolarizationController,
        ComponentKind::Pbsc,
        ComponentKind::Delay {
            rail: 2,
            duration: bin_separation,
        },
        ComponentKind::SwitchMux { ports: 2 },
    ];
    kinds
        .into_iter()
        .map(|k| Component::with_defaults(k, losses))
        .collect()
}

pub fn polarization_gate(v: &UnitaryMatrix, input: &QuditState) -> Result<SimulationResult> {
    polarization_gate_with(v, input, &ComponentLosses::STANDARD)
}

pub fn polarization_gate_with(
    v: &UnitaryMatrix,
    input: &QuditState,
    losses: &ComponentLosses,
) -> Result<SimulationResult> {
    if v.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: v.dim(),
        });
    }
    if input.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: input.dim(),
        });
    }
    if input.encoding() != Encoding::TimeBin {
        return Err(Error::EncodingMismatch(format!(
            "gate input must be time-bin, got {}",
            input.encoding()
        )));
    }
    let dt = if input.bin_separation() > 0.0 {
        input.bin_separation()
    } else {
        DEFAULT_BIN_SEPARATION
    };
    let polarized = input.relabel(Encoding::Polarization)?;
    let rotated = v.apply(&polarized)?;
    let output_state = rotated.relabel(Encoding::TimeBin)?;
    let transmission = loss_budget(&polarization_gate_netlist(losses, dt)?).transmission;
    Ok(SimulationResult {
        output_state,
        transmission,
        click_probabilities: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::Matrix;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    const DT: f64 = DEFAULT_BIN_SEPARATION;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_passes_through_with_three_db() {
        let psi = QuditState::time_bin_qubit(c(0.6), Complex64::new(0.0, 0.8), DT).unwrap();
        let out = polarization_gate(&UnitaryMatrix::identity(2), &psi).unwrap();
        assert_eq!(out.output_state, psi);
        assert!((out.transmission - 10f64.powf(-0.3)).abs() < 1e-12);
    }

    #[test]
    fn bit_flip_swaps_bins() {
        let x = UnitaryMatrix::new(
            Matrix::from_rows(vec![vec![c(0.0), c(1.0)], vec![c(1.0), c(0.0)]]).unwrap(),
        )
        .unwrap();
        let psi = QuditState::time_bin_qubit(c(0.6), Complex64::new(0.0, 0.8), DT).unwrap();
        let out = polarization_gate(&x, &psi).unwrap();
        assert_eq!(
            out.output_state.amplitudes(),
            &[Complex64::new(0.0, 0.8), c(0.6)]
        );
    }

    #[test]
    fn hadamard_on_short() {
        let h = FRAC_1_SQRT_2;
        let had = UnitaryMatrix::new(
            Matrix::from_rows(vec![vec![c(h), c(h)], vec![c(h), c(-h)]]).unwrap(),
        )
        .unwrap();
        let short = QuditState::basis(2, 0, Encoding::TimeBin, DT).unwrap();
        let out = polarization_gate(&had, &short).unwrap();
        let plus = QuditState::time_bin_qubit(c(1.0), c(1.0), DT).unwrap();
        assert!(out.output_state.equals_up_to_phase(&plus, 1e-12));
    }

    #[test]
    fn rejects_qutrit_input() {
        let s = QuditState::basis(3, 0, Encoding::TimeBin, DT).unwrap();
        assert!(polarization_gate(&UnitaryMatrix::identity(2), &s).is_err());
    }
}
