//! Fiber components, their rail transfer matrices and loss bookkeeping.

mod budget;
mod netlist;
mod timing;

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qudit::{Matrix, UnitaryMatrix};
use crate::reck::{coupler_unitary, embed};

pub use budget::{loss_budget, LossBudget};
pub use netlist::{format_netlist, parse_netlist};
pub use timing::{
    timing_feasibility, TimingReport, TimingSpec, DEFAULT_GROUP_INDEX, DEFAULT_THERMAL_TOLERANCE_K,
    SPEED_OF_LIGHT,
};

/// Which rails a `Loss` component attenuates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LossTarget {
    All,
    Rail(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ComponentKind {
    /// 1×k switch routing bin `j` to rail `j`.
    SwitchDemux {
        ports: usize,
    },
    /// k×1 switch multiplexing rails back into one fiber.
    SwitchMux {
        ports: usize,
    },
    Delay {
        rail: usize,
        duration: f64,
    },
    /// Coupler whose first port is rail `n`, second port rail `m`.
    Coupler {
        m: usize,
        n: usize,
        theta: f64,
        phi: f64,
    },
    PhaseMod {
        rail: usize,
        phase: f64,
    },
    RailSwap {
        m: usize,
        n: usize,
    },
    Loss {
        target: LossTarget,
    },
    Detector {
        rail: usize,
        efficiency: f64,
    },
    /// Polarizing beam splitter/combiner (time-bin ↔ polarization converter).
    Pbsc,
    PolarizationController,
}

impl ComponentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ComponentKind::SwitchDemux { .. } => "switch demux",
            ComponentKind::SwitchMux { .. } => "switch mux",
            ComponentKind::Delay { .. } => "delay",
            ComponentKind::Coupler { .. } => "coupler",
            ComponentKind::PhaseMod { .. } => "phase modulator",
            ComponentKind::RailSwap { .. } => "rail swap",
            ComponentKind::Loss { .. } => "loss",
            ComponentKind::Detector { .. } => "detector",
            ComponentKind::Pbsc => "PBSC",
            ComponentKind::PolarizationController => "polarization controller",
        }
    }

    /// Rails touched by the component.
    fn rails(&self) -> Vec<usize> {
        match *self {
            ComponentKind::Delay { rail, .. }
            | ComponentKind::PhaseMod { rail, .. }
            | ComponentKind::Detector { rail, .. }
            | ComponentKind::Loss {
                target: LossTarget::Rail(rail),
            } => vec![rail],
            ComponentKind::Coupler { m, n, .. } | ComponentKind::RailSwap { m, n } => vec![m, n],
            _ => vec![],
        }
    }
}

/// Default insertion losses in dB.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComponentLosses {
    pub switch_db: f64,
    pub coupler_db: f64,
    pub phase_mod_db: f64,
    pub pbsc_db: f64,
    pub delay_db: f64,
    pub swap_db: f64,
    pub polarization_controller_db: f64,
}

impl ComponentLosses {
    /// Switch 1.5 dB, coupler 0.1 dB, everything else lossless.
    pub const STANDARD: ComponentLosses = ComponentLosses {
        switch_db: 1.5,
        coupler_db: 0.1,
        phase_mod_db: 0.0,
        pbsc_db: 0.0,
        delay_db: 0.0,
        swap_db: 0.0,
        polarization_controller_db: 0.0,
    };

    pub const LOSSLESS: ComponentLosses = ComponentLosses {
        switch_db: 0.0,
        coupler_db: 0.0,
        phase_mod_db: 0.0,
        pbsc_db: 0.0,
        delay_db: 0.0,
        swap_db: 0.0,
        polarization_controller_db: 0.0,
    };

    pub fn default_for(&self, kind: &ComponentKind) -> f64 {
        match kind {
            ComponentKind::SwitchDemux { .. } | ComponentKind::SwitchMux { .. } => self.switch_db,
            ComponentKind::Delay { .. } => self.delay_db,
            ComponentKind::Coupler { .. } => self.coupler_db,
            ComponentKind::PhaseMod { .. } => self.phase_mod_db,
            ComponentKind::RailSwap { .. } => self.swap_db,
            ComponentKind::Pbsc => self.pbsc_db,
            ComponentKind::PolarizationController => self.polarization_controller_db,
            ComponentKind::Loss { .. } | ComponentKind::Detector { .. } => 0.0,
        }
    }
}

impl Default for ComponentLosses {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// A component together with its insertion loss.
///
/// For `Loss` components the insertion loss *is* the attenuation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Component {
    pub kind: ComponentKind,
    pub insertion_loss_db: f64,
}

impl Component {
    pub fn new(kind: ComponentKind, insertion_loss_db: f64) -> Result<Self> {
        if !insertion_loss_db.is_finite() || insertion_loss_db < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "insertion loss {insertion_loss_db} dB must be finite and >= 0"
            )));
        }
        match kind {
            ComponentKind::Detector { efficiency, .. } if !(0.0..=1.0).contains(&efficiency) => {
                return Err(Error::InvalidArgument(format!(
                    "detector efficiency {efficiency} outside [0, 1]"
                )));
            }
            ComponentKind::Delay { duration, .. } if !duration.is_finite() || duration < 0.0 => {
                return Err(Error::InvalidArgument(format!(
                    "delay {duration} s must be >= 0"
                )));
            }
            ComponentKind::Coupler { m, n, theta, phi } => {
                if m == n {
                    return Err(Error::RailOutOfRange { m, n, dim: 0 });
                }
                if !theta.is_finite() || !phi.is_finite() {
                    return Err(Error::NonFinite("coupler"));
                }
            }
            ComponentKind::PhaseMod { phase, .. } if !phase.is_finite() => {
                return Err(Error::NonFinite("phase modulator"));
            }
            ComponentKind::RailSwap { m, n } if m == n => {
                return Err(Error::RailOutOfRange { m, n, dim: 0 });
            }
            ComponentKind::SwitchDemux { ports } | ComponentKind::SwitchMux { ports }
                if ports < 2 =>
            {
                return Err(Error::InvalidArgument(format!("switch with {ports} ports")));
            }
            _ => {}
        }
        if kind.rails().contains(&0) {
            return Err(Error::InvalidArgument("rails are numbered from 1".into()));
        }
        Ok(Self {
            kind,
            insertion_loss_db,
        })
    }

    /// Component with the default loss for its kind.
    pub fn with_defaults(kind: ComponentKind, losses: &ComponentLosses) -> Result<Self> {
        Self::new(kind, losses.default_for(&kind))
    }

    pub fn max_rail(&self) -> usize {
        self.kind.rails().into_iter().max().unwrap_or(0)
    }

    pub fn transmission(&self) -> f64 {
        db_to_transmission(self.insertion_loss_db)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&netlist::format_component(self))
    }
}

/// 10^(−dB/10)
pub fn db_to_transmission(db: f64) -> f64 {
    10f64.powf(-db / 10.0)
}

/// Unitary action of a component on `d` rails.
///
/// Switches, delays and PBSCs only convert between encodings and act as the
/// identity on rail amplitudes once bins are synchronized.
pub fn component_matrix(c: &Component, d: usize) -> Result<UnitaryMatrix> {
    let rails = c.kind.rails();
    if let Some(&bad) = rails.iter().find(|&&r| r > d) {
        let other = rails.iter().copied().find(|&r| r != bad).unwrap_or(bad);
        return Err(Error::RailOutOfRange {
            m: bad,
            n: other,
            dim: d,
        });
    }
    match c.kind {
        ComponentKind::SwitchDemux { .. }
        | ComponentKind::SwitchMux { .. }
        | ComponentKind::Delay { .. }
        | ComponentKind::Pbsc => Ok(UnitaryMatrix::identity(d)),
        ComponentKind::Coupler { m, n, theta, phi } => embed(&coupler_unitary(theta, phi), m, n, d),
        ComponentKind::PhaseMod { rail, phase } => {
            let mut diag = vec![Complex64::new(1.0, 0.0); d];
            diag[rail - 1] = Complex64::from_polar(1.0, phase);
            Ok(UnitaryMatrix::new_unchecked(Matrix::diagonal(&diag)))
        }
        ComponentKind::RailSwap { m, n } => {
            let mut perm = Matrix::identity(d);
            let (i, j) = (m - 1, n - 1);
            perm[(i, i)] = Complex64::new(0.0, 0.0);
            perm[(j, j)] = Complex64::new(0.0, 0.0);
            perm[(i, j)] = Complex64::new(1.0, 0.0);
            perm[(j, i)] = Complex64::new(1.0, 0.0);
            Ok(UnitaryMatrix::new_unchecked(perm))
        }
        ComponentKind::Loss { .. }
        | ComponentKind::Detector { .. }
        | ComponentKind::PolarizationController => Err(Error::NonUnitaryComponent(c.kind.name())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::check_unitary;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn comp(kind: ComponentKind) -> Component {
        Component::new(kind, 0.0).unwrap()
    }

    #[test]
    fn phase_modulator_pi_on_first_rail() {
        let m = component_matrix(&comp(ComponentKind::PhaseMod { rail: 1, phase: PI }), 2).unwrap();
        let expected = Matrix::diagonal(&[c(-1.0, 0.0), c(1.0, 0.0)]);
        assert!(m.matrix().frobenius_distance(&expected) < 1e-15);
    }

    #[test]
    fn balanced_coupler_component() {
        let kind = ComponentKind::Coupler {
            m: 2,
            n: 1,
            theta: FRAC_PI_4,
            phi: 0.0,
        };
        let m = component_matrix(&comp(kind), 2).unwrap();
        let h = FRAC_1_SQRT_2;
        let expected = Matrix::from_rows(vec![
            vec![c(h, 0.0), c(h, 0.0)],
            vec![c(h, 0.0), c(-h, 0.0)],
        ])
        .unwrap();
        assert!(m.matrix().frobenius_distance(&expected) < 1e-15);
    }

    #[test]
    fn swap_outer_rails() {
        let m = component_matrix(&comp(ComponentKind::RailSwap { m: 3, n: 1 }), 3).unwrap();
        let z = c(0.0, 0.0);
        let o = c(1.0, 0.0);
        let expected =
            Matrix::from_rows(vec![vec![z, z, o], vec![z, o, z], vec![o, z, z]]).unwrap();
        assert_eq!(m.matrix(), &expected);
    }

    #[test]
    fn passive_routing_is_identity() {
        for kind in [
            ComponentKind::SwitchDemux { ports: 3 },
            ComponentKind::SwitchMux { ports: 3 },
            ComponentKind::Delay {
                rail: 2,
                duration: 1e-10,
            },
            ComponentKind::Pbsc,
        ] {
            assert_eq!(
                component_matrix(&comp(kind), 3).unwrap().matrix(),
                &Matrix::identity(3)
            );
        }
    }

    #[test]
    fn loss_and_detector_have_no_unitary() {
        let loss = comp(ComponentKind::Loss {
            target: LossTarget::All,
        });
        let det = comp(ComponentKind::Detector {
            rail: 1,
            efficiency: 0.88,
        });
        assert!(matches!(
            component_matrix(&loss, 2),
            Err(Error::NonUnitaryComponent(_))
        ));
        assert!(matches!(
            component_matrix(&det, 2),
            Err(Error::NonUnitaryComponent(_))
        ));
    }

    #[test]
    fn rail_beyond_dimension() {
        let m = comp(ComponentKind::PhaseMod {
            rail: 4,
            phase: 0.1,
        });
        assert!(matches!(
            component_matrix(&m, 3),
            Err(Error::RailOutOfRange { .. })
        ));
    }

    #[test]
    fn negative_loss_and_bad_efficiency_rejected() {
        assert!(Component::new(ComponentKind::Pbsc, -0.1).is_err());
        assert!(Component::new(
            ComponentKind::Detector {
                rail: 1,
                efficiency: 1.2
            },
            0.0
        )
        .is_err());
    }

    #[test]
    fn unitary_components_pass_check() {
        for kind in [
            ComponentKind::Coupler {
                m: 1,
                n: 3,
                theta: 0.4,
                phi: -2.0,
            },
            ComponentKind::PhaseMod {
                rail: 2,
                phase: 1.3,
            },
            ComponentKind::RailSwap { m: 2, n: 3 },
        ] {
            assert!(check_unitary(
                component_matrix(&comp(kind), 3).unwrap().matrix(),
                1e-12
            ));
        }
    }
}
