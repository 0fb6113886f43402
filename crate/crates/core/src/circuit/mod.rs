//! Gate netlists built from decompositions, and single-photon propagation
//! through them.
//!
//! Rail convention: the demultiplexing switch routes time bin `k` (1-based,
//! earliest first) to rail `k`, and rail `k` is delayed by `(d − k)·Δt` so all
//! components meet the couplers together. Non-adjacent rail pairs are brought
//! next to each other with `RailSwap`s; re-multiplexing delays are chosen per
//! physical rail so every amplitude returns to its own bin at the output.

mod measure;
mod polarization;

use num_complex::Complex64;

use crate::components::{
    component_matrix, loss_budget, Component, ComponentKind, ComponentLosses, LossTarget,
};
use crate::error::{Error, Result};
use crate::qudit::{Encoding, Matrix, QuditState, UnitaryMatrix};
use crate::reck::Decomposition;

pub use measure::{measure_in_basis, sample_outcome, trial_rng, MeasurementDevice, Outcome};
pub use polarization::{polarization_gate, polarization_gate_netlist, polarization_gate_with};

/// Bin separation used when none is given: one 10 GHz switching period.
pub const DEFAULT_BIN_SEPARATION: f64 = 100e-12;

/// Relative tolerance on arrival-time equality.
const TIMING_RTOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Template {
    DualRail,
    PolarizationGate,
    MeasurementGate,
    QuditGate,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateOptions {
    pub bin_separation: f64,
    pub losses: ComponentLosses,
    pub apply_phase_correction: bool,
}

impl Default for GateOptions {
    fn default() -> Self {
        Self {
            bin_separation: DEFAULT_BIN_SEPARATION,
            losses: ComponentLosses::STANDARD,
            apply_phase_correction: true,
        }
    }
}

/// A validated gate netlist.
#[derive(Clone, Debug, PartialEq)]
pub struct GateCircuit {
    dim: usize,
    netlist: Vec<Component>,
    template: Template,
    bin_separation: f64,
    /// Output slot of each physical rail: the time bin after the mux, or the
    /// detector index for measurement circuits. `None` for undetected rails.
    output_slot: Vec<Option<usize>>,
}

impl GateCircuit {
    /// Validates structure and timing of `netlist` for `dim` rails.
    pub fn new(
        dim: usize,
        netlist: Vec<Component>,
        template: Template,
        bin_separation: f64,
    ) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument(format!("dimension {dim} < 2")));
        }
        if !bin_separation.is_finite() || bin_separation <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "bin separation must be positive, got {bin_separation}"
            )));
        }
        match netlist.first().map(|c| c.kind) {
            Some(ComponentKind::SwitchDemux { ports }) if ports == dim => {}
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "circuit must begin with a 1x{dim} demultiplexing switch"
                )))
            }
        }
        if template != Template::MeasurementGate {
            match netlist.last().map(|c| c.kind) {
                Some(ComponentKind::SwitchMux { ports }) if ports == dim => {}
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "circuit must end with a {dim}x1 multiplexing switch"
                    )))
                }
            }
        }
        for (i, c) in netlist.iter().enumerate() {
            if c.max_rail() > dim {
                return Err(Error::InvalidArgument(format!(
                    "component {i} ({}) references rail {} > {dim}",
                    c.kind.name(),
                    c.max_rail()
                )));
            }
            let interior =
                i > 0 && (template == Template::MeasurementGate || i + 1 < netlist.len());
            if interior
                && matches!(
                    c.kind,
                    ComponentKind::SwitchDemux { .. } | ComponentKind::SwitchMux { .. }
                )
            {
                return Err(Error::InvalidArgument(format!(
                    "unexpected switch at component {i}"
                )));
            }
        }
        let output_slot = check_timing(dim, &netlist, template, bin_separation)?;
        Ok(Self {
            dim,
            netlist,
            template,
            bin_separation,
            output_slot,
        })
    }

    /// Infers dimension from the demux and the template from the presence of
    /// detectors.
    pub fn from_netlist(netlist: Vec<Component>, bin_separation: f64) -> Result<Self> {
        let dim = match netlist.first().map(|c| c.kind) {
            Some(ComponentKind::SwitchDemux { ports }) => ports,
            _ => {
                return Err(Error::InvalidArgument(
                    "netlist must begin with SWITCH_DEMUX".into(),
                ))
            }
        };
        let template = if netlist
            .iter()
            .any(|c| matches!(c.kind, ComponentKind::Detector { .. }))
        {
            Template::MeasurementGate
        } else if dim == 2 {
            Template::DualRail
        } else {
            Template::QuditGate
        };
        Self::new(dim, netlist, template, bin_separation)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn netlist(&self) -> &[Component] {
        &self.netlist
    }

    pub fn template(&self) -> Template {
        self.template
    }

    pub fn bin_separation(&self) -> f64 {
        self.bin_separation
    }

    pub fn count(&self, pred: impl Fn(&ComponentKind) -> bool) -> usize {
        self.netlist.iter().filter(|c| pred(&c.kind)).count()
    }

    pub fn coupler_count(&self) -> usize {
        self.count(|k| matches!(k, ComponentKind::Coupler { .. }))
    }

    pub fn swap_count(&self) -> usize {
        self.count(|k| matches!(k, ComponentKind::RailSwap { .. }))
    }

    /// Detector efficiencies in detector order.
    pub fn detectors(&self) -> Vec<(usize, f64)> {
        self.netlist
            .iter()
            .filter_map(|c| match c.kind {
                ComponentKind::Detector { rail, efficiency } => Some((rail, efficiency)),
                _ => None,
            })
            .collect()
    }

    fn has_rail_loss(&self) -> bool {
        self.netlist.iter().any(|c| {
            matches!(
                c.kind,
                ComponentKind::Loss {
                    target: LossTarget::Rail(_)
                }
            )
        })
    }

    /// Unitary from input bins to output slots (bins, or detectors in
    /// detector order). Only defined when every rail reaches an output and
    /// no rail-specific loss is present.
    pub fn transfer_matrix(&self) -> Result<UnitaryMatrix> {
        if self.has_rail_loss() {
            return Err(Error::NonUnitaryComponent("rail-specific loss"));
        }
        let mut acc = Matrix::identity(self.dim);
        for c in &self.netlist {
            if let Some(m) = rail_action(c, self.dim)? {
                acc = m.matrix() * &acc;
            }
        }
        let mut out = Matrix::zeros(self.dim);
        for (rail, slot) in self.output_slot.iter().enumerate() {
            let slot = slot.ok_or(Error::NonUnitaryComponent("undetected rail"))?;
            for col in 0..self.dim {
                out[(slot, col)] = acc[(rail, col)];
            }
        }
        Ok(UnitaryMatrix::new_unchecked(out))
    }
}

/// Unitary rail action, or `None` for components that leave amplitudes alone.
fn rail_action(c: &Component, dim: usize) -> Result<Option<UnitaryMatrix>> {
    match c.kind {
        ComponentKind::Coupler { .. }
        | ComponentKind::PhaseMod { .. }
        | ComponentKind::RailSwap { .. } => component_matrix(c, dim).map(Some),
        ComponentKind::PolarizationController => Err(Error::NonUnitaryComponent(c.kind.name())),
        _ => Ok(None),
    }
}

/// Tracks arrival offsets per physical rail: bin `k` enters rail `k` at
/// `(k − 1)·Δt`; delays add; swaps exchange. Every mixing component needs
/// equal offsets on its rails. Returns the output slot of each rail.
fn check_timing(
    dim: usize,
    netlist: &[Component],
    template: Template,
    dt: f64,
) -> Result<Vec<Option<usize>>> {
    let mut offset: Vec<f64> = (0..dim).map(|k| k as f64 * dt).collect();
    let same = |a: f64, b: f64| (a - b).abs() <= TIMING_RTOL * dt;
    let mut detector_of_rail: Vec<Option<usize>> = vec![None; dim];
    let mut detectors = 0;
    for (i, c) in netlist.iter().enumerate() {
        match c.kind {
            ComponentKind::Delay { rail, duration } => offset[rail - 1] += duration,
            ComponentKind::RailSwap { m, n } => offset.swap(m - 1, n - 1),
            ComponentKind::Coupler { m, n, .. } => {
                if !same(offset[m - 1], offset[n - 1]) {
                    return Err(Error::Timing(format!(
                        "component {i}: coupler rails {m} and {n} arrive {:.3e} s apart",
                        (offset[m - 1] - offset[n - 1]).abs()
                    )));
                }
            }
            ComponentKind::Detector { rail, .. } => {
                if detector_of_rail[rail - 1].is_some() {
                    return Err(Error::InvalidArgument(format!(
                        "two detectors on rail {rail}"
                    )));
                }
                detector_of_rail[rail - 1] = Some(detectors);
                detectors += 1;
            }
            _ => {}
        }
    }
    if template == Template::MeasurementGate {
        return Ok(detector_of_rail);
    }
    let start = offset.iter().copied().fold(f64::INFINITY, f64::min);
    let mut slots = vec![None; dim];
    let mut taken = vec![false; dim];
    for (rail, t) in offset.iter().enumerate() {
        let bins = (t - start) / dt;
        let bin = bins.round();
        if (bins - bin).abs() > TIMING_RTOL
            || bin < 0.0
            || bin as usize >= dim
            || taken[bin as usize]
        {
            return Err(Error::Timing(format!(
                "rail {} reaches the multiplexer off the {dim}-bin grid",
                rail + 1
            )));
        }
        taken[bin as usize] = true;
        slots[rail] = Some(bin as usize);
    }
    Ok(slots)
}

/// Components from the demux through the coupler mesh, and the final
/// logical-to-physical rail layout (`layout[k]` = physical rail of logical rail k+1).
fn mesh_section(
    dec: &Decomposition,
    losses: &ComponentLosses,
    dt: f64,
) -> Result<(Vec<Component>, Vec<usize>)> {
    let d = dec.dim();
    let mut net = vec![Component::with_defaults(
        ComponentKind::SwitchDemux { ports: d },
        losses,
    )?];
    for k in 1..d {
        net.push(Component::with_defaults(
            ComponentKind::Delay {
                rail: k,
                duration: (d - k) as f64 * dt,
            },
            losses,
        )?);
    }
    let mut layout: Vec<usize> = (1..=d).collect();
    for step in dec.steps() {
        let target = layout[step.m - 1];
        while layout[step.n - 1].abs_diff(target) > 1 {
            let from = layout[step.n - 1];
            let to = if target > from { from + 1 } else { from - 1 };
            net.push(Component::with_defaults(
                ComponentKind::RailSwap {
                    m: from.max(to),
                    n: from.min(to),
                },
                losses,
            )?);
            for p in layout.iter_mut() {
                if *p == from {
                    *p = to;
                } else if *p == to {
                    *p = from;
                }
            }
        }
        let (pm, pn) = (layout[step.m - 1], layout[step.n - 1]);
        net.push(Component::with_defaults(
            ComponentKind::PhaseMod {
                rail: pn,
                phase: step.phi,
            },
            losses,
        )?);
        net.push(Component::with_defaults(
            ComponentKind::Coupler {
                m: pm,
                n: pn,
                theta: step.theta,
                phi: 0.0,
            },
            losses,
        )?);
    }
    Ok((net, layout))
}

/// Gate for `dec` with the default bin separation and component losses.
pub fn build_gate(dec: &Decomposition, apply_phase_correction: bool) -> Result<GateCircuit> {
    build_gate_with(
        dec,
        &GateOptions {
            apply_phase_correction,
            ..GateOptions::default()
        },
    )
}

pub fn build_gate_with(dec: &Decomposition, opts: &GateOptions) -> Result<GateCircuit> {
    let d = dec.dim();
    let dt = opts.bin_separation;
    let (mut net, layout) = mesh_section(dec, &opts.losses, dt)?;
    if opts.apply_phase_correction {
        for (k, phase) in dec.correction().phases().iter().enumerate() {
            net.push(Component::with_defaults(
                ComponentKind::PhaseMod {
                    rail: layout[k],
                    phase: *phase,
                },
                &opts.losses,
            )?);
        }
    }
    for (k, &rail) in layout.iter().enumerate() {
        if k > 0 {
            net.push(Component::with_defaults(
                ComponentKind::Delay {
                    rail,
                    duration: k as f64 * dt,
                },
                &opts.losses,
            )?);
        }
    }
    net.push(Component::with_defaults(
        ComponentKind::SwitchMux { ports: d },
        &opts.losses,
    )?);
    let template = if d == 2 {
        Template::DualRail
    } else {
        Template::QuditGate
    };
    GateCircuit::new(d, net, template, dt)
}

/// Measurement circuit: the mesh for `dec` followed by one detector per
/// logical rail, in logical order. The phase screen is omitted since it
/// cannot change detection probabilities.
pub fn build_measurement(
    dec: &Decomposition,
    efficiency: f64,
    losses: &ComponentLosses,
    bin_separation: f64,
) -> Result<GateCircuit> {
    let (mut net, layout) = mesh_section(dec, losses, bin_separation)?;
    for &rail in &layout {
        net.push(Component::with_defaults(
            ComponentKind::Detector { rail, efficiency },
            losses,
        )?);
    }
    GateCircuit::new(dec.dim(), net, Template::MeasurementGate, bin_separation)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationResult {
    /// Normalized output (time-bin order, or detector order for measurement circuits).
    pub output_state: QuditState,
    /// Survival probability of the photon.
    pub transmission: f64,
    /// Per-detector click probability, empty without detectors.
    pub click_probabilities: Vec<f64>,
}

/// Propagates `input` through the circuit component by component.
pub fn simulate(circuit: &GateCircuit, input: &QuditState) -> Result<SimulationResult> {
    let d = circuit.dim();
    if input.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: input.dim(),
        });
    }
    if input.encoding() != Encoding::TimeBin {
        return Err(Error::EncodingMismatch(format!(
            "gate input must be time-bin, got {}",
            input.encoding()
        )));
    }
    if (input.bin_separation() - circuit.bin_separation()).abs()
        > TIMING_RTOL * circuit.bin_separation()
    {
        return Err(Error::Timing(format!(
            "input bin separation {:.3e} s does not match circuit {:.3e} s",
            input.bin_separation(),
            circuit.bin_separation()
        )));
    }
    let mut amps: Vec<Complex64> = input.amplitudes().to_vec();
    for c in circuit.netlist() {
        if let ComponentKind::Loss {
            target: LossTarget::Rail(r),
        } = c.kind
        {
            amps[r - 1] *= c.transmission().sqrt();
        } else if let Some(m) = rail_action(c, d)? {
            amps = m.matrix().apply_vec(&amps);
        }
    }
    let surviving: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    let transmission = loss_budget(circuit.netlist()).transmission * surviving;

    let detectors = circuit.detectors();
    let mut ordered = vec![Complex64::new(0.0, 0.0); d];
    let encoding = if circuit.template() == Template::MeasurementGate {
        // detector order first, undetected rails after
        let mut slot = 0;
        for &(rail, _) in &detectors {
            ordered[slot] = amps[rail - 1];
            slot += 1;
        }
        for (rail, a) in amps.iter().enumerate() {
            if circuit.output_slot[rail].is_none() {
                ordered[slot] = *a;
                slot += 1;
            }
        }
        Encoding::Rail
    } else {
        for (rail, slot) in circuit.output_slot.iter().enumerate() {
            ordered[slot.expect("every rail reaches the multiplexer")] = amps[rail];
        }
        Encoding::TimeBin
    };
    let output_state = QuditState::new(ordered, encoding, input.bin_separation())?;
    let uniform = loss_budget(circuit.netlist()).transmission;
    let click_probabilities = detectors
        .iter()
        .map(|&(rail, eff)| uniform * eff * amps[rail - 1].norm_sqr())
        .collect();
    Ok(SimulationResult {
        output_state,
        transmission,
        click_probabilities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::{haar_unitary, random_state};
    use crate::reck::{decompose, qutrit_dft, CouplerStep, PhaseCorrection};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    const DT: f64 = DEFAULT_BIN_SEPARATION;

    fn tb(amps: &[(f64, f64)]) -> QuditState {
        QuditState::new(
            amps.iter().map(|&(r, i)| Complex64::new(r, i)).collect(),
            Encoding::TimeBin,
            DT,
        )
        .unwrap()
    }

    #[test]
    fn qutrit_gate_topology() {
        let circuit = build_gate(&decompose(&qutrit_dft()).unwrap(), false).unwrap();
        assert_eq!(circuit.coupler_count(), 3);
        assert_eq!(circuit.swap_count(), 1);
        assert_eq!(circuit.template(), Template::QuditGate);
        assert_eq!(
            circuit.netlist()[0].kind,
            ComponentKind::SwitchDemux { ports: 3 }
        );
        // Δt and 2Δt synchronizing delays
        assert_eq!(
            circuit.netlist()[1].kind,
            ComponentKind::Delay {
                rail: 1,
                duration: 2.0 * DT
            }
        );
        assert_eq!(
            circuit.netlist()[2].kind,
            ComponentKind::Delay {
                rail: 2,
                duration: DT
            }
        );
    }

    #[test]
    fn qubit_gate_topology() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let circuit = build_gate(&decompose(&haar_unitary(2, &mut rng)).unwrap(), true).unwrap();
        assert_eq!(circuit.template(), Template::DualRail);
        assert_eq!(circuit.coupler_count(), 1);
        assert_eq!(circuit.swap_count(), 0);
        let delays = circuit.count(|k| matches!(k, ComponentKind::Delay { .. }));
        assert_eq!(delays, 2);
        assert_eq!(
            circuit.netlist()[1].kind,
            ComponentKind::Delay {
                rail: 1,
                duration: DT
            }
        );
        assert!(circuit.count(|k| matches!(k, ComponentKind::PhaseMod { .. })) >= 2);
    }

    #[test]
    fn qutrit_gate_maps_a_prime_to_a() {
        let circuit = build_gate(&decompose(&qutrit_dft()).unwrap(), false).unwrap();
        let r = 1.0 / 3f64.sqrt();
        let a_prime = tb(&[(r, 0.0), (r, 0.0), (r, 0.0)]);
        let out = simulate(&circuit, &a_prime).unwrap();
        let a = tb(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        assert!(out.output_state.equals_up_to_phase(&a, 1e-12));
    }

    #[test]
    fn identity_gate_keeps_state_and_reports_budget() {
        let dec = decompose(&UnitaryMatrix::identity(3)).unwrap();
        let circuit = build_gate(&dec, true).unwrap();
        let psi = tb(&[(0.3, 0.1), (-0.5, 0.2), (0.1, 0.7)]);
        let out = simulate(&circuit, &psi).unwrap();
        assert!(
            (out.output_state.inner_product(&psi).unwrap() - Complex64::new(1.0, 0.0)).norm()
                < 1e-12
        );
        // two switches plus three couplers
        let expected = 10f64.powf(-(1.5 * 2.0 + 0.1 * 3.0) / 10.0);
        assert!((out.transmission - expected).abs() < 1e-12);
    }

    #[test]
    fn balanced_coupler_splits_short_bin() {
        let step = CouplerStep::new(2, 1, FRAC_PI_4, 0.0).unwrap();
        let dec = Decomposition::new(2, vec![step], PhaseCorrection::zeros(2)).unwrap();
        let out = simulate(
            &build_gate(&dec, false).unwrap(),
            &tb(&[(1.0, 0.0), (0.0, 0.0)]),
        )
        .unwrap();
        for z in out.output_state.amplitudes() {
            assert!((z.norm() - FRAC_1_SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn gate_matches_matrix_for_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 2..=6 {
            let u = haar_unitary(d, &mut rng);
            let circuit = build_gate(&decompose(&u).unwrap(), true).unwrap();
            let psi = random_state(d, Encoding::TimeBin, DT, &mut rng);
            let out = simulate(&circuit, &psi).unwrap();
            let direct = u.apply(&psi).unwrap();
            let overlap = out.output_state.inner_product(&direct).unwrap();
            // with the phase screen the gate is exact, not just up to phase
            assert!(
                (overlap - Complex64::new(1.0, 0.0)).norm() < 1e-10,
                "d = {d}"
            );
            assert!(
                circuit
                    .transfer_matrix()
                    .unwrap()
                    .matrix()
                    .frobenius_distance(u.matrix())
                    < 1e-10
            );
        }
    }

    #[test]
    fn rejects_wrong_dimension_and_encoding() {
        let circuit = build_gate(&decompose(&UnitaryMatrix::identity(2)).unwrap(), false).unwrap();
        let three = tb(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        assert!(matches!(
            simulate(&circuit, &three),
            Err(Error::DimensionMismatch { .. })
        ));
        let rail = QuditState::basis(2, 0, Encoding::Rail, DT).unwrap();
        assert!(matches!(
            simulate(&circuit, &rail),
            Err(Error::EncodingMismatch(_))
        ));
    }

    #[test]
    fn mismatched_bin_separation_is_a_timing_error() {
        let circuit = build_gate(&decompose(&UnitaryMatrix::identity(2)).unwrap(), false).unwrap();
        let psi = QuditState::basis(2, 0, Encoding::TimeBin, 2.0 * DT).unwrap();
        assert!(matches!(simulate(&circuit, &psi), Err(Error::Timing(_))));
    }

    #[test]
    fn unsynchronized_coupler_is_rejected() {
        let losses = ComponentLosses::LOSSLESS;
        let net = vec![
            Component::with_defaults(ComponentKind::SwitchDemux { ports: 2 }, &losses).unwrap(),
            Component::with_defaults(
                ComponentKind::Coupler {
                    m: 2,
                    n: 1,
                    theta: 0.5,
                    phi: 0.0,
                },
                &losses,
            )
            .unwrap(),
            Component::with_defaults(ComponentKind::SwitchMux { ports: 2 }, &losses).unwrap(),
        ];
        assert!(matches!(
            GateCircuit::new(2, net, Template::DualRail, DT),
            Err(Error::Timing(_))
        ));
    }

    #[test]
    fn missing_mux_is_rejected() {
        let losses = ComponentLosses::LOSSLESS;
        let net = vec![
            Component::with_defaults(ComponentKind::SwitchDemux { ports: 2 }, &losses).unwrap(),
        ];
        assert!(GateCircuit::new(2, net, Template::DualRail, DT).is_err());
    }

    #[test]
    fn rail_loss_reduces_transmission() {
        let losses = ComponentLosses::LOSSLESS;
        let dec = decompose(&UnitaryMatrix::identity(2)).unwrap();
        let mut net = build_gate_with(
            &dec,
            &GateOptions {
                losses,
                apply_phase_correction: false,
                ..GateOptions::default()
            },
        )
        .unwrap()
        .netlist()
        .to_vec();
        net.insert(
            1,
            Component::new(
                ComponentKind::Loss {
                    target: LossTarget::Rail(1),
                },
                10.0 * 2f64.log10(),
            )
            .unwrap(),
        );
        let circuit = GateCircuit::from_netlist(net, DT).unwrap();
        let out = simulate(&circuit, &tb(&[(1.0, 0.0), (1.0, 0.0)])).unwrap();
        // rail 1 keeps half its power: (0.5 + 1) / 2
        assert!((out.transmission - 0.75).abs() < 1e-12);
        assert!(circuit.transfer_matrix().is_err());
    }

    #[test]
    fn bar_state_on_long_bin() {
        let step = CouplerStep::new(2, 1, FRAC_PI_2, 0.0).unwrap();
        let dec = Decomposition::new(2, vec![step], PhaseCorrection::zeros(2)).unwrap();
        let out = simulate(
            &build_gate(&dec, false).unwrap(),
            &tb(&[(0.0, 0.0), (1.0, 0.0)]),
        )
        .unwrap();
        assert!((out.output_state.amplitudes()[1] + Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}
