use timebin::circuit::{build_gate, simulate, GateCircuit, Template, DEFAULT_BIN_SEPARATION};
use timebin::components::{format_netlist, loss_budget, parse_netlist, ComponentLosses};
use timebin::protocols::mub_qutrit;
use timebin::reck::{decompose, qutrit_dft};
use timebin::Error;

const DT: f64 = DEFAULT_BIN_SEPARATION;

#[test]
fn qutrit_gate_maps_fourier_basis_to_computational() {
    let gate = build_gate(&decompose(&qutrit_dft()).unwrap(), true).unwrap();
    assert_eq!(gate.coupler_count(), 3);
    let mubs = mub_qutrit();
    for k in 0..3 {
        let out = simulate(&gate, mubs.state(1, k)).unwrap();
        assert!(out.output_state.equals_up_to_phase(mubs.state(0, k), 1e-12));
    }
}

#[test]
fn netlist_text_round_trip_rebuilds_same_circuit() {
    let gate = build_gate(&decompose(&qutrit_dft()).unwrap(), true).unwrap();
    let text = format_netlist(gate.netlist());
    let parsed = parse_netlist(&text, &ComponentLosses::STANDARD).unwrap();
    assert_eq!(parsed, gate.netlist());
    let rebuilt = GateCircuit::from_netlist(parsed, DT).unwrap();
    assert_eq!(rebuilt.template(), Template::QuditGate);
    assert_eq!(
        loss_budget(rebuilt.netlist()).total_db,
        loss_budget(gate.netlist()).total_db
    );
}

#[test]
fn netlist_parse_error_reports_line() {
    let err = parse_netlist(
        "SWITCH_DEMUX k=3\nCOUPLER m=2 n=1 theta=x phi=0\n",
        &ComponentLosses::STANDARD,
    )
    .unwrap_err();
    assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
}
