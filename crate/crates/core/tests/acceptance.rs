//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::SQRT_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use timebin::circuit::{build_gate, polarization_gate_netlist, simulate, DEFAULT_BIN_SEPARATION};
use timebin::components::{loss_budget, timing_feasibility, ComponentLosses};
use timebin::protocols::{
    chsh_threshold, chsh_value, mub_qutrit, qkd_run, ChshConfig, EtaScan, QkdChannel, Threshold,
};
use timebin::qudit::{haar_unitary, random_state, Encoding};
use timebin::reck::{coupler_count, decompose, reconstruct, verify_qutrit_example};

const DT: f64 = DEFAULT_BIN_SEPARATION;

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn timed(name: &'static str, limit: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Check {
    let start = Instant::now();
    let (ok, mut detail) = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    if let Some(l) = limit {
        detail.push_str(&format!(" limit={:.0}s", l.as_secs_f64()));
    }
    Check {
        name,
        passed: ok && in_time,
        detail,
        elapsed,
    }
}

fn golden_factorization() -> (bool, String) {
    let r = verify_qutrit_example();
    (
        r.passed(),
        format!(
            "residual={:.3e} product_modulus_err={:.3e} max_unitarity={:.3e}",
            r.residual,
            r.product_modulus_error,
            r.unitarity_residuals.iter().cloned().fold(0.0, f64::max)
        ),
    )
}

fn synthesis_round_trip() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    let mut counts_ok = true;
    for d in 2..=8 {
        for _ in 0..200 {
            let u = haar_unitary(d, &mut rng);
            let dec = decompose(&u).expect("unitary input");
            counts_ok &= dec.steps().len() == coupler_count(d);
            let back = reconstruct(&dec);
            worst = worst.max(back.matrix().frobenius_distance(u.matrix()));
        }
    }
    (
        worst <= 1e-10 && counts_ok,
        format!("max_frobenius={worst:.3e} step_counts_ok={counts_ok}"),
    )
}

fn gate_equivalence() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst_infidelity = 0.0f64;
    let mut worst_click = 0.0f64;
    for d in 2..=4 {
        for _ in 0..100 {
            let u = haar_unitary(d, &mut rng);
            let psi = random_state(d, Encoding::TimeBin, DT, &mut rng);
            let direct = u.apply(&psi).expect("same dimension");
            let dec = decompose(&u).expect("unitary input");
            let with_p = simulate(&build_gate(&dec, true).unwrap(), &psi).unwrap();
            let without_p = simulate(&build_gate(&dec, false).unwrap(), &psi).unwrap();
            let f = with_p.output_state.fidelity(&direct).unwrap();
            worst_infidelity = worst_infidelity.max(1.0 - f);
            for k in 0..d {
                let expect = direct.population(k);
                worst_click = worst_click
                    .max((with_p.output_state.population(k) - expect).abs())
                    .max((without_p.output_state.population(k) - expect).abs());
            }
        }
    }
    (
        worst_infidelity <= 1e-9 && worst_click <= 1e-12,
        format!("max_infidelity={worst_infidelity:.3e} max_click_diff={worst_click:.3e}"),
    )
}

fn mub_suite() -> (bool, String) {
    let m = mub_qutrit();
    let ortho = m.orthonormality_error();
    let overlaps = m.cross_overlaps();
    let unbiased = m.unbiasedness_error();
    (
        ortho <= 1e-12 && overlaps.len() == 54 && unbiased <= 1e-12,
        format!(
            "orthonormality_err={ortho:.3e} overlaps={} unbiasedness_err={unbiased:.3e}",
            overlaps.len()
        ),
    )
}

fn qkd_runs() -> (bool, String) {
    let ideal = qkd_run(100_000, &QkdChannel::default(), 5).unwrap();
    let noisy = qkd_run(
        100_000,
        &QkdChannel {
            depolarizing: 0.1,
            ..QkdChannel::default()
        },
        6,
    )
    .unwrap();
    let ok = ideal.errors == 0
        && (ideal.sift_rate - 0.25).abs() <= 0.01
        && (noisy.qber - 0.0667).abs() <= 0.01;
    (
        ok,
        format!(
            "ideal_qber={:.6} ideal_sift={:.6} noisy_qber={:.6}",
            ideal.qber, ideal.sift_rate, noisy.qber
        ),
    )
}

fn chsh() -> (bool, String) {
    let cfg = ChshConfig::maximally_entangled(1.0);
    let ideal = chsh_value(&cfg, 1_000_000, 7).unwrap();
    let scan = EtaScan {
        lo: 0.78,
        hi: 0.88,
        step: 0.002,
    };
    let result = chsh_threshold(&cfg, &scan, 1_000_000, 8).unwrap();
    let eta_star = match result.threshold {
        Threshold::Violated { eta, .. } => Some(eta),
        Threshold::NotViolated => None,
    };
    let ok = (ideal.s - 2.0 * SQRT_2).abs() <= 0.05
        && eta_star.is_some_and(|e| (e - 0.828).abs() <= 0.01);
    (
        ok,
        format!(
            "S={:.6} (+/-{:.6}) eta_star={}",
            ideal.s,
            ideal.s_std_error,
            eta_star.map_or("none".into(), |e| format!("{e:.3}"))
        ),
    )
}

fn loss() -> (bool, String) {
    let net = polarization_gate_netlist(&ComponentLosses::STANDARD, DT).unwrap();
    let b = loss_budget(&net);
    (
        (b.total_db - 3.0).abs() <= 1e-12 && (b.transmission - 0.5012).abs() <= 1e-4,
        format!(
            "total_db={:.12} transmission={:.12}",
            b.total_db, b.transmission
        ),
    )
}

fn timing() -> (bool, String) {
    let r = timing_feasibility(100e-12, 10e9, 1.468).unwrap();
    let dl = r.spec.path_difference;
    (
        r.feasible && (dl - 0.02).abs() <= 0.1 * 0.02,
        format!("feasible={} path_difference_m={dl:.12}", r.feasible),
    )
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let checks = [
        timed("golden_factorization", secs(1), golden_factorization),
        timed("synthesis_round_trip", secs(10), synthesis_round_trip),
        timed("gate_equivalence", None, gate_equivalence),
        timed("mub_suite", None, mub_suite),
        timed("qkd_qber_and_sift", secs(30), qkd_runs),
        timed("chsh_value_and_threshold", secs(60), chsh),
        timed("loss_budget", None, loss),
        timed("timing_feasibility", None, timing),
    ];
    let mut failed = 0;
    for (i, c) in checks.iter().enumerate() {
        println!(
            "[{}] {} {:<26} {} elapsed={:.3}s",
            if c.passed { "PASS" } else { "FAIL" },
            i + 1,
            c.name,
            c.detail,
            c.elapsed.as_secs_f64()
        );
        failed += usize::from(!c.passed);
    }
    println!("{} passed, {} failed", checks.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
