//! CHSH test on time-bin qubit pairs with deterministic basis measurements
//! and imperfect detectors.
//!
//! Each party measures with a two-detector circuit (coupler plus input phase
//! modulator). A missing click is scored as outcome `+1`, the local
//! assignment that makes no post-selection; `post_select` switches to the
//! fair-sampling estimate instead (discard rounds with a missing click).
//!
//! Round `r` draws from [`trial_rng`]`(seed, r)`: setting pair, joint
//! outcome, Alice's detection coin, Bob's detection coin. The draws do not
//! depend on the efficiency, so scans over `η` use common random numbers.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::circuit::{trial_rng, MeasurementDevice, DEFAULT_BIN_SEPARATION};
use crate::components::ComponentLosses;
use crate::error::{Error, Result};
use crate::qudit::{Encoding, QuditState};

/// One local setting: outcome `+1` projects onto `cos θ |s> + e^{iφ} sin θ |l>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Setting {
    pub angle: f64,
    pub phase: f64,
}

impl Setting {
    pub fn real(angle: f64) -> Self {
        Self { angle, phase: 0.0 }
    }

    /// `(+1 state, −1 state)`
    pub fn basis(&self) -> [Complex64; 4] {
        let (s, c) = self.angle.sin_cos();
        let e = Complex64::from_polar(1.0, self.phase);
        [
            Complex64::new(c, 0.0),
            e * s,
            -e.conj() * s,
            Complex64::new(c, 0.0),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChshConfig {
    /// Amplitudes over `|ss>, |sl>, |ls>, |ll>` (first label Alice's).
    pub state: [Complex64; 4],
    /// Alice's settings `(a, a')`.
    pub alice: [Setting; 2],
    /// Bob's settings `(b, b')`.
    pub bob: [Setting; 2],
    /// Detector efficiency, both parties.
    pub efficiency: f64,
    pub post_select: bool,
    pub losses: ComponentLosses,
}

impl ChshConfig {
    /// `(|ss> + |ll>)/√2` with `a = 0, a' = π/4, b = π/8, b' = −π/8`.
    pub fn maximally_entangled(efficiency: f64) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        Self {
            state: [Complex64::new(h, 0.0), z, z, Complex64::new(h, 0.0)],
            alice: [Setting::real(0.0), Setting::real(PI / 4.0)],
            bob: [Setting::real(PI / 8.0), Setting::real(-PI / 8.0)],
            efficiency,
            post_select: false,
            losses: ComponentLosses::LOSSLESS,
        }
    }

    /// Same settings and state with parties exchanged.
    pub fn swapped(&self) -> Self {
        let [ss, sl, ls, ll] = self.state;
        Self {
            state: [ss, ls, sl, ll],
            alice: self.bob,
            bob: self.alice,
            ..self.clone()
        }
    }

    pub fn with_efficiency(&self, efficiency: f64) -> Self {
        Self {
            efficiency,
            ..self.clone()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.efficiency) {
            return Err(Error::InvalidArgument(format!(
                "efficiency {} outside [0, 1]",
                self.efficiency
            )));
        }
        let norm: f64 = self.state.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "two-qubit state has norm² {norm}"
            )));
        }
        Ok(())
    }
}

/// Correlator index order: `(a,b), (a,b'), (a',b), (a',b')`.
pub const PAIRS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChshRecord {
    pub round: u64,
    /// Index into [`PAIRS`].
    pub pair: usize,
    /// Detector that clicked, if any.
    pub alice: Option<usize>,
    pub bob: Option<usize>,
    /// Product of the scored outcomes; `None` when discarded by post-selection.
    pub product: Option<i8>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChshEstimate {
    pub s: f64,
    pub s_std_error: f64,
    pub correlators: [f64; 4],
    pub std_errors: [f64; 4],
    pub counts: [usize; 4],
}

/// Joint outcome distributions of the two measurement circuits, per pair.
struct ChshSetup {
    joint: [[f64; 4]; 4],
    alice_detect: [[f64; 2]; 2],
    bob_detect: [[f64; 2]; 2],
    post_select: bool,
}

fn device(setting: &Setting, config: &ChshConfig) -> Result<MeasurementDevice> {
    let [p0, p1, m0, m1] = setting.basis();
    let dt = DEFAULT_BIN_SEPARATION;
    let basis = [
        QuditState::new(vec![p0, p1], Encoding::TimeBin, dt)?,
        QuditState::new(vec![m0, m1], Encoding::TimeBin, dt)?,
    ];
    MeasurementDevice::new(&basis, config.efficiency, &config.losses, dt)
}

impl ChshSetup {
    fn new(config: &ChshConfig) -> Result<Self> {
        config.validate()?;
        let alice = [
            device(&config.alice[0], config)?,
            device(&config.alice[1], config)?,
        ];
        let bob = [
            device(&config.bob[0], config)?,
            device(&config.bob[1], config)?,
        ];
        let mut joint = [[0.0; 4]; 4];
        for (p, &(x, y)) in PAIRS.iter().enumerate() {
            let t = alice[x]
                .transfer()
                .matrix()
                .kron(bob[y].transfer().matrix());
            let out = t.apply_vec(&config.state);
            for (k, a) in out.iter().enumerate() {
                joint[p][k] = a.norm_sqr();
            }
        }
        let det = |d: &MeasurementDevice| [d.detection()[0], d.detection()[1]];
        Ok(Self {
            joint,
            alice_detect: [det(&alice[0]), det(&alice[1])],
            bob_detect: [det(&bob[0]), det(&bob[1])],
            post_select: config.post_select,
        })
    }

    fn round(&self, seed: u64, round: u64) -> ChshRecord {
        let mut rng = trial_rng(seed, round);
        let pair = rng.gen_range(0..4);
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut joint_index = 3;
        for (k, p) in self.joint[pair].iter().enumerate() {
            acc += p;
            if u < acc {
                joint_index = k;
                break;
            }
        }
        let (i, j) = (joint_index / 2, joint_index % 2);
        let (x, y) = PAIRS[pair];
        let alice = (rng.gen::<f64>() < self.alice_detect[x][i]).then_some(i);
        let bob = (rng.gen::<f64>() < self.bob_detect[y][j]).then_some(j);
        let value = |o: Option<usize>| if o == Some(1) { -1i8 } else { 1 };
        let product = if self.post_select && (alice.is_none() || bob.is_none()) {
            None
        } else {
            Some(value(alice) * value(bob))
        };
        ChshRecord {
            round,
            pair,
            alice,
            bob,
            product,
        }
    }
}

impl ChshEstimate {
    /// Reduces per-round records (e.g. from [`chsh_records`]).
    pub fn from_records(records: impl IntoIterator<Item = ChshRecord>) -> Self {
        let mut sums = [0i64; 4];
        let mut counts = [0usize; 4];
        for r in records {
            if let Some(v) = r.product {
                sums[r.pair] += v as i64;
                counts[r.pair] += 1;
            }
        }
        estimate_from(sums, counts)
    }
}

fn estimate_from(sums: [i64; 4], counts: [usize; 4]) -> ChshEstimate {
    let mut correlators = [0.0; 4];
    let mut std_errors = [0.0; 4];
    for p in 0..4 {
        if counts[p] > 0 {
            let e = sums[p] as f64 / counts[p] as f64;
            correlators[p] = e;
            std_errors[p] = ((1.0 - e * e).max(0.0) / counts[p] as f64).sqrt();
        }
    }
    let s = (correlators[0] + correlators[1] + correlators[2] - correlators[3]).abs();
    let s_std_error = std_errors.iter().map(|e| e * e).sum::<f64>().sqrt();
    ChshEstimate {
        s,
        s_std_error,
        correlators,
        std_errors,
        counts,
    }
}

/// Per-round records, e.g. for CSV export.
pub fn chsh_records(config: &ChshConfig, rounds: u64, seed: u64) -> Result<Vec<ChshRecord>> {
    let setup = ChshSetup::new(config)?;
    Ok((0..rounds)
        .into_par_iter()
        .map(|r| setup.round(seed, r))
        .collect())
}

/// Monte Carlo estimate of `S = |E(a,b) + E(a,b') + E(a',b) − E(a',b')|`.
pub fn chsh_value(config: &ChshConfig, rounds: u64, seed: u64) -> Result<ChshEstimate> {
    if rounds == 0 {
        return Err(Error::InvalidArgument("rounds must be >= 1".into()));
    }
    let setup = ChshSetup::new(config)?;
    let partial = (0..rounds)
        .into_par_iter()
        .fold(
            || ([0i64; 4], [0usize; 4]),
            |(mut sums, mut counts), r| {
                let rec = setup.round(seed, r);
                if let Some(v) = rec.product {
                    sums[rec.pair] += v as i64;
                    counts[rec.pair] += 1;
                }
                (sums, counts)
            },
        )
        .reduce(
            || ([0i64; 4], [0usize; 4]),
            |(mut s1, mut c1), (s2, c2)| {
                for p in 0..4 {
                    s1[p] += s2[p];
                    c1[p] += c2[p];
                }
                (s1, c1)
            },
        );
    // integer sums make the reduction independent of execution order
    let (sums, counts) = partial;
    Ok(estimate_from(sums, counts))
}

/// Efficiency grid `lo, lo + step, …` up to `hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EtaScan {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl EtaScan {
    pub fn points(&self) -> Result<Vec<f64>> {
        if self.step.is_nan()
            || self.step <= 0.0
            || !(0.0..=1.0).contains(&self.lo)
            || !(self.lo..=1.0).contains(&self.hi)
        {
            return Err(Error::InvalidArgument(format!(
                "invalid scan {}:{}:{}",
                self.lo, self.hi, self.step
            )));
        }
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| self.lo + i as f64 * self.step).collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Threshold {
    /// Smallest scanned efficiency whose estimate exceeds 2.
    Violated {
        eta: f64,
        estimate: ChshEstimate,
    },
    NotViolated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdScan {
    pub points: Vec<(f64, ChshEstimate)>,
    pub threshold: Threshold,
}

/// Scans detector efficiency; `config.efficiency` is ignored.
pub fn chsh_threshold(
    config: &ChshConfig,
    scan: &EtaScan,
    rounds: u64,
    seed: u64,
) -> Result<ThresholdScan> {
    let mut points = Vec::new();
    let mut threshold = Threshold::NotViolated;
    for eta in scan.points()? {
        let est = chsh_value(&config.with_efficiency(eta), rounds, seed)?;
        if threshold == Threshold::NotViolated && est.s > 2.0 {
            threshold = Threshold::Violated { eta, estimate: est };
        }
        points.push((eta, est));
    }
    Ok(ThresholdScan { points, threshold })
}
