//! Four-basis qutrit key distribution with sampled depolarizing noise.
//!
//! Round `r` draws from [`trial_rng`]`(seed, r)` in a fixed order: Alice's
//! basis, Alice's state, the noise coin, the replacement state (always drawn),
//! Bob's basis, then the detection sample.

use rand::Rng;
use rayon::prelude::*;

use super::mub::MubSet;
use crate::circuit::{
    sample_outcome, trial_rng, MeasurementDevice, Outcome, DEFAULT_BIN_SEPARATION,
};
use crate::components::{db_to_transmission, ComponentLosses};
use crate::error::{Error, Result};

pub const BASES: usize = 4;
pub const STATES: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QkdChannel {
    /// Probability that the photon is replaced by a uniformly random
    /// computational basis state.
    pub depolarizing: f64,
    pub channel_loss_db: f64,
    pub detector_efficiency: f64,
    /// Insertion losses of Bob's measurement circuits.
    pub component_losses: ComponentLosses,
}

impl Default for QkdChannel {
    fn default() -> Self {
        Self {
            depolarizing: 0.0,
            channel_loss_db: 0.0,
            detector_efficiency: 1.0,
            component_losses: ComponentLosses::LOSSLESS,
        }
    }
}

impl QkdChannel {
    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.depolarizing) {
            return Err(Error::InvalidArgument(format!(
                "depolarizing probability {} outside [0, 1]",
                self.depolarizing
            )));
        }
        if !(0.0..=1.0).contains(&self.detector_efficiency) {
            return Err(Error::InvalidArgument(format!(
                "detector efficiency {} outside [0, 1]",
                self.detector_efficiency
            )));
        }
        if !self.channel_loss_db.is_finite() || self.channel_loss_db < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "channel loss {} dB must be >= 0",
                self.channel_loss_db
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QkdRecord {
    pub round: u64,
    pub alice_basis: usize,
    pub alice_state: usize,
    pub depolarized: bool,
    pub bob_basis: usize,
    pub outcome: Outcome,
    /// Bases matched and Bob's detector clicked.
    pub sifted: bool,
}

impl QkdRecord {
    pub fn is_error(&self) -> bool {
        self.sifted && self.outcome != Outcome::Click(self.alice_state)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BasisStats {
    /// Rounds in which Alice used this basis.
    pub sent: usize,
    pub sifted: usize,
    pub errors: usize,
}

impl BasisStats {
    pub fn qber(&self) -> f64 {
        if self.sifted == 0 {
            0.0
        } else {
            self.errors as f64 / self.sifted as f64
        }
    }
}

#[derive(Clone, Debug)]
pub struct QkdSession {
    pub rounds: u64,
    pub channel: QkdChannel,
    pub seed: u64,
    pub records: Vec<QkdRecord>,
    /// Errors over sifted rounds.
    pub qber: f64,
    /// Sifted rounds over all rounds.
    pub sift_rate: f64,
    pub sifted: usize,
    pub errors: usize,
    pub per_basis: [BasisStats; BASES],
}

/// Bob's four measurement circuits plus the sender's states.
struct QkdStation {
    mubs: MubSet,
    devices: Vec<MeasurementDevice>,
    channel_transmission: f64,
}

impl QkdStation {
    fn new(channel: &QkdChannel) -> Result<Self> {
        let mubs = MubSet::qutrit(DEFAULT_BIN_SEPARATION);
        let devices = mubs
            .bases()
            .iter()
            .map(|b| {
                MeasurementDevice::new(
                    b,
                    channel.detector_efficiency,
                    &channel.component_losses,
                    DEFAULT_BIN_SEPARATION,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            mubs,
            devices,
            channel_transmission: db_to_transmission(channel.channel_loss_db),
        })
    }

    fn round(&self, channel: &QkdChannel, seed: u64, round: u64) -> QkdRecord {
        let mut rng = trial_rng(seed, round);
        let alice_basis = rng.gen_range(0..BASES);
        let alice_state = rng.gen_range(0..STATES);
        let depolarized = rng.gen::<f64>() < channel.depolarizing;
        let replacement = rng.gen_range(0..STATES);
        let bob_basis = rng.gen_range(0..BASES);
        let sent = if depolarized {
            self.mubs.state(0, replacement)
        } else {
            self.mubs.state(alice_basis, alice_state)
        };
        let mut probs = self.devices[bob_basis].probabilities_of(sent.amplitudes());
        for p in &mut probs {
            *p *= self.channel_transmission;
        }
        let outcome = sample_outcome(&probs, &mut rng);
        QkdRecord {
            round,
            alice_basis,
            alice_state,
            depolarized,
            bob_basis,
            outcome,
            sifted: alice_basis == bob_basis && outcome != Outcome::NoClick,
        }
    }
}

pub fn qkd_run(rounds: u64, channel: &QkdChannel, seed: u64) -> Result<QkdSession> {
    if rounds == 0 {
        return Err(Error::InvalidArgument("rounds must be >= 1".into()));
    }
    channel.validate()?;
    let station = QkdStation::new(channel)?;
    let records: Vec<QkdRecord> = (0..rounds)
        .into_par_iter()
        .map(|r| station.round(channel, seed, r))
        .collect();
    let mut per_basis = [BasisStats::default(); BASES];
    for rec in &records {
        let stats = &mut per_basis[rec.alice_basis];
        stats.sent += 1;
        if rec.sifted {
            stats.sifted += 1;
            if rec.is_error() {
                stats.errors += 1;
            }
        }
    }
    let sifted: usize = per_basis.iter().map(|s| s.sifted).sum();
    let errors: usize = per_basis.iter().map(|s| s.errors).sum();
    Ok(QkdSession {
        rounds,
        channel: *channel,
        seed,
        records,
        qber: if sifted == 0 {
            0.0
        } else {
            errors as f64 / sifted as f64
        },
        sift_rate: sifted as f64 / rounds as f64,
        sifted,
        errors,
        per_basis,
    })
}
