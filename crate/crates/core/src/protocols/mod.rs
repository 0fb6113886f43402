//! Application harnesses: four-basis qutrit QKD and the CHSH
//! detection-efficiency analysis.

mod chsh;
mod mub;
mod qkd;

pub use chsh::{
    chsh_records, chsh_threshold, chsh_value, ChshConfig, ChshEstimate, ChshRecord, EtaScan,
    Setting, Threshold, ThresholdScan, PAIRS,
};
pub use mub::{mub_qutrit, MubSet};
pub use qkd::{qkd_run, BasisStats, QkdChannel, QkdRecord, QkdSession, BASES, STATES};
