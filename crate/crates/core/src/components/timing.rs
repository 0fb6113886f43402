use crate::error::{Error, Result};

/// Vacuum speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Group index of standard single-mode fiber near 1550 nm.
pub const DEFAULT_GROUP_INDEX: f64 = 1.468;

/// Temperature stability needed for a ~2 cm imbalance, kelvin.
pub const DEFAULT_THERMAL_TOLERANCE_K: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimingSpec {
    /// Δt, seconds.
    pub bin_separation: f64,
    /// Hz.
    pub switch_rate: f64,
    pub group_index: f64,
    /// Fiber length imbalance for one bin, metres.
    pub path_difference: f64,
    /// Required stability, kelvin (reported as configured).
    pub thermal_tolerance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimingReport {
    pub spec: TimingSpec,
    /// The switch can reconfigure between adjacent bins: Δt ≥ 1/rate.
    pub feasible: bool,
}

pub fn timing_feasibility(
    bin_separation: f64,
    switch_rate: f64,
    group_index: f64,
) -> Result<TimingReport> {
    for (name, v) in [
        ("bin separation", bin_separation),
        ("switch rate", switch_rate),
        ("group index", group_index),
    ] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "{name} must be positive, got {v}"
            )));
        }
    }
    // relative slack so that Δt = 1/rate exactly counts as feasible despite rounding
    let feasible = bin_separation * switch_rate >= 1.0 - 1e-12;
    Ok(TimingReport {
        spec: TimingSpec {
            bin_separation,
            switch_rate,
            group_index,
            path_difference: bin_separation * SPEED_OF_LIGHT / group_index,
            thermal_tolerance: DEFAULT_THERMAL_TOLERANCE_K,
        },
        feasible,
    })
}
