//! Line-oriented netlist files.
//!
//! ```text
//! # qubit gate
//! SWITCH_DEMUX k=2 loss_db=1.5
//! DELAY rail=1 dt=1e-10
//! PHASE rail=1 phi=0.0
//! COUPLER m=2 n=1 theta=0.785398163397 phi=0.0 loss_db=0.1
//! SWAP m=3 n=1
//! LOSS rail=all loss_db=0.2
//! DETECTOR rail=1 eff=0.88
//! SWITCH_MUX k=2 loss_db=1.5
//! ```
//!
//! Keywords and keys are case-insensitive. `loss_db` is optional everywhere
//! and defaults to [`ComponentLosses::STANDARD`]; other keys are required, and
//! unknown or repeated keys are errors.

use std::collections::HashMap;

use super::{Component, ComponentKind, ComponentLosses, LossTarget};
use crate::error::{Error, Result};
use crate::qudit::text::{content_lines, fmt_real};

pub(super) fn format_component(c: &Component) -> String {
    let body = match c.kind {
        ComponentKind::SwitchDemux { ports } => format!("SWITCH_DEMUX k={ports}"),
        ComponentKind::SwitchMux { ports } => format!("SWITCH_MUX k={ports}"),
        ComponentKind::Delay { rail, duration } => {
            format!("DELAY rail={rail} dt={}", fmt_real(duration))
        }
        ComponentKind::Coupler { m, n, theta, phi } => {
            format!(
                "COUPLER m={m} n={n} theta={} phi={}",
                fmt_real(theta),
                fmt_real(phi)
            )
        }
        ComponentKind::PhaseMod { rail, phase } => {
            format!("PHASE rail={rail} phi={}", fmt_real(phase))
        }
        ComponentKind::RailSwap { m, n } => format!("SWAP m={m} n={n}"),
        ComponentKind::Loss { target } => match target {
            LossTarget::All => "LOSS rail=all".to_string(),
            LossTarget::Rail(r) => format!("LOSS rail={r}"),
        },
        ComponentKind::Detector { rail, efficiency } => {
            format!("DETECTOR rail={rail} eff={}", fmt_real(efficiency))
        }
        ComponentKind::Pbsc => "PBSC".to_string(),
        ComponentKind::PolarizationController => "POLCTRL".to_string(),
    };
    format!("{body} loss_db={}", fmt_real(c.insertion_loss_db))
}

pub fn format_netlist(netlist: &[Component]) -> String {
    let mut out = String::new();
    for c in netlist {
        out.push_str(&format_component(c));
        out.push('\n');
    }
    out
}

struct Fields<'a> {
    line: usize,
    keyword: &'a str,
    values: HashMap<String, &'a str>,
}

impl<'a> Fields<'a> {
    fn take(&mut self, key: &str) -> Result<&'a str> {
        self.values
            .remove(key)
            .ok_or_else(|| Error::parse(self.line, format!("{} requires '{key}='", self.keyword)))
    }

    fn real(&mut self, key: &str) -> Result<f64> {
        let raw = self.take(key)?;
        raw.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::parse(self.line, format!("bad value for '{key}': '{raw}'")))
    }

    fn index(&mut self, key: &str) -> Result<usize> {
        let raw = self.take(key)?;
        raw.parse::<usize>()
            .map_err(|_| Error::parse(self.line, format!("bad value for '{key}': '{raw}'")))
    }

    fn finish(self) -> Result<()> {
        match self.values.keys().next() {
            Some(k) => Err(Error::parse(
                self.line,
                format!("unknown key '{k}' for {}", self.keyword),
            )),
            None => Ok(()),
        }
    }
}

fn parse_line(line: usize, text: &str, defaults: &ComponentLosses) -> Result<Component> {
    let mut toks = text.split_whitespace();
    let keyword = toks.next().unwrap_or_default();
    let upper = keyword.to_ascii_uppercase();
    let mut values = HashMap::new();
    for tok in toks {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::parse(line, format!("expected key=value, got '{tok}'")))?;
        if values.insert(k.to_ascii_lowercase(), v).is_some() {
            return Err(Error::parse(line, format!("repeated key '{k}'")));
        }
    }
    let mut f = Fields {
        line,
        keyword,
        values,
    };
    let kind = match upper.as_str() {
        "SWITCH_DEMUX" => ComponentKind::SwitchDemux {
            ports: f.index("k")?,
        },
        "SWITCH_MUX" => ComponentKind::SwitchMux {
            ports: f.index("k")?,
        },
        "DELAY" => ComponentKind::Delay {
            rail: f.index("rail")?,
            duration: f.real("dt")?,
        },
        "COUPLER" => ComponentKind::Coupler {
            m: f.index("m")?,
            n: f.index("n")?,
            theta: f.real("theta")?,
            phi: f.real("phi")?,
        },
        "PHASE" => ComponentKind::PhaseMod {
            rail: f.index("rail")?,
            phase: f.real("phi")?,
        },
        "SWAP" => ComponentKind::RailSwap {
            m: f.index("m")?,
            n: f.index("n")?,
        },
        "LOSS" => {
            let target = if f
                .values
                .get("rail")
                .is_some_and(|v| v.eq_ignore_ascii_case("all"))
            {
                f.take("rail")?;
                LossTarget::All
            } else {
                LossTarget::Rail(f.index("rail")?)
            };
            if !f.values.contains_key("loss_db") {
                return Err(Error::parse(line, "LOSS requires 'loss_db='"));
            }
            ComponentKind::Loss { target }
        }
        "DETECTOR" => ComponentKind::Detector {
            rail: f.index("rail")?,
            efficiency: f.real("eff")?,
        },
        "PBSC" => ComponentKind::Pbsc,
        "POLCTRL" => ComponentKind::PolarizationController,
        _ => return Err(Error::parse(line, format!("unknown component '{keyword}'"))),
    };
    let loss_db = if f.values.contains_key("loss_db") {
        f.real("loss_db")?
    } else {
        defaults.default_for(&kind)
    };
    f.finish()?;
    Component::new(kind, loss_db).map_err(|e| Error::parse(line, e.to_string()))
}

/// Parses a netlist, filling missing `loss_db` values from `defaults`.
pub fn parse_netlist(text: &str, defaults: &ComponentLosses) -> Result<Vec<Component>> {
    content_lines(text)
        .map(|(line, body)| parse_line(line, body, defaults))
        .collect()
}
