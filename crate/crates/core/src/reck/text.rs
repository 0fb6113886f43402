//! Decomposition file: line 1 `d`, one line `m n theta phi` per step in
//! application order, final line `P: p1 … pd`.

use super::{CouplerStep, Decomposition, PhaseCorrection};
use crate::error::{Error, Result};
use crate::qudit::text::{content_lines, fmt_real};

pub fn format_decomposition(dec: &Decomposition) -> String {
    let mut out = format!("{}\n", dec.dim());
    for s in dec.steps() {
        out.push_str(&format!(
            "{} {} {} {}\n",
            s.m,
            s.n,
            fmt_real(s.theta),
            fmt_real(s.phi)
        ));
    }
    let phases: Vec<String> = dec
        .correction()
        .phases()
        .iter()
        .map(|p| fmt_real(*p))
        .collect();
    out.push_str(&format!("P: {}\n", phases.join(" ")));
    out
}

fn parse_real(tok: &str, line: usize, what: &str) -> Result<f64> {
    tok.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::parse(line, format!("bad {what} '{tok}'")))
}

pub fn parse_decomposition(text: &str) -> Result<Decomposition> {
    let mut lines = content_lines(text);
    let (line, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty input, expected dimension line"))?;
    let dim: usize = first
        .parse()
        .map_err(|_| Error::parse(line, format!("expected dimension, got '{first}'")))?;
    let mut steps = Vec::new();
    let mut correction = None;
    for (line, text) in lines {
        if correction.is_some() {
            return Err(Error::parse(line, "content after phase correction line"));
        }
        if let Some(rest) = text.strip_prefix("P:") {
            let phases = rest
                .split_whitespace()
                .map(|t| parse_real(t, line, "phase"))
                .collect::<Result<Vec<_>>>()?;
            if phases.len() != dim {
                return Err(Error::parse(
                    line,
                    format!("expected {dim} phases, found {}", phases.len()),
                ));
            }
            correction =
                Some(PhaseCorrection::new(phases).map_err(|e| Error::parse(line, e.to_string()))?);
            continue;
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(Error::parse(
                line,
                format!("expected 'm n theta phi', got '{text}'"),
            ));
        }
        let rail = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(line, format!("bad rail index '{t}'")))
        };
        let step = CouplerStep::new(
            rail(toks[0])?,
            rail(toks[1])?,
            parse_real(toks[2], line, "theta")?,
            parse_real(toks[3], line, "phi")?,
        )
        .map_err(|e| Error::parse(line, e.to_string()))?;
        if step.m > dim || step.n > dim {
            return Err(Error::parse(
                line,
                format!("rail out of range for dimension {dim}"),
            ));
        }
        steps.push(step);
    }
    let correction =
        correction.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing 'P:' line"))?;
    Decomposition::new(dim, steps, correction)
}
