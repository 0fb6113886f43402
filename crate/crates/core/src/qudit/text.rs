//! Plain-text matrix and state files.
//!
//! Matrix file: first line `d`, then `d` lines of `d` whitespace-separated
//! entries `re,im`. State file: first line `d`, then `d` lines `re,im`.
//! Blank lines and lines starting with `#` are ignored.

use num_complex::Complex64;

use super::matrix::Matrix;
use super::state::{Encoding, QuditState};
use crate::error::{Error, Result};

/// Formats a real with 17 significant digits so text round trips are exact.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_complex(z: Complex64) -> String {
    format!("{},{}", fmt_real(z.re), fmt_real(z.im))
}

pub fn parse_complex(token: &str, line: usize) -> Result<Complex64> {
    let (re, im) = token
        .split_once(',')
        .ok_or_else(|| Error::parse(line, format!("expected 're,im', got '{token}'")))?;
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("bad real part '{re}'")))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("bad imaginary part '{im}'")))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(Error::parse(line, format!("non-finite entry '{token}'")));
    }
    Ok(Complex64::new(re, im))
}

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_dim(lines: &mut dyn Iterator<Item = (usize, &str)>) -> Result<usize> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty input, expected dimension line"))?;
    let d: usize = text
        .parse()
        .map_err(|_| Error::parse(line, format!("expected dimension, got '{text}'")))?;
    if d < 1 {
        return Err(Error::parse(line, "dimension must be positive"));
    }
    Ok(d)
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = content_lines(text);
    let d = parse_dim(&mut lines)?;
    let mut rows = Vec::with_capacity(d);
    let mut last_line = 1;
    for (line, row_text) in lines.by_ref().take(d) {
        last_line = line;
        let row = row_text
            .split_whitespace()
            .map(|tok| parse_complex(tok, line))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != d {
            return Err(Error::parse(
                line,
                format!("expected {d} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != d {
        return Err(Error::parse(
            last_line,
            format!("expected {d} rows, found {}", rows.len()),
        ));
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, "trailing content after matrix"));
    }
    Matrix::from_rows(rows)
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut out = format!("{}\n", m.dim());
    for r in 0..m.dim() {
        let row: Vec<String> = m.row(r).iter().map(|z| fmt_complex(*z)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Raw amplitudes from a state file (not normalized).
pub fn parse_amplitudes(text: &str) -> Result<Vec<Complex64>> {
    let mut lines = content_lines(text);
    let d = parse_dim(&mut lines)?;
    let mut amps = Vec::with_capacity(d);
    let mut last_line = 1;
    for (line, tok) in lines.by_ref().take(d) {
        last_line = line;
        amps.push(parse_complex(tok, line)?);
    }
    if amps.len() != d {
        return Err(Error::parse(
            last_line,
            format!("expected {d} amplitudes, found {}", amps.len()),
        ));
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, "trailing content after state"));
    }
    Ok(amps)
}

pub fn parse_state(text: &str, encoding: Encoding, bin_separation: f64) -> Result<QuditState> {
    QuditState::new(parse_amplitudes(text)?, encoding, bin_separation)
}

pub fn format_state(s: &QuditState) -> String {
    let mut out = format!("{}\n", s.dim());
    for z in s.amplitudes() {
        out.push_str(&fmt_complex(*z));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_text_round_trip_is_exact() {
        let m = Matrix::from_fn(3, |r, c| Complex64::new(r as f64 / 3.0, -(c as f64) / 7.0));
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# identity\n2\n\n1,0 0,0\n0,0 1,0\n";
        assert_eq!(parse_matrix(text).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn short_row_names_line() {
        let err = parse_matrix("2\n1,0 0,0\n0,0\n").unwrap_err();
        assert_eq!(err, Error::parse(3, "expected 2 entries, found 1"));
    }

    #[test]
    fn bad_entry_names_line() {
        let err = parse_matrix("2\n1,0 0,0\n0;0 1,0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn state_round_trip() {
        let s = QuditState::new(
            vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)],
            Encoding::TimeBin,
            1e-10,
        )
        .unwrap();
        let back = parse_state(&format_state(&s), Encoding::TimeBin, 1e-10).unwrap();
        assert_eq!(back, s);
    }
}
