//! Plain-text window format:
//!
//! ```text
//! rank 1
//! lo -2
//! hi 2
//! tail_l1 1.00000000000e-10
//! 0.00000000000e0 2.50000000000e-1 ...
//! ```
//!
//! `tail_l1` is optional. Values follow in row-major order, one row of the
//! last axis per line, with 12 significant digits.

use std::fmt::Write as _;

use super::{ConfigurationWindow, SimulatorError, WindowBox};

pub fn write_window(x: &ConfigurationWindow, tail_l1: Option<f64>) -> String {
    let b = x.bounds();
    let join = |v: &[i64]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    writeln!(s, "rank {}", b.rank()).unwrap();
    writeln!(s, "lo {}", join(b.lo())).unwrap();
    writeln!(s, "hi {}", join(b.hi())).unwrap();
    if let Some(t) = tail_l1 {
        writeln!(s, "tail_l1 {t:.11e}").unwrap();
    }
    let row = b.extent(b.rank() - 1);
    for chunk in x.values().chunks(row) {
        let line: Vec<String> = chunk.iter().map(|v| format!("{v:.11e}")).collect();
        writeln!(s, "{}", line.join(" ")).unwrap();
    }
    s
}

fn perr(line: usize, message: impl Into<String>) -> SimulatorError {
    SimulatorError::Parse {
        line,
        message: message.into(),
    }
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
) -> Result<(usize, Vec<&'a str>), SimulatorError> {
    let (no, line) = lines.next().ok_or_else(|| perr(0, format!("missing `{key}` line")))?;
    let mut parts = line.split_whitespace();
    if parts.next() != Some(key) {
        return Err(perr(no, format!("expected `{key}`")));
    }
    Ok((no, parts.collect()))
}

fn ints(no: usize, parts: &[&str]) -> Result<Vec<i64>, SimulatorError> {
    parts
        .iter()
        .map(|p| p.parse::<i64>().map_err(|e| perr(no, format!("bad integer `{p}`: {e}"))))
        .collect()
}

pub fn read_window(text: &str) -> Result<(ConfigurationWindow, Option<f64>), SimulatorError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();
    let (no, rank) = header(&mut lines, "rank")?;
    let rank: usize = match rank.as_slice() {
        [r] => r.parse().map_err(|_| perr(no, "bad rank"))?,
        _ => return Err(perr(no, "expected a single rank")),
    };
    let (no, lo) = header(&mut lines, "lo")?;
    let lo = ints(no, &lo)?;
    let (no, hi) = header(&mut lines, "hi")?;
    let hi = ints(no, &hi)?;
    if lo.len() != rank || hi.len() != rank {
        return Err(perr(no, "bounds do not match rank"));
    }
    let bounds = WindowBox::new(lo, hi)?;
    let mut tail = None;
    if let Some((no, l)) = lines.peek().copied() {
        if let Some(v) = l.strip_prefix("tail_l1") {
            lines.next();
            let v = v.trim();
            let t: f64 = v.parse().map_err(|_| perr(no, format!("bad tail `{v}`")))?;
            if !(t >= 0.0 && t.is_finite()) {
                return Err(perr(no, "tail must be finite and nonnegative"));
            }
            tail = Some(t);
        }
    }
    let mut values = Vec::with_capacity(bounds.len());
    for (no, l) in lines {
        for tok in l.split_whitespace() {
            let v: f64 = tok.parse().map_err(|_| perr(no, format!("bad value `{tok}`")))?;
            values.push(v);
        }
    }
    Ok((ConfigurationWindow::new(bounds, values)?, tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_2d() {
        let b = WindowBox::new(vec![-1, 0], vec![1, 2]).unwrap();
        let x = ConfigurationWindow::from_fn(b, |c| 0.1 * c[0] as f64 + 0.01 * c[1] as f64);
        let text = write_window(&x, Some(1e-10));
        assert_eq!(text.lines().count(), 4 + 3);
        let (y, t) = read_window(&text).unwrap();
        assert_eq!(t, Some(1e-10));
        assert!(x.distance(&y).unwrap() < 1e-12);
        assert_eq!(write_window(&y, t), text);
    }

    #[test]
    fn reports_line_numbers() {
        let err = read_window("rank 1\nlo 0\nhi 1\n0.5 x\n").unwrap_err();
        assert_eq!(
            err,
            SimulatorError::Parse {
                line: 4,
                message: "bad value `x`".into()
            }
        );
        assert!(read_window("rank 1\nlo 0\nhi 1\n0.5\n").is_err());
    }
}
