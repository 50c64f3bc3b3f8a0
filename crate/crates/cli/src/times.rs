//! Time lists such as `0:T/4:9`, `3T/16` or `0.5,T/2,2T`, where `T` is the period.

use oscillator::{Error, Result};

/// Comma-separated items, each a single time or an inclusive range
/// `start:end:count` of evenly spaced samples.
pub fn parse_times(spec: &str, period: f64) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in spec.split(',') {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [one] => out.push(parse_time(one, period)?),
            [start, end, count] => {
                let (a, b) = (parse_time(start, period)?, parse_time(end, period)?);
                let n: usize = count
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| Error::Parse(format!("bad sample count {count:?}")))?;
                if n == 1 {
                    out.push(a);
                } else {
                    out.extend((0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64));
                }
            }
            _ => return Err(Error::Parse(format!("bad time range {item:?}; expected start:end:count"))),
        }
    }
    Ok(out)
}

/// `[-]coef[*]T[/den]` or a plain number, optionally divided.
pub fn parse_time(expr: &str, period: f64) -> Result<f64> {
    let bad = || Error::Parse(format!("bad time {expr:?}"));
    let s = expr.trim();
    let (sign, s) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim_start()),
        None => (1.0, s),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().ok().filter(|d| *d != 0.0).ok_or_else(bad)?),
        None => (s, 1.0),
    };
    let value = match num.strip_suffix('T') {
        Some(coef) => {
            let coef = coef.trim_end().trim_end_matches('*').trim_end();
            let c = if coef.is_empty() { 1.0 } else { coef.parse::<f64>().map_err(|_| bad())? };
            c * period
        }
        None if !num.is_empty() => num.parse::<f64>().map_err(|_| bad())?,
        None => return Err(bad()),
    };
    let t = sign * value / den;
    if t.is_finite() {
        Ok(t)
    } else {
        Err(bad())
    }
}
