//! Text forms: complex numbers, `name=value` lists and grid specs.

use std::collections::BTreeMap;
use std::str::FromStr;

use qdilog_core::C64;

/// Parses `a+bi`, `a`, `bi`, or the wire form `"<re> <im>"`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t = s.trim();
    let parts: Vec<&str> = t.split_whitespace().collect();
    if parts.len() == 2 {
        let re = f64::from_str(parts[0]).map_err(|_| format!("bad real part in `{s}`"))?;
        let im = f64::from_str(parts[1]).map_err(|_| format!("bad imaginary part in `{s}`"))?;
        return Ok(C64::new(re, im));
    }
    C64::from_str(t).map_err(|_| format!("cannot parse `{s}` as a complex number"))
}

/// Wire form: real and imaginary parts with 17 significant digits.
pub fn format_complex(z: C64) -> String {
    format!("{} {}", format_real(z.re), format_real(z.im))
}

pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Splits `k=v,k=v` into a map. Later duplicates are rejected.
pub fn parse_assignments(s: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| format!("expected name=value, got `{item}`"))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(format!("empty name in `{item}`"));
        }
        if out.insert(k.to_string(), v.trim().to_string()).is_some() {
            return Err(format!("`{k}` given twice"));
        }
    }
    Ok(out)
}

/// One axis of a table.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub points: Vec<C64>,
}

/// `name=a:b:n` gives `n` evenly spaced points from `a` to `b` inclusive;
/// `name=circle:r:n` gives `r e^{2 pi i k / n}` for `k = 0..n`.
pub fn parse_grid(s: &str) -> Result<Axis, String> {
    let (name, body) = s.split_once('=').ok_or_else(|| format!("expected name=a:b:n, got `{s}`"))?;
    let fields: Vec<&str> = body.split(':').collect();
    if fields.len() != 3 {
        return Err(format!("grid `{s}` needs three `:`-separated fields"));
    }
    let n: usize = fields[2].trim().parse().map_err(|_| format!("bad point count in `{s}`"))?;
    if n == 0 {
        return Err(format!("grid `{s}` has no points"));
    }
    let points = if fields[0].trim() == "circle" {
        let r: f64 = fields[1].trim().parse().map_err(|_| format!("bad radius in `{s}`"))?;
        (0..n).map(|k| C64::from_polar(r, std::f64::consts::TAU * k as f64 / n as f64)).collect()
    } else {
        let a = parse_complex(fields[0])?;
        let b = parse_complex(fields[1])?;
        if n == 1 {
            vec![a]
        } else {
            (0..n).map(|k| a + (b - a) * (k as f64 / (n - 1) as f64)).collect()
        }
    };
    Ok(Axis { name: name.trim().to_string(), points })
}
