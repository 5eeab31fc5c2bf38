//! `--param` and `--sweep` parsing.

use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use covchan_core::zoo::{Family, FamilySpec};
use covchan_core::C64;
use serde_json::{Map, Value};

/// Parses a real or complex number such as `0.3`, `-1e-2` or `0.3+0.4i`.
pub fn parse_value(s: &str) -> Result<C64> {
    let s = s.trim();
    if let Ok(x) = s.parse::<f64>() {
        return Ok(C64::new(x, 0.0));
    }
    C64::from_str(s).map_err(|_| anyhow!("'{s}' is not a number"))
}

/// Collects `k=v` pairs from repeated, comma-separated `--param` values.
///
/// `gen=mn` is shorthand for `m=<m>,n=<n>` (single-digit indices).
pub fn parse_params(raw: &[String]) -> Result<Vec<(String, C64)>> {
    let mut out = Vec::new();
    for item in raw.iter().flat_map(|s| s.split(',')) {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (k, v) = item.split_once('=').ok_or_else(|| anyhow!("parameter '{item}' is not of the form k=v"))?;
        let (k, v) = (k.trim(), v.trim());
        if k == "gen" {
            let digits: Vec<u32> = v.chars().map(|c| c.to_digit(10)).collect::<Option<_>>().unwrap_or_default();
            if digits.len() != 2 {
                bail!("gen expects two digits, e.g. gen=01");
            }
            out.push(("m".into(), C64::new(digits[0] as f64, 0.0)));
            out.push(("n".into(), C64::new(digits[1] as f64, 0.0)));
            continue;
        }
        out.push((k.to_string(), parse_value(v).with_context(|| format!("parameter {k}"))?));
    }
    Ok(out)
}

pub fn family_spec(name: &str, d: usize, params: &[(String, C64)]) -> Result<FamilySpec> {
    let family: Family = name.parse()?;
    let mut spec = FamilySpec::new(family).with_dim(d);
    for (k, v) in params {
        spec = spec.with(k, *v);
    }
    Ok(spec)
}

pub fn params_json(spec: &FamilySpec) -> Map<String, Value> {
    spec.params
        .iter()
        .map(|(k, v)| {
            let value = if v.im == 0.0 { Value::from(v.re) } else { Value::from(vec![v.re, v.im]) };
            (k.clone(), value)
        })
        .collect()
}

/// A one-parameter sweep `name=start:stop:step`, inclusive of both ends.
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub name: String,
    pub values: Vec<f64>,
}

impl FromStr for Sweep {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, range) = s.split_once('=').ok_or_else(|| anyhow!("sweep must look like p=0:1:0.1"))?;
        let parts: Vec<f64> = range
            .split(':')
            .map(|x| x.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| anyhow!("sweep bounds in '{range}' are not numbers"))?;
        let [start, stop, step] = parts[..] else { bail!("sweep must have start:stop:step") };
        if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
            bail!("sweep needs start <= stop and a positive step");
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        if n > 100_000 {
            bail!("sweep has too many points");
        }
        let mut values: Vec<f64> = (0..=n).map(|k| start + k as f64 * step).collect();
        // Snap the last point onto the bound when the step divides the range.
        if let Some(last) = values.last_mut() {
            if (stop - *last).abs() <= 1e-9 * step {
                *last = stop;
            }
        }
        Ok(Sweep { name: name.trim().to_string(), values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(parse_value("0.25").unwrap(), C64::new(0.25, 0.0));
        assert_eq!(parse_value("0.3+0.4i").unwrap(), C64::new(0.3, 0.4));
        assert!(parse_value("abc").is_err());
    }

    #[test]
    fn params_and_gen_sugar() {
        let p = parse_params(&["gen=01,q0=1".into(), "q1=0".into()]).unwrap();
        let keys: Vec<&str> = p.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, ["m", "n", "q0", "q1"]);
        assert_eq!(p[1].1.re, 1.0);
        assert!(parse_params(&["p".into()]).is_err());
        assert!(parse_params(&["gen=0".into()]).is_err());
    }

    #[test]
    fn sweeps_include_both_ends() {
        let s: Sweep = "p=0:1:0.1".parse().unwrap();
        assert_eq!(s.name, "p");
        assert_eq!(s.values.len(), 11);
        assert_eq!(s.values[10], 1.0);
        assert!((s.values[3] - 0.3).abs() < 1e-15);
        let s: Sweep = "p=0:0.75:0.5".parse().unwrap();
        assert_eq!(s.values, [0.0, 0.5]);
        assert!("p=1:0:0.1".parse::<Sweep>().is_err());
        assert!("p=0:1:0".parse::<Sweep>().is_err());
        assert!("p=0:1".parse::<Sweep>().is_err());
    }
}
