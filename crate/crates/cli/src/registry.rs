//! Group and representation names accepted on the command line.
//!
//! | group      | representations              | irreps                      |
//! |------------|------------------------------|-----------------------------|
//! | `z3`       | `defining` = diag(1, ω, ω²)  | `0`, `1`, `2`               |
//! | `hadamard` | `defining` = H (order 4)     | `k` with H ↦ i^k, k = 0..3  |
//! | `pauli`    | `defining` (projective)      | `ab` with X ↦ ω^a, Z ↦ ω^b  |
//! | `s3`       | `defining` (permutations)    | `1`, `1'`, `2`              |
//! | `su3`      | any irrep                    | `1 3 3bar 6 6bar 8`         |
//! | `u1`       | `defining` = diag(0, 0, 1)   | charge `q`                  |
//! | `u1u1`     | `defining`                   | charges `q1,q2`             |

use anyhow::{anyhow, bail, Result};
use covchan_core::group::{
    cyclic_irrep, cyclic_rep, hadamard_group, pauli_group, pauli_irrep, s3_reps, su3_rep, u1_charge, u1_rep,
    u1u1_charge, u1u1_rep, RepOwned, Su3Irrep,
};
use covchan_core::CMatrix;
use covchan_core::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Z3,
    Hadamard,
    Pauli,
    S3,
    Su3,
    U1,
    U1U1,
}

impl Group {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "z3" => Group::Z3,
            "hadamard" => Group::Hadamard,
            "pauli" => Group::Pauli,
            "s3" => Group::S3,
            "su3" => Group::Su3,
            "u1" => Group::U1,
            "u1u1" => Group::U1U1,
            other => bail!("unknown group '{other}' (expected z3, hadamard, pauli, s3, su3, u1 or u1u1)"),
        })
    }

    /// Name of the representation used when none is given.
    pub fn default_rep(self) -> &'static str {
        match self {
            Group::Su3 => "3",
            _ => "defining",
        }
    }

    /// Labels of all irreps that can occur for qudit dimension `d`.
    pub fn irrep_names(self, d: usize) -> Vec<String> {
        let strs = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        match self {
            Group::Z3 => strs(&["0", "1", "2"]),
            Group::Hadamard => strs(&["0", "1", "2", "3"]),
            Group::Pauli => (0..d).flat_map(|a| (0..d).map(move |b| format!("{a}{b}"))).collect(),
            Group::S3 => strs(&["1", "1'", "2"]),
            Group::Su3 => Su3Irrep::ALL.iter().map(|i| i.as_str().to_string()).collect(),
            Group::U1 => strs(&["-1", "0", "1"]),
            Group::U1U1 => {
                let q = [-1, 0, 1];
                q.iter().flat_map(|a| q.iter().map(move |b| format!("{a},{b}"))).collect()
            }
        }
    }
}

fn parse_charge(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| anyhow!("'{s}' is not a charge"))
}

fn z3_generator() -> CMatrix {
    let w = |k: f64| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k / 3.0);
    CMatrix::diag(&[w(0.0), w(1.0), w(2.0)])
}

/// The named representation of `group` on a `d`-dimensional space (for the
/// defining representation) or an irrep of the group.
pub fn rep(group: Group, name: &str, d: usize) -> Result<RepOwned> {
    let name = name.trim();
    let fixed_dim = |want: usize| -> Result<()> {
        if d != want {
            bail!("group {group:?} acts on dimension {want}, not {d}");
        }
        Ok(())
    };
    Ok(match group {
        Group::Z3 => {
            if name == "defining" {
                fixed_dim(3)?;
                RepOwned::Finite(cyclic_rep(3, z3_generator())?)
            } else {
                let k: usize = name.parse().map_err(|_| anyhow!("unknown Z3 irrep '{name}'"))?;
                RepOwned::Finite(cyclic_irrep(3, k % 3)?)
            }
        }
        Group::Hadamard => {
            if name == "defining" {
                RepOwned::Finite(hadamard_group(d)?)
            } else {
                let k: usize = name.parse().map_err(|_| anyhow!("unknown Hadamard irrep '{name}'"))?;
                let order = if d == 2 { 2 } else { 4 };
                RepOwned::Finite(cyclic_irrep(order, k % order)?)
            }
        }
        Group::Pauli => {
            if name == "defining" {
                RepOwned::Finite(pauli_group(d)?)
            } else {
                let (a, b) = match name.split_once(',') {
                    Some((a, b)) => (a.trim().parse::<usize>(), b.trim().parse::<usize>()),
                    None if name.len() == 2 => (name[..1].parse(), name[1..].parse()),
                    None => bail!("Pauli irreps are written 'ab' or 'a,b'"),
                };
                let (a, b) = (a?, b?);
                RepOwned::Finite(pauli_irrep(d, a, b)?)
            }
        }
        Group::S3 => {
            let s = s3_reps();
            if name == "defining" {
                fixed_dim(3)?;
                RepOwned::Finite(s.defining)
            } else {
                RepOwned::Finite(s.irrep(name)?.clone())
            }
        }
        Group::Su3 => {
            let irrep: Su3Irrep = if name == "defining" { Su3Irrep::Three } else { name.parse()? };
            RepOwned::Lie(su3_rep(irrep))
        }
        Group::U1 => {
            if name == "defining" {
                fixed_dim(3)?;
                RepOwned::Lie(u1_rep())
            } else {
                RepOwned::Lie(u1_charge(parse_charge(name)?))
            }
        }
        Group::U1U1 => {
            if name == "defining" {
                fixed_dim(3)?;
                RepOwned::Lie(u1u1_rep())
            } else {
                let (a, b) = name.split_once(',').ok_or_else(|| anyhow!("u1u1 irreps are written 'q1,q2'"))?;
                RepOwned::Lie(u1u1_charge(parse_charge(a)?, parse_charge(b)?))
            }
        }
    })
}

/// Parses `group:d1:d2` (covariance) or `group:d` (symmetry); missing
/// representation names fall back to the group default.
pub fn parse_action(spec: &str, parts_wanted: usize) -> Result<(Group, Vec<String>)> {
    let mut parts = spec.split(':');
    let group = Group::parse(parts.next().unwrap_or_default())?;
    let mut names: Vec<String> = parts.map(|s| s.to_string()).collect();
    if names.len() > parts_wanted {
        bail!("too many ':' fields in '{spec}'");
    }
    while names.len() < parts_wanted {
        names.push(group.default_rep().to_string());
    }
    Ok((group, names))
}
