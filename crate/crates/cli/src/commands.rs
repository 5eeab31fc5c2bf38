//! The subcommands. Each returns a JSON report that `main` prints.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{ArgGroup, Args};
use covchan_core::basis::gell_mann_basis;
use covchan_core::capacity::{closed_form_capacity, covariant_capacity, SearchOptions};
use covchan_core::channel::{affine_rep, classify, Channel, CLASSIFY_TOL};
use covchan_core::solver::{
    check_covariance, check_symmetry, kraus_scale, normalize_tp, predicted_multiplicity, solve_intertwiners,
    solve_symmetric, IntertwinerSolution,
};
use covchan_core::zoo::{make_family, su3_family_cp_interval, Family, FamilySpec};
use covchan_core::Error as CoreError;
use serde_json::{json, Map, Value};

use crate::format::{matrix_to_json, ChannelFile, ChoiFile};
use crate::params::{family_spec, params_json, parse_params, parse_value, Sweep};
use crate::registry::{parse_action, rep, Group};
use crate::{CliError, CliResult};

fn flags(ch: &Channel) -> Map<String, Value> {
    let cls = classify(ch, CLASSIFY_TOL);
    let mut m = Map::new();
    m.insert("cp".into(), cls.cp.into());
    m.insert("tp".into(), cls.tp.into());
    m.insert("unital".into(), cls.unital.into());
    m.insert("min_choi_eigenvalue".into(), cls.min_choi_eigenvalue.into());
    m.insert("tp_deviation".into(), cls.tp_deviation.into());
    m.insert("unital_deviation".into(), cls.unital_deviation.into());
    m
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Family name, e.g. su3-6, pauli, symmetric-pauli.
    pub name: String,
    /// Parameter assignments k=v (repeatable, comma-separated; complex as 0.3+0.4i).
    #[arg(long = "param")]
    pub params: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Write the channel file here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn family(args: &FamilyArgs) -> CliResult<Value> {
    let spec = family_spec(&args.name, args.dim, &parse_params(&args.params)?)?;
    let built = make_family(&spec)?;
    let mut meta = Map::new();
    meta.insert("family".into(), spec.family.as_str().into());
    meta.insert("params".into(), Value::Object(params_json(&spec)));
    meta.extend(flags(&built.channel));
    if let Some(min) = built.cp_warning {
        let mut warning = format!("not completely positive (minimum Choi eigenvalue {min:.3e})");
        if let Ok((lo, hi)) = su3_family_cp_interval(spec.family) {
            warning.push_str(&format!("; completely positive for p in [{lo:.6}, {hi:.6}]"));
        }
        meta.insert("cp_warning".into(), warning.into());
    }
    let file = ChannelFile::from_channel(&built.channel, meta);
    match &args.out {
        Some(path) => {
            file.write(path)?;
            Ok(json!({ "written": path, "meta": file.meta }))
        }
        None => Ok(serde_json::to_value(&file).map_err(anyhow::Error::from)?),
    }
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    pub file: PathBuf,
    /// Read a Choi file {"dim", "choi"} instead of a channel file.
    #[arg(long)]
    pub from_choi: bool,
}

pub fn classify_cmd(args: &ClassifyArgs) -> CliResult<Value> {
    let ch = if args.from_choi {
        let j = ChoiFile::read(&args.file)?.to_choi()?;
        Channel::from_choi_signed(&j, 1e-12)?
    } else {
        ChannelFile::read(&args.file)?.to_channel()?
    };
    let ar = affine_rep(&ch, &gell_mann_basis(ch.dim())?)?;
    let mut report = Map::new();
    report.insert("dim".into(), ch.dim().into());
    report.extend(flags(&ch));
    report.insert("lambda00".into(), ar.lambda00().into());
    report.insert("row0_norm".into(), ar.row0_norm().into());
    report.insert("col0_norm".into(), ar.col0_norm().into());
    report.insert("lambda".into(), json!(ar.lambda_full));
    Ok(Value::Object(report))
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub group: String,
    /// Input representation (default: the group's defining one).
    #[arg(long)]
    pub d1: Option<String>,
    /// Output representation.
    #[arg(long)]
    pub d2: Option<String>,
    /// Irrep carried by the Kraus multiplet; all irreps when omitted.
    #[arg(long)]
    pub omega: Option<String>,
    /// Solve for symmetric channels (Kraus operators with A D = Σ Ω A).
    #[arg(long)]
    pub symmetric: bool,
    /// Rescale each multiplet to a trace-preserving channel.
    #[arg(long)]
    pub tp_normalize: bool,
    /// Qudit dimension for dimension-generic groups (pauli, hadamard).
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Directory for the channel files written by --tp-normalize.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

fn solution_json(sol: &IntertwinerSolution, predicted: Option<usize>) -> Value {
    json!({
        "omega": sol.omega.id,
        "omega_dim": sol.omega_dim,
        "multiplicity": sol.multiplicity,
        "predicted_multiplicity": predicted,
        "residual": sol.residual,
        "multiplets": sol.multiplets.iter().map(|m| m.iter().map(matrix_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn solve(args: &SolveArgs) -> CliResult<Value> {
    let group = Group::parse(&args.group)?;
    let d1_name = args.d1.clone().unwrap_or_else(|| group.default_rep().into());
    let d2_name = args.d2.clone().unwrap_or_else(|| d1_name.clone());
    if args.symmetric && args.d2.is_some() {
        return Err(anyhow!("--symmetric takes a single representation (--d1)").into());
    }
    let d1 = rep(group, &d1_name, args.dim)?;
    let d2 = rep(group, &d2_name, args.dim)?;
    let omegas = match &args.omega {
        Some(o) => vec![o.clone()],
        None => group.irrep_names(args.dim),
    };
    let mut solutions = Vec::new();
    let mut channels = Vec::new();
    let mut completeness = 0;
    for name in &omegas {
        let om = rep(group, name, args.dim)?;
        // Symmetric solutions have no separate character prediction here.
        let (sol, predicted) = if args.symmetric {
            (solve_symmetric(d1.as_rep(), om.as_rep())?, None)
        } else {
            let sol = solve_intertwiners(d1.as_rep(), d2.as_rep(), om.as_rep())?;
            (sol, predicted_multiplicity(d1.as_rep(), d2.as_rep(), om.as_rep()).ok())
        };
        completeness += sol.multiplicity * sol.omega_dim;
        if args.tp_normalize {
            for (i, m) in sol.multiplets.iter().enumerate() {
                let ch = normalize_tp(m).context("Σ A†A is not proportional to the identity, so no single scale makes the multiplet trace preserving")?;
                let mut meta = Map::new();
                meta.insert("group".into(), args.group.clone().into());
                meta.insert("d1".into(), d1_name.clone().into());
                if !args.symmetric {
                    meta.insert("d2".into(), d2_name.clone().into());
                }
                meta.insert("omega".into(), sol.omega.id.clone().into());
                meta.insert("multiplet".into(), i.into());
                meta.insert("kraus_scale".into(), kraus_scale(m).into());
                meta.extend(flags(&ch));
                let label = format!("{}-{}-{}", args.group, sol.omega.id, i);
                channels.push((label.clone(), ChannelFile::from_channel(&ch.with_label(label), meta)));
            }
        }
        solutions.push(solution_json(&sol, predicted));
    }
    if args.omega.is_some() && completeness == 0 {
        let om = &omegas[0];
        let why = if args.symmetric {
            format!("Ω = {om} does not occur in D = {d1_name}, so no symmetric Kraus multiplet exists")
        } else {
            format!("Ω = {om} does not occur in D1 ⊗ conj(D2) = {d1_name} ⊗ conj({d2_name}), so no intertwining Kraus multiplet exists")
        };
        return Err(CliError::Empty(why));
    }
    let mut report = json!({
        "group": args.group,
        "d1": d1_name,
        "symmetric": args.symmetric,
        "solutions": solutions,
        "completeness": completeness,
    });
    if !args.symmetric {
        report["d2"] = d2_name.into();
    }
    if args.tp_normalize {
        report["channels"] = match &args.out_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                let mut written = Vec::new();
                for (label, file) in &channels {
                    let path = dir.join(format!("{}.json", label.replace(['/', '\''], "p")));
                    file.write(&path)?;
                    written.push(path);
                }
                json!(written)
            }
            None => serde_json::to_value(channels.iter().map(|(_, f)| f).collect::<Vec<_>>())
                .map_err(anyhow::Error::from)?,
        };
    }
    Ok(report)
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["file", "family"])))]
pub struct CapacityArgs {
    /// Channel file.
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long = "param")]
    pub params: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// One-parameter sweep name=start:stop:step (with --family).
    #[arg(long)]
    pub sweep: Option<Sweep>,
    /// Also write the table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Accept points outside the completely positive range.
    #[arg(long)]
    pub force: bool,
    /// Optimizer restarts per point.
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
}

struct Point {
    value: Option<f64>,
    channel: Channel,
    spec: Option<FamilySpec>,
}

/// Rebuilds the family description stored in a channel file's meta, if any.
fn spec_from_meta(file: &ChannelFile) -> Option<FamilySpec> {
    let family: Family = file.meta.get("family")?.as_str()?.parse().ok()?;
    let mut spec = FamilySpec::new(family).with_dim(file.dim);
    if let Some(Value::Object(params)) = file.meta.get("params") {
        for (k, v) in params {
            let value = match v {
                Value::Number(n) => parse_value(&n.to_string()).ok()?,
                Value::Array(a) if a.len() == 2 => covchan_core::C64::new(a[0].as_f64()?, a[1].as_f64()?),
                _ => return None,
            };
            spec = spec.with(k, value);
        }
    }
    Some(spec)
}

fn capacity_points(args: &CapacityArgs) -> CliResult<Vec<Point>> {
    if let Some(path) = &args.file {
        if args.sweep.is_some() || !args.params.is_empty() {
            return Err(anyhow!("--sweep and --param need --family").into());
        }
        let file = ChannelFile::read(path)?;
        return Ok(vec![Point { value: None, channel: file.to_channel()?, spec: spec_from_meta(&file) }]);
    }
    let name = args.family.as_deref().expect("clap requires a source");
    let params = parse_params(&args.params)?;
    let values: Vec<Option<f64>> = match &args.sweep {
        Some(s) => s.values.iter().copied().map(Some).collect(),
        None => vec![None],
    };
    values
        .into_iter()
        .map(|value| {
            let mut params = params.clone();
            if let (Some(v), Some(s)) = (value, &args.sweep) {
                params.retain(|(k, _)| k != &s.name);
                params.push((s.name.clone(), covchan_core::C64::new(v, 0.0)));
            }
            let spec = family_spec(name, args.dim, &params)?;
            let channel = make_family(&spec)?.channel;
            Ok(Point { value, channel, spec: Some(spec) })
        })
        .collect()
}

pub fn capacity(args: &CapacityArgs, seed: u64) -> CliResult<Value> {
    let opts = SearchOptions { restarts: args.restarts, seed, ..Default::default() };
    let mut rows = Vec::new();
    for point in capacity_points(args)? {
        let cls = classify(&point.channel, CLASSIFY_TOL);
        if !cls.cp && !args.force {
            return Err(anyhow!(
                "channel{} is not completely positive (minimum Choi eigenvalue {:.3e}); pass --force to evaluate the closed form anyway",
                point.value.map(|v| format!(" at {v}")).unwrap_or_default(),
                cls.min_choi_eigenvalue
            )
            .into());
        }
        let closed = match point.spec.as_ref().map(|s| closed_form_capacity(s, args.force)) {
            Some(Ok(c)) => Some(c),
            Some(Err(CoreError::Unsupported(_))) | None => None,
            Some(Err(e)) => return Err(e.into()),
        };
        let (s_min, cap, minimizer, converged) = if cls.cp {
            let r = covariant_capacity(&point.channel, &opts)?;
            let psi: Vec<[f64; 2]> = r.minimizer.as_slice().iter().map(|z| [z.re, z.im]).collect();
            (r.s_min, r.capacity, Some(psi), Some(r.restarts_converged))
        } else {
            (f64::NAN, f64::NAN, None, None)
        };
        let diff = closed.map(|c| (c - cap).abs());
        rows.push(json!({
            "param": point.value,
            "s_min": s_min,
            "capacity": cap,
            "closed_form": closed,
            "abs_diff": diff,
            "cp": cls.cp,
            "restarts_converged": converged,
            "minimizer": minimizer,
        }));
    }
    let max_diff = rows
        .iter()
        .filter_map(|r| r["abs_diff"].as_f64())
        .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
    if let Some(path) = &args.csv {
        let name = args.sweep.as_ref().map_or("point", |s| s.name.as_str());
        write_csv(path, name, &rows)?;
    }
    Ok(json!({
        "seed": seed,
        "restarts": args.restarts,
        "rows": rows,
        "max_abs_diff": max_diff,
    }))
}

fn write_csv(path: &Path, name: &str, rows: &[Value]) -> anyhow::Result<()> {
    use crate::format::csv_number;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .with_context(|| format!("creating {}", path.display()))?;
    w.write_record([name, "s_min", "capacity", "closed_form", "abs_diff"])?;
    for (i, r) in rows.iter().enumerate() {
        let num = |k: &str| csv_number(r[k].as_f64().unwrap_or(f64::NAN));
        let first = r["param"].as_f64().map_or_else(|| i.to_string(), csv_number);
        w.write_record([first, num("s_min"), num("capacity"), num("closed_form"), num("abs_diff")])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("action").required(true).args(["covariant_under", "symmetric_under"])))]
pub struct CheckArgs {
    pub file: PathBuf,
    /// group:d1:d2, e.g. su3:3:3bar.
    #[arg(long)]
    pub covariant_under: Option<String>,
    /// group:d, e.g. s3:defining.
    #[arg(long)]
    pub symmetric_under: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

pub fn check(args: &CheckArgs, seed: u64) -> CliResult<Value> {
    if args.tol.is_nan() || args.tol < 0.0 {
        return Err(anyhow!("tolerance must be nonnegative").into());
    }
    let ch = ChannelFile::read(&args.file)?.to_channel()?;
    let d = ch.dim();
    let (kind, spec, group, names, report) = if let Some(spec) = &args.covariant_under {
        let (group, names) = parse_action(spec, 2)?;
        let (d1, d2) = (rep(group, &names[0], d)?, rep(group, &names[1], d)?);
        let r = check_covariance(&ch, d1.as_rep(), d2.as_rep(), args.tol, seed)?;
        ("covariance", spec, group, names, r)
    } else {
        let spec = args.symmetric_under.as_ref().expect("clap requires an action");
        let (group, names) = parse_action(spec, 1)?;
        let dr = rep(group, &names[0], d)?;
        let r = check_symmetry(&ch, dr.as_rep(), args.tol, seed)?;
        ("symmetry", spec, group, names, r)
    };
    Ok(json!({
        "check": kind,
        "action": spec,
        "group": format!("{group:?}").to_lowercase(),
        "representations": names,
        "holds": report.holds,
        "max_residual": report.max_residual,
        "tol": args.tol,
        "seed": seed,
    }))
}
