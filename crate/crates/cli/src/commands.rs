use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use capax_core::ech::{ech_prefix_with, EchLimits};
use capax_core::ellipsoid::{embedding_factor_with, EllipsoidSpec};
use capax_core::exact::parse_list;
use capax_core::kink::{
    auto_grid, capacity_curve, kink_certificate, refute_finite_generation, volume_capacity_curve,
    CurveSample, RefuteOptions,
};
use capax_core::order::{
    almost_order_recognizing, can_monotonely_generate, CapacityTable, InstanceFile, ScalableInstance,
};
use capax_core::partitions::{check_prop_hypotheses, is_i_collection, FamilyMember};
use capax_core::selftest::{criterion_ids, run_criterion};
use capax_core::shells::{
    build_family, check_normalized_hypotheses, separation_bound, shell_sum, symmetric_samples,
    ShellParams, ShellSpec,
};
use capax_core::{ExtRat, Rat};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::error::{CliError, EXIT_DOMAIN};
use crate::{Command, OrderCheck, Outcome, ShellCheck};

/// Step used when comparing the target curve with the volume capacity.
const REFUTE_STEP: (i64, i64) = (1, 1_000_000_000_000);
const SQRT_DIGITS: u32 = 40;

pub fn dispatch(cmd: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cmd {
        Command::Ech { weights, count } => ech(cfg, &weights, count),
        Command::Embed { src, dst, jmax } => embed(cfg, &src, &dst, jmax),
        Command::Icheck { family, ell } => icheck(cfg, &family, ell),
        Command::Shell {
            r,
            k,
            n,
            a0,
            samples,
            check,
            unchecked,
        } => shell(cfg, ShellParams::new(r, k, n, a0), samples, check, unchecked),
        Command::Order {
            instance,
            table,
            check,
            target,
        } => order(cfg, &instance, table.as_deref(), check, target.as_deref()),
        Command::Kink {
            a0,
            grid,
            h,
            jmax,
            steps,
            threshold,
            curve_csv,
            refute,
        } => kink(cfg, KinkArgs {
            a0,
            grid,
            h,
            jmax,
            steps,
            threshold,
            curve_csv: curve_csv.as_deref(),
            refute,
        }),
        Command::Selftest { only } => selftest(cfg, only.as_deref()),
    }
}

fn ok(stdout: String) -> Result<Outcome, CliError> {
    Ok(Outcome { stdout, exit: 0 })
}

fn json_doc(cfg: &RunConfig, command: &str, result: impl Serialize) -> Result<String, CliError> {
    let doc = json!({
        "command": command,
        "seed": cfg.seed,
        "result": result,
    });
    let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::domain("io", e))?;
    s.push('\n');
    Ok(s)
}

fn csv_doc<R: AsRef<[u8]>>(header: &[&str], rows: impl IntoIterator<Item = Vec<R>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::domain("io", e.error()))?;
    String::from_utf8(bytes).map_err(|e| CliError::domain("io", e))
}

fn read_json<T: DeserializeOwned>(what: &str, path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::domain("parse", format!("{what} {}: {e}", path.display())))
}

fn limits(cfg: &RunConfig) -> EchLimits {
    EchLimits {
        max_prefix: cfg.max_prefix,
    }
}

fn ech(cfg: &RunConfig, weights: &str, count: usize) -> Result<Outcome, CliError> {
    let w = parse_list(weights)?;
    let prefix = ech_prefix_with(&w, count, limits(cfg))?;
    match cfg.output_format {
        OutputFormat::Json => ok(json_doc(cfg, "ech", json!({
            "weights": prefix.weights,
            "count": count,
            "values": prefix.values,
        }))?),
        OutputFormat::Csv => ok(csv_doc(
            &["j", "value"],
            prefix
                .values
                .iter()
                .enumerate()
                .map(|(j, v)| vec![j.to_string(), v.to_string()]),
        )?),
    }
}

fn embed(cfg: &RunConfig, src: &str, dst: &str, jmax: Option<usize>) -> Result<Outcome, CliError> {
    let src = EllipsoidSpec::new(parse_list(src)?)?;
    let dst = EllipsoidSpec::new(parse_list(dst)?)?;
    let j = jmax.unwrap_or(cfg.default_truncation_j);
    let v = embedding_factor_with(&src, &dst, j, limits(cfg))?;
    match cfg.output_format {
        OutputFormat::Json => ok(json_doc(cfg, "embed", json!({
            "src": src.weights(),
            "dst": dst.weights(),
            "verdict": v,
        }))?),
        OutputFormat::Csv => ok(csv_doc(
            &["factor", "truncation_j", "binding_index", "volume_bound_pow", "volume_bound_limited"],
            [vec![
                v.factor.to_string(),
                v.truncation_j.to_string(),
                v.binding_index.to_string(),
                v.volume_bound_pow.to_string(),
                v.volume_bound_limited.to_string(),
            ]],
        )?),
    }
}

fn icheck(cfg: &RunConfig, path: &Path, ell: Option<usize>) -> Result<Outcome, CliError> {
    let family: Vec<FamilyMember> = read_json("family", path)?;
    let cert = is_i_collection(&family)?;
    let ell = ell.unwrap_or_else(|| family.first().map_or(0, |m| m.values.len()));
    let hyp = check_prop_hypotheses(&family, ell);
    match cfg.output_format {
        OutputFormat::Json => ok(json_doc(cfg, "icheck", json!({
            "bound": cert.bound(),
            "certificate": cert,
            "ell": ell,
            "hypotheses": hyp,
        }))?),
        OutputFormat::Csv => ok(csv_doc(
            &["c0", "c1", "bound", "is_i_collection", "hypotheses_pass"],
            [vec![
                cert.c0.to_string(),
                cert.c1.to_string(),
                cert.bound().to_string(),
                cert.is_i_collection.to_string(),
                hyp.all_pass.to_string(),
            ]],
        )?),
    }
}

fn shell(
    cfg: &RunConfig,
    params: ShellParams,
    count: usize,
    check: ShellCheck,
    unchecked: bool,
) -> Result<Outcome, CliError> {
    let samples = symmetric_samples(&params.a0, count);
    let spec = if unchecked {
        ShellSpec::unchecked(params, samples)?
    } else {
        ShellSpec::new(params, samples)?
    };
    let family = build_family(&spec)?;

    if cfg.output_format == OutputFormat::Csv {
        let rows = family
            .iter()
            .map(|m| {
                let get = |l: &str| m.values.get(l).map(Rat::to_string).unwrap_or_default();
                Ok(vec![
                    m.a.to_string(),
                    get(capax_core::shells::INNER),
                    get(capax_core::shells::OUTER),
                    shell_sum(&spec, &m.a)?.to_string(),
                ])
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        return ok(csv_doc(&["a", "inner", "outer", "sum"], rows)?);
    }

    let want = |c: ShellCheck| check == ShellCheck::All || check == c;
    let mut pass = spec.params.violations().is_empty();
    let mut out = serde_json::Map::new();
    out.insert("params".into(), to_value(&spec.params)?);
    out.insert("samples".into(), to_value(&spec.samples)?);
    out.insert("violations".into(), to_value(spec.params.violations())?);
    if want(ShellCheck::Family) {
        out.insert("family".into(), to_value(&family)?);
    }
    if want(ShellCheck::Hypotheses) {
        let report = check_prop_hypotheses(&family, 2);
        pass &= report.all_pass;
        out.insert("hypotheses".into(), to_value(report)?);
    }
    if want(ShellCheck::Normalized) {
        let v = match check_normalized_hypotheses(&spec.params) {
            Ok(report) => {
                pass &= report.pass;
                to_value(report)?
            }
            // Only defined for k = 2; `all` reports why instead of failing.
            Err(e) if check == ShellCheck::All => json!({ "skipped": e.to_string() }),
            Err(e) => return Err(e.into()),
        };
        out.insert("normalized".into(), v);
    }
    if want(ShellCheck::Separation) {
        let sep = separation_bound(&family)?;
        pass &= sep.separates;
        out.insert("separation".into(), to_value(sep)?);
    }
    out.insert("pass".into(), Value::Bool(pass));
    ok(json_doc(cfg, "shell", Value::Object(out))?)
}

fn to_value(v: impl Serialize) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::domain("io", e))
}

fn order(
    cfg: &RunConfig,
    instance: &Path,
    table: Option<&Path>,
    check: OrderCheck,
    target: Option<&Path>,
) -> Result<Outcome, CliError> {
    let file: InstanceFile = read_json("instance", instance)?;
    let j = file.truncation_j.unwrap_or(cfg.default_truncation_j);
    let inst = ScalableInstance::new(file.kind, file.elements, j)?;
    let named: BTreeMap<String, BTreeMap<String, ExtRat>> = match table {
        Some(p) => read_json("table", p)?,
        None => BTreeMap::new(),
    };
    let table = CapacityTable::from_named(&inst, &named)?;
    let violation = table.validate(&inst)?;

    let (result, holds) = match check {
        OrderCheck::Recognize => {
            let rec = almost_order_recognizing(&inst, &table)?;
            (to_value(&rec)?, rec.holds)
        }
        OrderCheck::Generate => {
            let path = target.ok_or_else(|| CliError::Usage("--check generate needs --target".into()))?;
            let values: BTreeMap<String, ExtRat> = read_json("target", path)?;
            for key in values.keys() {
                inst.index_of(key)?;
            }
            let col = inst
                .elements()
                .iter()
                .map(|e| {
                    values
                        .get(&e.name)
                        .cloned()
                        .ok_or_else(|| capax_core::order::OrderError::MissingTarget(e.name.clone()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let generation = can_monotonely_generate(&inst, &table, &col)?;
            (to_value(&generation)?, generation.holds)
        }
    };

    match cfg.output_format {
        OutputFormat::Json => ok(json_doc(cfg, "order", json!({
            "kind": inst.kind(),
            "elements": inst.len(),
            "capacities": table.names,
            "table_violation": violation,
            "check": result,
        }))?),
        OutputFormat::Csv => {
            let witness = |k: &str| result["witness"][k].as_str().unwrap_or("").to_string();
            ok(csv_doc(
                &["holds", "s", "s_prime", "table_valid"],
                [vec![
                    holds.to_string(),
                    witness("s_name"),
                    witness("s_prime_name"),
                    violation.is_none().to_string(),
                ]],
            )?)
        }
    }
}

struct KinkArgs<'a> {
    a0: Rat,
    grid: String,
    h: Rat,
    jmax: usize,
    steps: i64,
    threshold: Option<Rat>,
    curve_csv: Option<&'a Path>,
    refute: bool,
}

fn curve_csv(curve: &CurveSample) -> Result<String, CliError> {
    csv_doc(
        &["a", "value", "binding_index"],
        curve
            .points
            .iter()
            .map(|p| vec![p.a.to_string(), p.value.to_string(), p.binding_index.to_string()]),
    )
}

fn kink(cfg: &RunConfig, args: KinkArgs<'_>) -> Result<Outcome, CliError> {
    let grid = match args.grid.trim() {
        "auto" => auto_grid(&args.a0, &args.h, args.steps),
        list => parse_list(list)?,
    };
    let curve = capacity_curve(&args.a0, &grid, args.jmax)?;
    let cert = kink_certificate(&curve, &args.h, args.threshold.clone())?;
    if let Some(path) = args.curve_csv {
        fs::write(path, curve_csv(&curve)?)?;
    }
    let refutation = if args.refute {
        let h = Rat::new(REFUTE_STEP.0, REFUTE_STEP.1);
        let fine = [&args.a0 - &h, args.a0.clone(), &args.a0 + &h];
        let target = capacity_curve(&args.a0, &fine, args.jmax)?;
        let mut inputs = BTreeMap::new();
        inputs.insert("volume".to_string(), volume_capacity_curve(&fine, SQRT_DIGITS));
        let mut opts = RefuteOptions::for_center(&args.a0);
        if let Some(t) = args.threshold {
            opts.threshold = t;
        }
        Some(refute_finite_generation(&inputs, &target, &h, opts)?)
    } else {
        None
    };
    match cfg.output_format {
        OutputFormat::Json => ok(json_doc(cfg, "kink", json!({
            "curve": curve,
            "invariant_violations": curve.invariant_violations(),
            "certificate": cert,
            "refutation": refutation,
        }))?),
        OutputFormat::Csv => ok(curve_csv(&curve)?),
    }
}

#[derive(Serialize)]
struct CriterionLine {
    id: u8,
    name: String,
    pass: bool,
    detail: String,
}

fn selftest(cfg: &RunConfig, only: Option<&str>) -> Result<Outcome, CliError> {
    let ids = match only {
        None => criterion_ids(),
        Some(list) => {
            let known = criterion_ids();
            list.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u8>()
                        .ok()
                        .filter(|id| known.contains(id))
                        .ok_or_else(|| CliError::Usage(format!("unknown criterion {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let lines: Vec<CriterionLine> = ids
        .into_iter()
        .filter_map(|id| run_criterion(id, cfg.seed))
        .map(|r| CriterionLine {
            id: r.id,
            name: r.name,
            pass: r.pass,
            detail: r.detail,
        })
        .collect();
    let failed = lines.iter().filter(|l| !l.pass).count();
    let stdout = match cfg.output_format {
        OutputFormat::Json => json_doc(cfg, "selftest", json!({
            "passed": lines.len() - failed,
            "failed": failed,
            "criteria": lines,
        }))?,
        OutputFormat::Csv => csv_doc(
            &["id", "name", "pass", "detail"],
            lines
                .iter()
                .map(|l| vec![l.id.to_string(), l.name.clone(), l.pass.to_string(), l.detail.clone()]),
        )?,
    };
    Ok(Outcome {
        stdout,
        exit: if failed == 0 { 0 } else { EXIT_DOMAIN },
    })
}
