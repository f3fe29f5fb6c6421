use std::path::{Path, PathBuf};
use std::time::Instant;

use annulus_core::hopf::default_grid;
use annulus_core::lift::write_obj;
use annulus_core::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::report::{digest_inputs, round_benchmark, RunReport, Timings, REPORT_SCHEMA};

/// Grid used for Jacobian certification of maps produced by the CLI.
const JACOBIAN_GRID: (usize, usize) = (64, 256);

/// A finished run and where its report should go (stdout when `None`).
#[derive(Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub destination: Option<PathBuf>,
}

struct Partial {
    results: Value,
    inputs: Vec<Vec<u8>>,
    benchmark: Option<String>,
    destination: Option<PathBuf>,
}

pub fn run(command: &Command) -> CliResult<Outcome> {
    let start = Instant::now();
    let partial = match command {
        Command::Minimize(a) => minimize_cmd(a)?,
        Command::Modulus(a) => modulus_cmd(a)?,
        Command::Hopf(a) => hopf_cmd(a)?,
        Command::Lift(a) => lift_cmd(a)?,
        Command::Verify(a) => verify_cmd(a)?,
        Command::AnnulusExact(a) => exact_cmd(a)?,
    };
    let config = serde_json::to_value(command).expect("arguments serialize");
    let input_sha256 = if partial.inputs.is_empty() {
        let echo = serde_json::to_vec(&config).expect("arguments serialize");
        digest_inputs([echo.as_slice()])
    } else {
        digest_inputs(partial.inputs.iter().map(Vec::as_slice))
    };
    let report = RunReport {
        schema: REPORT_SCHEMA.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.name().to_string(),
        benchmark: partial.benchmark,
        config,
        input_sha256,
        results: partial.results,
        timings: Timings { total_seconds: start.elapsed().as_secs_f64() },
    };
    Ok(Outcome { report, destination: partial.destination })
}

/// Pretty JSON with a trailing newline.
pub fn render(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn parse_value(path: &Path, bytes: &[u8]) -> CliResult<Value> {
    serde_json::from_slice(bytes).map_err(|e| CliError::MalformedJson { path: path.to_path_buf(), detail: e.to_string() })
}

/// Decodes a well-formed JSON value whose content may still be invalid.
fn decode<T: DeserializeOwned>(path: &Path, value: Value) -> CliResult<T> {
    serde_json::from_value(value)
        .map_err(|e| CliError::Core(Error::InvalidInput(format!("{}: {e}", path.display()))))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

/// Accepts a bare map document, `{ "map": ... }`, or a run report whose
/// results embed a map.
fn load_map(path: &Path) -> CliResult<(HarmonicMap, Vec<u8>)> {
    let bytes = read_file(path)?;
    let mut value = parse_value(path, &bytes)?;
    if let Some(inner) = value.pointer_mut("/results/map") {
        value = inner.take();
    } else if let Some(inner) = value.get_mut("map") {
        value = inner.take();
    }
    Ok((decode(path, value)?, bytes))
}

fn load_curve(path: &Path) -> CliResult<(JordanCurve, Vec<u8>)> {
    let bytes = read_file(path)?;
    let value = parse_value(path, &bytes)?;
    Ok((decode(path, value)?, bytes))
}

/// Radius of a circle centred at the origin, if the curve is one.
fn round_radius(curve: &JordanCurve) -> Option<f64> {
    let c1 = curve.coeff(1);
    let only_first = curve.modes().all(|(m, c)| m == 1 || c.norm() <= 1e-12 * c1.norm());
    (only_first && c1.im.abs() <= 1e-12 * c1.re.abs()).then(|| c1.norm())
}

/// Benchmark name of a closed-form minimizer between round annuli.
fn map_benchmark(map: &HarmonicMap) -> Option<&'static str> {
    let (a1, bm1) = (map.a(1), map.b(-1));
    let rest = map.a0().norm() + map.b0().norm()
        + map.terms().filter(|&(k, _, _)| k != 1 && k != -1).map(|(_, a, b)| a.norm() + b.norm()).sum::<f64>()
        + map.a(-1).norm()
        + map.b(1).norm();
    let real = a1.im.abs() + bm1.im.abs();
    if rest > 1e-9 || real > 1e-9 || (a1.re + bm1.re - 1.0).abs() > 1e-9 {
        return None;
    }
    let rho = map.rho();
    round_benchmark(rho, a1.re * rho + bm1.re / rho)
}

fn check_problem(p: &MinimizationProblem) -> CliResult<()> {
    check_count("num_modes", p.num_modes, 1, 1024, "1 ..= 1024")?;
    check_count("reparam_degree", p.reparam_degree, 0, 128, "0 ..= 128")?;
    check_unit_interval("tol", p.settings.tol)?;
    check_count("max_iter", p.settings.max_iter, 1, 100_000, "1 ..= 100000")?;
    check_count("multistart", p.settings.multistart, 0, 64, "0 ..= 64")?;
    Ok(())
}

fn minimize_cmd(args: &MinimizeArgs) -> CliResult<Partial> {
    let bytes = read_file(&args.config)?;
    let raw = parse_value(&args.config, &bytes)?;
    let named = raw.get("benchmark").and_then(Value::as_str).map(str::to_string);
    if let Some(rho) = raw.get("rho").and_then(Value::as_f64) {
        check_unit_interval("rho", rho)?;
    }
    let problem: MinimizationProblem = decode(&args.config, raw)?;
    check_problem(&problem)?;
    problem.validate()?;

    let res = minimize(&problem)?;
    let modulus = compute_modulus(
        &problem.outer,
        &problem.inner,
        defaults::CHARGES_PER_CURVE,
        defaults::COLLOCATION_PER_CURVE,
    )?;
    let target = TargetDomain {
        area: enclosed_area(&problem.outer) - enclosed_area(&problem.inner),
        modulus: modulus.modulus,
    };
    let (map, jacobian_min, assignment) = if args.swap_curves {
        let inv = res.map.inverted();
        let j = jacobian_scan(&inv, JACOBIAN_GRID.0, JACOBIAN_GRID.1);
        (inv, j, "swapped")
    } else {
        (res.map.clone(), res.jacobian_min, "standard")
    };
    let hopf = HopfReport::build(&map, target, &default_grid(map.rho()));
    let benchmark = named.or_else(|| {
        let outer = round_radius(&problem.outer)?;
        let inner = round_radius(&problem.inner)?;
        ((outer - 1.0).abs() < 1e-12).then(|| round_benchmark(problem.source.rho(), inner)).flatten().map(str::to_string)
    });
    let results = json!({
        "boundary_assignment": assignment,
        "map": to_value(&map),
        "energy": res.energy,
        "energy_history": res.energy_history,
        "outer_reparam": to_value(&res.outer_reparam),
        "inner_reparam": to_value(&res.inner_reparam),
        "converged": res.converged,
        "iterations": res.iterations,
        "gradient_norm": res.gradient_norm,
        "jacobian_min": jacobian_min,
        "target": to_value(&target),
        "target_modulus_estimate": to_value(&modulus),
        "hopf": to_value(&hopf),
    });
    Ok(Partial { results, inputs: vec![bytes], benchmark, destination: args.out.clone() })
}

fn modulus_cmd(args: &ModulusArgs) -> CliResult<Partial> {
    check_count("charges", args.charges, 4, 2048, "4 ..= 2048")?;
    check_count("collocation", args.collocation, args.charges, 8192, "charges ..= 8192")?;
    let (outer, ob) = load_curve(&args.outer)?;
    let (inner, ib) = load_curve(&args.inner)?;
    let est = compute_modulus(&outer, &inner, args.charges, args.collocation)?;
    Ok(Partial { results: to_value(&est), inputs: vec![ob, ib], benchmark: None, destination: args.out.clone() })
}

fn hopf_cmd(args: &HopfArgs) -> CliResult<Partial> {
    let (map, bytes) = load_map(&args.map)?;
    let report = HopfReport::analyze(&map)?;
    Ok(Partial {
        results: to_value(&report),
        inputs: vec![bytes],
        benchmark: map_benchmark(&map).map(str::to_string),
        destination: args.report.clone(),
    })
}

fn lift_cmd(args: &LiftArgs) -> CliResult<Partial> {
    let Resolution { radial, angular } = args.res;
    check_count("res.radial", radial, 2, 4096, "2 ..= 4096")?;
    check_count("res.angular", angular, 2, 4096, "2 ..= 4096")?;
    if !args.c.is_finite() {
        return Err(CliError::OutOfRange { name: "c", value: args.c.to_string(), range: "finite reals" });
    }
    let (map, bytes) = load_map(&args.map)?;
    let surface = lift(&map, args.c, radial, angular)?;
    let mut obj = Vec::new();
    write_obj(&surface, &mut obj).map_err(|source| CliError::Io { path: args.out.clone(), source })?;
    write_file(&args.out, &obj)?;
    let (lo, hi) = surface.height_range();
    let results = json!({
        "kind": to_value(&surface.kind),
        "c": surface.c,
        "radial_res": surface.radial_res,
        "angular_res": surface.angular_res,
        "vertex_count": surface.vertices.len(),
        "face_count": surface.faces.len(),
        "seam": surface.seam,
        "height_range": [lo, hi],
        "null_residual_max": surface.per_vertex_null_residual.iter().copied().fold(0.0, f64::max),
        "obj_sha256": digest_inputs([obj.as_slice()]),
    });
    Ok(Partial {
        results,
        inputs: vec![bytes],
        benchmark: map_benchmark(&map).map(str::to_string),
        destination: args.report.clone(),
    })
}

fn verify_cmd(args: &VerifyArgs) -> CliResult<Partial> {
    check_unit_interval("alpha", args.alpha)?;
    if let Some(c) = args.c {
        if !c.is_finite() {
            return Err(CliError::OutOfRange { name: "c", value: c.to_string(), range: "finite reals" });
        }
    }
    let (map, bytes) = load_map(&args.map)?;
    let grid = default_grid(map.rho());
    let target = TargetDomain::from_map(&map)?;
    let hopf = HopfReport::build(&map, target, &grid);
    let regularity = assess(&map, &target, args.c, args.alpha)?;
    let c = args.c.unwrap_or(hopf.c_fit);
    let (null_value, null_error) = match weierstrass(&map, c, &grid) {
        Ok(data) => (Some(null_residual(&data)), None),
        Err(e) => (None, Some(e.code())),
    };
    let jacobian_min = jacobian_scan(&map, JACOBIAN_GRID.0, JACOBIAN_GRID.1);
    let slacks_nonnegative =
        hopf.kkprime_slack_min >= -1e-8 && hopf.energy_bound_slack >= -1e-8 && regularity.length_area_slack_min >= -1e-6;
    let results = json!({
        "c": c,
        "sign_class": to_value(&hopf.sign_class),
        "energy": map.dirichlet_energy(),
        "target": to_value(&target),
        "jacobian_min": jacobian_min,
        "null_residual": null_value,
        "null_error": null_error,
        "slacks_nonnegative": slacks_nonnegative,
        "hopf": to_value(&hopf),
        "regularity": to_value(&regularity),
    });
    Ok(Partial {
        results,
        inputs: vec![bytes],
        benchmark: map_benchmark(&map).map(str::to_string),
        destination: args.report.clone(),
    })
}

fn exact_cmd(args: &ExactArgs) -> CliResult<Partial> {
    check_unit_interval("r", args.r)?;
    check_unit_interval("R", args.big_r)?;
    let pair = AnnulusPair::new(args.r, args.big_r)?;
    let map = nitsche_minimizer(pair);
    let c = nitsche_c(pair);
    let energy = nitsche_energy(pair);
    let (mod_source, mod_target) = pair.moduli();
    let sign = classify_sign(c, mod_source, mod_target, hopf::default_zero_tol(c));
    let results = json!({
        "pair": to_value(&pair),
        "map": to_value(&map),
        "c": c,
        "energy": energy,
        "target_area": pair.target_area(),
        "energy_bound_slack": energy - 2.0 * pair.target_area(),
        "mod_source": mod_source,
        "mod_target": mod_target,
        "sign_class": to_value(&sign.class),
        "sign_consistent": sign.consistent,
        "bound": to_value(&nitsche_bound(pair)),
    });
    Ok(Partial {
        results,
        inputs: Vec::new(),
        benchmark: round_benchmark(args.r, args.big_r).map(str::to_string),
        destination: args.out.clone(),
    })
}
