//! Command-line front end: best constants, extremal profiles, extremality
//! verification, moment integrals, the blow-up sign scan and the torus
//! simulator, with reproducible key=value configs and CSV/JSON artifacts.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use gn_toolkit::gn::{closed_form_a, dpd_r, extremal_profile, validate_params, GnError, GnParams};
use gn_toolkit::quad::{
    blowup_coefficient, moments, verify_extremality, QuadError, QuadratureScheme,
};
use gn_toolkit::torus::{
    alpha_sweep, concentration_at, minimize_j_alpha, SimOptions, TorusGrid,
};
use gn_toolkit::blowup_regime_equivalence;

const OUTPUT_DIR_ENV: &str = "GN_OUTPUT_DIR";

#[derive(Parser)]
#[command(name = "gn", about = "Gagliardo-Nirenberg inequality toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print theta, p*, regime, the closed-form r and (in range) A(p,q)
    Constants(ConstantsArgs),
    /// Tabulate the extremal profile w and its derivative to CSV
    Extremal(ExtremalArgs),
    /// Check Q(w)·A(p,q) = 1 and run seeded perturbation tests
    Verify(VerifyArgs),
    /// Compute the moment integrals I1..I5
    Moments(MomentsArgs),
    /// Scan the blow-up coefficient over a p-grid to CSV
    Blowup(BlowupArgs),
    /// Minimize the penalized functional at a single alpha
    Simulate(SimulateArgs),
    /// Run an increasing alpha sweep with warm starts
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ConfigArg {
    /// key=value config file; explicit flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantsArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    /// Defaults to the closed-form pairing p(q-1)/(p-1)
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExtremalArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    /// Comma-separated radii; empty string gives a header-only CSV
    #[arg(long)]
    rho: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QuadArgs {
    #[arg(long)]
    target_rel_err: Option<f64>,
    #[arg(long)]
    panels: Option<usize>,
    #[arg(long)]
    radius: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    perturbations: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    quad: QuadArgs,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BlowupArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p_min: Option<f64>,
    #[arg(long)]
    p_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Fixed q; defaults to the midpoint of (p, p(n-1)/(n-p)) per row
    #[arg(long)]
    q: Option<f64>,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimCommonArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[arg(long)]
    dim: Option<u32>,
    /// Grid points per side
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Exit with code 5 if any run fails to converge
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: SimCommonArgs,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: SimCommonArgs,
    /// Comma-separated strictly increasing alphas
    #[arg(long)]
    alphas: Option<String>,
    #[arg(long)]
    out_json: Option<PathBuf>,
    #[arg(long)]
    out_csv: Option<PathBuf>,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn domain(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<GnError> for CliError {
    fn from(e: GnError) -> Self {
        CliError::domain(e.to_string())
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        let code = match e {
            QuadError::ExtremalityViolated { .. } => 4,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<gn_toolkit::TorusError> for CliError {
    fn from(e: gn_toolkit::TorusError) -> Self {
        CliError::domain(e.to_string())
    }
}

/// Flat key=value config with '#' comments, mirrored back into artifacts.
#[derive(Default)]
struct Config {
    entries: BTreeMap<String, String>,
}

impl Config {
    fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    CliError::domain(format!(
                        "{}:{}: expected key=value, got {line:?}",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                entries.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Config { entries })
    }

    /// Flag wins over config entry wins over default; the resolved value is
    /// recorded for the artifact echo.
    fn resolve<T: std::str::FromStr + std::fmt::Display>(
        &mut self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, CliError> {
        let value = match flag {
            Some(v) => v,
            None => match self.entries.get(key) {
                Some(raw) => raw.parse().map_err(|_| {
                    CliError::domain(format!("config key {key}: cannot parse {raw:?}"))
                })?,
                None => default,
            },
        };
        self.entries.insert(key.to_string(), value.to_string());
        Ok(value)
    }

    fn resolve_required<T: std::str::FromStr + std::fmt::Display>(
        &mut self,
        flag: Option<T>,
        key: &str,
    ) -> Result<T, CliError> {
        let value = match flag {
            Some(v) => v,
            None => {
                let raw = self
                    .entries
                    .get(key)
                    .ok_or_else(|| CliError::domain(format!("missing required value: {key}")))?;
                raw.parse().map_err(|_| {
                    CliError::domain(format!("config key {key}: cannot parse {raw:?}"))
                })?
            }
        };
        self.entries.insert(key.to_string(), value.to_string());
        Ok(value)
    }

    fn echo(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in &self.entries {
            map.insert(k.clone(), Value::String(v.clone()));
        }
        Value::Object(map)
    }
}

/// 12 significant digits, the fixed float format for every artifact.
fn sig12(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else {
        x.to_string()
    }
}

fn round12(x: f64) -> f64 {
    if x.is_finite() {
        sig12(x).parse().unwrap_or(x)
    } else {
        x
    }
}

/// Round every float in a JSON tree to 12 significant digits.
fn round_tree(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.as_i64().is_none() && n.as_u64().is_none() {
                    if let Some(rounded) = serde_json::Number::from_f64(round12(f)) {
                        *value = Value::Number(rounded);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_tree),
        Value::Object(map) => map.values_mut().for_each(round_tree),
        _ => {}
    }
}

fn output_path(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUTPUT_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let path = output_path(path);
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("out")
    ));
    std::fs::write(&tmp, contents)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, &path)
        .map_err(|e| CliError::io(format!("cannot rename to {}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn emit_json(mut value: Value, out: Option<&Path>) -> Result<(), CliError> {
    round_tree(&mut value);
    let text = format!("{}\n", serde_json::to_string_pretty(&value).expect("json"));
    match out {
        Some(path) => write_atomic(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn quad_scheme(quad: &QuadArgs, cfg: &mut Config) -> Result<QuadratureScheme, CliError> {
    let mut scheme = QuadratureScheme::default();
    scheme.target_rel_err = cfg.resolve(
        quad.target_rel_err,
        "target_rel_err",
        scheme.target_rel_err,
    )?;
    scheme.panels = cfg.resolve(quad.panels, "panels", scheme.panels)?;
    scheme.truncation_radius = cfg.resolve(quad.radius, "radius", scheme.truncation_radius)?;
    Ok(scheme)
}

fn params_with_default_r(
    cfg: &mut Config,
    n: Option<u32>,
    p: Option<f64>,
    q: Option<f64>,
    r: Option<f64>,
) -> Result<GnParams, CliError> {
    let n = cfg.resolve_required(n, "n")?;
    let p = cfg.resolve_required(p, "p")?;
    let q = cfg.resolve_required(q, "q")?;
    let r = match (r, cfg.entries.get("r").cloned()) {
        (Some(v), _) => v,
        (None, Some(raw)) => raw
            .parse()
            .map_err(|_| CliError::domain(format!("config key r: cannot parse {raw:?}")))?,
        (None, None) => dpd_r(p, q)?,
    };
    cfg.entries.insert("r".to_string(), r.to_string());
    Ok(validate_params(n, p, q, r)?)
}

fn cmd_constants(args: ConstantsArgs) -> Result<(), CliError> {
    let mut cfg = Config::load(args.config.config.as_deref())?;
    let params = params_with_default_r(&mut cfg, args.n, args.p, args.q, args.r)?;
    let r_dpd = dpd_r(params.p, params.q)?;
    let a = closed_form_a(&params).ok();
    if args.json {
        emit_json(
            json!({
                "theta": params.theta,
                "p_star": if params.p_star.is_finite() { Value::from(params.p_star) } else { Value::String("inf".into()) },
                "regime": params.regime.to_string(),
                "r_dpd": r_dpd,
                "A": a,
            }),
            None,
        )?;
    } else {
        println!("theta = {}", sig12(params.theta));
        if params.p_star.is_finite() {
            println!("p_star = {}", sig12(params.p_star));
        } else {
            println!("p_star = inf");
        }
        println!("regime = {}", params.regime);
        println!("r_dpd = {}", sig12(r_dpd));
        match a {
            Some(a) => println!("A = {}", sig12(a)),
            None => println!("A = (outside the closed-form range)"),
        }
    }
    Ok(())
}

fn parse_list(raw: &str) -> Result<Vec<f64>, CliError> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::domain(format!("cannot parse number {s:?}")))
        })
        .collect()
}

fn cmd_extremal(args: ExtremalArgs) -> Result<(), CliError> {
    let mut cfg = Config::load(args.config.config.as_deref())?;
    let n = cfg.resolve_required(args.n, "n")?;
    let p = cfg.resolve_required(args.p, "p")?;
    let q = cfg.resolve_required(args.q, "q")?;
    let rho_raw = cfg.resolve(
        args.rho,
        "rho",
        "0,0.25,0.5,0.75,1,1.5,2,3,4,5,7.5,10".to_string(),
    )?;
    let out = cfg.resolve(
        args.out.map(|p| p.display().to_string()),
        "out",
        "extremal.csv".to_string(),
    )?;
    let params = validate_params(n, p, q, dpd_r(p, q)?)?;
    let w = extremal_profile(&params)?;
    let mut csv = String::from("rho,w,dw\n");
    for rho in parse_list(&rho_raw)? {
        writeln!(
            csv,
            "{},{},{}",
            sig12(rho),
            sig12(w.evaluate(rho)),
            sig12(w.evaluate_derivative(rho))
        )
        .expect("string write");
    }
    write_atomic(Path::new(&out), &csv)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let mut cfg = Config::load(args.config.config.as_deref())?;
    let params = params_with_default_r(&mut cfg, args.n, args.p, args.q, args.r)?;
    let perturbations = cfg.resolve(args.perturbations, "perturbations", 20)?;
    let seed = cfg.resolve(args.seed, "seed", 42u64)?;
    let scheme = quad_scheme(&args.quad, &mut cfg)?;
    let report = verify_extremality(&params, &scheme, perturbations, seed)?;
    let payload = json!({
        "config": cfg.echo(),
        "seed": seed,
        "report": serde_json::to_value(&report).expect("report json"),
    });
    emit_json(payload, args.out.as_deref())
}

fn cmd_moments(args: MomentsArgs) -> Result<(), CliError> {
    let mut cfg = Config::load(args.config.config.as_deref())?;
    let params = params_with_default_r(&mut cfg, args.n, args.p, args.q, args.r)?;
    let scheme = quad_scheme(&args.quad, &mut cfg)?;
    let m = moments(&params, &scheme)?;
    let payload = json!({
        "config": cfg.echo(),
        "params": serde_json::to_value(params).expect("params json"),
        "moments": serde_json::to_value(m).expect("moments json"),
    });
    emit_json(payload, args.out.as_deref())
}

fn cmd_blowup(args: BlowupArgs) -> Result<(), CliError> {
    let mut cfg = Config::load(args.config.config.as_deref())?;
    let n = cfg.resolve_required(args.n, "n")?;
    let p_min = cfg.resolve_required(args.p_min, "p_min")?;
    let p_max = cfg.resolve_required(args.p_max, "p_max")?;
    let steps = cfg.resolve(args.steps, "steps", 20usize)?;
    let fixed_q: Option<f64> = match (args.q, cfg.entries.get("q").cloned()) {
        (Some(v), _) => Some(v),
        (None, Some(raw)) => Some(raw.parse().map_err(|_| {
            CliError::domain(format!("config key q: cannot parse {raw:?}"))
        })?),
        (None, None) => None,
    };
    let out = cfg.resolve(
        args.out.map(|p| p.display().to_string()),
        "out",
        "blowup.csv".to_string(),
    )?;
    let scheme = quad_scheme(&args.quad, &mut cfg)?;
    if steps == 0 || !(p_max >= p_min) {
        return Err(CliError::domain("need steps >= 1 and p_max >= p_min"));
    }

    let mut csv = String::from("p,q,r,theta,I1,I2,I3,I4,I5,bracket,in_regime,reason\n");
    let mut in_regime_rows = 0usize;
    let mut all_positive = true;
    for k in 0..steps {
        let t = if steps == 1 {
            0.0
        } else {
            k as f64 / (steps as f64 - 1.0)
        };
        let p = p_min + t * (p_max - p_min);
        let q = fixed_q.unwrap_or_else(|| {
            let upper = p * (n as f64 - 1.0) / (n as f64 - p);
            0.5 * (p + upper)
        });
        let (in_regime, _) = blowup_regime_equivalence(n, p);
        let row = dpd_r(p, q)
            .map_err(CliError::from)
            .and_then(|r| validate_params(n, p, q, r).map_err(CliError::from))
            .and_then(|params| {
                let m = moments(&params, &scheme)?;
                let bracket = blowup_coefficient(&params, &scheme)?;
                Ok((params, m, bracket))
            });
        match row {
            Ok((params, m, bracket)) => {
                if in_regime {
                    in_regime_rows += 1;
                    if bracket <= 0.0 {
                        all_positive = false;
                    }
                }
                writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{},{},{},{},",
                    sig12(p),
                    sig12(q),
                    sig12(params.r),
                    sig12(params.theta),
                    sig12(m.i1.value),
                    sig12(m.i2.value),
                    sig12(m.i3.value),
                    sig12(m.i4.value),
                    sig12(m.i5.value),
                    sig12(bracket),
                    in_regime
                )
                .expect("string write");
            }
            Err(e) => {
                let r = dpd_r(p, q).map(sig12).unwrap_or_else(|_| "NA".into());
                writeln!(
                    csv,
                    "{},{},{},NA,NA,NA,NA,NA,NA,NA,{},{}",
                    sig12(p),
                    sig12(q),
                    r,
                    in_regime,
                    e.message.replace(',', ";")
                )
                .expect("string write");
            }
        }
    }
    write_atomic(Path::new(&out), &csv)?;
    println!(
        "in-regime rows: {in_regime_rows}; bracket positive throughout: {}",
        if in_regime_rows > 0 { all_positive } else { false }
    );
    Ok(())
}

struct SimSetup {
    params: GnParams,
    grid: TorusGrid,
    options: SimOptions,
    strict: bool,
    seed: u64,
}

fn sim_setup(common: SimCommonArgs, cfg: &mut Config) -> Result<SimSetup, CliError> {
    let dim = cfg.resolve(common.dim, "dim", 2u32)?;
    let points = cfg.resolve(common.points, "points", 64usize)?;
    let p = cfg.resolve(common.p, "p", 2.0)?;
    let q = cfg.resolve(common.q, "q", 2.0)?;
    let r = cfg.resolve(common.r, "r", 3.0)?;
    let seed = cfg.resolve(common.seed, "seed", 0u64)?;
    let max_iters = cfg.resolve(common.max_iters, "max_iters", 100_000usize)?;
    let rel_tol = cfg.resolve(common.rel_tol, "rel_tol", 1e-10)?;
    let delta = match (common.delta, cfg.entries.get("delta").cloned()) {
        (Some(v), _) => Some(v),
        (None, Some(raw)) => Some(raw.parse().map_err(|_| {
            CliError::domain(format!("config key delta: cannot parse {raw:?}"))
        })?),
        (None, None) => None,
    };
    let params = validate_params(dim, p, q, r)?;
    let grid = TorusGrid::new(dim, points)?;
    let options = SimOptions {
        delta,
        max_iters,
        rel_tol,
        seed,
        ..SimOptions::default()
    };
    Ok(SimSetup {
        params,
        grid,
        options,
        strict: common.strict,
        seed,
    })
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let mut cfg = Config::load(args.common.config.config.as_deref())?;
    let alpha = cfg.resolve_required(args.alpha, "alpha")?;
    let out = cfg.resolve(
        args.out.map(|p| p.display().to_string()),
        "out",
        "simulate.json".to_string(),
    )?;
    let setup = sim_setup(args.common, &mut cfg)?;
    let (_, diag) = minimize_j_alpha(&setup.params, setup.grid, alpha, &setup.options)?;
    let converged = diag.converged;
    let payload = json!({
        "config": cfg.echo(),
        "seed": setup.seed,
        "diagnostics": serde_json::to_value(&diag).expect("diag json"),
    });
    emit_json(payload, Some(Path::new(&out)))?;
    if setup.strict && !converged {
        return Err(CliError {
            code: 5,
            message: format!("run at alpha = {alpha} did not converge"),
        });
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let mut cfg = Config::load(args.common.config.config.as_deref())?;
    let alphas_raw = cfg.resolve(args.alphas, "alphas", "1,10,100,1000".to_string())?;
    let out_json = cfg.resolve(
        args.out_json.map(|p| p.display().to_string()),
        "out_json",
        "sweep.json".to_string(),
    )?;
    let out_csv = cfg.resolve(
        args.out_csv.map(|p| p.display().to_string()),
        "out_csv",
        "sweep.csv".to_string(),
    )?;
    let setup = sim_setup(args.common, &mut cfg)?;
    let alphas = parse_list(&alphas_raw)?;
    let report = alpha_sweep(&setup.params, setup.grid, &alphas, &setup.options)?;

    let mut csv = String::from("alpha,nu_alpha,grad_energy,penalty,q_mass,conc_r02\n");
    for rec in &report.records {
        let conc = concentration_at(rec, 0.2).unwrap_or(f64::NAN);
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            sig12(rec.alpha),
            sig12(rec.nu_alpha),
            sig12(rec.grad_energy),
            sig12(rec.penalty),
            sig12(rec.q_mass),
            sig12(conc)
        )
        .expect("string write");
    }
    write_atomic(Path::new(&out_csv), &csv)?;

    let payload = json!({
        "config": cfg.echo(),
        "seed": setup.seed,
        "records": serde_json::to_value(&report.records).expect("records json"),
        "trends": {
            "nu_nondecreasing": report.nu_nondecreasing,
            "penalty_share_decreasing": report.penalty_share_decreasing,
            "concentration_nondecreasing": report.concentration_nondecreasing,
        },
    });
    emit_json(payload, Some(Path::new(&out_json)))?;

    if setup.strict {
        if let Some(rec) = report.records.iter().find(|r| !r.converged) {
            return Err(CliError {
                code: 5,
                message: format!("run at alpha = {} did not converge", rec.alpha),
            });
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Constants(args) => cmd_constants(args),
        Command::Extremal(args) => cmd_extremal(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Moments(args) => cmd_moments(args),
        Command::Blowup(args) => cmd_blowup(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
