mod config;
mod report;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as Cx;
use qbiu::bounds::{bound_report, BoundValue, BracketExponent};
use qbiu::classes::{membership_with, ClassSpec, Family, DEFAULT_POINTS_PER_RING, DEFAULT_RINGS};
use qbiu::oracle::{
    classical_limit_scan, probe_bounds, relation_residuals, sample_consistent_point,
    QuantityProbe,
};
use qbiu::qcalc::QParams;
use qbiu::{CoreError, MindaTarget, NormalizedFunction, Series};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use config::FileConfig;
use report::{emit, Format, Row};

const EXIT_CONFIG: u8 = 2;
const EXIT_DOMINANCE: u8 = 3;
const EXIT_UNSUPPORTED: u8 = 4;
const DEFAULT_SEED: u64 = 17;
const RESIDUAL_SPOT_CHECKS: usize = 25;
const RESIDUAL_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(name = "qbiu", version, about = "Coefficient bounds for bi-univalent function classes built on a q-difference operator")]
struct Cli {
    /// TOML file with the same keys as the flags; flags take precedence
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the closed-form coefficient bounds for one class
    EvalBounds {
        #[command(flatten)]
        spec: SpecArgs,
        /// Fekete-Szego weight "re" or "re,im"; repeatable
        #[arg(long)]
        tau: Vec<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Grid-search the admissible coefficient region and compare with the bounds
    Probe {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        tau: Vec<String>,
        /// Step of the search grid over [-2, 2]
        #[arg(long)]
        grid_step: Option<f64>,
        /// Seed for the residual spot-check sampler
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, hide = true, value_parser = ["2k", "k"])]
        bracket_exponent: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Test one function against the class membership conditions
    CheckMembership {
        #[command(flatten)]
        spec: SpecArgs,
        /// Taylor coefficients a2,a3,... as comma-separated reals
        #[arg(long)]
        coeffs: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Evaluate the k = 0 bounds along a ladder of q values approaching 1
    LimitScan {
        #[command(flatten)]
        spec: SpecArgs,
        /// Comma-separated q values
        #[arg(long)]
        q_ladder: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Class family: M or F
    #[arg(long)]
    family: Option<String>,
    /// Convex-combination weight of the M family, in [0, 1]
    #[arg(long)]
    lambda: Option<f64>,
    /// Convex-combination weight of the F family, in [0, 1]
    #[arg(long)]
    mu: Option<f64>,
    /// Deformation parameter, in (0, 1)
    #[arg(long)]
    q: Option<f64>,
    /// Operator power
    #[arg(long)]
    k: Option<u32>,
    /// Strongly starlike target exponent, in (0, 1]
    #[arg(long)]
    alpha: Option<f64>,
    /// Starlike-of-order target parameter, in [0, 1)
    #[arg(long)]
    beta: Option<f64>,
    /// Custom target: file with one real coefficient per line, constant term first
    #[arg(long, value_name = "PATH")]
    series_file: Option<String>,
    /// Working order of all series arithmetic
    #[arg(long)]
    truncation: Option<usize>,
}

#[derive(Args)]
struct OutArgs {
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<String>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
}

/// Validation failure with the exit code it maps to.
struct Fail(String, u8);

impl Fail {
    fn config(msg: impl Into<String>) -> Self {
        Fail(msg.into(), EXIT_CONFIG)
    }
}

impl From<CoreError> for Fail {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::NoRegionOracle => EXIT_UNSUPPORTED,
            _ => EXIT_CONFIG,
        };
        Fail(e.to_string(), code)
    }
}

/// Fully resolved run parameters after merging flags over the config file.
struct Resolved {
    spec: ClassSpec,
    weight: f64,
    truncation: usize,
    target_kind: String,
    target_param: String,
}

fn resolve_spec(args: &SpecArgs, cfg: &FileConfig) -> Result<Resolved, Fail> {
    let family_s = args
        .family
        .clone()
        .or_else(|| cfg.family.clone())
        .ok_or_else(|| Fail::config("--family is required (M or F)"))?;
    let lambda = args.lambda.or(cfg.lambda);
    let mu = args.mu.or(cfg.mu);
    let (family, weight) = match family_s.as_str() {
        "M" | "m" => {
            if mu.is_some() {
                return Err(Fail::config("--mu does not apply to family M, use --lambda"));
            }
            let l = lambda.ok_or_else(|| Fail::config("family M needs --lambda"))?;
            (Family::M { lambda: l }, l)
        }
        "F" | "f" => {
            if lambda.is_some() {
                return Err(Fail::config("--lambda does not apply to family F, use --mu"));
            }
            let m = mu.ok_or_else(|| Fail::config("family F needs --mu"))?;
            (Family::F { mu: m }, m)
        }
        other => return Err(Fail::config(format!("unknown family {other:?}, expected M or F"))),
    };

    let q = args.q.or(cfg.q).ok_or_else(|| Fail::config("--q is required"))?;
    let k = args.k.or(cfg.k).unwrap_or(0);
    let qp = QParams::new(q, k)?;

    let truncation = args.truncation.or(cfg.truncation).unwrap_or(qbiu::DEFAULT_ORDER);
    if truncation < 4 {
        return Err(Fail::config("--truncation must be at least 4"));
    }

    let alpha = args.alpha.or(cfg.alpha);
    let beta = args.beta.or(cfg.beta);
    let series_file = args.series_file.clone().or_else(|| cfg.series_file.clone());
    let given = alpha.is_some() as u8 + beta.is_some() as u8 + series_file.is_some() as u8;
    if given != 1 {
        return Err(Fail::config("give exactly one of --alpha, --beta, --series-file"));
    }
    let (target, target_kind, target_param) = if let Some(a) = alpha {
        (
            MindaTarget::strongly_starlike_with_order(a, truncation)?,
            "strongly_starlike".to_string(),
            a.to_string(),
        )
    } else if let Some(b) = beta {
        (
            MindaTarget::starlike_order_with_order(b, truncation)?,
            "starlike_order".to_string(),
            b.to_string(),
        )
    } else {
        let path = series_file.unwrap();
        let series = load_series_file(Path::new(&path), truncation)?;
        (MindaTarget::custom(series)?, "custom".to_string(), path)
    };

    let spec = ClassSpec::new(family, qp, target)?;
    Ok(Resolved { spec, weight, truncation, target_kind, target_param })
}

fn load_series_file(path: &Path, order: usize) -> Result<Series, Fail> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Fail::config(format!("cannot read {}: {e}", path.display())))?;
    let mut coeffs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|e| Fail::config(format!("{}:{}: {e}", path.display(), i + 1)))?;
        coeffs.push(v);
    }
    if coeffs.is_empty() {
        return Err(Fail::config(format!("{}: no coefficients", path.display())));
    }
    Ok(Series::from_real(&coeffs).resized(order))
}

fn parse_complex(s: &str) -> Result<Cx, Fail> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || Fail::config(format!("bad complex value {s:?}, expected \"re\" or \"re,im\""));
    match parts.as_slice() {
        [re] => Ok(Cx::new(re.trim().parse().map_err(|_| bad())?, 0.0)),
        [re, im] => Ok(Cx::new(
            re.trim().parse().map_err(|_| bad())?,
            im.trim().parse().map_err(|_| bad())?,
        )),
        _ => Err(bad()),
    }
}

fn resolve_taus(flag: &[String], cfg: &FileConfig) -> Result<Vec<Cx>, Fail> {
    let raw: Vec<String> = if !flag.is_empty() {
        flag.to_vec()
    } else if let Some(t) = &cfg.tau {
        t.clone()
    } else {
        vec!["1".to_string()]
    };
    raw.iter().map(|s| parse_complex(s)).collect()
}

fn open_output(out: &OutArgs, cfg: &FileConfig) -> Result<(Box<dyn Write>, Format), Fail> {
    let format = Format::parse(
        out.format
            .as_deref()
            .or(cfg.format.as_deref())
            .unwrap_or("csv"),
    )
    .map_err(Fail::config)?;
    let sink: Box<dyn Write> = match out.output.clone().or_else(|| cfg.output.clone()) {
        Some(path) => Box::new(
            std::fs::File::create(&path)
                .map_err(|e| Fail::config(format!("cannot create {path}: {e}")))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    Ok((sink, format))
}

fn base_row(r: &Resolved, quantity: &str) -> Row {
    Row {
        family: r.spec.family.label().to_string(),
        lambda_mu: r.weight,
        q: r.spec.qp.q(),
        k: r.spec.qp.k(),
        target_kind: r.target_kind.clone(),
        target_param: r.target_param.clone(),
        quantity: quantity.to_string(),
        tau_re: None,
        tau_im: None,
        bound: None,
        observed_max: None,
        dominated: None,
        degenerate: false,
    }
}

fn bound_cells(row: &mut Row, b: BoundValue) {
    match b {
        BoundValue::Finite(v) => row.bound = Some(v),
        BoundValue::Degenerate => row.degenerate = true,
    }
}

fn cmd_eval_bounds(r: &Resolved, taus: &[Cx]) -> Vec<Row> {
    let rep = bound_report(&r.spec, taus);
    let mut rows = Vec::new();
    let mut a2 = base_row(r, "a2");
    bound_cells(&mut a2, rep.a2);
    rows.push(a2);
    let mut a3 = base_row(r, "a3");
    a3.bound = Some(rep.a3);
    rows.push(a3);
    for (tau, b) in rep.fs {
        let mut row = base_row(r, "fs");
        row.tau_re = Some(tau.re);
        row.tau_im = Some(tau.im);
        bound_cells(&mut row, b);
        rows.push(row);
    }
    rows
}

fn probe_cells(row: &mut Row, p: &QuantityProbe) {
    row.bound = p.bound.value();
    match p.dominated {
        Some(d) => {
            row.observed_max = Some(p.observed_max);
            row.dominated = Some(d);
        }
        None => row.degenerate = true,
    }
}

fn cmd_probe(
    r: &Resolved,
    taus: &[Cx],
    grid_step: f64,
    seed: u64,
    exp: BracketExponent,
) -> Result<(Vec<Row>, bool), Fail> {
    let result = probe_bounds(&r.spec, taus, grid_step, exp)?;
    let mut rows = Vec::new();
    let mut a2 = base_row(r, "a2");
    probe_cells(&mut a2, &result.a2);
    rows.push(a2);
    let mut a3 = base_row(r, "a3");
    probe_cells(&mut a3, &result.a3);
    rows.push(a3);
    for (tau, p) in &result.fs {
        let mut row = base_row(r, "fs");
        row.tau_re = Some(tau.re);
        row.tau_im = Some(tau.im);
        probe_cells(&mut row, p);
        rows.push(row);
    }

    // A wrong bracket exponent can stay under the (loosened) bounds while
    // silently breaking the coefficient relations, so spot-check those too.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (b1, b2) = (r.spec.target.b1(), r.spec.target.b2());
    let mut worst = 0.0f64;
    let mut accepted = 0;
    let mut draws = 0;
    while accepted < RESIDUAL_SPOT_CHECKS && draws < RESIDUAL_SPOT_CHECKS * 40 {
        draws += 1;
        match sample_consistent_point(&mut rng, r.spec.family, &r.spec.qp, b1, b2, exp) {
            Ok(Some(cp)) => {
                let res =
                    relation_residuals(&cp, r.spec.family, &r.spec.qp, &r.spec.target, r.truncation)?;
                worst = worst.max(res.into_iter().fold(0.0, f64::max));
                accepted += 1;
            }
            Ok(None) => continue,
            Err(CoreError::Degenerate) => break,
            Err(e) => return Err(e.into()),
        }
    }
    eprintln!(
        "probe: grid {} points, step {}, seed {seed}, residual spot-check max {worst:.3e} over {accepted} points",
        result.grid_points, result.grid_step
    );
    let ok = result.all_dominated() && worst < RESIDUAL_TOL;
    Ok((rows, ok))
}

fn parse_coeffs(s: &str) -> Result<Vec<f64>, Fail> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Fail::config(format!("bad coefficient {p:?}")))
        })
        .collect()
}

fn cmd_check_membership(r: &Resolved, coeffs: &[f64]) -> Result<Vec<Row>, Fail> {
    let tail: Vec<Cx> = coeffs.iter().map(|&c| Cx::new(c, 0.0)).collect();
    if tail.len() + 2 > r.truncation {
        return Err(Fail::config("more coefficients than the truncation order holds"));
    }
    let f = NormalizedFunction::from_tail(&tail, r.truncation)?;
    let v = membership_with(&f, &r.spec, &DEFAULT_RINGS, DEFAULT_POINTS_PER_RING)?;
    if !v.pass() {
        eprintln!(
            "membership: FAIL (f side {}, g side {}), worst margin {:.6e} at w = {}",
            v.f_side, v.g_side, v.worst_margin, v.worst_point
        );
    } else {
        eprintln!("membership: pass, worst margin {:.6e}", v.worst_margin);
    }
    let mut row = base_row(r, "membership");
    row.observed_max = Some(v.worst_margin);
    row.dominated = Some(v.pass());
    Ok(vec![row])
}

fn cmd_limit_scan(r: &Resolved, ladder: &[f64]) -> Result<Vec<Row>, Fail> {
    if r.spec.qp.k() != 0 {
        return Err(Fail::config("limit-scan requires k = 0"));
    }
    let rows_in = classical_limit_scan(r.spec.family, &r.spec.target, ladder)?;
    let mut rows = Vec::new();
    for lr in rows_in {
        for (quantity, value) in [("bracket2", Some(lr.bracket2)), ("bracket3", Some(lr.bracket3))]
        {
            let mut row = base_row(r, quantity);
            row.q = lr.q;
            row.bound = value;
            rows.push(row);
        }
        let mut a2 = base_row(r, "a2");
        a2.q = lr.q;
        bound_cells(&mut a2, lr.a2_bound);
        rows.push(a2);
        let mut a3 = base_row(r, "a3");
        a3.q = lr.q;
        a3.bound = Some(lr.a3_bound);
        rows.push(a3);
    }
    Ok(rows)
}

fn env_seed() -> Option<u64> {
    std::env::var("QBIU_SEED").ok()?.parse().ok()
}

fn run(cli: Cli) -> Result<u8, Fail> {
    let cfg = match &cli.config {
        Some(path) => FileConfig::load(path).map_err(Fail::config)?,
        None => FileConfig::default(),
    };

    match &cli.cmd {
        Cmd::EvalBounds { spec, tau, out } => {
            let r = resolve_spec(spec, &cfg)?;
            let taus = resolve_taus(tau, &cfg)?;
            let (mut sink, format) = open_output(out, &cfg)?;
            let rows = cmd_eval_bounds(&r, &taus);
            emit(&rows, format, &mut sink).map_err(|e| Fail::config(e.to_string()))?;
            Ok(0)
        }
        Cmd::Probe { spec, tau, grid_step, seed, bracket_exponent, out } => {
            let r = resolve_spec(spec, &cfg)?;
            let taus = resolve_taus(tau, &cfg)?;
            let step = grid_step.or(cfg.grid_step).unwrap_or(0.05);
            let seed = seed.or(cfg.seed).or_else(env_seed).unwrap_or(DEFAULT_SEED);
            let exp = match bracket_exponent.as_deref() {
                Some("k") => BracketExponent::K,
                _ => BracketExponent::TwoK,
            };
            let (mut sink, format) = open_output(out, &cfg)?;
            let (rows, ok) = cmd_probe(&r, &taus, step, seed, exp)?;
            emit(&rows, format, &mut sink).map_err(|e| Fail::config(e.to_string()))?;
            Ok(if ok { 0 } else { EXIT_DOMINANCE })
        }
        Cmd::CheckMembership { spec, coeffs, out } => {
            let r = resolve_spec(spec, &cfg)?;
            let coeffs = match coeffs {
                Some(s) => parse_coeffs(s)?,
                None => cfg.coeffs.clone().unwrap_or_default(),
            };
            let (mut sink, format) = open_output(out, &cfg)?;
            let rows = cmd_check_membership(&r, &coeffs)?;
            emit(&rows, format, &mut sink).map_err(|e| Fail::config(e.to_string()))?;
            Ok(0)
        }
        Cmd::LimitScan { spec, q_ladder, out } => {
            let r = resolve_spec(spec, &cfg)?;
            let ladder: Vec<f64> = match q_ladder {
                Some(s) => s
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse()
                            .map_err(|_| Fail::config(format!("bad q value {p:?}")))
                    })
                    .collect::<Result<_, _>>()?,
                None => cfg
                    .q_ladder
                    .clone()
                    .unwrap_or_else(|| vec![0.5, 0.9, 0.99, 1.0 - 1e-8]),
            };
            let (mut sink, format) = open_output(out, &cfg)?;
            let rows = cmd_limit_scan(&r, &ladder)?;
            emit(&rows, format, &mut sink).map_err(|e| Fail::config(e.to_string()))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
