use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use algint_core::census::{self, CensusOptions, CensusReport};
use algint_core::density::{self, DensityParams, DensityValue};
use algint_core::verify::{self, Suite, SuiteReport, VerifyConfig};
use algint_core::{Error, Exec, RatInterval};

/// Exact census and density model of real algebraic integers of bounded height.
#[derive(Parser, Debug)]
#[command(name = "algint", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count algebraic integers of given degree and height in rational bins.
    Census(CensusArgs),
    /// Tabulate a density function over a grid of t.
    Density(DensityArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Largest number of polynomials an enumeration may visit.
    #[arg(long, env = "ALGINT_BUDGET", default_value_t = algint_core::exec::DEFAULT_BUDGET)]
    budget: u128,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct DensityOpts {
    /// Midpoint nodes per axis of the density quadrature.
    #[arg(long, default_value_t = 64)]
    grid: usize,
    #[arg(long, default_value_t = 200_000)]
    mc_samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long, short = 'n')]
    degree: usize,
    #[arg(long, short = 'Q')]
    height: u64,
    /// Binned range `lo:hi` with `num/den` endpoints; defaults to `-(Q+1):Q+1`.
    #[arg(long, allow_hyphen_values = true)]
    interval: Option<String>,
    #[arg(long, default_value_t = 1)]
    bins: usize,
    /// Skip the density prediction.
    #[arg(long)]
    no_predict: bool,
    /// Classify the largest real root of each polynomial.
    #[arg(long)]
    perron: bool,
    #[command(flatten)]
    density: DensityOpts,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DensityFn {
    Phi,
    Omega,
    Omega2,
    DeltaTilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DensityMethod {
    /// Closed forms where available, quadrature otherwise.
    Auto,
    Quadrature,
    MonteCarlo,
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[arg(long = "fn", value_enum)]
    function: DensityFn,
    #[arg(long, short = 'n', default_value_t = 2)]
    degree: usize,
    #[arg(long, default_value_t = 0.0)]
    xi: f64,
    /// Single evaluation point.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "range")]
    t: Option<f64>,
    /// Evaluation range `a:b`, sampled at `--points` equally spaced values.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[arg(long, value_enum, default_value_t = DensityMethod::Auto)]
    method: DensityMethod,
    #[command(flatten)]
    density: DensityOpts,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    suite: String,
    #[arg(long, short = 'n')]
    degree: Option<usize>,
    #[arg(long, short = 'Q')]
    height: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    interval: Option<String>,
    #[arg(long)]
    xi: Option<f64>,
    #[arg(long)]
    bmax: Option<u64>,
    /// Sample count for the randomized suites.
    #[arg(long)]
    samples: Option<u64>,
    #[command(flatten)]
    density: DensityOpts,
    #[command(flatten)]
    common: Common,
}

/// Failure with the process exit code it maps to.
struct Fail {
    code: u8,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => 3,
            _ => 2,
        };
        Fail { code, msg: e.to_string() }
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail { code: 1, msg: format!("i/o error: {e}") }
    }
}

impl From<csv::Error> for Fail {
    fn from(e: csv::Error) -> Self {
        Fail { code: 1, msg: format!("csv error: {e}") }
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail { code: 1, msg: format!("json error: {e}") }
    }
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail { code: 2, msg: msg.into() }
}

type Outcome = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Census(a) => cmd_census(a),
        Command::Density(a) => cmd_density(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros dropped.
fn fmt_g(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let s = format!("{:.*}", (11 - exp).max(0) as usize, x);
        trim_zeros(&s).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mant))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_g).unwrap_or_default()
}

fn sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn exec(c: &Common) -> Exec {
    Exec::default().with_workers(c.workers).with_budget(c.budget)
}

fn density_params(d: &DensityOpts, n: usize, xi: f64) -> Result<DensityParams, Fail> {
    let p = DensityParams {
        n,
        xi,
        grid: d.grid,
        mc_samples: d.mc_samples,
        seed: d.seed,
    };
    p.validate()?;
    Ok(p)
}

fn parse_interval(s: &str) -> Result<RatInterval, Fail> {
    Ok(s.parse()?)
}

fn cmd_census(a: CensusArgs) -> Outcome {
    if a.degree < 2 {
        return Err(invalid(format!("--degree must be at least 2, got {}", a.degree)));
    }
    if a.height < 1 {
        return Err(invalid("--height must be at least 1"));
    }
    let range = match &a.interval {
        Some(s) => parse_interval(s)?,
        None => RatInterval::covering_height(a.height),
    };
    let opts = CensusOptions {
        density: density_params(&a.density, a.degree, 0.0)?,
        predict: !a.no_predict,
        perron: a.perron,
    };
    let report = census::census(a.degree, a.height, &range, a.bins, &opts, &exec(&a.common))?;
    println!("Omega_{}({}, [{}, {})) = {}", a.degree, a.height, range.lo(), range.hi(), report.total);
    let out = sink(&a.common.output)?;
    match a.common.format {
        Format::Csv => write_census_csv(out, &report)?,
        Format::Json => write_json(out, &report)?,
    }
    Ok(0)
}

fn write_census_csv(out: Box<dyn Write>, r: &CensusReport) -> Result<(), Fail> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["bin_lo", "bin_hi", "count", "predicted", "normalized_error"])?;
    for b in &r.bins {
        w.write_record([
            b.lo.to_string(),
            b.hi.to_string(),
            b.count.to_string(),
            fmt_opt(b.predicted),
            fmt_opt(b.normalized_error),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<T: serde::Serialize>(mut out: Box<dyn Write>, v: &T) -> Result<(), Fail> {
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

#[derive(serde::Serialize)]
struct DensityRow {
    t: f64,
    #[serde(flatten)]
    value: DensityValue,
}

fn t_grid(a: &DensityArgs) -> Result<Vec<f64>, Fail> {
    match (a.t, &a.range) {
        (Some(t), None) => Ok(vec![t]),
        (None, Some(r)) => {
            let (lo, hi) = r
                .split_once(':')
                .ok_or_else(|| invalid(format!("--range expects a:b, got {r:?}")))?;
            let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| invalid(format!("bad number {s:?} in --range")));
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) || a.points < 2 {
                return Err(invalid("--range needs a < b and --points >= 2"));
            }
            let step = (hi - lo) / (a.points - 1) as f64;
            Ok((0..a.points).map(|k| lo + step * k as f64).collect())
        }
        _ => Err(invalid("give exactly one of --t and --range")),
    }
}

fn cmd_density(a: DensityArgs) -> Outcome {
    let ts = t_grid(&a)?;
    let p = density_params(&a.density, a.degree, a.xi)?;
    let n = a.degree;
    match a.function {
        DensityFn::Phi => {}
        DensityFn::Omega | DensityFn::DeltaTilde if n < 2 => {
            return Err(invalid(format!("--degree must be at least 2 for this function, got {n}")))
        }
        DensityFn::DeltaTilde if a.xi <= 0.0 => return Err(invalid("delta-tilde needs 0 < xi <= 1")),
        DensityFn::Omega2 => {
            density::Omega2Breakpoints::new(a.xi)?;
        }
        _ => {}
    }
    if a.method != DensityMethod::Auto && matches!(a.function, DensityFn::Omega2 | DensityFn::DeltaTilde) {
        return Err(invalid("--method applies to phi and omega only"));
    }
    let rows: Vec<DensityRow> = ts
        .into_iter()
        .map(|t| {
            let value = match (a.function, a.method) {
                (DensityFn::Phi, DensityMethod::Auto) => density::phi(n, t, &p),
                (DensityFn::Phi, DensityMethod::Quadrature) => density::phi_quadrature(n, t, &p),
                (DensityFn::Phi, DensityMethod::MonteCarlo) => density::phi_mc(n, t, &p),
                (DensityFn::Omega, DensityMethod::MonteCarlo) => density::omega_mc(n, a.xi, t, &p),
                (DensityFn::Omega, _) => density::omega(n, a.xi, t, &p),
                (DensityFn::Omega2, _) => density::omega2_closed(a.xi, t).expect("xi checked"),
                (DensityFn::DeltaTilde, _) => DensityValue::closed(density::delta_tilde(n, a.xi, t)),
            };
            DensityRow { t, value }
        })
        .collect();
    let out = sink(&a.output)?;
    match a.format {
        Format::Json => write_json(out, &rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["t", "value", "std_error", "method"])?;
            for r in &rows {
                w.write_record([fmt_g(r.t), fmt_g(r.value.value), fmt_g(r.value.std_error), r.value.method.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse().map_err(|_| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            invalid(format!("unknown suite {:?}; expected all or one of {}", a.suite, names.join(", ")))
        })?]
    };
    if let Some(xi) = a.xi {
        if !(xi > 0.0 && xi <= 1.0) {
            return Err(invalid(format!("--xi must lie in (0, 1], got {xi}")));
        }
    }
    let cfg = VerifyConfig {
        degree: a.degree,
        height: a.height,
        interval: a.interval.as_deref().map(parse_interval).transpose()?,
        xi: a.xi,
        b_max: a.bmax,
        samples: a.samples,
        density: density_params(&a.density, a.degree.unwrap_or(2), a.xi.unwrap_or(0.0))?,
    };
    let ex = exec(&a.common);
    let mut reports: Vec<SuiteReport> = Vec::new();
    for s in suites {
        let r = verify::run_suite(s, &cfg, &ex)?;
        for c in &r.checks {
            println!("[{}] {c}", r.suite);
        }
        reports.push(r);
    }
    let all_pass = reports.iter().all(|r| r.pass());
    if let Some(path) = &a.common.output {
        let out = sink(&Some(path.clone()))?;
        match a.common.format {
            Format::Json => write_json(out, &reports)?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["suite", "check", "measured", "tolerance", "pass", "detail"])?;
                for r in &reports {
                    for c in &r.checks {
                        w.write_record([
                            r.suite.to_string(),
                            c.name.clone(),
                            fmt_g(c.measured),
                            fmt_g(c.tolerance),
                            c.pass.to_string(),
                            c.detail.clone(),
                        ])?;
                    }
                }
                w.flush()?;
            }
        }
    }
    println!("{}", if all_pass { "all checks passed" } else { "some checks FAILED" });
    Ok(if all_pass { 0 } else { 1 })
}
