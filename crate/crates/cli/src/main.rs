//! `igeom`: run identity checks, suites, chord histograms and constant fits.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use igeom::functionals::ConstantConvention;
use igeom::histogram::chord_length_histogram;
use igeom::verification::{fit_constant, run_case, run_suite, summary_csv, CaseConfig, CaseId, Suite};
use igeom::{GeomError, Sampling};

#[derive(Parser)]
#[command(name = "igeom", version, about = "Monte Carlo verification of integral-geometric identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single case.
    Verify(VerifyArgs),
    /// Run the smoke or full suite.
    Suite(SuiteArgs),
    /// Weighted chord-length histogram.
    Histogram(HistogramArgs),
    /// Fit the boundary-pair prefactor of the chord-power identity.
    FitConstant(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Constants {
    Printed,
    Normalized,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Shards per estimator.
    #[arg(long, env = "IGEOM_SHARDS", default_value_t = 8)]
    shards: usize,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    out: OutFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out_path: Option<PathBuf>,
    /// Record wall time in reports (breaks byte-identical reruns).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    case: String,
    #[arg(long, default_value = "ball")]
    body: String,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, default_value_t = 100_000)]
    n_samples: u64,
    #[arg(long)]
    h_power: Option<u32>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    moment: Option<u32>,
    #[arg(long, default_value_t = 4.0)]
    z_threshold: f64,
    #[arg(long, value_enum, default_value_t = Constants::Normalized)]
    constants: Constants,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, default_value = "smoke")]
    suite: String,
    /// Run cases concurrently.
    #[arg(long)]
    parallel_cases: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct HistogramArgs {
    #[arg(long, default_value = "ball")]
    body: String,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, default_value_t = 40)]
    bins: usize,
    #[arg(long, default_value_t = 100_000)]
    n_samples: u64,
    #[command(flatten)]
    common: Common,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::Config(_) | GeomError::Parse { .. } | GeomError::Dimension { .. } | GeomError::Unsupported(_) | GeomError::InvalidBody(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(&a),
        Command::Suite(a) => suite(&a),
        Command::Histogram(a) => histogram(&a),
        Command::FitConstant(a) => fit(&a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn config(a: &VerifyArgs) -> Result<CaseConfig, Failure> {
    let case: CaseId = a.case.parse()?;
    let mut c = CaseConfig::new(case, a.body.clone(), a.dim)
        .samples(a.n_samples)
        .seed(a.common.seed)
        .shards(a.common.shards)
        .constants(match a.constants {
            Constants::Printed => ConstantConvention::Printed,
            Constants::Normalized => ConstantConvention::Normalized,
        });
    c.l = a.l;
    c.k = a.k;
    c.moment = a.moment;
    c.h_power = a.h_power;
    c.z_threshold = a.z_threshold;
    Ok(c)
}

/// Write to `--out-path` and echo `summary` on stdout, or write the
/// payload to stdout and the summary to stderr.
fn emit(common: &Common, payload: &str, summary: &str) -> Result<(), Failure> {
    match &common.out_path {
        Some(p) => {
            write_file(p, payload)?;
            println!("{summary}");
        }
        None => {
            print!("{payload}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn write_file(p: &Path, payload: &str) -> Result<(), Failure> {
    fs::write(p, payload).map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", p.display())))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn verify(a: &VerifyArgs) -> Result<bool, Failure> {
    let c = config(a)?;
    let start = Instant::now();
    let mut report = run_case(&c)?;
    if a.common.timings {
        report.seconds = Some(start.elapsed().as_secs_f64());
    }
    let payload = match a.common.out {
        OutFormat::Json => json(&report),
        OutFormat::Csv => summary_csv(std::slice::from_ref(&report))?,
    };
    let mut summary = report.summary_line();
    for w in &report.warnings {
        summary.push_str(&format!("\nwarning: {w}"));
    }
    emit(&a.common, &payload, &summary)?;
    Ok(report.pass)
}

fn suite(a: &SuiteArgs) -> Result<bool, Failure> {
    let suite: Suite = a.suite.parse()?;
    let start = Instant::now();
    let reports = run_suite(suite, a.common.seed, a.common.shards, a.parallel_cases, a.common.timings)?;
    let payload = match a.common.out {
        OutFormat::Json => json(&reports),
        OutFormat::Csv => summary_csv(&reports)?,
    };
    let failed = reports.iter().filter(|r| !r.pass).count();
    let mut table: Vec<String> = reports.iter().map(|r| r.summary_line()).collect();
    table.push(format!("{} cases, {} passed, {} failed", reports.len(), reports.len() - failed, failed));
    if a.common.timings {
        table.push(format!("total {:.1} s", start.elapsed().as_secs_f64()));
    }
    emit(&a.common, &payload, &table.join("\n"))?;
    Ok(failed == 0)
}

fn histogram(a: &HistogramArgs) -> Result<bool, Failure> {
    let body = igeom::geometry::parse_body(&a.body, a.dim)?;
    let s = Sampling::new(a.n_samples, a.common.seed).with_shards(a.common.shards);
    let h = chord_length_histogram(&body, a.bins, &s)?;
    let payload = match a.common.out {
        OutFormat::Json => json(&h),
        OutFormat::Csv => h.to_csv()?,
    };
    emit(&a.common, &payload, &format!("{} bins, total mass {:.6}", a.bins, h.total()))?;
    Ok(true)
}

fn fit(a: &VerifyArgs) -> Result<bool, Failure> {
    let c = config(a)?;
    let r = fit_constant(&c)?;
    let summary = format!(
        "ratio={:.6}±{:.2e} theoretical={:.6} cited={} z={} {}",
        r.ratio.mean,
        r.ratio.standard_error,
        r.theoretical,
        r.cited.map_or_else(|| "-".into(), |v| v.to_string()),
        r.z.map_or_else(|| "-".into(), |z| format!("{z:+.3}")),
        if r.pass { "PASS" } else { "FAIL" }
    );
    emit(&a.common, &json(&r), &summary)?;
    Ok(r.pass)
}
