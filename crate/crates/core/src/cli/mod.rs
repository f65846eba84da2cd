//! Command-line interface: argument and config handling, the six
//! subcommands, and report output.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid parameters or regime
//! mismatch, 3 enumeration cap exceeded, 4 invariant violation.

pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::enumerate::{
    exact_ab_distribution, exact_tau_distribution, tv_distance, Caps, CycleDistribution,
};
use crate::error::Error;
use crate::exact::gf::{g_sigma, g_tau, tail_bound_ab, tail_probabilities};
use crate::exact::moments::{
    asymptotic_moments, factorial_moments_sigma, factorial_moments_tau, moment_set_from_factorial,
    MomentSet,
};
use crate::exact::{int, pow};
use crate::mc::{default_tail_thresholds, run_mc, RunConfig};
use crate::surface::validate_params;
pub use report::{Field, Report};

/// Environment variable holding the default worker-thread count.
pub const THREADS_ENV: &str = "SURFACE_CENSUS_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "surface-census",
    version,
    about = "Exact and Monte Carlo statistics of random polygon glueings"
)]
struct Cli {
    /// JSON file whose keys mirror the long flags; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: $SURFACE_CENSUS_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest n whose matchings may be enumerated.
    #[arg(long, global = true)]
    matching_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    /// `αβ` for the canonical `β` of `(n, k)`.
    Ab,
    /// A uniform element of `S_n`.
    Sigma,
    /// A uniform element of `A_n`.
    Tau,
}

#[derive(Args, Debug, Default)]
struct NK {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monte Carlo moments, tail frequencies and surface summary.
    Sample {
        #[command(flatten)]
        nk: NK,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated tail thresholds t for Pr[C >= t].
        #[arg(long, value_delimiter = ',')]
        tail: Option<Vec<usize>>,
    },
    /// Exact factorial, raw and central moments on S_n and A_n.
    Exact {
        #[arg(long)]
        n: Option<usize>,
        /// Highest moment order.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        max_l: Option<usize>,
    },
    /// Exact cycle-count (and cycle-type) laws.
    Enumerate {
        #[command(flatten)]
        nk: NK,
        #[arg(long, value_enum)]
        target: Option<Target>,
    },
    /// Exact total-variation distance between αβ and uniform on A_n.
    Tv {
        #[command(flatten)]
        nk: NK,
    },
    /// Exact tail probabilities against their bounds.
    Tails {
        #[command(flatten)]
        nk: NK,
    },
    /// Run the invariant suite; exits 4 on any failure.
    Verify {
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n: Option<usize>,
    k: Option<usize>,
    l: Option<usize>,
    max_l: Option<usize>,
    samples: Option<u64>,
    seed: Option<u64>,
    threads: Option<usize>,
    out: Option<PathBuf>,
    format: Option<Format>,
    target: Option<Target>,
    tail: Option<Vec<usize>>,
    matching_cap: Option<usize>,
    quick: Option<bool>,
}

const DEFAULT_SAMPLES: u64 = 100_000;
const DEFAULT_L: usize = 4;
const DEFAULT_MAX_L: usize = 12;

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
    Io(String),
    Violation(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Lib(Error::InvalidParams(_)) | Failure::Lib(Error::RegimeMismatch(_)) => {
                EXIT_INVALID
            }
            Failure::Lib(Error::CapExceeded { .. }) => EXIT_CAP,
            Failure::Lib(_) | Failure::Violation(_) => EXIT_INVARIANT,
            Failure::Usage(_) => EXIT_INVALID,
            Failure::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) | Failure::Io(m) | Failure::Violation(m) => m.clone(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// A finished command: the report to emit and, if the command still failed,
/// why. The report is written either way.
struct Outcome {
    report: Report,
    failure: Option<Failure>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome {
            report,
            failure: None,
        }
    }
}

fn required<T>(flag: Option<T>, config: Option<T>, name: &str) -> Result<T, Failure> {
    flag.or(config)
        .ok_or_else(|| Failure::Usage(format!("missing required parameter --{name}")))
}

fn load_config(path: Option<&Path>) -> Result<ConfigFile, Failure> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))
}

fn env_threads() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{THREADS_ENV}={v:?} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the process exit code.
pub fn execute<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match run(cli, stdout) {
        Ok(None) => EXIT_OK,
        Ok(Some(f)) | Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

pub fn main() -> i32 {
    execute(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    )
}

fn run(cli: Cli, stdout: &mut dyn Write) -> Result<Option<Failure>, Failure> {
    let config = load_config(cli.config.as_deref())?;
    let format = cli.format.or(config.format).unwrap_or(Format::Json);
    let out = cli.out.clone().or(config.out.clone());
    let threads = match cli.threads.or(config.threads) {
        Some(t) => t,
        None => env_threads()?.unwrap_or_else(default_threads),
    };
    let mut caps = Caps::default();
    if let Some(cap) = cli.matching_cap.or(config.matching_cap) {
        caps.matching_n = cap;
    }

    let outcome = match cli.command {
        Command::Sample {
            nk,
            samples,
            seed,
            tail,
        } => {
            let n = required(nk.n, config.n, "n")?;
            let k = required(nk.k, config.k, "k")?;
            let mut rc = RunConfig::new(
                n,
                k,
                samples.or(config.samples).unwrap_or(DEFAULT_SAMPLES),
                seed.or(config.seed).unwrap_or(0),
            )
            .with_threads(threads);
            rc.tail_thresholds = tail
                .or(config.tail)
                .unwrap_or_else(|| default_tail_thresholds(n));
            cmd_sample(&rc)?.into()
        }
        Command::Exact { n, l, max_l } => {
            let n = required(n, config.n, "n")?;
            let l = l.or(config.l).unwrap_or(DEFAULT_L);
            let max_l = max_l.or(config.max_l).unwrap_or(DEFAULT_MAX_L);
            cmd_exact(n, l, max_l)?
        }
        Command::Enumerate { nk, target } => {
            let target = target.or(config.target).unwrap_or(Target::Ab);
            let n = required(nk.n, config.n, "n")?;
            let k = match target {
                Target::Ab => Some(required(nk.k, config.k, "k")?),
                _ => None,
            };
            cmd_enumerate(n, k, target, &caps)?.into()
        }
        Command::Tv { nk } => {
            let n = required(nk.n, config.n, "n")?;
            let k = required(nk.k, config.k, "k")?;
            cmd_tv(n, k, &caps)?.into()
        }
        Command::Tails { nk } => {
            let n = required(nk.n, config.n, "n")?;
            let k = required(nk.k, config.k, "k")?;
            cmd_tails(n, k, &caps)?
        }
        Command::Verify { quick } => cmd_verify(quick || config.quick.unwrap_or(false)),
    };

    let written = match &out {
        Some(path) => fs::File::create(path)
            .and_then(|f| write_report(&outcome.report, format, std::io::BufWriter::new(f))),
        None => write_report(&outcome.report, format, &mut *stdout),
    };
    written.map_err(|e| Failure::Io(format!("cannot write report: {e}")))?;
    Ok(outcome.failure)
}

fn write_report<W: Write>(report: &Report, format: Format, mut out: W) -> std::io::Result<()> {
    match format {
        Format::Json => report.write_json(&mut out)?,
        Format::Csv => report.write_csv(&mut out)?,
    }
    out.flush()
}

fn cmd_sample(config: &RunConfig) -> Result<Report, Failure> {
    let params = validate_params(config.n, config.k)?;
    let outcome = run_mc(config)?;
    let mut r = Report::new();
    r.push("params", "n", config.n);
    r.push("params", "k", config.k);
    r.push("params", "samples", config.samples);
    r.push("params", "seed", config.seed);
    r.push("params", "faces", params.faces);
    r.push("params", "edges_after", params.edges_after);
    r.push("params", "gamburd_regime", params.gamburd_regime);

    let m = &outcome.moments;
    r.push("moments", "mean", m.mean);
    r.push("moments", "central2", m.central2);
    r.push("moments", "central3", m.central3);
    r.push("moments", "central4", m.central4);
    r.push("moments", "standard_error_mean", m.standard_error_mean);
    for a in &m.asymptotic_reference {
        r.push("asymptotic", a.label, a.value);
        r.push(
            "asymptotic",
            format!("{}.error_scale", a.label),
            a.error_scale,
        );
    }
    if let Some(exact) = &m.exact_reference {
        r.push_exact("exact", "mean", exact.mean());
        for (i, c) in exact.central.iter().enumerate().skip(1) {
            r.push_exact("exact", &format!("central{}", i + 1), c);
        }
    }

    let tails = &outcome.tails;
    for (i, t) in tails.thresholds.iter().enumerate() {
        r.push("tails", format!("ge.{t}.empirical"), tails.empirical[i]);
        if let Some(b) = tails.bound[i] {
            r.push("tails", format!("ge.{t}.bound"), b);
        }
    }

    let s = &outcome.surface;
    r.push("surface", "mean_vertices", s.mean_vertices);
    r.push(
        "surface",
        "mean_euler_characteristic",
        s.mean_euler_characteristic,
    );
    r.push("surface", "disconnected_samples", s.disconnected_samples);
    for (g, count) in &s.genus_histogram {
        r.push("surface", format!("genus.{g}"), *count);
    }
    for (t, &count) in outcome.histogram.iter().enumerate() {
        if count > 0 {
            r.push("histogram", t.to_string(), count);
        }
    }
    Ok(r)
}

fn push_moment_set(r: &mut Report, section: &str, m: &MomentSet) {
    for (i, v) in m.factorial.iter().enumerate() {
        r.push_exact(section, &format!("factorial.{}", i + 1), v);
    }
    for (i, v) in m.raw.iter().enumerate() {
        r.push_exact(section, &format!("raw.{}", i + 1), v);
    }
    for (i, v) in m.central.iter().enumerate() {
        r.push_exact(section, &format!("central.{}", i + 1), v);
    }
}

fn cmd_exact(n: usize, l: usize, max_l: usize) -> Result<Outcome, Failure> {
    if l == 0 || l > max_l {
        return Err(Failure::Usage(format!(
            "moment order l = {l} must be in 1..={max_l} (raise --max-l to allow more)"
        )));
    }
    let mut r = Report::new();
    r.push("params", "n", n);
    r.push("params", "l", l);
    let sigma = moment_set_from_factorial(&factorial_moments_sigma(n, l)?, l)?;
    push_moment_set(&mut r, "sigma", &sigma);
    let failure = match factorial_moments_tau(n, l) {
        Ok(f) => {
            push_moment_set(&mut r, "tau", &moment_set_from_factorial(&f, l)?);
            None
        }
        Err(e) => {
            r.push("tau", "error", e.to_string());
            Some(Failure::Lib(e))
        }
    };
    if n >= 2 {
        for a in asymptotic_moments(n, l.min(4))? {
            r.push("asymptotic", a.label, a.value);
            r.push(
                "asymptotic",
                format!("{}.error_scale", a.label),
                a.error_scale,
            );
        }
    }
    Ok(Outcome { report: r, failure })
}

fn push_cycle_law(r: &mut Report, dist: &CycleDistribution) {
    for t in dist.support() {
        r.push("cycles", t.to_string(), dist.prob(t));
    }
    r.push_exact("summary", "mean", &dist.mean());
}

fn cmd_enumerate(
    n: usize,
    k: Option<usize>,
    target: Target,
    caps: &Caps,
) -> Result<Report, Failure> {
    let mut r = Report::new();
    r.push("params", "n", n);
    if let Some(k) = k {
        r.push("params", "k", k);
    }
    let classes = match target {
        Target::Ab => {
            let (cycles, classes) = exact_ab_distribution(n, k.expect("k is required"), caps)?;
            r.push("params", "target", "ab");
            push_cycle_law(&mut r, &cycles);
            Some(classes)
        }
        Target::Sigma => {
            let g = g_sigma(n)?;
            r.push("params", "target", "sigma");
            let dist = CycleDistribution::new(n, None, (0..=n).map(|t| g.coeff(t)).collect())?;
            push_cycle_law(&mut r, &dist);
            None
        }
        Target::Tau => {
            let (cycles, classes) = exact_tau_distribution(n, caps)?;
            r.push("params", "target", "tau");
            push_cycle_law(&mut r, &cycles);
            Some(classes)
        }
    };
    if let Some(classes) = classes {
        for (class, p) in &classes.probs {
            r.push("classes", class.to_string(), p);
        }
    }
    Ok(r)
}

fn cmd_tv(n: usize, k: usize, caps: &Caps) -> Result<Report, Failure> {
    let tv = tv_distance(n, k, caps)?;
    let mut r = Report::new();
    r.push("params", "n", n);
    r.push("params", "k", k);
    r.push_exact("tv", "distance", &tv);
    Ok(r)
}

fn cmd_tails(n: usize, k: usize, caps: &Caps) -> Result<Outcome, Failure> {
    validate_params(n, k)?;
    let (dist, _) = exact_ab_distribution(n, k, caps)?;
    let mut r = Report::new();
    r.push("params", "n", n);
    r.push("params", "k", k);
    let mut violations = Vec::new();
    for (t, p) in dist.tails().iter().enumerate() {
        let b = tail_bound_ab(n, t)?;
        let ok = b.dominates(p);
        if !ok {
            violations.push(format!("ab t = {t}"));
        }
        r.push("ab", format!("ge.{t}.exact"), p);
        r.push("ab", format!("ge.{t}.bound"), b.value());
        r.push("ab", format!("ge.{t}.bound.decimal"), b.approx());
        r.push("ab", format!("ge.{t}.bound_is_exact"), b.is_rational());
        r.push("ab", format!("ge.{t}.dominated"), ok);
    }
    if n >= 3 {
        let two = int(2);
        for (section, tails) in [
            ("sigma", tail_probabilities(&g_sigma(n)?)),
            ("tau", tail_probabilities(&g_tau(n)?)),
        ] {
            for (t, p) in tails.iter().enumerate().take(n + 1) {
                let bound = int(n as i64 + 1) / pow(&two, t);
                let ok = *p <= bound;
                if !ok {
                    violations.push(format!("{section} t = {t}"));
                }
                r.push(section, format!("ge.{t}.exact"), p);
                r.push(section, format!("ge.{t}.bound"), bound);
                r.push(section, format!("ge.{t}.dominated"), ok);
            }
        }
    }
    let failure = (!violations.is_empty())
        .then(|| Failure::Violation(format!("tail bound violated at {}", violations.join(", "))));
    Ok(Outcome { report: r, failure })
}

fn cmd_verify(quick: bool) -> Outcome {
    let checks = verify::run_checks(quick);
    let mut r = Report::new();
    r.push("params", "quick", quick);
    let mut failed = Vec::new();
    for c in &checks {
        match &c.failure {
            None => r.push("checks", c.name, "pass"),
            Some(msg) => {
                r.push("checks", c.name, format!("fail: {msg}"));
                failed.push(c.name);
            }
        }
    }
    r.push("summary", "passed", checks.len() - failed.len());
    r.push("summary", "failed", failed.len());
    let failure = (!failed.is_empty())
        .then(|| Failure::Violation(format!("verification failed: {}", failed.join(", "))));
    Outcome { report: r, failure }
}
