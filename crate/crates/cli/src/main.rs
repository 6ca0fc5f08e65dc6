//! `imetric`: validate files, compute `d_I` / `ρ_I`, build and glue couplings,
//! push measures forward, tabulate `⊕_h`, and run convergence reports.
//!
//! Exit status: 0 on success, 1 on unreadable or invalid input (including
//! the oracle size guard), 2 when a checked property is violated.

mod report;
mod selftest;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use imetric_core::convergence::{
    harness_rows, metric_converges, pointwise_converges, test_family, d_i_converges, Verdict,
};
use imetric_core::coupling::compose;
use imetric_core::io::{self, Loaded};
use imetric_core::{distances, glue, oplus_h, Coupling, Error, Method, Metric, Schedule};

#[derive(Parser)]
#[command(
    name = "imetric",
    version,
    about = "Distances between idempotent measures on finite metric spaces",
    allow_negative_numbers = true
)]
struct Cli {
    /// Absolute tolerance for agreement checks and axiom suites.
    #[arg(long, global = true, env = "IMETRIC_TOLERANCE", default_value_t = 1e-9)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a space, measure, coupling, sequence or map file.
    Validate { file: PathBuf },

    /// Distance between two measures, with a witness coupling.
    Dist {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = MetricArg::RhoI)]
        metric: MetricArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Fast)]
        method: MethodArg,
        /// Write the witness coupling here.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Build a standard coupling of two measures.
    Couple {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum)]
        kind: CouplingKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Glue two couplings along their shared middle measure.
    Glue {
        first: PathBuf,
        second: PathBuf,
        /// Write the composed (1, 3) coupling here.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Push a measure forward along a map.
    Pushforward {
        measure: PathBuf,
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Evaluate u ⊕_h v = h·ln(e^{u/h} + e^{v/h}) for one or more h.
    #[command(allow_negative_numbers = true)]
    Dequantize {
        #[arg(long)]
        u: f64,
        #[arg(long)]
        v: f64,
        #[arg(long = "h", required = true, num_args = 1..)]
        h: Vec<f64>,
    },

    /// Per-term ρ_I, d_I and pointwise gaps of a sequence, with verdicts.
    Converge {
        sequence: PathBuf,
        /// Random test functions added to the point indicators.
        #[arg(long, default_value_t = 8)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the CSV table here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Worked example, Dirac extension, diameter, and randomized invariants.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    #[value(name = "dI")]
    DI,
    #[value(name = "rhoI")]
    RhoI,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::DI => Metric::DI,
            MetricArg::RhoI => Metric::RhoI,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Fast,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum CouplingKind {
    Xi0,
    Tensor,
    Diagonal,
}

/// Successful runs either hold every checked property or report a violation.
enum Status {
    Ok,
    Violation,
}

fn main() -> ExitCode {
    // clap would exit with 2 on a usage error, which here means a violated property
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            if matches!(e.downcast_ref::<Error>(), Some(Error::OracleGuard { .. })) {
                eprintln!("hint: use --method fast for larger supports");
            }
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    let tol = cli.tolerance;
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("--tolerance must be a positive number, got {tol}");
    }
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Dist { left, right, metric, method, out } => dist(&left, &right, metric.into(), method, tol, out),
        Command::Couple { left, right, kind, out } => couple(&left, &right, kind, out),
        Command::Glue { first, second, out } => glue_cmd(&first, &second, out),
        Command::Pushforward { measure, map, out } => pushforward(&measure, &map, out),
        Command::Dequantize { u, v, h } => dequantize(u, v, &h),
        Command::Converge { sequence, extra, seed, out } => converge(&sequence, extra, seed, out),
        Command::Selftest { seed, instances } => Ok(selftest_cmd(seed, instances, tol)),
    }
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn validate(file: &Path) -> Result<Status> {
    match io::load_any(file)? {
        Loaded::Space(s) => println!("ok: space with {} points, diameter {}", s.len(), report::num(s.diam())),
        Loaded::Measure(mu) => {
            let labels: Vec<&str> = mu.support().into_iter().map(|x| mu.space().label(x)).collect();
            println!("ok: measure on {} points, support {{{}}}", mu.space().len(), labels.join(", "));
        }
        Loaded::Coupling(xi) => println!(
            "ok: admissible coupling on {} points, cost {}, support width {}",
            xi.len(),
            report::num(xi.transport_cost()),
            report::num(xi.support_width())
        ),
        Loaded::Sequence(seq) => println!("ok: sequence of {} measures on {} points", seq.len(), seq.space().len()),
        Loaded::Map(f) => println!("ok: map from {} points to {} points", f.source().len(), f.target().len()),
    }
    Ok(Status::Ok)
}

fn dist(left: &Path, right: &Path, metric: Metric, method: MethodArg, tol: f64, out: Option<PathBuf>) -> Result<Status> {
    let mu1 = io::load_measure(left)?;
    let mu2 = io::load_measure(right)?;
    let run = |m: Method| distances::distance(metric, m, &mu1, &mu2);
    let (report, status) = match method {
        MethodArg::Fast => (run(Method::Fast)?, Status::Ok),
        MethodArg::Oracle => (run(Method::Oracle)?, Status::Ok),
        MethodArg::Both => {
            let fast = run(Method::Fast)?;
            let oracle = run(Method::Oracle)?;
            let diff = (fast.value - oracle.value).abs();
            let agree = diff <= tol;
            println!("{metric} (fast) = {}", report::num(fast.value));
            println!("{metric} (oracle) = {}", report::num(oracle.value));
            println!(
                "agreement: {} (|fast - oracle| = {}, tolerance {})",
                if agree { "yes" } else { "NO" },
                report::num(diff),
                report::num(tol)
            );
            (fast, if agree { Status::Ok } else { Status::Violation })
        }
    };
    if method != MethodArg::Both {
        println!("{metric} = {}", report::num(report.value));
    }
    println!("witness:");
    print!("{}", report::coupling(&report.witness));
    if let Some(path) = out {
        write_out(&path, &io::to_pretty_json(&io::coupling_file(&report.witness)))?;
    }
    Ok(status)
}

fn couple(left: &Path, right: &Path, kind: CouplingKind, out: Option<PathBuf>) -> Result<Status> {
    let mu1 = io::load_measure(left)?;
    let mu2 = io::load_measure(right)?;
    let xi = match kind {
        CouplingKind::Xi0 => Coupling::xi_zero(&mu1, &mu2)?,
        CouplingKind::Tensor => Coupling::tensor(&mu1, &mu2)?,
        CouplingKind::Diagonal => {
            if mu1 != mu2 {
                bail!("the diagonal coupling needs equal measures");
            }
            Coupling::diagonal(&mu1)
        }
    };
    println!("cost = {}", report::num(xi.transport_cost()));
    println!("support width = {}", report::num(xi.support_width()));
    print!("{}", report::coupling(&xi));
    if let Some(path) = out {
        write_out(&path, &io::to_pretty_json(&io::coupling_file(&xi)))?;
    }
    Ok(Status::Ok)
}

fn glue_cmd(first: &Path, second: &Path, out: Option<PathBuf>) -> Result<Status> {
    let xi12 = io::load_coupling(first)?;
    let xi23 = io::load_coupling(second)?;
    let glued = glue(&xi12, &xi23)?;
    let marginals_ok = glued.project_12() == xi12.rows() && glued.project_23() == xi23.rows();
    let xi13 = compose(&xi12, &xi23)?;
    let widths = (xi12.support_width(), xi23.support_width(), xi13.support_width());
    let chain_ok = widths.2 <= widths.0 + widths.1;
    println!("projections recover both inputs: {}", if marginals_ok { "yes" } else { "NO" });
    println!(
        "support widths: first {}, second {}, composed {}",
        report::num(widths.0),
        report::num(widths.1),
        report::num(widths.2)
    );
    println!("composed coupling (cost {}):", report::num(xi13.transport_cost()));
    print!("{}", report::coupling(&xi13));
    if let Some(path) = out {
        write_out(&path, &io::to_pretty_json(&io::coupling_file(&xi13)))?;
    }
    Ok(if marginals_ok && chain_ok { Status::Ok } else { Status::Violation })
}

fn pushforward(measure: &Path, map: &Path, out: Option<PathBuf>) -> Result<Status> {
    let mu = io::load_measure(measure)?;
    let f = io::load_map(map)?;
    let pushed = mu.pushforward(&f)?;
    print!("{}", report::measure(&pushed));
    if let Some(path) = out {
        write_out(&path, &io::to_pretty_json(&io::measure_file(&pushed)))?;
    }
    Ok(Status::Ok)
}

fn dequantize(u: f64, v: f64, hs: &[f64]) -> Result<Status> {
    if let [h] = hs {
        println!("{}", report::num(oplus_h(u, v, *h)?));
        return Ok(Status::Ok);
    }
    let m = u.max(v);
    println!("h,value,gap");
    for &h in hs {
        let s = oplus_h(u, v, h)?;
        println!("{},{},{}", report::num(h), report::num(s), report::num(s - m));
    }
    Ok(Status::Ok)
}

fn verdict_line(name: &str, v: &Verdict) -> String {
    match v.failure {
        None => format!("# {name}: converges ({} levels checked)", v.levels_checked),
        Some((eps, index, gap)) => format!(
            "# {name}: does not converge (gap {} at index {index} is not below {})",
            report::num(gap),
            report::num(eps)
        ),
    }
}

fn converge(sequence: &Path, extra: usize, seed: u64, out: Option<PathBuf>) -> Result<Status> {
    let seq = io::load_sequence(sequence)?;
    let family = test_family(seq.space().len(), extra, seed);
    let schedule = Schedule::default();
    let mut csv = String::from("index,rho_i,d_i,pointwise_gap\n");
    for row in harness_rows(&seq, &family)? {
        writeln!(csv, "{},{},{},{}", row.index, report::num(row.rho_i), report::num(row.d_i), report::num(row.pointwise_gap))?;
    }
    match out {
        Some(path) => write_out(&path, &csv)?,
        None => print!("{csv}"),
    }
    let pointwise = pointwise_converges(&seq, &family, &schedule)?;
    let metric = metric_converges(&seq, &schedule)?;
    let d_i = d_i_converges(&seq, &schedule)?;
    println!("{}", verdict_line("pointwise", &pointwise));
    println!("{}", verdict_line("rhoI", &metric));
    println!("{}", verdict_line("dI", &d_i));
    if pointwise.converged == metric.converged {
        Ok(Status::Ok)
    } else {
        println!("# pointwise and rhoI verdicts disagree");
        Ok(Status::Violation)
    }
}

fn selftest_cmd(seed: u64, instances: usize, tol: f64) -> Status {
    let checks = selftest::run(seed, instances, tol);
    for c in &checks {
        println!("{} {:<16} {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    if checks.iter().all(|c| c.pass) {
        Status::Ok
    } else {
        Status::Violation
    }
}
