//! Command-line front end.
//!
//! Every command prints a report with two sections. `[machine]` holds
//! `key=value` lines that depend only on the input and flags; `[human]`
//! holds a table and the wall time. Exit codes: 0 success, 1 certificate
//! failure, 2 usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::balancing::{balance, slack, verify_balance, BalancingInstance, Variant};
use crate::generate::{generate, GeneratorSpec};
use crate::io::{digest, parse_any, Instance};
use crate::maxatsp::{
    maxatsp_approx_with, maxatsp_half_wrapper_with, tsp_oracle_with, AtspConfig,
    ExactMatchingBackend, LabeledDigraph,
};
use crate::maxsat::{maxsat_approx_with, maxsat_oracle_with, CnfInstance, MaxSatConfig};
use crate::pareto::{is_alpha_approx_set, ApproxCertificate, Fraction, SolutionSet};

/// Overrides the default enumeration budget of `maxsat` and `maxatsp`.
pub const BUDGET_ENV: &str = "MOBALANCE_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERTIFICATE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Solver(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "mobalance",
    version,
    about = "Multi-objective balancing, MaxSAT and MaxATSP approximations"
)]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Run the interval balancing search.
    Balance(BalanceArgs),
    /// Approximate Pareto set of a weighted CNF.
    Maxsat(MaxsatArgs),
    /// Approximate Pareto set of Hamiltonian cycles.
    Maxatsp(MaxatspArgs),
    /// Certify the default algorithm on any instance file.
    Certify(CertifyArgs),
    /// Generate and certify a seeded batch.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Balance,
    Cnf,
    Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Paired,
    Integer,
    Combinatorial,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Paired => Variant::Paired,
            VariantArg::Integer => Variant::Integer,
            VariantArg::Combinatorial => Variant::Combinatorial,
        }
    }
}

#[derive(Debug, Clone, Args)]
struct SizeArgs {
    /// Balancing variant.
    #[arg(long, value_enum, default_value = "paired")]
    variant: VariantArg,
    /// Sequence length (balance).
    #[arg(long, default_value_t = 8)]
    m: usize,
    /// Half the objective dimension (balance).
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Variables (cnf).
    #[arg(long, default_value_t = 6)]
    vars: usize,
    /// Clauses (cnf).
    #[arg(long, default_value_t = 10)]
    clauses: usize,
    /// Vertices (graph).
    #[arg(long, default_value_t = 6)]
    vertices: usize,
    /// Objectives (cnf, graph).
    #[arg(long, default_value_t = 2)]
    objectives: usize,
    /// Weights are drawn from [0, bound] ([-bound, bound] for integer balancing).
    #[arg(long, default_value_t = 20)]
    bound: i64,
}

impl SizeArgs {
    fn spec(&self, kind: Kind, seed: u64) -> GeneratorSpec {
        match kind {
            Kind::Balance => GeneratorSpec::Balance {
                variant: self.variant.into(),
                m: self.m,
                n: self.n,
                bound: self.bound,
                seed,
            },
            Kind::Cnf => GeneratorSpec::Cnf {
                vars: self.vars,
                clauses: self.clauses,
                objectives: self.objectives,
                bound: self.bound,
                seed,
            },
            Kind::Graph => GeneratorSpec::Graph {
                vertices: self.vertices,
                objectives: self.objectives,
                bound: self.bound,
                seed,
            },
        }
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    size: SizeArgs,
    /// Write the instance here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BalanceArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Must match the variant in the file header when given.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Recheck the returned family independently; exit 1 if it fails.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct CertArgs {
    /// Compare against the brute-force Pareto set.
    #[arg(long)]
    certify: bool,
    /// Certification ratio as `p/q`.
    #[arg(long, default_value = "1/2")]
    alpha: Fraction,
    /// Enumeration budget (default from the environment or built in).
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Debug, Args)]
struct MaxsatArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Output the exact Pareto set instead.
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    cert: CertArgs,
}

#[derive(Debug, Args)]
struct MaxatspArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Matching accuracy `p/q` passed to the backend.
    #[arg(long, default_value = "0/1")]
    eps: Fraction,
    /// Use the heavy-edge wrapper (accepts odd vertex counts).
    #[arg(long)]
    wrapper: bool,
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    cert: CertArgs,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value = "1/2")]
    alpha: Fraction,
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 10)]
    count: u64,
    /// First seed; instance i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long, default_value = "1/2")]
    alpha: Fraction,
    #[arg(long)]
    budget: Option<u128>,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Report with a stable machine section and a human section.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    machine: Vec<(String, String)>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    notes: Vec<String>,
    wall: Duration,
}

impl RunReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl ToString) {
        self.machine.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.machine
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn table(&mut self, header: &[&str]) {
        self.header = header.iter().map(|s| s.to_string()).collect();
    }

    fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn render(&self) -> String {
        let mut s = String::from("[machine]\n");
        for (k, v) in &self.machine {
            let _ = writeln!(s, "{k}={v}");
        }
        s.push_str("[human]\n");
        if !self.header.is_empty() {
            let cols = self.header.len();
            let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
            for r in &self.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: &[String]| {
                let mut l = String::new();
                for (i, c) in cells.iter().enumerate().take(cols) {
                    let _ = write!(l, "{c:<w$}", w = widths[i]);
                    if i + 1 < cols {
                        l.push_str("  ");
                    }
                }
                l.trim_end().to_string() + "\n"
            };
            s.push_str(&line(&self.header));
            for r in &self.rows {
                s.push_str(&line(r));
            }
        }
        for n in &self.notes {
            s.push_str(n);
            s.push('\n');
        }
        let _ = writeln!(s, "wall time: {:.3} ms", self.wall.as_secs_f64() * 1e3);
        s
    }
}

/// The `[machine]` lines of a rendered report.
pub fn machine_section(report: &str) -> &str {
    let start = report
        .find("[machine]\n")
        .map_or(0, |i| i + "[machine]\n".len());
    let end = report[start..]
        .find("[human]\n")
        .map_or(report.len(), |i| start + i);
    &report[start..end]
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(p) => p,
        Err(e) => return usage_failure(format!("cannot start thread pool: {e}")),
    };
    pool.install(|| dispatch(cli.command))
}

fn usage_failure(message: String) -> Outcome {
    Outcome {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
    }
}

fn dispatch(command: Command) -> Outcome {
    let start = Instant::now();
    let mut extra_stdout = String::new();
    let result = match command {
        Command::Gen(a) => cmd_gen(a, &mut extra_stdout),
        Command::Balance(a) => cmd_balance(a),
        Command::Maxsat(a) => cmd_maxsat(a),
        Command::Maxatsp(a) => cmd_maxatsp(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok((mut report, code)) => {
            report.wall = start.elapsed();
            if extra_stdout.is_empty() {
                Outcome {
                    code,
                    stdout: report.render(),
                    stderr: String::new(),
                }
            } else {
                // the instance itself went to stdout
                Outcome {
                    code,
                    stdout: extra_stdout,
                    stderr: report.render(),
                }
            }
        }
        Err(e) => usage_failure(e.to_string()),
    }
}

fn read_instance(path: &PathBuf) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_any(&text).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn default_budget(flag: Option<u128>, builtin: u128) -> Result<u128, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!("{BUDGET_ENV}={v} is not a non-negative integer"))
        }),
        Err(_) => Ok(builtin),
    }
}

fn check_alpha(alpha: Fraction) -> Result<(), CliError> {
    if !alpha.is_unit_interval() {
        return Err(CliError::Usage(format!("alpha {alpha} must lie in (0, 1]")));
    }
    Ok(())
}

fn fmt_ratio(r: Option<(i64, i64)>) -> String {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs().max(1)
        } else {
            gcd(b, a % b)
        }
    }
    match r {
        Some((n, d)) => {
            let g = gcd(n, d);
            format!("{}/{}", n / g, d / g)
        }
        None => "inf".into(),
    }
}

fn add_solution_set<S: std::fmt::Display>(report: &mut RunReport, set: &SolutionSet<S>) {
    report.set("output.size", set.len());
    report.table(&["#", "weight", "solution"]);
    for (i, (s, w)) in set.iter().enumerate() {
        report.set(format!("output.{}", i + 1), format!("{w} {s}"));
        report.row(vec![(i + 1).to_string(), w.to_string(), s.to_string()]);
    }
}

fn add_certificate<T>(
    report: &mut RunReport,
    cert: &ApproxCertificate,
    reference: &SolutionSet<T>,
) -> i32 {
    report.set("certificate.alpha", cert.alpha);
    report.set("certificate.reference_size", reference.len());
    for c in &cert.covers {
        report.set(
            format!("cover.{}", c.reference + 1),
            format!(
                "{} by={} ratio={}",
                reference.entries()[c.reference].1,
                c.candidate + 1,
                fmt_ratio(c.ratio)
            ),
        );
    }
    match cert.uncovered {
        None => {
            report.set("certificate", "pass");
            report.note(format!(
                "certificate: PASS, all {} Pareto points covered at alpha {}",
                reference.len(),
                cert.alpha
            ));
            EXIT_OK
        }
        Some(i) => {
            report.set("certificate", "fail");
            report.set(
                "certificate.uncovered",
                format!("{} {}", i + 1, reference.entries()[i].1),
            );
            report.note(format!(
                "certificate: FAIL, Pareto point {} {} not covered at alpha {}",
                i + 1,
                reference.entries()[i].1,
                cert.alpha
            ));
            EXIT_CERTIFICATE
        }
    }
}

fn cmd_gen(a: GenArgs, stdout: &mut String) -> Result<(RunReport, i32), CliError> {
    let spec = a.size.spec(a.kind, a.seed);
    let inst = generate(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = inst.serialize();
    let mut report = RunReport::new();
    report.set("command", "gen");
    report.set("kind", inst.kind());
    report.set("seed", a.seed);
    report.set("prng", "splitmix64");
    report.set("digest", digest(&inst));
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::Input {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            report.note(format!("wrote {} bytes to {}", text.len(), path.display()));
        }
        None => stdout.push_str(&text),
    }
    Ok((report, EXIT_OK))
}

fn run_balance(
    report: &mut RunReport,
    variant: Variant,
    inst: &BalancingInstance,
    verify: bool,
) -> Result<i32, CliError> {
    let result = balance(inst, variant).map_err(|e| CliError::Solver(e.to_string()))?;
    report.set("algorithm", format!("balance_{}", variant.name()));
    report.set("family", &result.family);
    report.set("in_sum", &result.in_sum);
    report.set("out_sum", &result.out_sum);
    if variant == Variant::Combinatorial {
        report.set("correction", &result.correction);
    }
    let sl = slack(inst, &result);
    report.set(
        "slack",
        sl.iter().map(i128::to_string).collect::<Vec<_>>().join(","),
    );
    report.table(&["objective", "in", "out", "slack"]);
    for (c, s) in sl.iter().enumerate() {
        report.row(vec![
            (c + 1).to_string(),
            result.in_sum[c].to_string(),
            result.out_sum[c].to_string(),
            s.to_string(),
        ]);
    }
    if !verify {
        report.set("verify", "skipped");
        return Ok(EXIT_OK);
    }
    let ok = verify_balance(inst, &result, variant).map_err(|e| CliError::Solver(e.to_string()))?;
    report.set("verify", if ok { "pass" } else { "fail" });
    report.note(format!("verify: {}", if ok { "PASS" } else { "FAIL" }));
    Ok(if ok { EXIT_OK } else { EXIT_CERTIFICATE })
}

fn cmd_balance(a: BalanceArgs) -> Result<(RunReport, i32), CliError> {
    let inst = read_instance(&a.input)?;
    let Instance::Balance(variant, b) = &inst else {
        return Err(CliError::Usage(format!(
            "{} is a {} instance, not balance",
            a.input.display(),
            inst.kind()
        )));
    };
    if let Some(v) = a.variant {
        if Variant::from(v) != *variant {
            return Err(CliError::Usage(format!(
                "--variant {} does not match the file variant {variant}",
                Variant::from(v)
            )));
        }
    }
    let mut report = RunReport::new();
    report.set("command", "balance");
    report.set("digest", digest(&inst));
    let code = run_balance(&mut report, *variant, b, a.verify)?;
    Ok((report, code))
}

fn run_maxsat(
    report: &mut RunReport,
    cnf: &CnfInstance,
    oracle: bool,
    certify: bool,
    alpha: Fraction,
    budget: u128,
) -> Result<i32, CliError> {
    let config = MaxSatConfig {
        budget,
        ..MaxSatConfig::default()
    };
    report.set(
        "algorithm",
        if oracle {
            "maxsat_oracle"
        } else {
            "maxsat_approx"
        },
    );
    report.set("param.budget", budget);
    let out = if oracle {
        maxsat_oracle_with(cnf, config.oracle_cap)
    } else {
        maxsat_approx_with(cnf, &config)
    }
    .map_err(|e| CliError::Solver(e.to_string()))?;
    add_solution_set(report, &out);
    if !certify {
        report.set("certificate", "skipped");
        return Ok(EXIT_OK);
    }
    let reference =
        maxsat_oracle_with(cnf, config.oracle_cap).map_err(|e| CliError::Solver(e.to_string()))?;
    let cert = is_alpha_approx_set(&out, &reference, alpha);
    Ok(add_certificate(report, &cert, &reference))
}

fn cmd_maxsat(a: MaxsatArgs) -> Result<(RunReport, i32), CliError> {
    check_alpha(a.cert.alpha)?;
    let budget = default_budget(a.cert.budget, crate::maxsat::DEFAULT_BUDGET)?;
    let inst = read_instance(&a.input)?;
    let Instance::Cnf(cnf) = &inst else {
        return Err(CliError::Usage(format!(
            "{} is a {} instance, not cnf",
            a.input.display(),
            inst.kind()
        )));
    };
    let mut report = RunReport::new();
    report.set("command", "maxsat");
    report.set("digest", digest(&inst));
    let code = run_maxsat(
        &mut report,
        cnf,
        a.oracle,
        a.cert.certify,
        a.cert.alpha,
        budget,
    )?;
    Ok((report, code))
}

#[derive(Clone, Copy)]
enum AtspMode {
    Approx(Fraction),
    Wrapper,
    Oracle,
}

fn run_maxatsp(
    report: &mut RunReport,
    g: &LabeledDigraph,
    mode: AtspMode,
    certify: bool,
    alpha: Fraction,
    budget: u128,
) -> Result<i32, CliError> {
    let config = AtspConfig {
        budget,
        ..AtspConfig::default()
    };
    let backend = ExactMatchingBackend::default();
    let solver = |e: crate::maxatsp::AtspError| CliError::Solver(e.to_string());
    let out = match mode {
        AtspMode::Approx(eps) => {
            report.set("algorithm", "maxatsp_approx");
            report.set("param.eps", eps);
            maxatsp_approx_with(g, eps, &config, &backend)
        }
        AtspMode::Wrapper => {
            report.set("algorithm", "maxatsp_half_wrapper");
            maxatsp_half_wrapper_with(g, &config, &backend)
        }
        AtspMode::Oracle => {
            report.set("algorithm", "tsp_oracle");
            tsp_oracle_with(g, config.oracle_cap)
        }
    }
    .map_err(solver)?;
    report.set("param.budget", budget);
    report.set("param.backend", "exact");
    add_solution_set(report, &out);
    if !certify {
        report.set("certificate", "skipped");
        return Ok(EXIT_OK);
    }
    let reference = tsp_oracle_with(g, config.oracle_cap).map_err(solver)?;
    let cert = is_alpha_approx_set(&out, &reference, alpha);
    Ok(add_certificate(report, &cert, &reference))
}

fn cmd_maxatsp(a: MaxatspArgs) -> Result<(RunReport, i32), CliError> {
    check_alpha(a.cert.alpha)?;
    if a.eps.num() >= a.eps.den() {
        return Err(CliError::Usage(format!("eps {} must lie in [0, 1)", a.eps)));
    }
    let budget = default_budget(a.cert.budget, crate::maxatsp::DEFAULT_BUDGET)?;
    let inst = read_instance(&a.input)?;
    let Instance::Graph(g) = &inst else {
        return Err(CliError::Usage(format!(
            "{} is a {} instance, not graph",
            a.input.display(),
            inst.kind()
        )));
    };
    let mode = match (a.oracle, a.wrapper) {
        (true, true) => {
            return Err(CliError::Usage(
                "--oracle and --wrapper are exclusive".into(),
            ))
        }
        (true, false) => AtspMode::Oracle,
        (false, true) => AtspMode::Wrapper,
        (false, false) => AtspMode::Approx(a.eps),
    };
    let mut report = RunReport::new();
    report.set("command", "maxatsp");
    report.set("digest", digest(&inst));
    let code = run_maxatsp(&mut report, g, mode, a.cert.certify, a.cert.alpha, budget)?;
    Ok((report, code))
}

/// Runs the default algorithm for the instance kind and certifies it.
fn certify_instance(
    report: &mut RunReport,
    inst: &Instance,
    alpha: Fraction,
    budget: Option<u128>,
) -> Result<i32, CliError> {
    match inst {
        Instance::Balance(v, b) => run_balance(report, *v, b, true),
        Instance::Cnf(c) => {
            let budget = default_budget(budget, crate::maxsat::DEFAULT_BUDGET)?;
            run_maxsat(report, c, false, true, alpha, budget)
        }
        Instance::Graph(g) => {
            let budget = default_budget(budget, crate::maxatsp::DEFAULT_BUDGET)?;
            let mode = if g.num_vertices() % 2 == 0 {
                AtspMode::Approx(Fraction::ZERO)
            } else {
                AtspMode::Wrapper
            };
            run_maxatsp(report, g, mode, true, alpha, budget)
        }
    }
}

fn cmd_certify(a: CertifyArgs) -> Result<(RunReport, i32), CliError> {
    check_alpha(a.alpha)?;
    let inst = read_instance(&a.input)?;
    let mut report = RunReport::new();
    report.set("command", "certify");
    report.set("kind", inst.kind());
    report.set("digest", digest(&inst));
    let code = certify_instance(&mut report, &inst, a.alpha, a.budget)?;
    Ok((report, code))
}

fn cmd_bench(a: BenchArgs) -> Result<(RunReport, i32), CliError> {
    check_alpha(a.alpha)?;
    if a.count == 0 {
        return Err(CliError::Usage("--count must be positive".into()));
    }
    let mut report = RunReport::new();
    report.set("command", "bench");
    report.set("kind", format!("{:?}", a.kind).to_lowercase());
    report.set("count", a.count);
    report.set("seed", a.seed);
    report.set("alpha", a.alpha);
    let mut rows = Vec::new();
    let mut failures = 0u64;
    for i in 0..a.count {
        let seed = a.seed.wrapping_add(i);
        let inst =
            generate(&a.size.spec(a.kind, seed)).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut sub = RunReport::new();
        let t = Instant::now();
        let code = certify_instance(&mut sub, &inst, a.alpha, a.budget)?;
        let elapsed = t.elapsed();
        let status = if code == EXIT_OK { "pass" } else { "fail" };
        if code != EXIT_OK {
            failures += 1;
        }
        let size = sub.get("output.size").unwrap_or("-").to_string();
        report.set(
            format!("instance.{}", i + 1),
            format!(
                "seed={seed} digest={} output={size} result={status}",
                &digest(&inst)[..16]
            ),
        );
        rows.push(vec![
            (i + 1).to_string(),
            seed.to_string(),
            size,
            status.to_string(),
            format!("{:.3}", elapsed.as_secs_f64() * 1e3),
        ]);
    }
    report.set("passed", a.count - failures);
    report.set("failed", failures);
    report.table(&["#", "seed", "output", "result", "ms"]);
    for r in rows {
        report.row(r);
    }
    Ok((
        report,
        if failures == 0 {
            EXIT_OK
        } else {
            EXIT_CERTIFICATE
        },
    ))
}
