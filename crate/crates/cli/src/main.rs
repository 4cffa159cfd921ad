//! `icover`: shortest covers of indeterminate strings from the command line.
//!
//! Exit codes: 0 success, 1 input error, 2 budget refusal, 3 disagreement
//! between solvers or a failed reduction check.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use icover::generate::{instance_rng, random_istring, InstanceParams};
use icover::oracle::{brute_sat, brute_shortest_cover, is_cover};
use icover::reduction::{
    build_reduction, cnf_to_mismatch, parse_dimacs, verify_reduction, vector_to_assignment,
    DimacsMode, Tri,
};
use icover::{
    fpt_solve_general, fpt_solve_partial, odot_prefix_solve, simple_solve, Alphabet, CoverResult,
    IString, LcpIndex, Limits, ParseOptions,
};
use serde::Serialize;

mod bench;

#[derive(Parser, Debug)]
#[command(name = "icover", version, about = "Shortest solid covers of indeterminate strings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a shortest cover.
    Solve(SolveArgs),
    /// Run every applicable solver and compare their answers.
    #[command(alias = "validate")]
    Check(CheckArgs),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Reduce a CNF formula and verify the reduction exhaustively.
    Reduce(ReduceArgs),
    /// Time the solvers and print CSV.
    Bench(bench::BenchArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// Partial words use `partial`, other inputs `fpt`; falls back to
    /// `simple` when a budget is exceeded.
    Auto,
    Simple,
    /// Best ⊙-prefix cover only; an upper bound in general.
    Odot,
    Fpt,
    Partial,
    Oracle,
}

#[derive(Args, Debug, Clone)]
struct Budgets {
    /// Solid prefixes enumerated by the simple solver.
    #[arg(long, default_value_t = Limits::default().max_prefixes)]
    max_prefixes: u128,
    /// Candidate covering sets tried by the FPT solvers.
    #[arg(long, default_value_t = Limits::default().max_subsets)]
    max_subsets: u128,
    /// Largest k for which the column table is built.
    #[arg(long, default_value_t = Limits::default().column_table_k)]
    table_k: usize,
    /// Candidate strings enumerated by the brute-force oracle.
    #[arg(long, default_value_t = Limits::default().oracle_budget)]
    oracle_budget: u128,
}

impl Budgets {
    fn limits(&self) -> Limits {
        Limits {
            max_prefixes: self.max_prefixes,
            max_subsets: self.max_subsets,
            column_table_k: self.table_k,
            oracle_budget: self.oracle_budget,
        }
    }
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file in the i-string grammar; `-` or absent reads stdin.
    input: Option<PathBuf>,
    /// Alphabet for inputs without an `#alphabet=` header, e.g. `acgt`.
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    #[command(flatten)]
    budgets: Budgets,
    /// Print a JSON object instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    budgets: Budgets,
    /// Check a seeded batch of random instances instead of an input file.
    #[arg(long)]
    count: Option<u64>,
    #[arg(long, default_value_t = 14)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    sigma: usize,
    /// Random instances are partial words.
    #[arg(long)]
    partial: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Random i-strings.
    Random(GenRandomArgs),
    /// The reduced partial word of a DIMACS CNF formula.
    Sat(GenSatArgs),
}

#[derive(Args, Debug)]
struct GenRandomArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    sigma: usize,
    #[arg(long)]
    partial: bool,
    /// Solid cells repeat a random block of this length.
    #[arg(long)]
    period: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Index of the first instance (its generator stream).
    #[arg(long, default_value_t = 0)]
    index: u64,
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Output file, or a directory when `--count` exceeds 1.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenSatArgs {
    /// DIMACS CNF file; `-` reads stdin.
    cnf: PathBuf,
    /// Accept sloppy DIMACS, dropping tautological clauses.
    #[arg(long)]
    lenient: bool,
    /// Output file for the word; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON sidecar with the layout; defaults to `<out>.json` when `--out`
    /// is given.
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    cnf: PathBuf,
    #[arg(long)]
    lenient: bool,
    #[command(flatten)]
    budgets: Budgets,
    #[arg(long)]
    json: bool,
}

/// A failed command and its exit code.
#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Budget(String),
    Disagreement(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Budget(_) => 2,
            Failure::Disagreement(_) => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<icover::Error> for Failure {
    fn from(e: icover::Error) -> Self {
        if e.is_resource_refusal() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Input(e.into())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.into())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Check(args) => cmd_check(&args),
        Command::Gen(GenCommand::Random(args)) => cmd_gen_random(&args),
        Command::Gen(GenCommand::Sat(args)) => cmd_gen_sat(&args),
        Command::Reduce(args) => cmd_reduce(&args),
        Command::Bench(args) => bench::cmd_bench(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Input(e) => eprintln!("error: {e:#}"),
                Failure::Budget(msg) => eprintln!("refused: {msg}"),
                Failure::Disagreement(msg) => eprintln!("disagreement: {msg}"),
            }
            ExitCode::from(failure.code())
        }
    }
}

fn read_source(path: Option<&Path>) -> anyhow::Result<String> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
    }
}

fn read_stdin() -> anyhow::Result<String> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).context("reading stdin")?;
    Ok(s)
}

fn load_instance(args: &InputArgs) -> Result<IString, Failure> {
    let text = read_source(args.input.as_deref())?;
    let alphabet = args
        .alphabet
        .as_deref()
        .map(|a| Alphabet::new(a.chars()))
        .transpose()
        .context("--alphabet")?;
    let options = ParseOptions {
        alphabet,
        ..ParseOptions::default()
    };
    IString::parse_with(&text, &options)
        .context("parsing input")
        .map_err(Failure::Input)
}

/// Result of one solver run with its timings.
struct Run {
    result: CoverResult,
    all_lengths: Option<Vec<usize>>,
    index_micros: u128,
    solve_micros: u128,
}

fn run_algo(algo: Algo, t: &IString, limits: &Limits) -> Result<Run, icover::Error> {
    let start = Instant::now();
    if algo == Algo::Oracle {
        let report = brute_shortest_cover(t, limits.oracle_budget)?;
        return Ok(Run {
            result: report.shortest,
            all_lengths: Some(report.all_lengths),
            index_micros: 0,
            solve_micros: start.elapsed().as_micros(),
        });
    }
    let idx = LcpIndex::build(t);
    let index_micros = start.elapsed().as_micros();
    let start = Instant::now();
    let result = match algo {
        Algo::Simple => simple_solve(&idx, limits.max_prefixes)?,
        Algo::Odot => odot_prefix_solve(&idx)?.ok_or(icover::Error::EmptyInput)?,
        Algo::Fpt => fpt_solve_general(&idx, limits)?,
        Algo::Partial => fpt_solve_partial(&idx, limits)?,
        Algo::Auto => {
            let first = if t.is_partial_word() {
                fpt_solve_partial(&idx, limits)
            } else {
                fpt_solve_general(&idx, limits)
            };
            match first {
                Err(e) if e.is_resource_refusal() => simple_solve(&idx, limits.max_prefixes)?,
                other => other?,
            }
        }
        Algo::Oracle => unreachable!(),
    };
    Ok(Run {
        result,
        all_lengths: None,
        index_micros,
        solve_micros: start.elapsed().as_micros(),
    })
}

#[derive(Serialize)]
struct SolveReport {
    n: usize,
    k: usize,
    sigma: usize,
    partial: bool,
    length: usize,
    witness: String,
    covering_set: Vec<usize>,
    algo: &'static str,
    micros: u128,
    index_micros: u128,
    solve_micros: u128,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    all_lengths: Option<Vec<usize>>,
}

fn cmd_solve(args: &SolveArgs) -> CmdResult {
    let t = load_instance(&args.input)?;
    let run = run_algo(args.algo, &t, &args.budgets.limits())?;
    let r = &run.result;
    let valid = is_cover(&r.witness, &t);
    let report = SolveReport {
        n: t.len(),
        k: t.k(),
        sigma: t.sigma(),
        partial: t.is_partial_word(),
        length: r.length,
        witness: r.witness_text(&t),
        covering_set: r.covering_set.clone(),
        algo: r.algorithm.name(),
        micros: run.index_micros + run.solve_micros,
        index_micros: run.index_micros,
        solve_micros: run.solve_micros,
        valid,
        all_lengths: run.all_lengths.clone(),
    };
    let mut out = io::stdout().lock();
    if args.json {
        serde_json::to_writer(&mut out, &report).map_err(|e| anyhow!(e))?;
        writeln!(out)?;
    } else {
        writeln!(out, "length {}", report.length)?;
        writeln!(out, "witness {}", report.witness)?;
        writeln!(out, "covering_set {}", join(&report.covering_set))?;
        writeln!(out, "algo {}", report.algo)?;
        if let Some(lengths) = &report.all_lengths {
            writeln!(out, "all_lengths {}", join(lengths))?;
        }
    }
    if !valid {
        return Err(Failure::Disagreement(format!(
            "{} returned {}, which is not a cover",
            report.algo, report.witness
        )));
    }
    Ok(())
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Per-solver outcome in a comparison.
struct Verdict {
    algo: Algo,
    outcome: Result<Run, icover::Error>,
}

fn exact_algos(t: &IString) -> Vec<Algo> {
    let mut algos = vec![Algo::Simple, Algo::Fpt];
    if t.is_partial_word() {
        algos.push(Algo::Partial);
    }
    algos.push(Algo::Oracle);
    algos
}

fn compare(t: &IString, limits: &Limits) -> (Vec<Verdict>, Option<String>) {
    let verdicts: Vec<Verdict> = exact_algos(t)
        .into_iter()
        .map(|algo| Verdict {
            algo,
            outcome: run_algo(algo, t, limits),
        })
        .collect();
    let answers: Vec<(Algo, usize, &[u8])> = verdicts
        .iter()
        .filter_map(|v| {
            v.outcome
                .as_ref()
                .ok()
                .map(|r| (v.algo, r.result.length, r.result.witness.as_slice()))
        })
        .collect();
    let mut problem = None;
    for v in &verdicts {
        if let Ok(run) = &v.outcome {
            if !is_cover(&run.result.witness, t) {
                problem = Some(format!("{:?} returned a non-cover", v.algo));
            }
        }
    }
    if let Some(&(first, len, w)) = answers.first() {
        for &(algo, l, x) in &answers[1..] {
            if l != len || x != w {
                problem = Some(format!(
                    "{first:?} gives {} ({len}), {algo:?} gives {} ({l})",
                    t.alphabet().render(w),
                    t.alphabet().render(x)
                ));
            }
        }
    }
    (verdicts, problem)
}

fn print_verdicts(out: &mut impl Write, t: &IString, verdicts: &[Verdict]) -> io::Result<()> {
    for v in verdicts {
        let name = format!("{:?}", v.algo).to_lowercase();
        match &v.outcome {
            Ok(run) => writeln!(
                out,
                "{name:<8} {:>6}  {}  {}us",
                run.result.length,
                run.result.witness_text(t),
                run.index_micros + run.solve_micros
            )?,
            Err(e) => writeln!(out, "{name:<8} skipped: {e}")?,
        }
    }
    Ok(())
}

fn cmd_check(args: &CheckArgs) -> CmdResult {
    let limits = args.budgets.limits();
    let mut out = io::stdout().lock();
    match args.count {
        None => {
            let t = load_instance(&args.input)?;
            let (verdicts, problem) = compare(&t, &limits);
            writeln!(out, "n={} k={} sigma={} partial={}", t.len(), t.k(), t.sigma(), t.is_partial_word())?;
            print_verdicts(&mut out, &t, &verdicts)?;
            if let Some(p) = problem {
                return Err(Failure::Disagreement(p));
            }
            let lengths: Vec<usize> = verdicts
                .iter()
                .filter_map(|v| v.outcome.as_ref().ok().map(|r| r.result.length))
                .collect();
            match lengths.first() {
                Some(len) => writeln!(out, "agree: length {len}")?,
                None => return Err(Failure::Budget("every solver refused".into())),
            }
        }
        Some(count) => {
            if args.input.input.is_some() {
                return Err(Failure::Input(anyhow!("--count generates its own instances")));
            }
            let params = InstanceParams::new(args.n, args.k, args.sigma, args.partial);
            let mut refused = 0;
            for index in 0..count {
                let t = random_istring(&params, &mut instance_rng(args.seed, index))?;
                let (verdicts, problem) = compare(&t, &limits);
                if verdicts.iter().any(|v| v.outcome.is_err()) {
                    refused += 1;
                }
                if let Some(p) = problem {
                    writeln!(out, "instance {index}: {}", t.to_text().replace('\n', " "))?;
                    print_verdicts(&mut out, &t, &verdicts)?;
                    return Err(Failure::Disagreement(format!("instance {index}: {p}")));
                }
            }
            writeln!(out, "{count} instances, 0 disagreements, {refused} with refusals")?;
        }
    }
    Ok(())
}

fn cmd_gen_random(args: &GenRandomArgs) -> CmdResult {
    let params = InstanceParams {
        period: args.period,
        ..InstanceParams::new(args.n, args.k, args.sigma, args.partial)
    };
    let make = |index: u64| random_istring(&params, &mut instance_rng(args.seed, index));
    if args.count == 1 {
        let text = make(args.index)?.to_text() + "\n";
        match &args.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{text}"),
        }
        return Ok(());
    }
    let dir = args
        .out
        .as_ref()
        .ok_or_else(|| anyhow!("--count > 1 needs --out DIR"))?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for index in args.index..args.index + args.count {
        let path = dir.join(format!("instance-{index:05}.txt"));
        fs::write(&path, make(index)?.to_text() + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn load_cnf(path: &Path, lenient: bool) -> Result<icover::reduction::CnfFormula, Failure> {
    let text = read_source(Some(path))?;
    let mode = if lenient {
        DimacsMode::Lenient
    } else {
        DimacsMode::Strict
    };
    let (formula, warnings) = parse_dimacs(&text, mode).map_err(|e| anyhow!(e))?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(formula)
}

fn cmd_gen_sat(args: &GenSatArgs) -> CmdResult {
    let formula = load_cnf(&args.cnf, args.lenient)?;
    let instance = cnf_to_mismatch(&formula).map_err(|e| anyhow!(e))?;
    let red = build_reduction(&instance).map_err(|e| anyhow!(e))?;
    let sidecar = serde_json::to_string_pretty(&red.layout).map_err(|e| anyhow!(e))?;
    let text = red.text.to_text() + "\n";
    match &args.out {
        Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    let sidecar_path = args.sidecar.clone().or_else(|| {
        args.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".json");
            PathBuf::from(s)
        })
    });
    if let Some(path) = sidecar_path {
        fs::write(&path, sidecar + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ReduceReport {
    p: usize,
    m: usize,
    d: usize,
    length: usize,
    satisfiable: bool,
    short_cover_lengths: Vec<usize>,
    solutions: usize,
    decoded: Vec<String>,
    assignment: Option<Vec<bool>>,
    passed: bool,
}

fn cmd_reduce(args: &ReduceArgs) -> CmdResult {
    let formula = load_cnf(&args.cnf, args.lenient)?;
    let instance = cnf_to_mismatch(&formula).map_err(|e| anyhow!(e))?;
    let red = build_reduction(&instance).map_err(|e| anyhow!(e))?;
    let check = verify_reduction(&instance, &args.budgets.limits())?;
    let satisfiable = brute_sat(&formula)?;
    let decoded: Vec<Vec<Tri>> = check.decoded.iter().flatten().cloned().collect();
    let report = ReduceReport {
        p: red.layout.p,
        m: red.layout.m,
        d: red.layout.d,
        length: red.layout.length,
        satisfiable,
        short_cover_lengths: check.short_lengths.clone(),
        solutions: check.solutions.len(),
        decoded: decoded.iter().map(|v| Tri::render_word(v)).collect(),
        assignment: decoded.first().map(|v| vector_to_assignment(v)),
        passed: check.passed() && satisfiable == !check.solutions.is_empty(),
    };
    let mut out = io::stdout().lock();
    if args.json {
        serde_json::to_writer(&mut out, &report).map_err(|e| anyhow!(e))?;
        writeln!(out)?;
    } else {
        writeln!(out, "p={} m={} d={} |T|={}", report.p, report.m, report.d, report.length)?;
        writeln!(out, "satisfiable {}", report.satisfiable)?;
        writeln!(out, "cover lengths <= d: {}", join(&report.short_cover_lengths))?;
        writeln!(out, "mismatch solutions {}", report.solutions)?;
        if let Some(v) = report.decoded.first() {
            writeln!(out, "decoded cover {v}")?;
        }
        writeln!(out, "checks {}", if report.passed { "passed" } else { "FAILED" })?;
    }
    if !report.passed {
        return Err(Failure::Disagreement("reduction check failed".into()));
    }
    Ok(())
}
