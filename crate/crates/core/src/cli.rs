//! Command-line front end. `main` only parses arguments and maps errors to exit codes.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{self, Suite};
use crate::enlarge::{enlarge_girth, EnlargeOptions, LemmaViolation, Regime, DEFAULT_SLACK};
use crate::error::{Error, Result};
use crate::gadget::{check_arc_inequality, gen_hanging, gen_lower_bound, gen_random, HangingSpec, RandomModel};
use crate::graph::{girth, is_k_spanner, Graph, SpannerInstance};
use crate::greedy::{exhaustive_greedy_min, greedy_spanner, ordering_for_spanner, EdgeOrdering};
use crate::io::{format_edge_sequence, format_graph, read_edge_sequence, read_graph, write_graph, write_subgraph};
use crate::oracle::{classify_pair, min_spanner};

pub const SEED_ENV: &str = "SPANNER_LAB_SEED";

#[derive(Debug, Parser)]
#[command(name = "spanner-lab", version, about = "Greedy spanners, girth enlargement and exact oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate graphs.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run the greedy k-spanner algorithm.
    Greedy(GreedyArgs),
    /// Write an edge ordering under which greedy reproduces a given spanner.
    Reconstruct(ReconstructArgs),
    /// Enlarge the girth of a k-spanner to at least k + 2.
    Enlarge(EnlargeArgs),
    /// Check the spanner property and report the girth.
    Verify(VerifyArgs),
    /// Exact answers for small graphs.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run a seeded benchmark suite.
    Bench(BenchArgs),
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// The six-arc lower-bound gadget.
    Gadget {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        /// Where to write the n-edge baseline spanner.
        #[arg(long)]
        baseline: Option<PathBuf>,
        /// Print the arc-inequality report as JSON.
        #[arg(long)]
        check: bool,
    },
    /// A seeded random graph.
    Random {
        /// gnp:P, gnp:P:connected, chords:C, greedy:K or greedy:K:P
        #[arg(long)]
        model: RandomModel,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// A short cycle with hanging paths, plus a base graph it k-spans.
    Hanging {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        cycle: usize,
        #[arg(long, default_value_t = 3)]
        paths: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        spanner: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SeedArg {
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GreedyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// `lex`, `random:SEED` or a path to an ordering file.
    #[arg(long, default_value = "lex")]
    pub order: String,
    /// Defaults to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub spanner: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Defaults to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnlargeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub spanner: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// auto, extreme, good, approx2 or bucket:T
    #[arg(long, default_value = "auto")]
    pub regime: Regime,
    #[arg(long, default_value_t = DEFAULT_SLACK)]
    pub slack: usize,
    /// Trace JSON, written on success and on failure.
    #[arg(long)]
    pub trace: PathBuf,
    /// Where to write the enlarged spanner.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory receiving the failing instance if a step breaks.
    #[arg(long)]
    pub violation_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub spanner: PathBuf,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Minimum k-spanner by exhaustive search.
    MinSpanner {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Count every minimum spanner and profile their girths.
        #[arg(long)]
        all: bool,
    },
    /// Classify (n, k) as extremely good, good or not good.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Smallest greedy output over edge orderings.
    GreedyMin {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// regimes, gadget or oracle-cross
    #[arg(long)]
    pub suite: Suite,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Defaults to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs one command. Reports go to `stdout`, notes to `stderr`.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Gen(cmd) => gen(cmd, stdout),
        Command::Greedy(a) => {
            let g = read_graph(&a.input)?;
            let order = parse_order(&g, &a.order)?;
            let h = greedy_spanner(&g, a.k, &order)?.sub;
            emit_subgraph(&h, &a.input, a.out.as_deref(), stdout)
        }
        Command::Reconstruct(a) => {
            let g = read_graph(&a.input)?;
            let h = read_graph(&a.spanner)?;
            let order = ordering_for_spanner(&SpannerInstance::new(g, a.k, h)?)?;
            let text = format_edge_sequence(order.edges());
            emit_text(&text, a.out.as_deref(), stdout)
        }
        Command::Enlarge(a) => enlarge(a, stdout, stderr),
        Command::Verify(a) => {
            let g = read_graph(&a.input)?;
            let h = read_graph(&a.spanner)?;
            if h.n() != g.n() || !h.is_subgraph_of(&g) {
                return Err(Error::invariant("the spanner is not a subgraph of the base graph"));
            }
            let ok = is_k_spanner(&g, &h, a.k);
            print_json(stdout, &VerifyReport { spanner: ok, girth: girth(&h) })?;
            if ok {
                Ok(())
            } else {
                Err(Error::invariant(format!("not a {}-spanner", a.k)))
            }
        }
        Command::Oracle(cmd) => match cmd {
            OracleCommand::MinSpanner { input, k, all } => {
                let g = read_graph(&input)?;
                print_json(stdout, &min_spanner(&g, k, all)?)
            }
            OracleCommand::Classify { n, k } => print_json(stdout, &classify_pair(n, k)?),
            OracleCommand::GreedyMin { input, k, budget, seed } => {
                let g = read_graph(&input)?;
                print_json(stdout, &exhaustive_greedy_min(&g, k, budget, seed.seed)?)
            }
        },
        Command::Bench(a) => {
            let rows = bench::run_suite(a.suite, a.seed.seed, a.trials)?;
            let mut buf = Vec::new();
            match a.format {
                Format::Csv => bench::write_csv(&rows, &mut buf)?,
                Format::Json => {
                    buf.extend_from_slice(bench::to_json(&rows).as_bytes());
                    buf.push(b'\n');
                }
            }
            match a.out {
                Some(path) => fs::write(path, buf)?,
                None => stdout.write_all(&buf)?,
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    spanner: bool,
    girth: Option<usize>,
}

fn gen(cmd: GenCommand, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        GenCommand::Gadget { k, n, out, baseline, check } => {
            let gd = gen_lower_bound(k, n)?;
            let report = check.then(|| check_arc_inequality(&gd));
            let note = format!("six-arc gadget k={k} n={n} p={}", gd.spec.p);
            write_graph(&out, &gd.graph, Some(&note))?;
            if let Some(path) = baseline {
                write_subgraph(&path, &gd.baseline.sub, &out)?;
            }
            if let Some(report) = report {
                print_json(stdout, &report)?;
                if !report.violations.is_empty() {
                    return Err(Error::Generator(format!(
                        "{} arc-inequality violations",
                        report.violations.len()
                    )));
                }
            }
            Ok(())
        }
        GenCommand::Random { model, n, seed, out } => {
            let g = gen_random(n, model, seed.seed)?;
            write_graph(&out, &g, Some(&format!("{model} n={n} seed={}", seed.seed)))
        }
        GenCommand::Hanging { n, k, cycle, paths, density, seed, out, spanner } => {
            let spec = HangingSpec { n, k, cycle, paths, density };
            let inst = gen_hanging(spec, seed.seed)?;
            let note = format!("hanging n={n} k={k} cycle={cycle} paths={paths} density={density} seed={}", seed.seed);
            write_graph(&out, &inst.base, Some(&note))?;
            write_subgraph(&spanner, &inst.sub, &out)
        }
    }
}

fn parse_order(g: &Graph, spec: &str) -> Result<EdgeOrdering> {
    if spec == "lex" {
        return Ok(EdgeOrdering::lex(g));
    }
    if let Some(seed) = spec.strip_prefix("random:") {
        let seed = seed
            .parse()
            .map_err(|_| Error::input(format!("bad ordering seed `{seed}`")))?;
        return Ok(EdgeOrdering::random(g, seed));
    }
    EdgeOrdering::from_edges(g, read_edge_sequence(Path::new(spec))?)
}

fn enlarge(a: EnlargeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let g = read_graph(&a.input)?;
    let h = read_graph(&a.spanner)?;
    if h.n() != g.n() {
        return Err(Error::invariant(format!(
            "spanner has {} vertices but the base graph has {}",
            h.n(),
            g.n()
        )));
    }
    let opts = EnlargeOptions {
        regime: a.regime,
        slack: a.slack,
    };
    match enlarge_girth(&g, &h, a.k, opts) {
        Ok(out) => {
            fs::write(&a.trace, out.trace.to_json() + "\n")?;
            emit_subgraph(&out.result, &a.input, a.out.as_deref(), stdout)
        }
        Err(Error::Lemma(v)) => {
            if let Some(trace) = &v.trace {
                fs::write(&a.trace, trace.to_json() + "\n")?;
            }
            if let Some(dir) = &a.violation_dir {
                write_violation(dir, &v)?;
                writeln!(stderr, "failing instance written to {}", dir.display())?;
            }
            writeln!(stderr, "trace: {}", a.trace.display())?;
            Err(Error::Lemma(v))
        }
        Err(e) => Err(e),
    }
}

/// `base.edges`, `spanner.edges` and `violation.json` inside `dir`.
pub fn write_violation(dir: &Path, v: &LemmaViolation) -> Result<()> {
    fs::create_dir_all(dir)?;
    let base = dir.join("base.edges");
    if let Some(g) = &v.base {
        write_graph(&base, g, Some("base graph of a failed enlargement"))?;
    }
    if let Some(h) = &v.spanner {
        write_subgraph(&dir.join("spanner.edges"), h, &base)?;
    }
    fs::write(dir.join("violation.json"), v.to_json() + "\n")?;
    Ok(())
}

fn emit_subgraph(h: &Graph, base: &Path, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => write_subgraph(path, h, base),
        None => {
            let note = format!("subgraph of {}", base.display());
            Ok(stdout.write_all(format_graph(h, Some(&note)).as_bytes())?)
        }
    }
}

fn emit_text(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => Ok(fs::write(path, text)?),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn print_json(stdout: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *stdout, value)?;
    writeln!(stdout)?;
    Ok(())
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    match run(cli, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
