//! Command-line front end.
//!
//! Exit codes: 0 success, 2 input or usage error, 3 unmet precondition
//! (too few hops, oracle budget), 4 arithmetic failure (overflow).

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use subcount_core::mp::EvalError;
use subcount_core::oracle::{Oracle, OracleError, DEFAULT_BUDGET};
use subcount_core::refinement::{distinguish_with, fingerprint, Method};
use subcount_core::{generators as gen, CountError, CountReport, Graph, Labeling, Policy, Substructure};

use crate::bench::{growth_ratios, run_bench, BenchConfig};
use crate::formats::{load_graph, load_graphs, write_edgelist, Format};
use crate::parallel::Parallel;
use crate::report::{write_report, Level};
use crate::stats::corpus_stats;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_OVERFLOW: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "subcount", version, about = "Exact substructure counting with rooted-subgraph message passing")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count a substructure with its message-passing program.
    Count(CountArgs),
    /// Count a substructure by exhaustive enumeration.
    Oracle(OracleArgs),
    /// Compare two graphs (or every pair in a corpus) by color refinement.
    Distinguish(DistinguishArgs),
    /// Write a named or random graph as an edge list.
    Gen(GenArgs),
    /// Average 3- to 6-cycle counts per graph for each corpus.
    Stats(StatsArgs),
    /// Time the counting phases on random regular graphs.
    Bench(BenchArgs),
}

#[derive(Debug, clap::Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// Defaults to graph6 for `.g6`/`.graph6` files, edge list otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    substructure: Substructure,
    #[arg(long, value_enum, default_value = "node")]
    level: Level,
    /// Add the 6-cycle pattern columns.
    #[arg(long)]
    verbose: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct CountArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Ego-network radius (default depends on the substructure).
    #[arg(long)]
    hops: Option<u32>,
}

#[derive(Debug, clap::Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Refuse graphs whose estimated enumeration exceeds this many steps.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LabelArg {
    Identity,
    Spd,
}

#[derive(Debug, clap::Args)]
struct DistinguishArgs {
    #[arg(long, default_value = "i2_wl")]
    method: Method,
    /// Subgraph radius for subgraph_wl and i2_wl.
    #[arg(long)]
    hops: Option<u32>,
    /// Node labeling inside subgraph_wl subgraphs.
    #[arg(long, value_enum, default_value = "identity")]
    labeling: LabelArg,
    /// Use node-deleted subgraphs for subgraph_wl instead of ego-networks.
    #[arg(long)]
    node_deletion: bool,
    /// Compare full color histograms instead of digests.
    #[arg(long)]
    exact_compare: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Treat each file as a corpus and compare every pair of its graphs.
    #[arg(long)]
    corpus: bool,
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Cycle,
    CyclePair,
    Coned,
    Rook,
    Shrikhande,
    Petersen,
    Complete,
    Path,
    Star,
    Random,
    Regular,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Variant {
    /// `C_2L` (cycle-pair) or the apex over one `C_2L` (coned).
    Joined,
    /// `2 x C_L` (cycle-pair) or the apex over two `C_L` (coned).
    Split,
}

#[derive(Debug, clap::Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    /// Cycle length for cycle, cycle-pair and coned.
    #[arg(long = "L", visible_alias = "len", default_value_t = 3)]
    len: usize,
    #[arg(long, value_enum, default_value = "joined")]
    variant: Variant,
    /// Node count (complete, path, random, regular) or leaf count (star).
    #[arg(long, default_value_t = 10)]
    nodes: usize,
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 4)]
    degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct StatsArgs {
    /// Corpus directories (or single files).
    paths: Vec<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct BenchArgs {
    #[arg(long, default_value = "cycle6")]
    substructure: Substructure,
    #[arg(long, value_delimiter = ',', default_values_t = vec![1000, 2000, 4000])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    degree: usize,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if let Some(c) = cause.downcast_ref::<CountError>() {
            return match c {
                CountError::InsufficientHops { .. } => EXIT_PRECONDITION,
                CountError::Eval(
                    EvalError::Overflow(_) | EvalError::Inexact { .. },
                )
                | CountError::Negative { .. } => EXIT_OVERFLOW,
                _ => EXIT_INPUT,
            };
        }
        if let Some(o) = cause.downcast_ref::<OracleError>() {
            return match o {
                OracleError::Budget { .. } => EXIT_PRECONDITION,
                OracleError::Overflow => EXIT_OVERFLOW,
                _ => EXIT_INPUT,
            };
        }
    }
    EXIT_INPUT
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let exec = Parallel::new(cli.threads).context("starting the thread pool")?;
    match cli.command {
        Command::Count(a) => {
            let g = read_input(&a.input)?;
            let report = subcount_core::programs::count_with(&g, a.input.substructure, a.hops, &exec)?;
            emit_report(&a.input, &report, stdout)
        }
        Command::Oracle(a) => {
            let g = read_input(&a.input)?;
            let report = Oracle::new(a.budget, &exec).count(&g, a.input.substructure)?;
            emit_report(&a.input, &report, stdout)
        }
        Command::Distinguish(a) => cmd_distinguish(a, &exec, stdout),
        Command::Gen(a) => cmd_gen(a, stdout),
        Command::Stats(a) => cmd_stats(a, &exec, stdout, stderr),
        Command::Bench(a) => cmd_bench(a, &exec, stdout),
    }
}

fn read_input(a: &InputArgs) -> Result<Graph> {
    let format = a.format.unwrap_or_else(|| Format::from_path(&a.input));
    load_graph(&a.input, format).with_context(|| format!("reading {}", a.input.display()))
}

fn emit_report(a: &InputArgs, report: &CountReport, stdout: &mut dyn Write) -> Result<()> {
    match &a.out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_report(io::BufWriter::new(f), report, a.level, a.verbose)?;
        }
        None => write_report(stdout, report, a.level, a.verbose)?,
    }
    Ok(())
}

fn method_of(a: &DistinguishArgs) -> Method {
    let method = match a.hops {
        Some(k) => a.method.with_hops(k),
        None => a.method,
    };
    match method {
        Method::SubgraphWl { policy, .. } => Method::SubgraphWl {
            policy: if a.node_deletion { Policy::NodeDeletion } else { policy },
            labeling: match a.labeling {
                LabelArg::Identity => Labeling::Identity,
                LabelArg::Spd => Labeling::Spd,
            },
        },
        other => other,
    }
}

fn load_any(path: &Path, format: Option<Format>) -> Result<Vec<Graph>> {
    let format = format.unwrap_or_else(|| Format::from_path(path));
    load_graphs(path, format).with_context(|| format!("reading {}", path.display()))
}

fn cmd_distinguish(a: DistinguishArgs, exec: &Parallel, stdout: &mut dyn Write) -> Result<()> {
    let method = method_of(&a);
    if !a.corpus {
        let [f1, f2] = &a.files[..] else {
            bail!("expected two graph files, got {}", a.files.len());
        };
        let g1 = single(load_any(f1, a.format)?, f1)?;
        let g2 = single(load_any(f2, a.format)?, f2)?;
        let verdict = distinguish_with(&g1, &g2, method, a.exact_compare, exec)?;
        writeln!(stdout, "{verdict}")?;
        return Ok(());
    }
    writeln!(stdout, "corpus,method,graphs,pairs,distinguished,rate")?;
    for path in &a.files {
        let graphs = load_any(path, a.format)?;
        let prints = graphs
            .iter()
            .map(|g| fingerprint(g, method, exec))
            .collect::<Result<Vec<_>, _>>()?;
        let (mut pairs, mut hits) = (0u64, 0u64);
        for x in 0..prints.len() {
            for y in x + 1..prints.len() {
                pairs += 1;
                let same = if a.exact_compare {
                    prints[x].histogram == prints[y].histogram
                } else {
                    prints[x].digest == prints[y].digest
                };
                hits += u64::from(!same);
            }
        }
        let rate = if pairs == 0 { 0.0 } else { 100.0 * hits as f64 / pairs as f64 };
        writeln!(
            stdout,
            "{},{method},{},{pairs},{hits},{rate:.1}%",
            path.display(),
            graphs.len()
        )?;
    }
    Ok(())
}

fn single(mut graphs: Vec<Graph>, path: &Path) -> Result<Graph> {
    if graphs.len() != 1 {
        bail!("{}: expected one graph, found {}", path.display(), graphs.len());
    }
    Ok(graphs.pop().expect("one graph"))
}

fn cmd_gen(a: GenArgs, stdout: &mut dyn Write) -> Result<()> {
    let pick = |(joined, split): (Graph, Graph)| match a.variant {
        Variant::Joined => joined,
        Variant::Split => split,
    };
    let g = match a.family {
        Family::Cycle => gen::cycle(a.len)?,
        Family::CyclePair => {
            let (split, joined) = gen::cycle_pair(a.len)?;
            pick((joined, split))
        }
        Family::Coned => pick(gen::coned_cycles(a.len)?),
        Family::Rook => gen::rook4x4(),
        Family::Shrikhande => gen::shrikhande(),
        Family::Petersen => gen::petersen(),
        Family::Complete => gen::complete(a.nodes),
        Family::Path => gen::path(a.nodes),
        Family::Star => gen::star(a.nodes),
        Family::Random => gen::random(a.nodes, a.p, a.seed)?,
        Family::Regular => gen::random_regular(a.nodes, a.degree, a.seed)?,
    };
    let text = write_edgelist(&g);
    match a.out {
        Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_stats(a: StatsArgs, exec: &Parallel, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    writeln!(stdout, "corpus,graphs,cycle3,cycle4,cycle5,cycle6")?;
    for path in &a.paths {
        let s = corpus_stats(path, exec).map_err(|e| anyhow!("{}: {e}", path.display()))?;
        for (file, msg) in &s.errors {
            writeln!(stderr, "error: {}: {msg}", file.display())?;
        }
        let m = s.stats.means;
        writeln!(
            stdout,
            "{},{},{:.4},{:.4},{:.4},{:.4}",
            s.corpus, s.stats.graphs, m[0], m[1], m[2], m[3]
        )?;
    }
    Ok(())
}

fn cmd_bench(a: BenchArgs, exec: &Parallel, stdout: &mut dyn Write) -> Result<()> {
    let cfg = BenchConfig {
        kind: a.substructure,
        sizes: a.sizes,
        degree: a.degree,
        repeats: a.repeats,
        seed: a.seed,
    };
    let rows = run_bench(&cfg, exec)?;
    let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
    writeln!(stdout, "nodes,edges,extraction_ms,message_passing_ms,readout_ms,total_ms,ratio")?;
    let ratios = growth_ratios(&rows);
    for (k, r) in rows.iter().enumerate() {
        let ratio = match k {
            0 => String::new(),
            _ => format!("{:.2}", ratios[k - 1]),
        };
        writeln!(
            stdout,
            "{},{},{:.3},{:.3},{:.3},{:.3},{ratio}",
            r.nodes,
            r.edges,
            ms(r.extraction),
            ms(r.message_passing),
            ms(r.readout),
            ms(r.total())
        )?;
    }
    Ok(())
}
