mod conjecture;
mod input;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ltdkit::families::{enumerate_connected, random_instance, EnumFilter, FamilySpec, RandomModel};
use ltdkit::io::{write_graph, Format};
use ltdkit::ltd::{is_td_set, ltd_violation, Violation};
use ltdkit::recognize::GraphClass;
use ltdkit::report::{solve_report, SolveMode};
use ltdkit::{LtdError, VertexSet};

use crate::input::{read_graph, write_output};

#[derive(Parser)]
#[command(name = "ltdkit", version, about = "Locating-total dominating sets: verify, solve, construct")]
struct Cli {
    /// Default seed for randomized commands.
    #[arg(long, global = true, env = "LTDKIT_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a vertex set is a TD-set and an LTD-set.
    Verify {
        /// Graph file (edge list or graph6), or `-` for stdin.
        graph: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<usize>,
        #[arg(long)]
        format: Option<InputFormat>,
    },
    /// Compute a minimum LTD-set or a certified construction.
    Solve(SolveArgs),
    /// Test the two-thirds conjecture on enumerated or random graphs.
    CheckConjecture(conjecture::CheckArgs),
    /// Write a graph from a named family or a random model.
    Gen {
        /// Family spec such as `cycle:6`, `split-tight:4`,
        /// `half-graph-complement:3` or `two-corona:cycle:6`.
        spec: Option<String>,
        /// Draw a random twin-free instance of this class instead.
        #[arg(long, conflicts_with = "spec", requires = "n")]
        random: Option<ClassArg>,
        /// Order of the random instance.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, short, default_value = "-")]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Edgelist)]
        format: OutputFormat,
    },
    /// List every connected graph of order n up to isomorphism, as graph6.
    Enumerate {
        n: usize,
        #[arg(long)]
        twin_free: bool,
        /// Keep only graphs in this class (repeatable).
        #[arg(long = "class")]
        classes: Vec<ClassArg>,
        #[arg(long, short, default_value = "-")]
        output: PathBuf,
    },
}

#[derive(Args)]
struct SolveArgs {
    graph: PathBuf,
    #[arg(long, group = "mode")]
    exact: bool,
    #[arg(long, group = "mode")]
    construct: bool,
    /// Exact search when small enough, plus a class construction (default).
    #[arg(long, group = "mode")]
    auto: bool,
    /// Node limit for the exact search.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the set (and certificate, when constructed) to this file.
    #[arg(long)]
    certificate: Option<PathBuf>,
    #[arg(long)]
    format: Option<InputFormat>,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Edgelist,
    Graph6,
}

impl From<InputFormat> for Format {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Edgelist => Format::EdgeList,
            InputFormat::Graph6 => Format::Graph6,
        }
    }
}

type OutputFormat = InputFormat;

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum ClassArg {
    Cobipartite,
    Split,
    Block,
    Subcubic,
    Outerplanar,
}

impl From<ClassArg> for GraphClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Cobipartite => GraphClass::Cobipartite,
            ClassArg::Split => GraphClass::Split,
            ClassArg::Block => GraphClass::Block,
            ClassArg::Subcubic => GraphClass::Subcubic,
            ClassArg::Outerplanar => GraphClass::Outerplanar,
        }
    }
}

/// Why a command stopped: exit status 1 for domain failures, 2 for usage
/// or parse errors.
pub(crate) enum Failure {
    Domain(String),
    Usage(String),
}

impl From<LtdError> for Failure {
    fn from(e: LtdError) -> Self {
        match e {
            LtdError::IsolatedVertex(v) => Failure::Domain(format!("no LTD-set exists: vertex {v} is isolated")),
            e if e.is_usage() => Failure::Usage(e.to_string()),
            e => Failure::Domain(e.to_string()),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { graph, set, format } => verify(&graph, set, format.map(Into::into)),
        Command::Solve(args) => solve(args),
        Command::CheckConjecture(args) => conjecture::run(args, cli.seed),
        Command::Gen { spec, random, n, output, format } => gen(spec, random, n, cli.seed, &output, format.into()),
        Command::Enumerate { n, twin_free, classes, output } => enumerate(n, twin_free, classes, &output),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

pub(crate) fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("reports serialize"));
}

#[derive(Serialize)]
struct VerifyReport {
    graph_id: String,
    n: usize,
    m: usize,
    set: VertexSet,
    td: bool,
    ltd: bool,
    violation: Option<Violation>,
}

fn verify(path: &Path, set: Vec<usize>, format: Option<Format>) -> CmdResult {
    let g = read_graph(path, format)?;
    if let Some(&v) = set.iter().find(|&&v| v >= g.order()) {
        return Err(LtdError::VertexOutOfRange { vertex: v, order: g.order() }.into());
    }
    let set: VertexSet = set.into_iter().collect();
    let violation = ltd_violation(&g, &set);
    let report = VerifyReport {
        graph_id: path.display().to_string(),
        n: g.order(),
        m: g.size(),
        td: is_td_set(&g, &set),
        ltd: violation.is_none(),
        violation,
        set,
    };
    print_json(&report);
    Ok(if report.ltd { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn solve(args: SolveArgs) -> CmdResult {
    let g = read_graph(&args.graph, args.format.map(Into::into))?;
    let mode = if args.exact {
        SolveMode::Exact
    } else if args.construct {
        SolveMode::Construct
    } else {
        SolveMode::Auto
    };
    let id = args.graph.display().to_string();
    let mut report = solve_report(&g, &id, mode, args.budget)?;
    report.flags = BTreeMap::from([("mode".to_string(), mode.name().to_string())]);
    if let Some(b) = args.budget {
        report.flags.insert("budget".into(), b.to_string());
    }
    if let Some(path) = &args.certificate {
        let body = match &report.certificate {
            Some(cert) => serde_json::to_value(cert).expect("certificates serialize"),
            None => serde_json::json!({ "set": report.set, "method": report.method }),
        };
        write_output(path, &(serde_json::to_string_pretty(&body).expect("json") + "\n"))?;
    }
    print_json(&report);
    Ok(if report.verified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn gen(
    spec: Option<String>,
    random: Option<ClassArg>,
    n: Option<usize>,
    seed: u64,
    output: &Path,
    format: Format,
) -> CmdResult {
    let g = match (spec, random, n) {
        (Some(spec), None, _) => spec.parse::<FamilySpec>()?.build()?,
        (None, Some(class), Some(n)) => random_instance(&RandomModel::new(class.into(), n, seed))?,
        _ => return Err(Failure::Usage("give a family spec or --random CLASS --n N".into())),
    };
    write_output(output, &write_graph(&g, format)?)?;
    Ok(ExitCode::SUCCESS)
}

fn enumerate(n: usize, twin_free: bool, classes: Vec<ClassArg>, output: &Path) -> CmdResult {
    let filter = EnumFilter { twin_free, classes: classes.into_iter().map(Into::into).collect() };
    let graphs = enumerate_connected(n, &filter)?;
    let mut text = String::new();
    for g in &graphs {
        text.push_str(&write_graph(g, Format::Graph6)?);
    }
    write_output(output, &text)?;
    Ok(ExitCode::SUCCESS)
}
