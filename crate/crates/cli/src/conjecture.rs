use std::collections::BTreeMap;
use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use ltdkit::families::{enumerate_connected, random_instance, EnumFilter, RandomModel, ENUMERATION_LIMIT};
use ltdkit::io::to_graph6;
use ltdkit::recognize::GraphClass;
use ltdkit::report::{solve_report, RunReport, SolveMode};
use ltdkit::{Graph, LtdError};

use crate::{ClassArg, Failure};

/// Largest instance count a random scope may request.
const MAX_COUNT: usize = 1_000_000;
/// Largest order accepted for exact-mode random scopes.
const MAX_EXACT_ORDER: usize = 64;
/// Largest order accepted for construct-mode random scopes.
const MAX_CONSTRUCT_ORDER: usize = 5_000;
/// Instances handed to the worker pool per batch; reports are written in
/// order between batches.
const BATCH: usize = 256;

#[derive(Args)]
#[command(group(clap::ArgGroup::new("scope").required(true).args(["enumerate", "random"])))]
pub struct CheckArgs {
    /// Every connected twin-free graph of order up to N.
    #[arg(long, value_name = "N")]
    enumerate: Option<usize>,
    /// COUNT seeded twin-free instances of CLASS with N vertices; SEED
    /// defaults to the global seed.
    #[arg(long, num_args = 3..=4, value_names = ["CLASS", "N", "COUNT", "SEED"])]
    random: Option<Vec<String>>,
    /// Exact minimum (default for --enumerate) or class construction
    /// (default for --random).
    #[arg(long, value_enum)]
    mode: Option<CheckMode>,
    /// Node limit for each exact search.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads; each instance runs on one thread.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Print only the final summary line.
    #[arg(long)]
    summary_only: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Exact,
    Construct,
}

enum Scope {
    Enumerate(usize),
    Random { class: GraphClass, n: usize, count: usize, seed: u64 },
}

impl Scope {
    fn describe(&self) -> String {
        match self {
            Scope::Enumerate(n) => format!("enumerate:{n}"),
            Scope::Random { class, n, count, seed } => format!("random:{class}:{n}:{count}:{seed}"),
        }
    }
}

#[derive(Serialize)]
struct ViolationEntry {
    graph_id: String,
    n: usize,
    size: Option<usize>,
    bound: String,
    reason: String,
}

#[derive(Serialize)]
struct Summary {
    kind: &'static str,
    scope: String,
    mode: &'static str,
    instances: usize,
    violations: Vec<ViolationEntry>,
    /// Exact searches that hit the budget above the bound.
    inconclusive: usize,
    /// Largest size/n ratio seen.
    max_ratio: f64,
    elapsed_ms: u64,
    seed: Option<u64>,
    flags: BTreeMap<String, String>,
}

fn parse_scope(args: &CheckArgs, default_seed: u64) -> Result<Scope, Failure> {
    if let Some(n) = args.enumerate {
        if n == 0 || n > ENUMERATION_LIMIT {
            return Err(Failure::Usage(format!("scope refused: --enumerate supports 1..={ENUMERATION_LIMIT}")));
        }
        return Ok(Scope::Enumerate(n));
    }
    let raw = args.random.as_ref().expect("clap enforces one scope");
    let class = ClassArg::from_str(&raw[0], true).map_err(|_| Failure::Usage(format!("unknown class '{}'", raw[0])))?;
    let num = |s: &str, what: &str| -> Result<u64, Failure> {
        s.parse().map_err(|_| Failure::Usage(format!("{what} must be a non-negative integer, got '{s}'")))
    };
    let n = num(&raw[1], "N")? as usize;
    let count = num(&raw[2], "COUNT")? as usize;
    let seed = match raw.get(3) {
        Some(s) => num(s, "SEED")?,
        None => default_seed,
    };
    Ok(Scope::Random { class: class.into(), n, count, seed })
}

pub fn run(args: CheckArgs, default_seed: u64) -> Result<ExitCode, Failure> {
    let start = Instant::now();
    let scope = parse_scope(&args, default_seed)?;
    let mode = match (args.mode, &scope) {
        (Some(CheckMode::Exact), _) | (None, Scope::Enumerate(_)) => SolveMode::Exact,
        _ => SolveMode::Construct,
    };
    if let Scope::Random { n, count, .. } = scope {
        let cap = if mode == SolveMode::Exact { MAX_EXACT_ORDER } else { MAX_CONSTRUCT_ORDER };
        if count > MAX_COUNT || n > cap {
            return Err(Failure::Usage(format!(
                "scope refused: at most {MAX_COUNT} instances of order <= {cap} in {} mode",
                mode.name()
            )));
        }
    }
    if args.jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }

    let mut flags = BTreeMap::from([
        ("scope".to_string(), scope.describe()),
        ("mode".to_string(), mode.name().to_string()),
        ("jobs".to_string(), args.jobs.to_string()),
    ]);
    if let Some(b) = args.budget {
        flags.insert("budget".into(), b.to_string());
    }
    let seed = match scope {
        Scope::Random { seed, .. } => Some(seed),
        Scope::Enumerate(_) => None,
    };

    // Instances are described lazily so random graphs are drawn on the
    // worker threads.
    let jobs: Vec<Job> = match &scope {
        Scope::Enumerate(max) => {
            let mut out = Vec::new();
            for n in 1..=*max {
                for g in enumerate_connected(n, &EnumFilter { twin_free: true, classes: Vec::new() })? {
                    if g.is_isolate_free() {
                        out.push(Job::Given(g));
                    }
                }
            }
            out
        }
        Scope::Random { class, n, count, seed } => {
            (0..*count as u64).map(|i| Job::Random(RandomModel::new(*class, *n, seed.wrapping_add(i)))).collect()
        }
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    let mut summary = Summary {
        kind: "summary",
        scope: scope.describe(),
        mode: mode.name(),
        instances: jobs.len(),
        violations: Vec::new(),
        inconclusive: 0,
        max_ratio: 0.0,
        elapsed_ms: 0,
        seed,
        flags: flags.clone(),
    };
    let stdout = io::stdout();
    for batch in jobs.chunks(BATCH) {
        let outcomes: Vec<Outcome> = pool.install(|| batch.par_iter().map(|job| job.run(mode, args.budget)).collect());
        let mut out = stdout.lock();
        for outcome in outcomes {
            match outcome {
                Outcome::Report(report) => {
                    let mut report = *report;
                    report.flags = flags.clone();
                    judge(&report, mode, &mut summary);
                    if !args.summary_only {
                        writeln!(out, "{}", serde_json::to_string(&report).expect("json"))
                            .map_err(|e| Failure::Usage(format!("writing stdout: {e}")))?;
                    }
                }
                Outcome::Failed { graph_id, n, error } => {
                    if error.is_usage() {
                        return Err(error.into());
                    }
                    summary.violations.push(ViolationEntry {
                        graph_id,
                        n,
                        size: None,
                        bound: String::new(),
                        reason: error.to_string(),
                    });
                }
            }
        }
    }
    summary.elapsed_ms = start.elapsed().as_millis() as u64;
    crate::print_json(&summary);
    Ok(if summary.violations.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

enum Job {
    Given(Graph),
    Random(RandomModel),
}

enum Outcome {
    Report(Box<RunReport>),
    Failed { graph_id: String, n: usize, error: LtdError },
}

impl Job {
    fn run(&self, mode: SolveMode, budget: Option<u64>) -> Outcome {
        let (g, id, seed) = match self {
            Job::Given(g) => (g.clone(), to_graph6(g).expect("small graph"), None),
            Job::Random(m) => {
                let id = format!("{}:n{}:seed{}", m.class, m.n, m.seed);
                match random_instance(m) {
                    Ok(g) => (g, id, Some(m.seed)),
                    Err(error) => return Outcome::Failed { graph_id: id, n: m.n, error },
                }
            }
        };
        match solve_report(&g, &id, mode, budget) {
            Ok(mut report) => {
                report.seed = seed;
                Outcome::Report(Box::new(report))
            }
            Err(error) => Outcome::Failed { graph_id: id, n: g.order(), error },
        }
    }
}

fn judge(report: &RunReport, mode: SolveMode, summary: &mut Summary) {
    let size = if mode == SolveMode::Exact { report.gamma_tl } else { report.certificate_size };
    if let Some(s) = size {
        summary.max_ratio = summary.max_ratio.max(s as f64 / report.n as f64);
    }
    let violation = |reason: &str| ViolationEntry {
        graph_id: report.graph_id.clone(),
        n: report.n,
        size,
        bound: report.bound.to_string(),
        reason: reason.to_string(),
    };
    if !report.verified {
        summary.violations.push(violation("reported set is not an LTD-set"));
    } else if !report.within_bound() {
        if report.optimality_checked == Some(false) {
            summary.inconclusive += 1;
        } else {
            summary.violations.push(violation("size exceeds the bound"));
        }
    }
}
