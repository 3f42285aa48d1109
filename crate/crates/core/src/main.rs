use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use pvc_core::graph::Graph;
use pvc_core::harness::{
    self, bench, default_algorithms, exit_code, gen_suite, incremental_build, parse_rational,
    run_reopt, run_solve, verify, BenchAlgorithm, BenchConfig, InsertionOrder, Reoptimizer,
    ReportFormat, RunReport, SolveAlgorithm, Status, SuiteConfig,
};
use pvc_core::io::{
    gen_graph, gen_patch, parse_graph, parse_patch, parse_solution, write_graph, write_patch,
    write_solution, EdgeTarget, GeneratorConfig, PatchConfig,
};
use pvc_core::par::Exec;
use pvc_core::reopt::{Mode, ReoptInstance, ReoptOptions};
use pvc_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "pvc",
    version,
    about = "k-path vertex cover solvers and reoptimization"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit reports as JSON records instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,
    /// Include elapsed milliseconds in reports.
    #[arg(long, global = true)]
    timing: bool,
    /// Run every data-parallel loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

impl Global {
    fn format(&self) -> ReportFormat {
        if self.json {
            ReportFormat::Json
        } else {
            ReportFormat::KeyValue
        }
    }

    fn opts(&self) -> ReoptOptions {
        ReoptOptions {
            exec: if self.sequential {
                Exec::Sequential
            } else {
                Exec::default()
            },
            ..ReoptOptions::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveAlg {
    Exact,
    Greedy,
    LocalRatio,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReoptMode {
    Ptas,
    W3,
    Wk,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyMode {
    Corrected,
    Paper,
}

impl From<FamilyMode> for Mode {
    fn from(m: FamilyMode) -> Mode {
        match m {
            FamilyMode::Corrected => Mode::Corrected,
            FamilyMode::Paper => Mode::PaperLiteral,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum IncrementalReopt {
    Exact,
    Ptas,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Asc,
    Shuffle,
}

#[derive(Args, Clone)]
struct GraphGen {
    /// Vertex count.
    #[arg(short = 'n', long)]
    vertices: usize,
    /// Exact edge count.
    #[arg(
        short = 'm',
        long,
        conflicts_with = "density",
        required_unless_present = "density"
    )]
    edges: Option<usize>,
    /// Independent edge probability per vertex pair.
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, default_value_t = 1)]
    wmin: u64,
    #[arg(long, default_value_t = 10)]
    wmax: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GraphGen {
    fn config(&self) -> GeneratorConfig {
        GeneratorConfig {
            n: self.vertices,
            edges: match (self.edges, self.density) {
                (Some(m), _) => EdgeTarget::Count(m),
                (None, Some(p)) => EdgeTarget::Density(p),
                (None, None) => unreachable!("clap requires one edge target"),
            },
            max_degree: self.max_degree,
            weight_range: (self.wmin, self.wmax),
            seed: self.seed,
        }
    }
}

#[derive(Args, Clone)]
struct PatchGen {
    /// Number of inserted vertices.
    #[arg(short = 'c', long)]
    added: usize,
    #[arg(long, default_value_t = 0.3)]
    attach_prob: f64,
    #[arg(long, default_value_t = 0.5)]
    internal_prob: f64,
    #[arg(long)]
    patch_max_degree: Option<usize>,
    #[arg(long, default_value_t = 1)]
    patch_wmin: u64,
    #[arg(long, default_value_t = 10)]
    patch_wmax: u64,
    #[arg(long, default_value_t = 0)]
    patch_seed: u64,
}

impl PatchGen {
    fn config(&self) -> PatchConfig {
        PatchConfig {
            added: self.added,
            attach_prob: self.attach_prob,
            internal_prob: self.internal_prob,
            weight_range: (self.patch_wmin, self.patch_wmax),
            max_degree: self.patch_max_degree,
            seed: self.patch_seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve a graph from scratch.
    Solve {
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum)]
        alg: SolveAlg,
        /// Skip reverse-delete pruning in local ratio.
        #[arg(long)]
        no_prune: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        graph: PathBuf,
    },
    /// Reoptimize an old optimum after a vertex insertion.
    Reopt {
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum)]
        mode: ReoptMode,
        /// PTAS accuracy, as `p/q` or a decimal.
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, default_value = "local-ratio")]
        oracle: String,
        #[arg(long, value_enum, default_value = "corrected")]
        family_mode: FamilyMode,
        #[arg(long, value_enum, default_value = "corrected")]
        cap_mode: FamilyMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        old_graph: PathBuf,
        patch: PathBuf,
        old_sol: PathBuf,
    },
    /// Generate a random graph.
    Gen(GraphGen),
    /// Generate a random insertion patch for a graph.
    GenPatch {
        #[command(flatten)]
        patch: PatchGen,
        /// Seed for the patch (alias of --patch-seed).
        #[arg(long)]
        seed: Option<u64>,
        graph: PathBuf,
    },
    /// Write a bench suite of graph, patch and exact old solution triples.
    GenSuite {
        #[arg(short)]
        k: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        dir: PathBuf,
        #[command(flatten)]
        graph: GraphGen,
        #[command(flatten)]
        patch: PatchGen,
    },
    /// Check a solution file against a graph.
    Verify {
        #[arg(short)]
        k: usize,
        /// Also compare against the exact optimum.
        #[arg(long)]
        optimal: bool,
        graph: PathBuf,
        sol: PathBuf,
    },
    /// Build the graph vertex by vertex, reoptimizing after each insertion.
    Incremental {
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum)]
        reopt: IncrementalReopt,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, value_enum, default_value = "asc")]
        order: Order,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        graph: PathBuf,
    },
    /// Run an algorithm matrix over a suite directory.
    Bench {
        #[arg(short)]
        k: usize,
        #[arg(long)]
        suite: PathBuf,
        /// Per-cell wall-clock limit in seconds; 0 marks every cell as timed out.
        #[arg(long)]
        timeout_sec: Option<f64>,
        /// Algorithm column (repeatable); defaults to a matrix chosen by k.
        #[arg(long = "alg")]
        algs: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, msg } => Error::Parse {
            line,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    }
}

fn epsilon(raw: &Option<String>) -> Result<pvc_core::solvers::Rational> {
    let raw = raw
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--epsilon is required for the PTAS".into()))?;
    parse_rational(raw)
}

/// Prints a solution on stdout and its report on stderr.
fn emit_solution(
    global: &Global,
    report: &RunReport,
    sol: &pvc_core::solvers::CoverSolution,
) -> i32 {
    print!("{}", write_solution(sol));
    eprintln!("{}", report.render(global.format(), global.timing));
    if sol.is_feasible() {
        0
    } else {
        1
    }
}

fn run(cli: &Cli) -> Result<i32> {
    let global = &cli.global;
    match &cli.command {
        Command::Solve {
            k,
            alg,
            no_prune,
            seed,
            graph,
        } => {
            let g = load_graph(graph)?;
            let alg = match alg {
                SolveAlg::Exact => SolveAlgorithm::Exact,
                SolveAlg::Greedy => SolveAlgorithm::Greedy,
                SolveAlg::LocalRatio => SolveAlgorithm::LocalRatio { prune: !no_prune },
            };
            let start = Instant::now();
            let sol = run_solve(&g, *k, &alg, *seed)?;
            let name = match alg {
                SolveAlgorithm::Exact => "exact",
                SolveAlgorithm::Greedy => "greedy",
                SolveAlgorithm::LocalRatio { .. } => "local-ratio",
            };
            let mut report = RunReport::for_solution(name, &g, &sol, *seed);
            if let SolveAlgorithm::LocalRatio { prune } = alg {
                report = report.flag("prune", prune);
            }
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            Ok(emit_solution(global, &report, &sol))
        }
        Command::Reopt {
            k,
            mode,
            epsilon: eps,
            oracle,
            family_mode,
            cap_mode,
            seed,
            old_graph,
            patch,
            old_sol,
        } => {
            let g_old = load_graph(old_graph)?;
            let patch = parse_patch(&read(patch)?).map_err(|e| in_file(patch, e))?;
            let sol = parse_solution(&read(old_sol)?, &g_old).map_err(|e| in_file(old_sol, e))?;
            if sol.k() != *k {
                eprintln!(
                    "warning: old solution declares k = {}, using k = {k}",
                    sol.k()
                );
            }
            let inst = ReoptInstance::new(g_old, patch, sol.into_vertices(), *k)?;
            let alg = match mode {
                ReoptMode::Ptas => harness::ReoptAlgorithm::Ptas(epsilon(eps)?),
                ReoptMode::W3 => harness::ReoptAlgorithm::W3 {
                    oracle: oracle.clone(),
                    mode: (*family_mode).into(),
                },
                ReoptMode::Wk => harness::ReoptAlgorithm::Wk {
                    oracle: oracle.clone(),
                    mode: (*cap_mode).into(),
                },
            };
            let start = Instant::now();
            let sol = run_reopt(&inst, &alg, *seed, &global.opts())?;
            let mut report = RunReport::for_solution(
                BenchAlgorithm::Reopt(alg).to_string(),
                inst.g_new(),
                &sol,
                *seed,
            );
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            Ok(emit_solution(global, &report, &sol))
        }
        Command::Gen(args) => {
            print!("{}", write_graph(&gen_graph(&args.config())?));
            Ok(0)
        }
        Command::GenPatch { patch, seed, graph } => {
            let g = load_graph(graph)?;
            let mut cfg = patch.config();
            if let Some(s) = seed {
                cfg.seed = *s;
            }
            print!("{}", write_patch(&gen_patch(&g, &cfg)?));
            Ok(0)
        }
        Command::GenSuite {
            k,
            count,
            dir,
            graph,
            patch,
        } => {
            let cfg = SuiteConfig {
                count: *count,
                k: *k,
                graph: graph.config(),
                patch: patch.config(),
            };
            for name in gen_suite(dir, &cfg)? {
                println!("{name}");
            }
            Ok(0)
        }
        Command::Verify {
            k,
            optimal,
            graph,
            sol,
        } => {
            let g = load_graph(graph)?;
            let parsed = parse_solution(&read(sol)?, &g).map_err(|e| in_file(sol, e))?;
            if parsed.k() != *k {
                eprintln!(
                    "warning: solution declares k = {}, checking k = {k}",
                    parsed.k()
                );
            }
            let report = verify(&g, *k, parsed.vertices(), *optimal)?;
            println!("{}", report.render(global.format(), global.timing));
            Ok(if report.status == Status::Feasible {
                0
            } else {
                1
            })
        }
        Command::Incremental {
            k,
            reopt,
            epsilon: eps,
            order,
            seed,
            graph,
        } => {
            let g = load_graph(graph)?;
            let (reoptimizer, name) = match reopt {
                IncrementalReopt::Exact => (Reoptimizer::Exact, "incremental:exact".to_string()),
                IncrementalReopt::Ptas => {
                    let e = epsilon(eps)?;
                    (Reoptimizer::Ptas(e), format!("incremental:ptas:{e}"))
                }
            };
            let order = match order {
                Order::Asc => InsertionOrder::Ascending,
                Order::Shuffle => InsertionOrder::Shuffled,
            };
            let start = Instant::now();
            let sol = incremental_build(&g, *k, reoptimizer, order, *seed, &global.opts())?;
            let mut report = RunReport::for_solution(name, &g, &sol, *seed).flag("order", order);
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            Ok(emit_solution(global, &report, &sol))
        }
        Command::Bench {
            k,
            suite,
            timeout_sec,
            algs,
            seed,
        } => {
            let algorithms = if algs.is_empty() {
                default_algorithms(*k)
            } else {
                algs.iter().map(|a| a.parse()).collect::<Result<_>>()?
            };
            let timeout = match timeout_sec {
                Some(t) if !t.is_finite() || *t < 0.0 => {
                    return Err(Error::InvalidArgument(format!("bad timeout {t}")))
                }
                Some(t) => Some(Duration::from_secs_f64(*t)),
                None => None,
            };
            let cfg = BenchConfig {
                k: *k,
                algorithms,
                timeout,
                seed: *seed,
                opts: global.opts(),
            };
            let outcome = bench(suite, &cfg)?;
            for report in &outcome.reports {
                println!("{}", report.render(global.format(), global.timing));
            }
            for (name, err) in &outcome.malformed {
                eprintln!("skipped {name}: {err}");
            }
            Ok(if outcome.malformed.is_empty() { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
