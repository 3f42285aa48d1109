use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::sync::{mpsc, Arc};
use std::time::{Duration, Instant};

use super::report::{RunReport, Status};
use super::{parse_rational, run_reopt, run_solve, ReoptAlgorithm, SolveAlgorithm};
use crate::error::{Error, Result};
use crate::io::{parse_graph, parse_patch, parse_solution};
use crate::par::{self, Exec};
use crate::reopt::{Mode, ReoptInstance, ReoptOptions};
use crate::solvers::{solve_exact, CoverSolution, Objective, Rational, DEFAULT_EXACT_MAX_N};

/// One column of the bench matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BenchAlgorithm {
    Solve(SolveAlgorithm),
    Reopt(ReoptAlgorithm),
}

impl FromStr for BenchAlgorithm {
    type Err = Error;

    /// `exact`, `greedy`, `local-ratio`, `local-ratio-noprune`,
    /// `w3:<oracle>[:paper]`, `wk:<oracle>[:paper]` or `ptas:<epsilon>`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let mode = |rest: &[&str]| match rest {
            [] => Ok(Mode::Corrected),
            [m] => m.parse(),
            _ => Err(Error::InvalidArgument(format!("bad algorithm `{s}`"))),
        };
        Ok(match parts.as_slice() {
            ["exact"] => BenchAlgorithm::Solve(SolveAlgorithm::Exact),
            ["greedy"] => BenchAlgorithm::Solve(SolveAlgorithm::Greedy),
            ["local-ratio"] => BenchAlgorithm::Solve(SolveAlgorithm::LocalRatio { prune: true }),
            ["local-ratio-noprune"] => {
                BenchAlgorithm::Solve(SolveAlgorithm::LocalRatio { prune: false })
            }
            ["ptas", eps] => BenchAlgorithm::Reopt(ReoptAlgorithm::Ptas(parse_rational(eps)?)),
            ["w3", oracle, rest @ ..] => BenchAlgorithm::Reopt(ReoptAlgorithm::W3 {
                oracle: oracle.to_string(),
                mode: mode(rest)?,
            }),
            ["wk", oracle, rest @ ..] => BenchAlgorithm::Reopt(ReoptAlgorithm::Wk {
                oracle: oracle.to_string(),
                mode: mode(rest)?,
            }),
            _ => return Err(Error::InvalidArgument(format!("unknown algorithm `{s}`"))),
        })
    }
}

impl fmt::Display for BenchAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let with_mode =
            |f: &mut fmt::Formatter<'_>, tag: &str, oracle: &str, mode: &Mode| match mode {
                Mode::Corrected => write!(f, "{tag}:{oracle}"),
                Mode::PaperLiteral => write!(f, "{tag}:{oracle}:paper"),
            };
        match self {
            BenchAlgorithm::Solve(SolveAlgorithm::Exact) => f.write_str("exact"),
            BenchAlgorithm::Solve(SolveAlgorithm::Greedy) => f.write_str("greedy"),
            BenchAlgorithm::Solve(SolveAlgorithm::LocalRatio { prune: true }) => {
                f.write_str("local-ratio")
            }
            BenchAlgorithm::Solve(SolveAlgorithm::LocalRatio { prune: false }) => {
                f.write_str("local-ratio-noprune")
            }
            BenchAlgorithm::Reopt(ReoptAlgorithm::Ptas(eps)) => write!(f, "ptas:{eps}"),
            BenchAlgorithm::Reopt(ReoptAlgorithm::W3 { oracle, mode }) => {
                with_mode(f, "w3", oracle, mode)
            }
            BenchAlgorithm::Reopt(ReoptAlgorithm::Wk { oracle, mode }) => {
                with_mode(f, "wk", oracle, mode)
            }
        }
    }
}

/// `exact`, `greedy`, `local-ratio`, the family reoptimizer that fits `k`
/// with the local-ratio oracle, and `ptas:1/2`.
pub fn default_algorithms(k: usize) -> Vec<BenchAlgorithm> {
    let mut algs: Vec<BenchAlgorithm> = ["exact", "greedy", "local-ratio"]
        .iter()
        .map(|s| s.parse().expect("builtin name"))
        .collect();
    let family = match k {
        3 => Some("w3:local-ratio"),
        k if k >= 4 => Some("wk:local-ratio"),
        _ => None,
    };
    algs.extend(family.map(|s| s.parse().expect("builtin name")));
    algs.push(BenchAlgorithm::Reopt(ReoptAlgorithm::Ptas(Rational::new(
        1, 2,
    ))));
    algs
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub k: usize,
    pub algorithms: Vec<BenchAlgorithm>,
    /// Wall-clock limit per cell; `None` runs without a limit.
    pub timeout: Option<Duration>,
    pub seed: u64,
    pub opts: ReoptOptions,
}

#[derive(Clone, Debug, Default)]
pub struct BenchOutcome {
    /// One report per (instance, algorithm), in instance then matrix order.
    pub reports: Vec<RunReport>,
    /// Instances that failed to load, with the reason.
    pub malformed: Vec<(String, Error)>,
}

/// Runs the matrix over every `<name>.graph` in `dir`, paired with
/// `<name>.patch` and `<name>.sol` (the old graph, the insertion and an
/// optimum of the old graph). Instances are visited in name order.
pub fn bench(dir: &Path, cfg: &BenchConfig) -> Result<BenchOutcome> {
    let mut names: Vec<String> = fs::read_dir(dir)?
        .filter_map(|entry| entry.ok())
        .filter_map(|entry| {
            let path = entry.path();
            (path.extension()? == "graph")
                .then(|| path.file_stem()?.to_str().map(str::to_string))?
        })
        .collect();
    names.sort();

    // timed cells block while their worker thread runs; blocking inside the
    // rayon pool would starve the cell's own parallel loops
    let outer = if cfg.timeout.is_some() {
        Exec::Sequential
    } else {
        cfg.opts.exec
    };
    let per_instance = par::map(outer, &names, |name| match load(dir, name, cfg.k) {
        Ok(inst) => Ok(run_instance(name, Arc::new(inst), cfg)),
        Err(e) => Err((name.clone(), e)),
    });
    let mut outcome = BenchOutcome::default();
    for result in per_instance {
        match result {
            Ok(reports) => outcome.reports.extend(reports),
            Err(bad) => outcome.malformed.push(bad),
        }
    }
    Ok(outcome)
}

fn load(dir: &Path, name: &str, k: usize) -> Result<ReoptInstance> {
    let read = |ext: &str| -> Result<String> {
        let path = dir.join(format!("{name}.{ext}"));
        fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    };
    let g_old = parse_graph(&read("graph")?)?;
    let patch = parse_patch(&read("patch")?)?;
    let sol = parse_solution(&read("sol")?, &g_old)?;
    if sol.k() != k {
        return Err(Error::InvalidArgument(format!(
            "solution is for k = {}, bench runs k = {k}",
            sol.k()
        )));
    }
    ReoptInstance::new(g_old, patch, sol.into_vertices(), k)
}

enum Cell {
    Done(Result<CoverSolution>, u64),
    Timeout,
}

fn timed<F>(timeout: Option<Duration>, job: F) -> Cell
where
    F: FnOnce() -> Result<CoverSolution> + Send + 'static,
{
    let run = move || {
        let start = Instant::now();
        let result = job();
        (result, start.elapsed().as_millis() as u64)
    };
    match timeout {
        None => {
            let (result, ms) = run();
            Cell::Done(result, ms)
        }
        Some(limit) if limit.is_zero() => Cell::Timeout,
        Some(limit) => {
            let (tx, rx) = mpsc::channel();
            // a cell that overruns keeps its thread; the result is dropped
            std::thread::spawn(move || {
                let _ = tx.send(run());
            });
            match rx.recv_timeout(limit) {
                Ok((result, ms)) => Cell::Done(result, ms),
                Err(_) => Cell::Timeout,
            }
        }
    }
}

fn run_instance(name: &str, inst: Arc<ReoptInstance>, cfg: &BenchConfig) -> Vec<RunReport> {
    let k = cfg.k;
    let seed = cfg.seed;
    let exact_weight = if inst.g_new().vertex_count() <= DEFAULT_EXACT_MAX_N {
        let inst = Arc::clone(&inst);
        match timed(cfg.timeout, move || {
            solve_exact(inst.g_new(), k, Objective::Weight)
        }) {
            Cell::Done(Ok(sol), _) => Some(sol.weight()),
            _ => None,
        }
    } else {
        None
    };

    cfg.algorithms
        .iter()
        .map(|alg| {
            let job = {
                let inst = Arc::clone(&inst);
                let alg = alg.clone();
                let opts = cfg.opts.clone();
                move || match &alg {
                    BenchAlgorithm::Solve(s) => run_solve(inst.g_new(), k, s, seed),
                    BenchAlgorithm::Reopt(r) => run_reopt(&inst, r, seed, &opts),
                }
            };
            let g = inst.g_new();
            let mut report = match timed(cfg.timeout, job) {
                Cell::Done(Ok(sol), ms) => {
                    let mut r = RunReport::for_solution(alg.to_string(), g, &sol, seed);
                    r.elapsed_ms = ms;
                    if let Some(w) = exact_weight {
                        r.set_exact(w);
                    }
                    r
                }
                Cell::Done(Err(e), ms) => {
                    let mut r = RunReport::new(alg.to_string(), g, k, seed, Status::Error);
                    r.elapsed_ms = ms;
                    r.message = Some(e.to_string());
                    r
                }
                Cell::Timeout => RunReport::new(alg.to_string(), g, k, seed, Status::Timeout),
            };
            report.instance = Some(name.to_string());
            report
        })
        .collect()
}
