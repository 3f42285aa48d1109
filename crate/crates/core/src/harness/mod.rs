//! Drivers behind the `pvc` binary: solver dispatch, verification, the
//! incremental builder and the bench runner.

mod bench;
mod incremental;
mod report;

use std::fs;
use std::path::Path;
use std::str::FromStr;

pub use bench::{bench, default_algorithms, BenchAlgorithm, BenchConfig, BenchOutcome};
pub use incremental::{incremental_build, InsertionOrder, Reoptimizer};
pub use report::{Ratio, ReportFormat, RunReport, Status, REPORT_SCHEMA};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::io::{
    gen_graph, gen_patch, write_graph, write_patch, write_solution, GeneratorConfig, PatchConfig,
};
use crate::kpath::covers_all_k_paths;
use crate::reopt::{
    ptas_unweighted_with, wtd_3path_with, wtd_kpath_with, Mode, ReoptInstance, ReoptOptions,
};
use crate::solvers::{
    greedy_approx, local_ratio_approx, oracle_registry, solve_exact, CoverSolution, Objective,
    Rational, DEFAULT_EXACT_MAX_N,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveAlgorithm {
    Exact,
    Greedy,
    LocalRatio { prune: bool },
}

impl FromStr for SolveAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SolveAlgorithm::Exact),
            "greedy" => Ok(SolveAlgorithm::Greedy),
            "local-ratio" => Ok(SolveAlgorithm::LocalRatio { prune: true }),
            other => Err(Error::InvalidArgument(format!(
                "unknown algorithm `{other}`"
            ))),
        }
    }
}

pub fn run_solve(g: &Graph, k: usize, alg: &SolveAlgorithm, seed: u64) -> Result<CoverSolution> {
    match alg {
        SolveAlgorithm::Exact => solve_exact(g, k, Objective::Weight),
        SolveAlgorithm::Greedy => greedy_approx(g, k, seed),
        SolveAlgorithm::LocalRatio { prune } => local_ratio_approx(g, k, *prune),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReoptAlgorithm {
    Ptas(Rational),
    /// `k = 3` family reoptimizer with a registry oracle.
    W3 {
        oracle: String,
        mode: Mode,
    },
    /// `k >= 4` family reoptimizer with a registry oracle.
    Wk {
        oracle: String,
        mode: Mode,
    },
}

pub fn run_reopt(
    inst: &ReoptInstance,
    alg: &ReoptAlgorithm,
    seed: u64,
    opts: &ReoptOptions,
) -> Result<CoverSolution> {
    match alg {
        ReoptAlgorithm::Ptas(eps) => ptas_unweighted_with(inst, *eps, opts),
        ReoptAlgorithm::W3 { oracle, mode } => {
            let oracle = oracle_registry().lookup(oracle)?;
            wtd_3path_with(inst, oracle.as_ref(), *mode, seed, opts)
        }
        ReoptAlgorithm::Wk { oracle, mode } => {
            let oracle = oracle_registry().lookup(oracle)?;
            wtd_kpath_with(inst, oracle.as_ref(), *mode, seed, opts)
        }
    }
}

/// Feasibility of `vertices` as a k-path cover of `g`, and the ratio against
/// the optimum when `check_optimal` is set and `g` is within the exact guard.
pub fn verify(g: &Graph, k: usize, vertices: &VertexSet, check_optimal: bool) -> Result<RunReport> {
    g.check_set(vertices)?;
    crate::kpath::check_order(k)?;
    let sol = CoverSolution::new(g, k, vertices.clone());
    debug_assert_eq!(sol.is_feasible(), covers_all_k_paths(g, vertices, k));
    let mut report = RunReport::for_solution("verify", g, &sol, 0);
    if check_optimal {
        if g.vertex_count() <= DEFAULT_EXACT_MAX_N {
            report.set_exact(solve_exact(g, k, Objective::Weight)?.weight());
        } else {
            report.message = Some(format!(
                "optimality check skipped: n > {DEFAULT_EXACT_MAX_N}"
            ));
        }
    }
    Ok(report)
}

/// Parses `p/q`, a decimal such as `0.3`, or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("`{s}` is not a rational number"));
    let digits = |t: &str| -> Result<u64> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse().map_err(|_| bad())
    };
    let value = if let Some((num, den)) = s.split_once('/') {
        let den = digits(den)?;
        if den == 0 {
            return Err(bad());
        }
        Rational::new(digits(num)?, den)
    } else if let Some((int, frac)) = s.split_once('.') {
        let scale = 10u64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let int = if int.is_empty() { 0 } else { digits(int)? };
        let frac = digits(frac)?;
        let num = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        Rational::new(num, scale)
    } else {
        Rational::from_integer(digits(s)?)
    };
    Ok(value)
}

/// Process exit code for an error: 1 for infeasibility verdicts, 3 for
/// limits and 2 for malformed input or arguments.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InfeasibleOldSolution { .. }
        | Error::FamilyPropertyViolated { .. }
        | Error::EmptyFamily => 1,
        Error::LimitExceeded { .. } | Error::SizeLimitExceeded { .. } => 3,
        _ => 2,
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub count: usize,
    pub k: usize,
    pub graph: GeneratorConfig,
    pub patch: PatchConfig,
}

/// Writes `count` bench instances `inst-000.*` into `dir`. Instance `i`
/// uses seed `graph.seed + i` for the graph and `patch.seed + i` for the
/// patch; the old solution is exact.
pub fn gen_suite(dir: &Path, cfg: &SuiteConfig) -> Result<Vec<String>> {
    fs::create_dir_all(dir)?;
    let mut names = Vec::with_capacity(cfg.count);
    for i in 0..cfg.count {
        let g = gen_graph(&GeneratorConfig {
            seed: cfg.graph.seed.wrapping_add(i as u64),
            ..cfg.graph.clone()
        })?;
        let patch = gen_patch(
            &g,
            &PatchConfig {
                seed: cfg.patch.seed.wrapping_add(i as u64),
                ..cfg.patch.clone()
            },
        )?;
        let sol = solve_exact(&g, cfg.k, Objective::Weight)?;
        let name = format!("inst-{i:03}");
        fs::write(dir.join(format!("{name}.graph")), write_graph(&g))?;
        fs::write(dir.join(format!("{name}.patch")), write_patch(&patch))?;
        fs::write(dir.join(format!("{name}.sol")), write_solution(&sol))?;
        names.push(name);
    }
    Ok(names)
}
