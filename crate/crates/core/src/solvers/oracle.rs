use std::fmt;
use std::sync::Arc;

use super::{greedy_approx, local_ratio_approx, solve_exact_with, CoverSolution, Objective};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Rational = num_rational::Ratio<u64>;

/// The `ρ` an oracle claims. Reporting metadata only; tests never trust it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclaredRatio {
    Exact,
    /// `ρ = k`
    KRatio,
    /// `ρ = n - k + 1`
    NRatio,
    Constant(Rational),
}

impl DeclaredRatio {
    /// `ρ` for an input with `n` vertices, never below 1.
    pub fn value(&self, n: usize, k: usize) -> Rational {
        let one = Rational::from_integer(1);
        match *self {
            DeclaredRatio::Exact => one,
            DeclaredRatio::KRatio => Rational::from_integer(k as u64),
            DeclaredRatio::NRatio => {
                Rational::from_integer((n + 1).saturating_sub(k).max(1) as u64)
            }
            DeclaredRatio::Constant(r) => r.max(one),
        }
    }

    /// `2 - 1/ρ`, the guarantee of the family-based reoptimizers.
    pub fn reopt_bound(&self, n: usize, k: usize) -> Rational {
        Rational::from_integer(2) - self.value(n, k).recip()
    }
}

impl fmt::Display for DeclaredRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeclaredRatio::Exact => write!(f, "1"),
            DeclaredRatio::KRatio => write!(f, "k"),
            DeclaredRatio::NRatio => write!(f, "n-k+1"),
            DeclaredRatio::Constant(r) => write!(f, "{r}"),
        }
    }
}

/// A solver used as `A_ρ` inside the reoptimizers. `solve` must return a
/// feasible cover of the graph it is given.
pub trait ApproxOracle: Send + Sync {
    fn name(&self) -> &str;
    fn declared_ratio(&self) -> DeclaredRatio;
    fn solve(&self, g: &Graph, k: usize, seed: u64) -> Result<CoverSolution>;
}

#[derive(Clone, Debug)]
pub struct ExactOracle {
    pub max_n: usize,
}

impl Default for ExactOracle {
    fn default() -> Self {
        ExactOracle {
            max_n: super::DEFAULT_EXACT_MAX_N,
        }
    }
}

impl ApproxOracle for ExactOracle {
    fn name(&self) -> &str {
        "exact"
    }

    fn declared_ratio(&self) -> DeclaredRatio {
        DeclaredRatio::Exact
    }

    fn solve(&self, g: &Graph, k: usize, _seed: u64) -> Result<CoverSolution> {
        solve_exact_with(g, k, Objective::Weight, self.max_n)
    }
}

#[derive(Clone, Debug, Default)]
pub struct GreedyOracle;

impl ApproxOracle for GreedyOracle {
    fn name(&self) -> &str {
        "greedy"
    }

    fn declared_ratio(&self) -> DeclaredRatio {
        DeclaredRatio::NRatio
    }

    fn solve(&self, g: &Graph, k: usize, seed: u64) -> Result<CoverSolution> {
        greedy_approx(g, k, seed)
    }
}

/// Local ratio without pruning by default, so traces follow the plain scheme.
#[derive(Clone, Debug, Default)]
pub struct LocalRatioOracle {
    pub prune: bool,
}

impl ApproxOracle for LocalRatioOracle {
    fn name(&self) -> &str {
        "local-ratio"
    }

    fn declared_ratio(&self) -> DeclaredRatio {
        DeclaredRatio::KRatio
    }

    fn solve(&self, g: &Graph, k: usize, _seed: u64) -> Result<CoverSolution> {
        local_ratio_approx(g, k, self.prune)
    }
}

#[derive(Clone)]
pub struct OracleRegistry {
    entries: Vec<Arc<dyn ApproxOracle>>,
}

impl OracleRegistry {
    pub fn lookup(&self, name: &str) -> Result<Arc<dyn ApproxOracle>> {
        self.entries
            .iter()
            .find(|o| o.name() == name)
            .cloned()
            .ok_or_else(|| Error::UnknownOracle(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|o| o.name())
    }

    pub fn register(&mut self, oracle: Arc<dyn ApproxOracle>) {
        self.entries.retain(|o| o.name() != oracle.name());
        self.entries.push(oracle);
    }
}

/// `exact`, `greedy` and `local-ratio` under stable names.
pub fn oracle_registry() -> OracleRegistry {
    OracleRegistry {
        entries: vec![
            Arc::new(ExactOracle::default()),
            Arc::new(GreedyOracle),
            Arc::new(LocalRatioOracle::default()),
        ],
    }
}
