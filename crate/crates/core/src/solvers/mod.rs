//! Exact and approximate k-path vertex cover solvers, and the oracle contract
//! consumed by the reoptimizers.

mod approx;
mod exact;
mod oracle;

use std::cmp::Ordering;

use crate::graph::{Graph, Vertex, VertexSet, Weight};
use crate::kpath::covers_all_k_paths;

pub use approx::{greedy_approx, local_ratio_approx, local_ratio_approx_capped};
pub use exact::{
    enumerate_optima, enumerate_optima_with, solve_exact, solve_exact_with, DEFAULT_EXACT_MAX_N,
    DEFAULT_OPTIMA_MAX_N,
};
pub use oracle::{
    oracle_registry, ApproxOracle, DeclaredRatio, ExactOracle, GreedyOracle, LocalRatioOracle,
    OracleRegistry, Rational,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Objective {
    #[default]
    Weight,
    Cardinality,
}

/// A vertex set claimed to meet every k-path, with its weight and the
/// feasibility verdict computed at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSolution {
    vertices: VertexSet,
    k: usize,
    weight: Weight,
    feasible: bool,
}

impl CoverSolution {
    pub fn new(g: &Graph, k: usize, vertices: VertexSet) -> Self {
        let weight = g.set_weight(&vertices);
        let feasible = covers_all_k_paths(g, &vertices, k);
        CoverSolution {
            vertices,
            k,
            weight,
            feasible,
        }
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn into_vertices(self) -> VertexSet {
        self.vertices
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn cardinality(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}

/// Canonical order on covers: weight, then cardinality, then sorted vertex list.
pub fn canonical_cmp(a: &CoverSolution, b: &CoverSolution) -> Ordering {
    (a.weight, a.cardinality())
        .cmp(&(b.weight, b.cardinality()))
        .then_with(|| a.vertices.cmp(&b.vertices))
}
