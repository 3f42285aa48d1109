use itertools::Itertools;

use super::{CoverSolution, Objective};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::kpath::{check_order, first_k_path_mask, has_k_path_mask};

pub const DEFAULT_EXACT_MAX_N: usize = 24;
pub const DEFAULT_OPTIMA_MAX_N: usize = 14;

/// Minimum cover by branch and bound, within the default size limit.
///
/// The returned optimum is canonical: minimum objective, then minimum
/// cardinality, then the lexicographically smallest sorted vertex list.
pub fn solve_exact(g: &Graph, k: usize, objective: Objective) -> Result<CoverSolution> {
    solve_exact_with(g, k, objective, DEFAULT_EXACT_MAX_N)
}

pub fn solve_exact_with(
    g: &Graph,
    k: usize,
    objective: Objective,
    max_n: usize,
) -> Result<CoverSolution> {
    check_order(k)?;
    if g.vertex_count() > max_n {
        return Err(Error::SizeLimitExceeded {
            what: "exact solver",
            size: g.vertex_count() as u64,
            limit: max_n as u64,
        });
    }
    let cost: Vec<u64> = match objective {
        Objective::Weight => g.weights().to_vec(),
        Objective::Cardinality => vec![1; g.vertex_count()],
    };
    let mut search = Search::new(g, k, cost);
    search.descend(0, 0);
    let best: VertexSet = search.best.into_iter().collect();
    Ok(CoverSolution::new(g, k, best))
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    cost: Vec<u64>,
    alive: Vec<bool>,
    excluded: Vec<bool>,
    best_key: (u64, usize),
    best: Vec<Vertex>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize, cost: Vec<u64>) -> Self {
        let n = g.vertex_count();
        let best: Vec<Vertex> = (0..n).collect();
        let best_key = (cost.iter().sum(), n);
        Search {
            g,
            k,
            cost,
            alive: vec![true; n],
            excluded: vec![false; n],
            best_key,
            best,
        }
    }

    fn chosen(&self) -> Vec<Vertex> {
        self.g.vertices().filter(|&v| !self.alive[v]).collect()
    }

    /// Branch on the first uncovered k-path: branch `i` takes its `i`-th
    /// vertex and forbids the earlier ones, so branches partition the covers.
    fn descend(&mut self, spent: u64, taken: usize) {
        let Some(path) = first_k_path_mask(self.g, &self.alive, self.k) else {
            let key = (spent, taken);
            if key < self.best_key || (key == self.best_key && self.chosen() < self.best) {
                self.best_key = key;
                self.best = self.chosen();
            }
            return;
        };
        let open: Vec<Vertex> = path
            .iter()
            .copied()
            .filter(|&v| !self.excluded[v])
            .collect();
        let Some(cheapest) = open.iter().map(|&v| self.cost[v]).min() else {
            return;
        };
        if (spent + cheapest, taken + 1) > self.best_key {
            return;
        }
        for &v in &open {
            if (spent + self.cost[v], taken + 1) <= self.best_key {
                self.alive[v] = false;
                self.descend(spent + self.cost[v], taken + 1);
                self.alive[v] = true;
            }
            self.excluded[v] = true;
        }
        for &v in &open {
            self.excluded[v] = false;
        }
    }
}

/// Every optimal cover, ordered by size then lexicographically.
pub fn enumerate_optima(g: &Graph, k: usize, objective: Objective) -> Result<Vec<VertexSet>> {
    enumerate_optima_with(g, k, objective, DEFAULT_OPTIMA_MAX_N)
}

pub fn enumerate_optima_with(
    g: &Graph,
    k: usize,
    objective: Objective,
    max_n: usize,
) -> Result<Vec<VertexSet>> {
    check_order(k)?;
    let n = g.vertex_count();
    if n > max_n {
        return Err(Error::SizeLimitExceeded {
            what: "optimum enumeration",
            size: n as u64,
            limit: max_n as u64,
        });
    }
    let value = |set: &[Vertex]| match objective {
        Objective::Weight => g.set_weight(set),
        Objective::Cardinality => set.len() as u64,
    };
    let best = {
        let opt = solve_exact_with(g, k, objective, max_n)?;
        let vs: Vec<Vertex> = opt.vertices().iter().copied().collect();
        value(&vs)
    };
    let mut out = Vec::new();
    let mut alive = vec![true; n];
    for size in 0..=n {
        for combo in (0..n).combinations(size) {
            if value(&combo) != best {
                continue;
            }
            combo.iter().for_each(|&v| alive[v] = false);
            if !has_k_path_mask(g, &alive, k) {
                out.push(combo.iter().copied().collect());
            }
            combo.iter().for_each(|&v| alive[v] = true);
        }
    }
    Ok(out)
}
