use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, InsertionPatch, Vertex, VertexSet};
use crate::reopt::{
    construct_sol_with, ptas_unweighted_with, wtd_3path_with, wtd_kpath_with, GoodFamily, Mode,
    ReoptInstance, ReoptOptions,
};
use crate::solvers::{CoverSolution, ExactOracle, Rational, DEFAULT_EXACT_MAX_N};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reoptimizer {
    /// Family-based reoptimization with the exact oracle.
    Exact,
    /// Unweighted PTAS with the given epsilon.
    Ptas(Rational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InsertionOrder {
    #[default]
    Ascending,
    /// Seeded Fisher-Yates permutation of the vertex ids.
    Shuffled,
}

impl FromStr for InsertionOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "asc" | "ascending" => Ok(InsertionOrder::Ascending),
            "shuffle" | "shuffled" => Ok(InsertionOrder::Shuffled),
            other => Err(Error::InvalidArgument(format!("unknown order `{other}`"))),
        }
    }
}

impl fmt::Display for InsertionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InsertionOrder::Ascending => "asc",
            InsertionOrder::Shuffled => "shuffle",
        })
    }
}

/// Builds `g` one vertex at a time, each with its edges to the vertices
/// already present, and reoptimizes after every insertion starting from the
/// empty graph and the empty cover.
///
/// With [`Reoptimizer::Exact`] every step is exact, so the final weight is
/// the optimum of `g`. For `k = 2` the step family is `{{v}, N(v)}`.
pub fn incremental_build(
    g: &Graph,
    k: usize,
    reoptimizer: Reoptimizer,
    order: InsertionOrder,
    seed: u64,
    opts: &ReoptOptions,
) -> Result<CoverSolution> {
    crate::kpath::check_order(k)?;
    let n = g.vertex_count();
    if matches!(reoptimizer, Reoptimizer::Exact) && n > DEFAULT_EXACT_MAX_N {
        return Err(Error::SizeLimitExceeded {
            what: "exact incremental build",
            size: n as u64,
            limit: DEFAULT_EXACT_MAX_N as u64,
        });
    }
    if matches!(reoptimizer, Reoptimizer::Ptas(_)) && !g.is_unit_weighted() {
        return Err(Error::InvalidArgument(
            "the PTAS driver needs unit weights".into(),
        ));
    }

    let mut sequence: Vec<Vertex> = g.vertices().collect();
    if order == InsertionOrder::Shuffled {
        sequence.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in sequence.iter().enumerate() {
        position[v] = i;
    }

    let oracle = ExactOracle::default();
    let mut current = Graph::empty();
    let mut cover = VertexSet::new();
    for (i, &v) in sequence.iter().enumerate() {
        let mut attachment: Vec<(Vertex, Vertex)> = g
            .neighbors(v)
            .iter()
            .filter(|&&u| position[u] < i)
            .map(|&u| (position[u], i))
            .collect();
        attachment.sort_unstable();
        let patch = InsertionPatch::new(i, vec![(i, g.weight(v))], vec![], attachment)?;
        let inst = ReoptInstance::new(current, patch, cover, k)?;
        let next = match reoptimizer {
            Reoptimizer::Ptas(eps) => ptas_unweighted_with(&inst, eps, opts)?,
            Reoptimizer::Exact => match k {
                2 => {
                    let member_new: VertexSet = [i].into();
                    let neighbours: VertexSet = inst.g_new().neighbors(i).iter().copied().collect();
                    let family = GoodFamily::from_members([member_new, neighbours]);
                    construct_sol_with(&inst, &family, &oracle, seed, opts.exec)?
                }
                3 => wtd_3path_with(&inst, &oracle, Mode::Corrected, seed, opts)?,
                _ => wtd_kpath_with(&inst, &oracle, Mode::Corrected, seed, opts)?,
            },
        };
        cover = next.into_vertices();
        current = inst.g_new().clone();
    }
    let original: VertexSet = cover.iter().map(|&p| sequence[p]).collect();
    Ok(CoverSolution::new(g, k, original))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::solvers::{solve_exact, Objective};

    fn exact(g: &Graph, k: usize, order: InsertionOrder) -> CoverSolution {
        incremental_build(g, k, Reoptimizer::Exact, order, 3, &ReoptOptions::default()).unwrap()
    }

    #[test]
    fn path_k3() {
        let g = path(4);
        let sol = exact(&g, 3, InsertionOrder::Ascending);
        assert!(sol.is_feasible());
        assert_eq!(sol.weight(), 1);
        assert_eq!(
            sol.weight(),
            solve_exact(&g, 3, Objective::Weight).unwrap().weight()
        );
    }

    #[test]
    fn single_vertex() {
        let g = Graph::unweighted(1, &[]).unwrap();
        assert!(exact(&g, 3, InsertionOrder::Ascending)
            .vertices()
            .is_empty());
    }

    #[test]
    fn triangle_k2() {
        let g = cycle(3);
        let sol = exact(&g, 2, InsertionOrder::Ascending);
        assert!(sol.is_feasible());
        assert_eq!(sol.weight(), 2);
    }

    #[test]
    fn shuffled_orders_agree_on_weight() {
        let g = Graph::new(
            vec![3, 1, 4, 1, 5, 9],
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 4)],
        )
        .unwrap();
        for k in 2..=4 {
            let want = solve_exact(&g, k, Objective::Weight).unwrap().weight();
            for order in [InsertionOrder::Ascending, InsertionOrder::Shuffled] {
                let sol = exact(&g, k, order);
                assert!(sol.is_feasible());
                assert_eq!(sol.weight(), want, "k={k} order={order}");
            }
        }
    }

    #[test]
    fn ptas_driver() {
        let g = path(6);
        let eps = Rational::new(1, 2);
        let sol = incremental_build(
            &g,
            3,
            Reoptimizer::Ptas(eps),
            InsertionOrder::Ascending,
            0,
            &ReoptOptions::default(),
        )
        .unwrap();
        assert!(sol.is_feasible());
        assert!(Rational::from_integer(sol.cardinality() as u64) <= (eps + 1) * 2);
        let weighted = Graph::new(vec![2, 1], &[(0, 1)]).unwrap();
        assert!(incremental_build(
            &weighted,
            2,
            Reoptimizer::Ptas(eps),
            InsertionOrder::Ascending,
            0,
            &ReoptOptions::default()
        )
        .is_err());
    }
}
