use itertools::Itertools;

use super::{ReoptInstance, ReoptOptions};
use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};
use crate::kpath::has_k_path_mask;
use crate::par;
use crate::solvers::{CoverSolution, Rational};

const CHUNK: usize = 4096;

/// `Unwtd-kpath`: the smallest cover with at most `m = min(⌈c/ε⌉, n)`
/// vertices, or `OPT(G_O) ∪ V_A`, whichever is smaller (ties keep the
/// searched set). Cardinality is at most `(1 + ε)·|OPT(G_N)|`.
///
/// Weights are ignored; the objective is cardinality.
pub fn ptas_unweighted(inst: &ReoptInstance, epsilon: Rational) -> Result<CoverSolution> {
    ptas_unweighted_with(inst, epsilon, &ReoptOptions::default())
}

pub fn ptas_unweighted_with(
    inst: &ReoptInstance,
    epsilon: Rational,
    opts: &ReoptOptions,
) -> Result<CoverSolution> {
    if *epsilon.numer() == 0 {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let g = inst.g_new();
    let n = g.vertex_count();
    let c = inst.patch().added_count() as u64;
    // ⌈c / ε⌉ = ⌈c · den / num⌉
    let bound = (c * epsilon.denom()).div_ceil(*epsilon.numer());
    let m = bound.min(n as u64) as usize;

    let candidates: u128 = (0..=m).map(|i| binomial(n, i)).sum();
    if candidates > opts.ptas_guard as u128 {
        return Err(Error::LimitExceeded {
            what: "PTAS candidate subsets",
            limit: opts.ptas_guard,
        });
    }

    let k = inst.k();
    let feasible = |combo: &Vec<Vertex>| {
        let mut alive = vec![true; n];
        combo.iter().for_each(|&v| alive[v] = false);
        (!has_k_path_mask(g, &alive, k)).then(|| combo.clone())
    };

    let mut searched: VertexSet = g.all_vertices();
    'sizes: for size in 0..=m {
        if size >= searched.len() {
            break;
        }
        for chunk in &(0..n).combinations(size).chunks(CHUNK) {
            let chunk: Vec<Vec<Vertex>> = chunk.collect();
            if let Some(hit) = par::find_map_first_in(opts.exec, &chunk, feasible) {
                searched = hit.into_iter().collect();
                break 'sizes;
            }
        }
    }

    let mut fallback = inst.old_opt().vertices().clone();
    fallback.extend(inst.added());
    let best = if searched.len() <= fallback.len() {
        searched
    } else {
        fallback
    };
    Ok(CoverSolution::new(g, k, best))
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::graph::fixtures::set;
    use crate::graph::{Graph, InsertionPatch};
    use crate::par::Exec;
    use crate::solvers::{solve_exact, Objective};

    #[test]
    fn binomials() {
        assert_eq!(binomial(14, 0), 1);
        assert_eq!(binomial(14, 3), 364);
        assert_eq!(binomial(5, 7), 0);
    }

    #[test]
    fn finds_single_vertex_cover_after_insertion() {
        // g_new = path 1-2-3-4, m = 1; {2} is the first feasible singleton
        let inst = unit_path_plus(2, 3, &[1]);
        let sol = ptas_unweighted(&inst, Rational::from_integer(1)).unwrap();
        assert_eq!(sol.vertices(), &set(&[1]));
        assert_eq!(sol.cardinality(), 1);
        assert!(sol.is_feasible());
        let opt = solve_exact(inst.g_new(), 3, Objective::Cardinality).unwrap();
        assert_eq!(sol.cardinality(), opt.cardinality());
    }

    #[test]
    fn empty_patch_returns_old_solution() {
        let g_old = Graph::unweighted(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let inst = ReoptInstance::new(g_old, InsertionPatch::empty(5), set(&[2]), 3).unwrap();
        let sol = ptas_unweighted(&inst, Rational::new(1, 10)).unwrap();
        assert_eq!(sol.vertices(), &set(&[2]));
    }

    #[test]
    fn path_free_new_graph_gives_empty_cover() {
        let inst = unit_path_plus(1, 4, &[]);
        let sol = ptas_unweighted(&inst, Rational::new(1, 2)).unwrap();
        assert!(sol.vertices().is_empty());
    }

    #[test]
    fn guard_and_epsilon_validation() {
        let inst = unit_path_plus(2, 3, &[1]);
        let opts = ReoptOptions {
            ptas_guard: 3,
            ..ReoptOptions::default()
        };
        assert!(matches!(
            ptas_unweighted_with(&inst, Rational::from_integer(1), &opts),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(ptas_unweighted(&inst, Rational::from_integer(0)).is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let inst = unit_path_plus(0, 3, &[1]);
        let seq = ReoptOptions {
            exec: Exec::Sequential,
            ..ReoptOptions::default()
        };
        let par = ReoptOptions {
            exec: Exec::Parallel,
            ..ReoptOptions::default()
        };
        let eps = Rational::new(3, 10);
        assert_eq!(
            ptas_unweighted_with(&inst, eps, &seq).unwrap(),
            ptas_unweighted_with(&inst, eps, &par).unwrap()
        );
    }
}
