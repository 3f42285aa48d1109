use super::CoverSolution;
use crate::error::Result;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::kpath::{
    check_order, enumerate_k_paths_capped, find_k_path_mask, first_k_path_mask, Strategy,
    DEFAULT_PATH_CAP,
};
use crate::par::Exec;

/// Repeatedly finds a k-path in the residual graph and deletes its lightest
/// vertex (ties to the lowest id). Weight is at most `(n - k + 1) · OPT`.
///
/// Detection uses [`Strategy::Auto`]; whenever color coding reports no path
/// the residual graph is re-checked exhaustively, so the result is always
/// feasible.
pub fn greedy_approx(g: &Graph, k: usize, seed: u64) -> Result<CoverSolution> {
    check_order(k)?;
    let mut alive = vec![true; g.vertex_count()];
    let mut cover = VertexSet::new();
    loop {
        let path = find_k_path_mask(g, &alive, k, Strategy::Auto, seed, Exec::default())
            .map(|p| p.vertices().to_vec())
            .or_else(|| first_k_path_mask(g, &alive, k));
        let Some(path) = path else { break };
        let lightest = path
            .iter()
            .copied()
            .min_by_key(|&v| (g.weight(v), v))
            .expect("k-path is nonempty");
        alive[lightest] = false;
        cover.insert(lightest);
    }
    Ok(CoverSolution::new(g, k, cover))
}

/// Local-ratio scheme for the frequency-k set cover view of the problem:
/// each uncovered path, in lexicographic order, pays its minimum residual
/// weight on all of its vertices; vertices driven to zero join the cover.
/// Weight is at most `k · OPT`.
///
/// With `prune`, a reverse-delete pass drops redundant vertices, latest
/// added first.
pub fn local_ratio_approx(g: &Graph, k: usize, prune: bool) -> Result<CoverSolution> {
    local_ratio_approx_capped(g, k, prune, DEFAULT_PATH_CAP)
}

pub fn local_ratio_approx_capped(
    g: &Graph,
    k: usize,
    prune: bool,
    path_cap: usize,
) -> Result<CoverSolution> {
    check_order(k)?;
    let paths = enumerate_k_paths_capped(g, k, path_cap)?;
    let n = g.vertex_count();
    let mut residual = g.weights().to_vec();
    let mut in_cover = vec![false; n];
    let mut added: Vec<Vertex> = Vec::new();
    for path in &paths {
        let vs = path.vertices();
        if vs.iter().any(|&v| in_cover[v]) {
            continue;
        }
        let pay = vs
            .iter()
            .map(|&v| residual[v])
            .min()
            .expect("k-path is nonempty");
        let mut zeroed: Vec<Vertex> = Vec::new();
        for &v in vs {
            residual[v] -= pay;
            if residual[v] == 0 {
                zeroed.push(v);
            }
        }
        zeroed.sort_unstable();
        for v in zeroed {
            in_cover[v] = true;
            added.push(v);
        }
    }

    if prune {
        // hits[p] counts cover vertices on path p
        let mut through: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut hits = vec![0usize; paths.len()];
        for (i, path) in paths.iter().enumerate() {
            for &v in path.vertices() {
                through[v].push(i);
                if in_cover[v] {
                    hits[i] += 1;
                }
            }
        }
        for &v in added.iter().rev() {
            if through[v].iter().all(|&p| hits[p] >= 2) {
                in_cover[v] = false;
                for &p in &through[v] {
                    hits[p] -= 1;
                }
            }
        }
    }

    let cover = g.vertices().filter(|&v| in_cover[v]).collect();
    Ok(CoverSolution::new(g, k, cover))
}
