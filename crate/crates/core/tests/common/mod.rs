//! Brute-force oracles and random instance supply shared by the integration
//! tests. The oracles only read adjacency lists and weights from the
//! library; path search, cover checks and optima are recomputed here.
#![allow(dead_code)]

use pvc_core::graph::{apply_patch, Graph, InsertionPatch, Vertex, VertexSet};
use pvc_core::io::{gen_graph, gen_patch, EdgeTarget, GeneratorConfig, PatchConfig};
use pvc_core::reopt::ReoptInstance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Mask = u64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mask_of(set: &VertexSet) -> Mask {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

pub fn set_of(mask: Mask) -> VertexSet {
    (0..64).filter(|v| mask >> v & 1 == 1).collect()
}

pub fn mask_weight(g: &Graph, mask: Mask) -> u64 {
    (0..g.vertex_count())
        .filter(|v| mask >> v & 1 == 1)
        .map(|v| g.weight(v))
        .sum()
}

fn extend(
    g: &Graph,
    alive: Mask,
    k: usize,
    path: &mut Vec<Vertex>,
    used: Mask,
    found: &mut dyn FnMut(&[Vertex]) -> bool,
) -> bool {
    if path.len() == k {
        return found(path);
    }
    let last = *path.last().unwrap();
    for &u in g.neighbors(last) {
        if alive >> u & 1 == 1 && used >> u & 1 == 0 {
            path.push(u);
            if extend(g, alive, k, path, used | 1 << u, found) {
                return true;
            }
            path.pop();
        }
    }
    false
}

/// Calls `found` on every k-vertex simple path (both orientations) inside
/// `alive` until it returns true.
pub fn any_k_path(
    g: &Graph,
    alive: Mask,
    k: usize,
    found: &mut dyn FnMut(&[Vertex]) -> bool,
) -> bool {
    (0..g.vertex_count())
        .filter(|v| alive >> v & 1 == 1)
        .any(|v| {
            let mut path = vec![v];
            extend(g, alive, k, &mut path, 1 << v, found)
        })
}

pub fn full(g: &Graph) -> Mask {
    if g.vertex_count() == 64 {
        Mask::MAX
    } else {
        (1 << g.vertex_count()) - 1
    }
}

pub fn has_k_path(g: &Graph, alive: Mask, k: usize) -> bool {
    any_k_path(g, alive, k, &mut |_| true)
}

pub fn brute_path(g: &Graph, alive: Mask, k: usize) -> Option<Vec<Vertex>> {
    let mut out = None;
    any_k_path(g, alive, k, &mut |p| {
        out = Some(p.to_vec());
        true
    });
    out
}

pub fn is_cover(g: &Graph, cover: Mask, k: usize) -> bool {
    !has_k_path(g, full(g) & !cover, k)
}

/// True when `cover` meets every k-path that touches `focus`.
pub fn covers_paths_touching(g: &Graph, cover: Mask, focus: Mask, k: usize) -> bool {
    !any_k_path(g, full(g) & !cover, k, &mut |p| {
        p.iter().any(|&v| focus >> v & 1 == 1)
    })
}

/// `seq` is a simple path of `k` vertices in `g`.
pub fn is_valid_path(g: &Graph, seq: &[Vertex], k: usize) -> bool {
    let distinct: VertexSet = seq.iter().copied().collect();
    seq.len() == k
        && distinct.len() == k
        && seq.iter().all(|&v| v < g.vertex_count())
        && seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// Minimum cover weight and every cover that attains it.
pub fn optima(g: &Graph, k: usize) -> (u64, Vec<Mask>) {
    let n = g.vertex_count();
    assert!(n <= 20, "brute force is limited to 20 vertices");
    let mut best = u64::MAX;
    let mut all = Vec::new();
    for mask in 0..(1u64 << n) {
        let w = mask_weight(g, mask);
        if w > best || !is_cover(g, mask, k) {
            continue;
        }
        if w < best {
            best = w;
            all.clear();
        }
        all.push(mask);
    }
    (best, all)
}

pub fn opt_weight(g: &Graph, k: usize) -> u64 {
    optima(g, k).0
}

/// Minimum cover cardinality.
pub fn opt_cardinality(g: &Graph, k: usize) -> usize {
    let n = g.vertex_count();
    (0..=n)
        .find(|&size| {
            (0..(1u64 << n))
                .filter(|m| m.count_ones() as usize == size)
                .any(|m| is_cover(g, m, k))
        })
        .unwrap()
}

/// Subgraph on `keep`, with the old ids of the new vertices.
pub fn induced(g: &Graph, keep: Mask) -> (Graph, Vec<Vertex>) {
    let ids: Vec<Vertex> = (0..g.vertex_count())
        .filter(|v| keep >> v & 1 == 1)
        .collect();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in ids.iter().enumerate() {
        index[v] = i;
    }
    let weights = ids.iter().map(|&v| g.weight(v)).collect();
    let edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .filter(|&(u, v)| keep >> u & 1 == 1 && keep >> v & 1 == 1)
        .map(|(u, v)| (index[u], index[v]))
        .collect();
    (Graph::new(weights, &edges).unwrap(), ids)
}

/// BFS levels from a root set, computed without the library.
pub fn bfs_levels(g: &Graph, roots: &VertexSet) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut level: Vec<Vertex> = roots.iter().copied().collect();
    level.iter().for_each(|&v| seen[v] = true);
    let mut out = Vec::new();
    while !level.is_empty() {
        let mut next = Vec::new();
        for &v in &level {
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    next.push(u);
                }
            }
        }
        out.push(std::mem::take(&mut level));
        level = next;
    }
    out
}

/// Random graph whose edge density is drawn from `density`.
pub fn graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    density: std::ops::Range<f64>,
    max_degree: Option<usize>,
    weights: (u64, u64),
) -> Graph {
    let density = rng.gen_range(density);
    gen_graph(&GeneratorConfig {
        n,
        edges: EdgeTarget::Density(density),
        max_degree,
        weight_range: weights,
        seed: rng.gen(),
    })
    .unwrap()
}

pub struct ReoptSpec {
    pub n_new_max: usize,
    pub c_max: usize,
    pub k: usize,
    pub weights: (u64, u64),
    pub max_degree: Option<usize>,
}

/// Random old graph plus an insertion of `1..=c_max` vertices, with a
/// brute-force optimum of the old graph (unit weights give a minimum
/// cardinality cover).
pub fn reopt_instance(rng: &mut ChaCha8Rng, shape: &ReoptSpec) -> ReoptInstance {
    let c = rng.gen_range(1..=shape.c_max);
    let n_old = rng.gen_range(3..=shape.n_new_max - c);
    let g_old = graph(rng, n_old, 0.15..0.45, shape.max_degree, shape.weights);
    let patch = gen_patch(
        &g_old,
        &PatchConfig {
            added: c,
            attach_prob: rng.gen_range(0.15..0.5),
            internal_prob: rng.gen_range(0.0..0.7),
            weight_range: shape.weights,
            max_degree: shape.max_degree,
            seed: rng.gen(),
        },
    )
    .unwrap();
    let (_, opts) = optima(&g_old, shape.k);
    let old_opt = set_of(opts[rng.gen_range(0..opts.len())]);
    ReoptInstance::new(g_old, patch, old_opt, shape.k).unwrap()
}

pub fn g_new_of(g_old: &Graph, patch: &InsertionPatch) -> Graph {
    apply_patch(g_old, patch).unwrap()
}
