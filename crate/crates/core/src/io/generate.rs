//! Seeded instance generators. Every random draw comes from one
//! `ChaCha8Rng` stream in a fixed order, so a seed reproduces the output.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, InsertionPatch, Vertex, Weight};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EdgeTarget {
    /// Exactly this many edges.
    Count(usize),
    /// Each pair independently with this probability.
    Density(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub edges: EdgeTarget,
    pub max_degree: Option<usize>,
    /// Inclusive range of vertex weights.
    pub weight_range: (Weight, Weight),
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(n: usize, edges: EdgeTarget, seed: u64) -> Self {
        Self {
            n,
            edges,
            max_degree: None,
            weight_range: (1, 10),
            seed,
        }
    }
}

fn check_weights((lo, hi): (Weight, Weight)) -> Result<()> {
    if lo < 1 || lo > hi {
        return Err(Error::InfeasibleConfig(format!(
            "weight range [{lo}, {hi}] must satisfy 1 <= lo <= hi"
        )));
    }
    Ok(())
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InfeasibleConfig(format!(
            "{name} {p} is not in [0, 1]"
        )));
    }
    Ok(())
}

/// Weights are drawn first, in vertex order. A `Count` target then shuffles
/// all pairs and keeps those that respect the degree cap; a `Density` target
/// flips one coin per pair in lexicographic order.
pub fn gen_graph(cfg: &GeneratorConfig) -> Result<Graph> {
    check_weights(cfg.weight_range)?;
    let n = cfg.n;
    let cap = cfg.max_degree.unwrap_or(usize::MAX);
    let pairs = n * n.saturating_sub(1) / 2;
    if let EdgeTarget::Count(m) = cfg.edges {
        let by_degree = n.saturating_mul(cap.min(n.saturating_sub(1))) / 2;
        if m > pairs || m > by_degree {
            return Err(Error::InfeasibleConfig(format!(
                "{m} edges do not fit on {n} vertices with maximum degree {}",
                cap.min(n.saturating_sub(1))
            )));
        }
    }
    if let EdgeTarget::Density(p) = cfg.edges {
        check_probability("density", p)?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (lo, hi) = cfg.weight_range;
    let weights: Vec<Weight> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    let mut candidates: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    match cfg.edges {
        EdgeTarget::Count(m) => {
            candidates.shuffle(&mut rng);
            for (u, v) in candidates {
                if edges.len() == m {
                    break;
                }
                if degree[u] < cap && degree[v] < cap {
                    degree[u] += 1;
                    degree[v] += 1;
                    edges.push((u, v));
                }
            }
            if edges.len() < m {
                return Err(Error::InfeasibleConfig(format!(
                    "degree cap {cap} left only {} of {m} edges placeable for seed {}",
                    edges.len(),
                    cfg.seed
                )));
            }
        }
        EdgeTarget::Density(p) => {
            for (u, v) in candidates {
                if rng.gen_bool(p) && degree[u] < cap && degree[v] < cap {
                    degree[u] += 1;
                    degree[v] += 1;
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::new(weights, &edges)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PatchConfig {
    pub added: usize,
    pub attach_prob: f64,
    pub internal_prob: f64,
    pub weight_range: (Weight, Weight),
    pub max_degree: Option<usize>,
    pub seed: u64,
}

impl PatchConfig {
    pub fn new(added: usize, seed: u64) -> Self {
        Self {
            added,
            attach_prob: 0.3,
            internal_prob: 0.5,
            weight_range: (1, 10),
            max_degree: None,
            seed,
        }
    }
}

/// Weights of the new vertices come first. Then, for each new vertex in
/// order, one coin per old vertex decides an attachment edge, and finally
/// one coin per pair of new vertices decides an internal edge. Coins are
/// drawn even when the degree cap rejects the edge.
pub fn gen_patch(g_old: &Graph, cfg: &PatchConfig) -> Result<InsertionPatch> {
    check_weights(cfg.weight_range)?;
    check_probability("attach probability", cfg.attach_prob)?;
    check_probability("internal probability", cfg.internal_prob)?;
    let old_n = g_old.vertex_count();
    let cap = cfg.max_degree.unwrap_or(usize::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (lo, hi) = cfg.weight_range;
    let added: Vec<(Vertex, Weight)> = (0..cfg.added)
        .map(|i| (old_n + i, rng.gen_range(lo..=hi)))
        .collect();
    let mut degree: Vec<usize> = g_old.vertices().map(|v| g_old.degree(v)).collect();
    degree.resize(old_n + cfg.added, 0);
    let take = |u: Vertex, v: Vertex, coin: bool, degree: &mut Vec<usize>| {
        let ok = coin && degree[u] < cap && degree[v] < cap;
        if ok {
            degree[u] += 1;
            degree[v] += 1;
        }
        ok
    };
    let mut attachment = Vec::new();
    for &(new, _) in &added {
        for old in g_old.vertices() {
            let coin = rng.gen_bool(cfg.attach_prob);
            if take(old, new, coin, &mut degree) {
                attachment.push((old, new));
            }
        }
    }
    let mut internal = Vec::new();
    for i in 0..cfg.added {
        for j in i + 1..cfg.added {
            let (u, v) = (old_n + i, old_n + j);
            let coin = rng.gen_bool(cfg.internal_prob);
            if take(u, v, coin, &mut degree) {
                internal.push((u, v));
            }
        }
    }
    InsertionPatch::new(old_n, added, internal, attachment)
}
