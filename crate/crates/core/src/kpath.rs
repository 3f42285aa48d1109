//! Detection, enumeration and coverage checks for simple paths of order `k`.
//!
//! Two detectors are provided: an exhaustive depth-first search that visits
//! vertex sequences in lexicographic order, and randomized color coding. The
//! exhaustive search is the oracle; color coding can only miss a path, never
//! report a false one, because every colorful path is re-verified.

use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::par::{self, Exec};

pub const DEFAULT_PATH_CAP: usize = 10_000_000;
pub const DEFAULT_MISS_PROBABILITY: f64 = 0.01;

/// Largest `k` handled by color coding; the DP table has `2^k · n` cells.
pub const MAX_COLOR_CODING_K: usize = 24;

/// A simple path on `k` distinct vertices, stored with its smaller endpoint first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KPath(Vec<Vertex>);

impl KPath {
    /// Validates `seq` against `g` and stores it in canonical orientation.
    pub fn new(g: &Graph, mut seq: Vec<Vertex>) -> Option<Self> {
        if seq.is_empty() || seq.iter().any(|&v| v >= g.vertex_count()) {
            return None;
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &seq {
            if std::mem::replace(&mut seen[v], true) {
                return None;
            }
        }
        if !seq.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return None;
        }
        if seq[0] > seq[seq.len() - 1] {
            seq.reverse();
        }
        Some(KPath(seq))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn intersects(&self, set: &VertexSet) -> bool {
        self.0.iter().any(|v| set.contains(v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    ColorCoding {
        trials: u64,
    },
    /// Exhaustive when `n <= 16` or `k <= 3`, otherwise color coding with
    /// [`default_trials`].
    Auto,
}

impl Strategy {
    pub(crate) fn resolve(self, n: usize, k: usize) -> Strategy {
        match self {
            Strategy::Auto if n <= 16 || k <= 3 || k > MAX_COLOR_CODING_K => Strategy::Exhaustive,
            Strategy::Auto => Strategy::ColorCoding {
                trials: default_trials(k, DEFAULT_MISS_PROBABILITY),
            },
            Strategy::ColorCoding { .. } if k > MAX_COLOR_CODING_K => Strategy::Exhaustive,
            other => other,
        }
    }
}

/// `⌈e^k · ln(1/δ)⌉`: trials after which a present k-path is missed with
/// probability at most `δ`.
pub fn default_trials(k: usize, delta: f64) -> u64 {
    ((k as f64).exp() * (1.0 / delta).ln()).ceil().max(1.0) as u64
}

/// Depth-first walk over every simple path of order `k` inside `allowed`.
/// Sequences are produced in lexicographic order; with `canonical_only`
/// each undirected path appears once (smaller endpoint first).
pub(crate) fn walk_k_paths<F>(
    g: &Graph,
    allowed: &[bool],
    k: usize,
    canonical_only: bool,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    fn extend<F: FnMut(&[Vertex]) -> ControlFlow<()>>(
        g: &Graph,
        allowed: &[bool],
        k: usize,
        canonical_only: bool,
        on_path: &mut [bool],
        stack: &mut Vec<Vertex>,
        visit: &mut F,
    ) -> ControlFlow<()> {
        if stack.len() == k {
            if !canonical_only || k == 1 || stack[0] < stack[k - 1] {
                return visit(stack);
            }
            return ControlFlow::Continue(());
        }
        let tail = stack[stack.len() - 1];
        for &u in g.neighbors(tail) {
            if !allowed[u] || on_path[u] {
                continue;
            }
            // the far endpoint must exceed the start for canonical output
            if canonical_only && stack.len() + 1 == k && u < stack[0] {
                continue;
            }
            on_path[u] = true;
            stack.push(u);
            let flow = extend(g, allowed, k, canonical_only, on_path, stack, visit);
            stack.pop();
            on_path[u] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    if k == 0 {
        return ControlFlow::Continue(());
    }
    let mut on_path = vec![false; g.vertex_count()];
    let mut stack = Vec::with_capacity(k);
    for s in g.vertices().filter(|&v| allowed[v]) {
        on_path[s] = true;
        stack.push(s);
        let flow = extend(
            g,
            allowed,
            k,
            canonical_only,
            &mut on_path,
            &mut stack,
            &mut visit,
        );
        stack.pop();
        on_path[s] = false;
        flow?;
    }
    ControlFlow::Continue(())
}

/// Lexicographically first k-path of `g[allowed]`, already canonical.
pub(crate) fn first_k_path_mask(g: &Graph, allowed: &[bool], k: usize) -> Option<Vec<Vertex>> {
    let mut found = None;
    let _ = walk_k_paths(g, allowed, k, false, |p| {
        found = Some(p.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// Whether `g[allowed]` contains a path of order `k`.
pub(crate) fn has_k_path_mask(g: &Graph, allowed: &[bool], k: usize) -> bool {
    let allowed_degree = |v: Vertex| g.neighbors(v).iter().filter(|&&u| allowed[u]).count();
    match k {
        0 => false,
        1 => allowed.iter().any(|&a| a),
        2 => g.vertices().any(|v| allowed[v] && allowed_degree(v) >= 1),
        // 3-path free iff every component is a vertex or an edge
        3 => g.vertices().any(|v| allowed[v] && allowed_degree(v) >= 2),
        _ => first_k_path_mask(g, allowed, k).is_some(),
    }
}

/// Every k-path of `g` once, in lexicographic order of canonical sequences.
pub fn enumerate_k_paths(g: &Graph, k: usize) -> Result<Vec<KPath>> {
    enumerate_k_paths_capped(g, k, DEFAULT_PATH_CAP)
}

pub fn enumerate_k_paths_capped(g: &Graph, k: usize, cap: usize) -> Result<Vec<KPath>> {
    check_order(k)?;
    collect_paths(g, &vec![true; g.vertex_count()], k, cap, |_| true)
}

fn collect_paths(
    g: &Graph,
    allowed: &[bool],
    k: usize,
    cap: usize,
    keep: impl Fn(&[Vertex]) -> bool,
) -> Result<Vec<KPath>> {
    let mut out = Vec::new();
    let mut over = false;
    let _ = walk_k_paths(g, allowed, k, true, |p| {
        if keep(p) {
            if out.len() == cap {
                over = true;
                return ControlFlow::Break(());
            }
            out.push(KPath(p.to_vec()));
        }
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::LimitExceeded {
            what: "k-path enumeration",
            limit: cap as u64,
        });
    }
    // canonical walk order equals lexicographic order except for the
    // endpoint filter, which only drops sequences
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

/// The enumerated k-paths that meet `focus`.
pub fn k_paths_through(g: &Graph, k: usize, focus: &VertexSet) -> Result<Vec<KPath>> {
    check_order(k)?;
    g.check_set(focus)?;
    let mask = g.mask_of(focus);
    collect_paths(g, &vec![true; g.vertex_count()], k, DEFAULT_PATH_CAP, |p| {
        p.iter().any(|&v| mask[v])
    })
}

/// True iff `g[V - s]` has no path of order `k`.
pub fn covers_all_k_paths(g: &Graph, s: &VertexSet, k: usize) -> bool {
    let allowed: Vec<bool> = g.vertices().map(|v| !s.contains(&v)).collect();
    !has_k_path_mask(g, &allowed, k)
}

/// Exhaustive search yields the lexicographically first k-path. Color coding
/// yields the path of the lowest-indexed successful trial, whatever the
/// execution policy.
pub fn find_k_path(g: &Graph, k: usize, strategy: Strategy, seed: u64) -> Option<KPath> {
    find_k_path_with(g, k, strategy, seed, Exec::default())
}

pub fn find_k_path_with(
    g: &Graph,
    k: usize,
    strategy: Strategy,
    seed: u64,
    exec: Exec,
) -> Option<KPath> {
    find_k_path_mask(g, &vec![true; g.vertex_count()], k, strategy, seed, exec)
}

pub(crate) fn find_k_path_mask(
    g: &Graph,
    allowed: &[bool],
    k: usize,
    strategy: Strategy,
    seed: u64,
    exec: Exec,
) -> Option<KPath> {
    let live = allowed.iter().filter(|&&a| a).count();
    match strategy.resolve(live, k) {
        Strategy::ColorCoding { trials } => color_coding(g, allowed, k, trials.max(1), seed, exec),
        _ => first_k_path_mask(g, allowed, k).map(KPath),
    }
}

fn color_coding(
    g: &Graph,
    allowed: &[bool],
    k: usize,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Option<KPath> {
    if k == 0 || allowed.iter().filter(|&&a| a).count() < k {
        return None;
    }
    par::find_map_first(exec, trials as usize, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
        let colors: Vec<u8> = (0..g.vertex_count())
            .map(|_| rng.gen_range(0..k) as u8)
            .collect();
        colorful_path(g, allowed, k, &colors).and_then(|seq| KPath::new(g, seq))
    })
}

/// Dynamic program over `(color subset, end vertex)`: a cell is set when some
/// path ending at the vertex uses exactly the colors of the subset, once each.
fn colorful_path(g: &Graph, allowed: &[bool], k: usize, colors: &[u8]) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let full = (1usize << k) - 1;
    let mut reach = vec![false; (full + 1) * n];
    let bit = |v: Vertex| 1usize << colors[v];
    for v in (0..n).filter(|&v| allowed[v]) {
        reach[bit(v) * n + v] = true;
    }
    for subset in 1..=full {
        if subset.count_ones() < 2 {
            continue;
        }
        for v in (0..n).filter(|&v| allowed[v] && subset & bit(v) != 0) {
            let rest = subset ^ bit(v);
            if g.neighbors(v)
                .iter()
                .any(|&u| allowed[u] && reach[rest * n + u])
            {
                reach[subset * n + v] = true;
            }
        }
    }
    let end = (0..n).find(|&v| reach[full * n + v])?;
    let mut seq = vec![end];
    let mut subset = full;
    let mut cur = end;
    loop {
        subset ^= bit(cur);
        if subset == 0 {
            break;
        }
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&u| allowed[u] && reach[subset * n + u])
            .expect("colorful DP cell without predecessor");
        seq.push(cur);
    }
    Some(seq)
}

pub(crate) fn check_order(k: usize) -> Result<()> {
    if k < 2 {
        Err(Error::InvalidArgument(format!(
            "path order k must be at least 2, got {k}"
        )))
    } else {
        Ok(())
    }
}
