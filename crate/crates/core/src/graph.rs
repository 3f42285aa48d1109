//! Immutable vertex-weighted simple graphs and the set primitives shared by
//! every algorithm in the crate.
//!
//! Vertices are `0..n` internally. Text formats use `1..=n`; the conversion is
//! `file_id = vertex + 1` and lives entirely in [`crate::io`].

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Weight = u64;
pub type VertexSet = BTreeSet<Vertex>;

/// Simple undirected graph with non-negative integer vertex weights and
/// ascending adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    weights: Vec<Weight>,
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from per-vertex weights and an edge list. Edges may be
    /// given in either orientation; loops, duplicates and unknown endpoints
    /// are rejected.
    pub fn new(weights: Vec<Weight>, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let n = weights.len();
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::UnknownVertex(u));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop on vertex {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate edge {{{}, {}}}",
                    key.0, key.1
                )));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            weights,
            adj,
            edge_count: seen.len(),
        })
    }

    /// Unit-weight graph on `n` vertices.
    pub fn unweighted(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::new(vec![1; n], edges)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn weight(&self, v: Vertex) -> Weight {
        self.weights[v]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.weights.len()
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn set_weight<'a>(&self, set: impl IntoIterator<Item = &'a Vertex>) -> Weight {
        set.into_iter().map(|&v| self.weights[v]).sum()
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// True when every weight is at least 1.
    pub fn has_positive_weights(&self) -> bool {
        self.weights.iter().all(|&w| w >= 1)
    }

    pub fn with_unit_weights(&self) -> Graph {
        Graph {
            weights: vec![1; self.weights.len()],
            adj: self.adj.clone(),
            edge_count: self.edge_count,
        }
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub(crate) fn check_set<'a>(&self, set: impl IntoIterator<Item = &'a Vertex>) -> Result<()> {
        set.into_iter().try_for_each(|&v| self.check_vertex(v))
    }

    pub(crate) fn mask_of<'a>(&self, set: impl IntoIterator<Item = &'a Vertex>) -> Vec<bool> {
        let mut mask = vec![false; self.vertex_count()];
        for &v in set {
            mask[v] = true;
        }
        mask
    }
}

/// The inserted graph `G_A` together with its attachment edges into the old
/// graph. Added vertices are `old_vertex_count..old_vertex_count + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionPatch {
    old_vertex_count: usize,
    added: Vec<(Vertex, Weight)>,
    internal_edges: Vec<(Vertex, Vertex)>,
    attachment_edges: Vec<(Vertex, Vertex)>,
}

impl InsertionPatch {
    /// `internal_edges` join two added vertices; `attachment_edges` are
    /// `(old, added)` pairs.
    pub fn new(
        old_vertex_count: usize,
        added: Vec<(Vertex, Weight)>,
        internal_edges: Vec<(Vertex, Vertex)>,
        attachment_edges: Vec<(Vertex, Vertex)>,
    ) -> Result<Self> {
        for (i, &(id, _)) in added.iter().enumerate() {
            if id != old_vertex_count + i {
                return Err(Error::MalformedPatch(format!(
                    "added vertex {id} is not contiguous (expected {})",
                    old_vertex_count + i
                )));
            }
        }
        let total = old_vertex_count + added.len();
        let is_new = |v: Vertex| v >= old_vertex_count && v < total;
        let mut seen = HashSet::new();
        for &(u, v) in &internal_edges {
            if !is_new(u) || !is_new(v) {
                return Err(Error::MalformedPatch(format!(
                    "internal edge ({u}, {v}) must join two added vertices"
                )));
            }
            if u == v {
                return Err(Error::MalformedPatch(format!("self-loop on vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::MalformedPatch(format!("duplicate edge ({u}, {v})")));
            }
        }
        for &(old, new) in &attachment_edges {
            if old >= old_vertex_count || !is_new(new) {
                return Err(Error::MalformedPatch(format!(
                    "attachment edge ({old}, {new}) must join an old vertex to an added one"
                )));
            }
            if !seen.insert((old, new)) {
                return Err(Error::MalformedPatch(format!(
                    "duplicate edge ({old}, {new})"
                )));
            }
        }
        Ok(InsertionPatch {
            old_vertex_count,
            added,
            internal_edges,
            attachment_edges,
        })
    }

    pub fn empty(old_vertex_count: usize) -> Self {
        InsertionPatch {
            old_vertex_count,
            added: Vec::new(),
            internal_edges: Vec::new(),
            attachment_edges: Vec::new(),
        }
    }

    pub fn old_vertex_count(&self) -> usize {
        self.old_vertex_count
    }

    /// Number of inserted vertices, `c`.
    pub fn added_count(&self) -> usize {
        self.added.len()
    }

    pub fn added(&self) -> &[(Vertex, Weight)] {
        &self.added
    }

    pub fn added_vertices(&self) -> VertexSet {
        self.added.iter().map(|&(v, _)| v).collect()
    }

    pub fn internal_edges(&self) -> &[(Vertex, Vertex)] {
        &self.internal_edges
    }

    pub fn attachment_edges(&self) -> &[(Vertex, Vertex)] {
        &self.attachment_edges
    }
}

/// Returns `G_N = (V_O ∪ V_A, E_O ∪ E_A ∪ E^a)`.
pub fn apply_patch(g_old: &Graph, patch: &InsertionPatch) -> Result<Graph> {
    if patch.old_vertex_count != g_old.vertex_count() {
        return Err(Error::MalformedPatch(format!(
            "patch expects {} old vertices, graph has {}",
            patch.old_vertex_count,
            g_old.vertex_count()
        )));
    }
    let mut weights = g_old.weights.clone();
    weights.extend(patch.added.iter().map(|&(_, w)| w));
    let mut edges: Vec<_> = g_old.edges().collect();
    edges.extend_from_slice(&patch.internal_edges);
    edges.extend_from_slice(&patch.attachment_edges);
    Graph::new(weights, &edges).map_err(|e| Error::MalformedPatch(e.to_string()))
}

/// `N_G(S)`: vertices outside `s` adjacent to a member of `s`.
pub fn neighbors_of_set(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    g.check_set(s)?;
    Ok(neighbors_of_mask(g, &g.mask_of(s)))
}

pub(crate) fn neighbors_of_mask(g: &Graph, inside: &[bool]) -> VertexSet {
    let mut out = VertexSet::new();
    for v in g.vertices().filter(|&v| inside[v]) {
        out.extend(g.neighbors(v).iter().filter(|&&u| !inside[u]));
    }
    out
}

/// An induced subgraph plus the map from its vertices back to the parent's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub graph: Graph,
    /// `original[i]` is the parent vertex of subgraph vertex `i`; ascending.
    pub original: Vec<Vertex>,
}

impl Induced {
    pub fn lift<'a>(&self, set: impl IntoIterator<Item = &'a Vertex>) -> VertexSet {
        set.into_iter().map(|&v| self.original[v]).collect()
    }
}

/// `G[S]`, with subgraph vertices numbered in ascending parent order.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<Induced> {
    g.check_set(s)?;
    Ok(induced_by_mask(g, &g.mask_of(s)))
}

pub(crate) fn induced_by_mask(g: &Graph, keep: &[bool]) -> Induced {
    let original: Vec<Vertex> = g.vertices().filter(|&v| keep[v]).collect();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in original.iter().enumerate() {
        index[v] = i;
    }
    let weights = original.iter().map(|&v| g.weight(v)).collect();
    let adj: Vec<Vec<Vertex>> = original
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&u| keep[u])
                .map(|&u| index[u])
                .collect()
        })
        .collect();
    let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
    Induced {
        graph: Graph {
            weights,
            adj,
            edge_count,
        },
        original,
    }
}

/// Levels of a breadth-first traversal seeded with a whole vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsForest {
    levels: Vec<Vec<Vertex>>,
    level_of: Vec<Option<usize>>,
    root_set: VertexSet,
}

impl BfsForest {
    /// `levels()[0]` is the root set `L_1`; each level is ascending.
    pub fn levels(&self) -> &[Vec<Vertex>] {
        &self.levels
    }

    /// Zero-based level index of `v`, or `None` when unreached.
    pub fn level_of(&self, v: Vertex) -> Option<usize> {
        self.level_of.get(v).copied().flatten()
    }

    pub fn root_set(&self) -> &VertexSet {
        &self.root_set
    }

    pub fn max_level_size(&self) -> usize {
        self.levels.iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub fn bfs_forest_from_set(g: &Graph, roots: &VertexSet) -> Result<BfsForest> {
    if roots.is_empty() {
        return Err(Error::EmptyRootSet);
    }
    g.check_set(roots)?;
    let mut level_of = vec![None; g.vertex_count()];
    let mut current: Vec<Vertex> = roots.iter().copied().collect();
    for &v in &current {
        level_of[v] = Some(0);
    }
    let mut levels = Vec::new();
    while !current.is_empty() {
        let depth = levels.len() + 1;
        let mut next = VertexSet::new();
        for &v in &current {
            for &u in g.neighbors(v) {
                if level_of[u].is_none() {
                    next.insert(u);
                }
            }
        }
        for &u in &next {
            level_of[u] = Some(depth);
        }
        levels.push(current);
        current = next.into_iter().collect();
    }
    Ok(BfsForest {
        levels,
        level_of,
        root_set: roots.clone(),
    })
}

/// `Δ(G)`; zero for edgeless graphs.
pub fn max_degree(g: &Graph) -> usize {
    g.adj.iter().map(Vec::len).max().unwrap_or(0)
}

/// True iff every connected component of `g[s]` contains a vertex of `va`.
pub fn is_va_connected(g: &Graph, s: &VertexSet, va: &VertexSet) -> Result<bool> {
    g.check_set(s)?;
    g.check_set(va)?;
    Ok(is_va_connected_mask(g, &g.mask_of(s), &g.mask_of(va)))
}

pub(crate) fn is_va_connected_mask(g: &Graph, inside: &[bool], va: &[bool]) -> bool {
    let mut reached = vec![false; g.vertex_count()];
    let mut queue: VecDeque<Vertex> = g
        .vertices()
        .filter(|&v| inside[v] && va[v])
        .inspect(|&v| reached[v] = true)
        .collect();
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if inside[u] && !reached[u] {
                reached[u] = true;
                queue.push_back(u);
            }
        }
    }
    g.vertices().all(|v| !inside[v] || reached[v])
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    // Spec examples are 1-based; these tests use internal ids (file id - 1).

    #[test]
    fn patch_extends_path() {
        let g = path(3);
        let patch = InsertionPatch::new(3, vec![(3, 1)], vec![], vec![(2, 3)]).unwrap();
        let g_new = apply_patch(&g, &patch).unwrap();
        assert_eq!(g_new, path(4));
        assert_eq!((g_new.vertex_count(), g_new.edge_count()), (4, 3));
        assert_eq!(g, path(3));
    }

    #[test]
    fn empty_patch_is_identity() {
        let g = cycle(5);
        assert_eq!(apply_patch(&g, &InsertionPatch::empty(5)).unwrap(), g);
    }

    #[test]
    fn patch_with_isolated_vertex() {
        let g = path(4);
        let patch = InsertionPatch::new(4, vec![(4, 7)], vec![], vec![]).unwrap();
        let g_new = apply_patch(&g, &patch).unwrap();
        assert_eq!(g_new.vertex_count(), 5);
        assert_eq!(g_new.degree(4), 0);
        assert_eq!(g_new.weight(4), 7);
        assert_eq!(g_new.edge_count(), 3);
    }

    #[test]
    fn malformed_patches_are_rejected() {
        assert!(matches!(
            InsertionPatch::new(3, vec![(4, 1)], vec![], vec![]),
            Err(Error::MalformedPatch(_))
        ));
        assert!(matches!(
            InsertionPatch::new(3, vec![(3, 1)], vec![(3, 3)], vec![]),
            Err(Error::MalformedPatch(_))
        ));
        assert!(matches!(
            InsertionPatch::new(3, vec![(3, 1)], vec![], vec![(1, 3), (1, 3)]),
            Err(Error::MalformedPatch(_))
        ));
        assert!(matches!(
            InsertionPatch::new(3, vec![(3, 1), (4, 1)], vec![], vec![(3, 4)]),
            Err(Error::MalformedPatch(_))
        ));
        let patch = InsertionPatch::new(2, vec![(2, 1)], vec![], vec![]).unwrap();
        assert!(matches!(
            apply_patch(&path(3), &patch),
            Err(Error::MalformedPatch(_))
        ));
    }

    #[test]
    fn neighborhoods() {
        let g = path(4);
        assert_eq!(neighbors_of_set(&g, &set(&[1, 2])).unwrap(), set(&[0, 3]));
        assert!(neighbors_of_set(&g, &g.all_vertices()).unwrap().is_empty());
        assert!(neighbors_of_set(&g, &set(&[])).unwrap().is_empty());
        assert_eq!(
            neighbors_of_set(&g, &set(&[9])),
            Err(Error::UnknownVertex(9))
        );
    }

    #[test]
    fn induced() {
        let sub = induced_subgraph(&path(4), &set(&[0, 1])).unwrap();
        assert_eq!(sub.graph, path(2));
        assert_eq!(sub.original, vec![0, 1]);
        assert_eq!(
            induced_subgraph(&path(4), &set(&[]))
                .unwrap()
                .graph
                .vertex_count(),
            0
        );
        let tri = cycle(3);
        let sub = induced_subgraph(&tri, &set(&[0, 2])).unwrap();
        assert_eq!(sub.graph.edge_count(), 1);
        assert_eq!(sub.original, vec![0, 2]);
        assert_eq!(sub.lift(&[1]), set(&[2]));
    }

    #[test]
    fn bfs_levels() {
        let g = path(4);
        let f = bfs_forest_from_set(&g, &set(&[0])).unwrap();
        assert_eq!(f.levels(), &[vec![0], vec![1], vec![2], vec![3]]);
        let f = bfs_forest_from_set(&g, &set(&[1, 2])).unwrap();
        assert_eq!(f.levels(), &[vec![1, 2], vec![0, 3]]);

        let g = Graph::unweighted(3, &[(0, 1)]).unwrap();
        let f = bfs_forest_from_set(&g, &set(&[0])).unwrap();
        assert_eq!(f.levels(), &[vec![0], vec![1]]);
        assert_eq!(f.level_of(2), None);
        assert_eq!(bfs_forest_from_set(&g, &set(&[])), Err(Error::EmptyRootSet));
    }

    #[test]
    fn degrees() {
        assert_eq!(max_degree(&path(3)), 2);
        assert_eq!(max_degree(&star(0, 4)), 3);
        assert_eq!(max_degree(&Graph::empty()), 0);
    }

    #[test]
    fn va_connectivity() {
        let g = path(4);
        assert!(is_va_connected(&g, &set(&[2, 3]), &set(&[3])).unwrap());
        assert!(!is_va_connected(&g, &set(&[0, 1]), &set(&[3])).unwrap());
        assert!(is_va_connected(&g, &set(&[]), &set(&[3])).unwrap());
        assert!(!is_va_connected(&g, &set(&[0, 3]), &set(&[3])).unwrap());
    }

    #[test]
    fn graph_rejects_bad_edges() {
        assert!(Graph::unweighted(2, &[(0, 0)]).is_err());
        assert!(Graph::unweighted(2, &[(0, 1), (1, 0)]).is_err());
        assert_eq!(
            Graph::unweighted(2, &[(0, 2)]),
            Err(Error::UnknownVertex(2))
        );
    }
}
