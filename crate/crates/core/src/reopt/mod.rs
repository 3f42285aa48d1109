//! Reoptimization of k-path vertex cover under constant-size graph insertion.
//!
//! Given an old graph, an insertion patch and a cover of the old graph, the
//! algorithms here build a cover of the new graph:
//!
//! * [`ptas_unweighted`]: `(1 + ε)` for cardinality, by bounded subset search.
//! * [`construct_sol`]: `(2 - 1/ρ)` for weights, over any *good family* of
//!   partial covers and any `ρ`-approximate [`ApproxOracle`].
//! * [`good_family_3pvcp`] / [`construct_f`]: the two family constructions,
//!   for `k = 3` and for `k >= 4` on bounded-degree graphs.
//!
//! A good family has some member inside an optimum of the new graph
//! (property 1) and only members that cover every k-path touching an inserted
//! vertex (property 2). [`validate_good_family`] checks both exactly.

mod construct_f;
mod construct_sol;
mod family3;
mod ptas;
mod validate;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{apply_patch, Graph, InsertionPatch, Vertex, VertexSet};
use crate::par::Exec;
use crate::solvers::{ApproxOracle, CoverSolution};

pub use construct_f::{construct_f, construct_f_with, level_bound};
pub use construct_sol::{construct_sol, construct_sol_with};
pub use family3::{good_family_3pvcp, good_family_3pvcp_with};
pub use ptas::{ptas_unweighted, ptas_unweighted_with};
pub use validate::{validate_good_family, FamilyReport, Property1};

/// Which reading of the printed family constructions to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Corrected,
    PaperLiteral,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(Mode::Corrected),
            "paper" | "paper-literal" => Ok(Mode::PaperLiteral),
            other => Err(Error::InvalidArgument(format!("unknown mode `{other}`"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Corrected => "corrected",
            Mode::PaperLiteral => "paper",
        })
    }
}

/// Enumeration guards and execution policy shared by the reoptimizers.
#[derive(Clone, Debug)]
pub struct ReoptOptions {
    /// Maximum number of distinct family members.
    pub family_cap: usize,
    /// Maximum number of candidate subsets examined while building a family.
    pub work_cap: u64,
    /// Maximum inserted vertex count for the `k = 3` construction.
    pub max_added: usize,
    /// Maximum number of candidate sets the PTAS may enumerate.
    pub ptas_guard: u64,
    pub exec: Exec,
}

impl Default for ReoptOptions {
    fn default() -> Self {
        ReoptOptions {
            family_cap: 1_000_000,
            work_cap: 100_000_000,
            max_added: 12,
            ptas_guard: 100_000_000,
            exec: Exec::default(),
        }
    }
}

/// `(G_O, G_N, OPT(G_O))` together with the patch that produced `G_N`.
#[derive(Clone, Debug)]
pub struct ReoptInstance {
    g_old: Graph,
    patch: InsertionPatch,
    g_new: Graph,
    old_opt: CoverSolution,
    k: usize,
}

impl ReoptInstance {
    /// Fails unless `old_opt` is a feasible k-path cover of `g_old`.
    pub fn new(g_old: Graph, patch: InsertionPatch, old_opt: VertexSet, k: usize) -> Result<Self> {
        crate::kpath::check_order(k)?;
        g_old.check_set(&old_opt)?;
        let g_new = apply_patch(&g_old, &patch)?;
        let old_opt = CoverSolution::new(&g_old, k, old_opt);
        if !old_opt.is_feasible() {
            return Err(Error::InfeasibleOldSolution { k });
        }
        Ok(ReoptInstance {
            g_old,
            patch,
            g_new,
            old_opt,
            k,
        })
    }

    pub fn g_old(&self) -> &Graph {
        &self.g_old
    }

    pub fn g_new(&self) -> &Graph {
        &self.g_new
    }

    pub fn patch(&self) -> &InsertionPatch {
        &self.patch
    }

    pub fn old_opt(&self) -> &CoverSolution {
        &self.old_opt
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `V_A`
    pub fn added(&self) -> VertexSet {
        self.patch.added_vertices()
    }

    pub fn is_added(&self, v: Vertex) -> bool {
        v >= self.patch.old_vertex_count()
    }
}

/// An ordered, duplicate-free family of candidate partial covers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GoodFamily {
    members: Vec<VertexSet>,
    provenance: Vec<String>,
    seen: HashSet<VertexSet>,
}

impl GoodFamily {
    pub fn new() -> Self {
        Self::default()
    }

    /// Family with the given members in order, duplicates dropped.
    pub fn from_members(members: impl IntoIterator<Item = VertexSet>) -> Self {
        let mut family = Self::new();
        for (i, m) in members.into_iter().enumerate() {
            family.push(m, format!("given#{i}"));
        }
        family
    }

    /// Appends `member` unless already present; returns whether it was new.
    pub fn push(&mut self, member: VertexSet, label: impl Into<String>) -> bool {
        if self.seen.contains(&member) {
            return false;
        }
        self.seen.insert(member.clone());
        self.members.push(member);
        self.provenance.push(label.into());
        true
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    /// Branch label of each member, parallel to [`GoodFamily::members`].
    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, member: &VertexSet) -> bool {
        self.seen.contains(member)
    }

    /// Reorders members by size, then lexicographically.
    pub fn sort_canonical(&mut self) {
        let mut pairs: Vec<_> = self
            .members
            .drain(..)
            .zip(self.provenance.drain(..))
            .collect();
        pairs.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        (self.members, self.provenance) = pairs.into_iter().unzip();
    }
}

fn label(set: &VertexSet) -> String {
    let ids: Vec<String> = set.iter().map(Vertex::to_string).collect();
    format!("[{}]", ids.join(","))
}

/// `Wtd-3pathGI`: [`construct_sol`] over the `k = 3` family.
pub fn wtd_3path(
    inst: &ReoptInstance,
    oracle: &dyn ApproxOracle,
    mode: Mode,
    seed: u64,
) -> Result<CoverSolution> {
    wtd_3path_with(inst, oracle, mode, seed, &ReoptOptions::default())
}

pub fn wtd_3path_with(
    inst: &ReoptInstance,
    oracle: &dyn ApproxOracle,
    mode: Mode,
    seed: u64,
    opts: &ReoptOptions,
) -> Result<CoverSolution> {
    if inst.k() != 3 {
        return Err(Error::InvalidArgument(format!(
            "the 3-path reoptimizer needs k = 3, got {}",
            inst.k()
        )));
    }
    let family = good_family_3pvcp_with(inst.g_new(), inst.patch(), mode, opts)?;
    construct_sol_with(inst, &family, oracle, seed, opts.exec)
}

/// `Wtd-kpath`: [`construct_sol`] over the bounded-degree family, `k >= 4`.
pub fn wtd_kpath(
    inst: &ReoptInstance,
    oracle: &dyn ApproxOracle,
    cap_mode: Mode,
    seed: u64,
) -> Result<CoverSolution> {
    wtd_kpath_with(inst, oracle, cap_mode, seed, &ReoptOptions::default())
}

pub fn wtd_kpath_with(
    inst: &ReoptInstance,
    oracle: &dyn ApproxOracle,
    cap_mode: Mode,
    seed: u64,
    opts: &ReoptOptions,
) -> Result<CoverSolution> {
    if inst.k() < 4 {
        return Err(Error::InvalidArgument(format!(
            "the k-path reoptimizer needs k >= 4, got {}",
            inst.k()
        )));
    }
    let family = construct_f_with(inst.g_new(), &inst.added(), inst.k(), cap_mode, opts)?;
    construct_sol_with(inst, &family, oracle, seed, opts.exec)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::graph::fixtures::set;
    use crate::solvers::{ExactOracle, Objective};

    #[test]
    fn instance_rejects_infeasible_old_solution() {
        let g_old = Graph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        let err = ReoptInstance::new(g_old, InsertionPatch::empty(3), set(&[]), 3).unwrap_err();
        assert_eq!(err, Error::InfeasibleOldSolution { k: 3 });
    }

    #[test]
    fn family_dedups_and_sorts() {
        let mut f = GoodFamily::new();
        assert!(f.push(set(&[3]), "a"));
        assert!(f.push(set(&[1, 2]), "b"));
        assert!(!f.push(set(&[3]), "c"));
        assert!(f.push(set(&[]), "d"));
        f.sort_canonical();
        assert_eq!(f.members(), &[set(&[]), set(&[3]), set(&[1, 2])]);
        assert_eq!(f.provenance(), &["d", "a", "b"]);
    }

    #[test]
    fn wtd_3path_on_weighted_path() {
        let inst = weighted_path();
        let sol = wtd_3path(&inst, &ExactOracle::default(), Mode::Corrected, 0).unwrap();
        assert_eq!(sol.vertices(), &set(&[2]));
        assert_eq!(sol.weight(), 1);
    }

    #[test]
    fn wtd_3path_modes_on_edge_plus_vertex() {
        let inst = edge_plus_vertex();
        let exact = ExactOracle::default();
        let sol = wtd_3path(&inst, &exact, Mode::Corrected, 0).unwrap();
        assert_eq!(sol.vertices(), &set(&[2]));
        assert_eq!(sol.weight(), 1);
        let literal = wtd_3path(&inst, &exact, Mode::PaperLiteral, 0).unwrap();
        assert_eq!(literal.weight(), 5);
    }

    #[test]
    fn wtd_3path_empty_patch() {
        let g_old = Graph::new(vec![2, 1, 2, 1], &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let old = crate::solvers::solve_exact(&g_old, 3, Objective::Weight).unwrap();
        let inst = ReoptInstance::new(
            g_old.clone(),
            InsertionPatch::empty(4),
            old.vertices().clone(),
            3,
        )
        .unwrap();
        let family = good_family_3pvcp(inst.g_new(), inst.patch(), Mode::Corrected).unwrap();
        assert_eq!(family.members(), &[set(&[])]);
        let sol = wtd_3path(&inst, &ExactOracle::default(), Mode::Corrected, 0).unwrap();
        assert_eq!(sol.weight(), old.weight());
    }

    #[test]
    fn wtd_kpath_star_reaches_empty_cover() {
        let inst = unit_path_plus(1, 4, &[]);
        let sol = wtd_kpath(&inst, &ExactOracle::default(), Mode::Corrected, 0).unwrap();
        assert!(sol.vertices().is_empty());
    }

    #[test]
    fn wtd_kpath_path_fixture() {
        let inst = unit_path_plus(2, 4, &[]);
        let sol = wtd_kpath(&inst, &ExactOracle::default(), Mode::Corrected, 0).unwrap();
        assert_eq!(sol.weight(), 1);
        assert_eq!(sol.cardinality(), 1);
        assert!(sol.is_feasible());
    }

    #[test]
    fn reoptimizers_check_k() {
        let inst = unit_path_plus(2, 4, &[]);
        assert!(wtd_3path(&inst, &ExactOracle::default(), Mode::Corrected, 0).is_err());
        let inst = weighted_path();
        assert!(wtd_kpath(&inst, &ExactOracle::default(), Mode::Corrected, 0).is_err());
    }
}
