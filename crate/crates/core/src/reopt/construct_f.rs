use itertools::Itertools;

use super::{label, GoodFamily, Mode, ReoptOptions};
use crate::error::{Error, Result};
use crate::graph::{is_va_connected_mask, max_degree, neighbors_of_mask, Graph, Vertex, VertexSet};
use crate::kpath::{check_order, has_k_path_mask};

/// Per-level vertex cap of a BFS-from-set forest in a k-path-free graph:
/// `c · Δ · (Δ - 1)^max(0, ⌈(k - 5)/2⌉)`.
///
/// For `Δ <= 1` every level of such a forest holds at most `c` vertices, and
/// that is returned instead of the degenerate product.
pub fn level_bound(c: usize, delta: usize, k: usize) -> u64 {
    if delta <= 1 {
        return c as u64;
    }
    let exponent = if k <= 5 { 0 } else { (k - 4) / 2 };
    let growth = ((delta - 1) as u64).saturating_pow(exponent as u32);
    (c as u64)
        .saturating_mul(delta as u64)
        .saturating_mul(growth)
}

/// Good family for `k >= 4` (`Construct-F`).
///
/// Grows a k-path-free, `va`-connected vertex set `V` one BFS level at a
/// time. Each call records `X ∪ L`, where `X` holds the neighbours of `V`
/// that were left out and `L = N(V) - X` is the next frontier. Expansion
/// stops at level `k` in [`Mode::Corrected`] and at level `k - 1` in
/// [`Mode::PaperLiteral`]. Members keep recursion order.
pub fn construct_f(g_new: &Graph, va: &VertexSet, k: usize, mode: Mode) -> Result<GoodFamily> {
    construct_f_with(g_new, va, k, mode, &ReoptOptions::default())
}

pub fn construct_f_with(
    g_new: &Graph,
    va: &VertexSet,
    k: usize,
    mode: Mode,
    opts: &ReoptOptions,
) -> Result<GoodFamily> {
    check_order(k)?;
    g_new.check_set(va)?;
    let builder = Builder {
        g: g_new,
        va_mask: g_new.mask_of(va),
        va,
        k,
        stop_level: match mode {
            Mode::Corrected => k,
            Mode::PaperLiteral => k.saturating_sub(1),
        },
        cap: level_bound(va.len(), max_degree(g_new), k),
        opts,
    };
    let mut state = State {
        family: GoodFamily::new(),
        work: 0,
    };
    builder.expand(
        &mut state,
        VertexSet::new(),
        VertexSet::new(),
        va.clone(),
        1,
    )?;
    Ok(state.family)
}

struct Builder<'a> {
    g: &'a Graph,
    va: &'a VertexSet,
    va_mask: Vec<bool>,
    k: usize,
    stop_level: usize,
    cap: u64,
    opts: &'a ReoptOptions,
}

struct State {
    family: GoodFamily,
    work: u64,
}

impl Builder<'_> {
    fn expand(
        &self,
        state: &mut State,
        x: VertexSet,
        v: VertexSet,
        frontier: VertexSet,
        level: usize,
    ) -> Result<()> {
        if cfg!(debug_assertions) {
            self.check_invariants(&x, &v, &frontier);
        }
        let mut member = x.clone();
        member.extend(frontier.iter().copied());
        let provenance = format!("level={level} v={}", label(&v));
        if state.family.push(member, provenance) && state.family.len() > self.opts.family_cap {
            return Err(Error::LimitExceeded {
                what: "good family size",
                limit: self.opts.family_cap as u64,
            });
        }
        if level >= self.stop_level {
            return Ok(());
        }

        let frontier_list: Vec<Vertex> = frontier.iter().copied().collect();
        let max_size = (self.cap as usize).min(frontier_list.len());
        for size in 1..=max_size {
            for pick in frontier_list.iter().copied().combinations(size) {
                state.work += 1;
                if state.work > self.opts.work_cap {
                    return Err(Error::LimitExceeded {
                        what: "Construct-F candidate subsets",
                        limit: self.opts.work_cap,
                    });
                }
                let mut grown = v.clone();
                grown.extend(pick.iter().copied());
                let inside = self.g.mask_of(&grown);
                if has_k_path_mask(self.g, &inside, self.k)
                    || !is_va_connected_mask(self.g, &inside, &self.va_mask)
                {
                    continue;
                }
                let mut next_x = x.clone();
                next_x.extend(frontier.iter().filter(|u| !pick.contains(u)));
                let next_frontier: VertexSet = neighbors_of_mask(self.g, &inside)
                    .into_iter()
                    .filter(|u| !next_x.contains(u))
                    .collect();
                self.expand(state, next_x, grown, next_frontier, level + 1)?;
            }
        }
        Ok(())
    }

    fn check_invariants(&self, x: &VertexSet, v: &VertexSet, frontier: &VertexSet) {
        debug_assert!(x.is_disjoint(v), "X and V overlap");
        if v.is_empty() {
            debug_assert_eq!(frontier, self.va, "initial frontier must be V_A");
        } else {
            let inside = self.g.mask_of(v);
            let expected: VertexSet = neighbors_of_mask(self.g, &inside)
                .into_iter()
                .filter(|u| !x.contains(u))
                .collect();
            debug_assert_eq!(frontier, &expected, "frontier is not N(V) - X");
            debug_assert!(
                !has_k_path_mask(self.g, &inside, self.k),
                "G[V] has a k-path"
            );
            debug_assert!(
                is_va_connected_mask(self.g, &inside, &self.va_mask),
                "G[V] is not V_A-connected"
            );
        }
    }
}
