use itertools::Itertools;

use super::{label, GoodFamily, Mode, ReoptOptions};
use crate::error::{Error, Result};
use crate::graph::{Graph, InsertionPatch, Vertex, VertexSet};
use crate::kpath::has_k_path_mask;

/// Good family for `k = 3` (the `Wtd-3pathGI` construction).
///
/// For every 3-path cover `X₀` of `G_A`, the surviving inserted vertices
/// form isolated vertices and isolated edges. Old-side neighbours of the
/// attached isolated edges are forced; each attached isolated vertex keeps at
/// most one old neighbour `Y'` and the rest of `Y` is taken, together with
/// the old-side neighbours of `Y'`.
///
/// `Y` is the old-side neighbourhood of the attached isolated vertices in
/// [`Mode::Corrected`], and all of `N_{G_N}(V_A) - X` in
/// [`Mode::PaperLiteral`]. "Old-side neighbours of S" means `N_{G_N}(S) ∩ V_O`.
/// Members come back sorted by size, then lexicographically.
pub fn good_family_3pvcp(g_new: &Graph, patch: &InsertionPatch, mode: Mode) -> Result<GoodFamily> {
    good_family_3pvcp_with(g_new, patch, mode, &ReoptOptions::default())
}

pub fn good_family_3pvcp_with(
    g_new: &Graph,
    patch: &InsertionPatch,
    mode: Mode,
    opts: &ReoptOptions,
) -> Result<GoodFamily> {
    let old_n = patch.old_vertex_count();
    let added: Vec<Vertex> = patch.added().iter().map(|&(v, _)| v).collect();
    if added.len() > opts.max_added {
        return Err(Error::LimitExceeded {
            what: "inserted vertices for the 3-path family",
            limit: opts.max_added as u64,
        });
    }
    if g_new.vertex_count() != old_n + added.len() {
        return Err(Error::InvalidArgument(
            "patch does not match the new graph".into(),
        ));
    }
    let n = g_new.vertex_count();
    let old_side = |vs: &mut dyn Iterator<Item = Vertex>| -> VertexSet {
        let mut out = VertexSet::new();
        for v in vs {
            out.extend(g_new.neighbors(v).iter().filter(|&&u| u < old_n));
        }
        out
    };

    let mut family = GoodFamily::new();
    let mut work = 0u64;
    for size in 0..=added.len() {
        for x0 in added.iter().copied().combinations(size) {
            let mut rest = vec![false; n];
            for &v in &added {
                rest[v] = true;
            }
            x0.iter().for_each(|&v| rest[v] = false);
            if has_k_path_mask(g_new, &rest, 3) {
                continue;
            }
            let rest_degree = |v: Vertex| g_new.neighbors(v).iter().filter(|&&u| rest[u]).count();
            let attached = |v: Vertex| g_new.neighbors(v).iter().any(|&u| u < old_n);

            let survivors: Vec<Vertex> = added.iter().copied().filter(|&v| rest[v]).collect();
            let isolated: Vec<Vertex> = survivors
                .iter()
                .copied()
                .filter(|&v| rest_degree(v) == 0 && attached(v))
                .collect();
            // both endpoints of an isolated edge have rest-degree 1; each edge
            // is visited from its smaller endpoint
            let edges: Vec<(Vertex, Vertex)> = survivors
                .iter()
                .copied()
                .filter(|&u| rest_degree(u) == 1)
                .filter_map(|u| {
                    let v = *g_new.neighbors(u).iter().find(|&&w| rest[w])?;
                    (u < v && rest_degree(v) == 1 && (attached(u) || attached(v))).then_some((u, v))
                })
                .collect();

            let mut x: VertexSet = x0.iter().copied().collect();
            x.extend(old_side(&mut edges.iter().flat_map(|&(u, v)| [u, v])));

            let y: Vec<Vertex> = match mode {
                Mode::Corrected => old_side(&mut isolated.iter().copied())
                    .into_iter()
                    .filter(|u| !x.contains(u))
                    .collect(),
                Mode::PaperLiteral => {
                    let mut all = VertexSet::new();
                    for &v in &added {
                        all.extend(g_new.neighbors(v).iter().filter(|&&u| u < old_n));
                    }
                    all.into_iter().filter(|u| !x.contains(u)).collect()
                }
            };

            for kept_size in 0..=isolated.len().min(y.len()) {
                for kept in y.iter().copied().combinations(kept_size) {
                    work += 1;
                    if work > opts.work_cap {
                        return Err(Error::LimitExceeded {
                            what: "3-path family candidates",
                            limit: opts.work_cap,
                        });
                    }
                    // Y - Y' covers G_N[V_I ∪ Y] iff G_N[V_I ∪ Y'] is 3-path free
                    let mut alive = vec![false; n];
                    isolated.iter().chain(&kept).for_each(|&v| alive[v] = true);
                    if has_k_path_mask(g_new, &alive, 3) {
                        continue;
                    }
                    let kept_set: VertexSet = kept.iter().copied().collect();
                    let mut member = x.clone();
                    member.extend(y.iter().filter(|u| !kept_set.contains(u)));
                    member.extend(old_side(&mut kept.iter().copied()));
                    let provenance = format!(
                        "x0={} y'={}",
                        label(&x0.iter().copied().collect()),
                        label(&kept_set)
                    );
                    if family.push(member, provenance) && family.len() > opts.family_cap {
                        return Err(Error::LimitExceeded {
                            what: "good family size",
                            limit: opts.family_cap as u64,
                        });
                    }
                }
            }
        }
    }
    family.sort_canonical();
    Ok(family)
}
