use super::{GoodFamily, ReoptInstance};
use crate::error::{Error, Result};
use crate::graph::{induced_by_mask, VertexSet};
use crate::par::{self, Exec};
use crate::solvers::{ApproxOracle, CoverSolution};

/// `Construct-Sol`. For each member `F`, compares `OPT(G_O) ∪ F` with
/// `A(G_N[V_O - F]) ∪ F` and keeps the lighter (ties to the first); the
/// answer is the lightest branch, ties to the lowest index.
pub fn construct_sol(
    inst: &ReoptInstance,
    family: &GoodFamily,
    oracle: &dyn ApproxOracle,
    seed: u64,
) -> Result<CoverSolution> {
    construct_sol_with(inst, family, oracle, seed, Exec::default())
}

pub fn construct_sol_with(
    inst: &ReoptInstance,
    family: &GoodFamily,
    oracle: &dyn ApproxOracle,
    seed: u64,
    exec: Exec,
) -> Result<CoverSolution> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let branches = par::map_range(exec, family.len(), |i| {
        branch(inst, i, &family.members()[i], oracle, seed)
    });
    let mut best: Option<CoverSolution> = None;
    for candidate in branches {
        let candidate = candidate?;
        if best
            .as_ref()
            .is_none_or(|b| candidate.weight() < b.weight())
        {
            best = Some(candidate);
        }
    }
    Ok(best.expect("family is nonempty"))
}

fn branch(
    inst: &ReoptInstance,
    index: usize,
    member: &VertexSet,
    oracle: &dyn ApproxOracle,
    seed: u64,
) -> Result<CoverSolution> {
    let g = inst.g_new();
    let k = inst.k();
    let mut with_old = inst.old_opt().vertices().clone();
    with_old.extend(member.iter().copied());
    let first = CoverSolution::new(g, k, with_old);
    if !first.is_feasible() {
        return Err(Error::FamilyPropertyViolated {
            index,
            candidate: "old optimum plus member",
        });
    }

    let keep: Vec<bool> = g
        .vertices()
        .map(|v| !inst.is_added(v) && !member.contains(&v))
        .collect();
    let rest = induced_by_mask(g, &keep);
    let sub = oracle.solve(&rest.graph, k, seed)?;
    let mut with_oracle = rest.lift(sub.vertices());
    with_oracle.extend(member.iter().copied());
    let second = CoverSolution::new(g, k, with_oracle);
    if !second.is_feasible() {
        return Err(Error::FamilyPropertyViolated {
            index,
            candidate: "oracle cover plus member",
        });
    }

    Ok(if second.weight() < first.weight() {
        second
    } else {
        first
    })
}
