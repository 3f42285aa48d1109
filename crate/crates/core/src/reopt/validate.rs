use std::ops::ControlFlow;

use super::GoodFamily;
use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::kpath::{walk_k_paths, KPath};
use crate::solvers::{enumerate_optima, Objective};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Property1 {
    /// `member` (an index into the family) lies inside `optimum`.
    Holds { member: usize, optimum: VertexSet },
    /// No member fits inside any of these optima.
    Fails { optima: Vec<VertexSet> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    /// First member that misses a k-path through `va`, with the path.
    pub property2_violation: Option<(usize, KPath)>,
    /// Present only when the property-1 check was requested.
    pub property1: Option<Property1>,
}

impl FamilyReport {
    pub fn property2_holds(&self) -> bool {
        self.property2_violation.is_none()
    }

    pub fn property1_holds(&self) -> Option<bool> {
        self.property1
            .as_ref()
            .map(|p| matches!(p, Property1::Holds { .. }))
    }

    pub fn is_good(&self) -> bool {
        self.property2_holds() && self.property1_holds() == Some(true)
    }
}

/// Exact checks of both good-family properties. Property 1 goes through
/// [`enumerate_optima`] and is subject to its size limit.
pub fn validate_good_family(
    g_new: &Graph,
    va: &VertexSet,
    family: &GoodFamily,
    k: usize,
    check_p1: bool,
) -> Result<FamilyReport> {
    g_new.check_set(va)?;
    let va_mask = g_new.mask_of(va);
    let mut property2_violation = None;
    for (i, member) in family.members().iter().enumerate() {
        let alive: Vec<bool> = g_new.vertices().map(|v| !member.contains(&v)).collect();
        let mut missed = None;
        let _ = walk_k_paths(g_new, &alive, k, true, |p| {
            if p.iter().any(|&v| va_mask[v]) {
                missed = Some(p.to_vec());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if let Some(seq) = missed {
            let path = KPath::new(g_new, seq).expect("walk yields valid paths");
            property2_violation = Some((i, path));
            break;
        }
    }

    let property1 = if check_p1 {
        let optima = enumerate_optima(g_new, k, Objective::Weight)?;
        let hit = family.members().iter().enumerate().find_map(|(i, m)| {
            optima
                .iter()
                .find(|o| m.is_subset(o))
                .map(|o| Property1::Holds {
                    member: i,
                    optimum: o.clone(),
                })
        });
        Some(hit.unwrap_or(Property1::Fails { optima }))
    } else {
        None
    };

    Ok(FamilyReport {
        property2_violation,
        property1,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{good_family_3pvcp, Mode};
    use super::*;
    use crate::graph::fixtures::set;

    #[test]
    fn weighted_path_family_is_good() {
        let inst = weighted_path();
        let fam = GoodFamily::from_members([set(&[1]), set(&[2]), set(&[3])]);
        let report = validate_good_family(inst.g_new(), &inst.added(), &fam, 3, true).unwrap();
        assert!(report.is_good());
    }

    #[test]
    fn literal_family_fails_property_1() {
        let inst = edge_plus_vertex();
        let fam = good_family_3pvcp(inst.g_new(), inst.patch(), Mode::PaperLiteral).unwrap();
        let report = validate_good_family(inst.g_new(), &inst.added(), &fam, 3, true).unwrap();
        assert!(report.property2_holds());
        assert_eq!(
            report.property1,
            Some(Property1::Fails {
                optima: vec![set(&[2])]
            })
        );
    }

    #[test]
    fn whole_vertex_set() {
        let inst = weighted_path();
        let fam = GoodFamily::from_members([inst.g_new().all_vertices()]);
        let report = validate_good_family(inst.g_new(), &inst.added(), &fam, 3, true).unwrap();
        assert!(report.property2_holds());
        assert_eq!(report.property1_holds(), Some(false));
    }

    #[test]
    fn property_2_counterexample() {
        let inst = weighted_path();
        let fam = GoodFamily::from_members([set(&[0])]);
        let report = validate_good_family(inst.g_new(), &inst.added(), &fam, 3, false).unwrap();
        let (idx, path) = report.property2_violation.unwrap();
        assert_eq!(idx, 0);
        assert_eq!(path.vertices(), &[1, 2, 3]);
        assert_eq!(report.property1, None);
    }
}
