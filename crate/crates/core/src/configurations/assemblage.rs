//! Stagewise assemblage bookkeeping, cut connectivity and the choice of
//! generation criterion.

use super::{ConfigError, NeighborhoodInvariants, RibbonConfig};
use crate::linalg::rank_f2;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub curve: String,
    /// Intersections with curves added earlier.
    pub meets: usize,
    pub invariants: NeighborhoodInvariants,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssemblageReport {
    pub ok: bool,
    /// Genus of the core neighborhood.
    pub h: usize,
    pub type_e: bool,
    pub stages: Vec<StageRecord>,
}

/// Walk the declared order, checking that each curve after the first
/// attaches exactly one handle to the subsurface built so far.
///
/// A curve qualifies when it meets earlier curves exactly once, or when it is
/// declared enters-once and its intersections with earlier curves are
/// consecutive along it. In the second case the regions cut off between
/// consecutive intersections are counted as part of the subsurface.
///
/// A nonzero base `(genus, boundaries)` is the expected type of the core
/// neighborhood; `(0, 0)` starts from the empty surface with no expectation.
pub fn assemblage_check(
    c: &RibbonConfig,
    base_genus: usize,
    base_boundaries: usize,
) -> Result<AssemblageReport, ConfigError> {
    let order = c.order.clone().ok_or(ConfigError::MissingOrder)?;
    let core_len = c.core.unwrap_or(order.len());
    let stage_error = |stage: usize, reason: String| ConfigError::Stage {
        stage,
        curve: c.name(order[stage]).to_string(),
        reason,
    };

    let mut stages: Vec<StageRecord> = Vec::new();
    let mut absorbed = 0usize;
    for (i, &v) in order.iter().enumerate() {
        let placed: BTreeSet<usize> = order[..i].iter().copied().collect();
        let positions: Vec<usize> = c.cyclic[v]
            .iter()
            .enumerate()
            .filter(|(_, &e)| placed.contains(&c.other_end(e, v)))
            .map(|(k, _)| k)
            .collect();
        let meets = positions.len();
        if i > 0 {
            if meets == 0 {
                return Err(stage_error(i, "meets no earlier curve".into()));
            }
            if meets > 1 {
                if !c.enters_once.contains(&v) {
                    return Err(stage_error(
                        i,
                        format!("meets earlier curves {meets} times"),
                    ));
                }
                if !cyclically_consecutive(&positions, c.cyclic[v].len()) {
                    return Err(stage_error(
                        i,
                        "intersections with the subsurface are not consecutive".into(),
                    ));
                }
                absorbed += meets - 1;
            }
        }
        let prefix = c.restrict(&order[..=i]);
        let mut inv = prefix.neighborhood_invariants()?;
        inv.euler += absorbed as i64;
        inv.boundary_components -= absorbed;
        if let Some(prev) = stages.last() {
            let prev = prev.invariants;
            if inv.euler != prev.euler - 1 {
                return Err(stage_error(
                    i,
                    format!("euler characteristic went {} -> {}", prev.euler, inv.euler),
                ));
            }
            debug_assert!(inv.genus >= prev.genus);
            debug_assert_eq!(
                inv.boundary_components.abs_diff(prev.boundary_components),
                1
            );
        }
        stages.push(StageRecord {
            curve: c.name(v).to_string(),
            meets,
            invariants: inv,
        });
    }

    let core_order = &order[..core_len];
    let core = c.restrict(core_order);
    let core_inv = core.neighborhood_invariants()?;
    if (base_genus, base_boundaries) != (0, 0)
        && (core_inv.genus, core_inv.boundary_components) != (base_genus, base_boundaries)
    {
        return Err(ConfigError::Stage {
            stage: core_len.saturating_sub(1),
            curve: core_order.last().map(|&v| c.name(v).to_string()).unwrap_or_default(),
            reason: format!(
                "core neighborhood has genus {} with {} boundaries, expected {base_genus} with {base_boundaries}",
                core_inv.genus, core_inv.boundary_components
            ),
        });
    }
    Ok(AssemblageReport {
        ok: true,
        h: core_inv.genus,
        type_e: core.graph_tests().e_arboreal,
        stages,
    })
}

fn cyclically_consecutive(positions: &[usize], len: usize) -> bool {
    if positions.len() == len {
        return true;
    }
    // Consecutive on a cycle iff exactly one gap separates the last from the first.
    let gaps = positions
        .iter()
        .zip(positions.iter().cycle().skip(1))
        .filter(|(a, b)| (**b + len - **a) % len != 1)
        .count();
    gaps == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCutReport {
    pub components: usize,
    pub connected: bool,
    /// Rank over F2 of the curve classes in the capped-off surface.
    pub class_rank: usize,
}

impl RibbonConfig {
    /// Count components of the ambient surface cut along every curve.
    ///
    /// For a forest of curves the cycles of the union are spanned by the
    /// curves themselves, so the count is `1 + n - rank`, with ranks taken in
    /// the surface obtained by capping the boundary.
    pub fn cut_report(&self) -> Result<DualCutReport, ConfigError> {
        let ambient = self.ambient.ok_or(ConfigError::MissingAmbient)?;
        if !self.is_forest() {
            return Err(ConfigError::NotArboreal);
        }
        let dim = ambient.dim();
        let closed_part = 2 * ambient.genus;
        let rows = self
            .nodes
            .iter()
            .map(|n| match &n.homology {
                Some(h) if h.len() == dim => Ok(h[..closed_part].to_vec()),
                _ => Err(ConfigError::MissingHomology(n.name.clone())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let class_rank = rank_f2(&rows);
        let components = 1 + self.nodes.len() - class_rank;
        Ok(DualCutReport {
            components,
            connected: components == 1,
            class_rank,
        })
    }
}

pub fn dual_cut_connectivity(c: &RibbonConfig) -> Result<bool, ConfigError> {
    Ok(c.cut_report()?.connected)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Assemblage of type E with core genus at least 5.
    #[serde(rename = "assemblage")]
    AssemblageGenset,
    /// Subsurface of constant signature -2 extended by curves that enter once.
    Gencriterion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Criterion::AssemblageGenset => "assemblage",
            Criterion::Gencriterion => "gencriterion",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Routing {
    pub criterion: Criterion,
    pub h: usize,
    pub checklist: Vec<Check>,
}

/// Pick the generation criterion for a configuration `sub` filling the
/// subsurface, inside an ambient surface of genus `ambient_genus`, extended by
/// further curves whose enters-once flags are `later_enter_once`.
pub fn route_generation(
    g_c: usize,
    sub: &RibbonConfig,
    ambient_genus: usize,
    later_enter_once: &[bool],
) -> Result<Routing, ConfigError> {
    let core_len = sub.core.unwrap_or(sub.nodes.len());
    let order: Vec<usize> = sub
        .order
        .clone()
        .unwrap_or_else(|| (0..sub.nodes.len()).collect());
    let core = sub.restrict(&order[..core_len]);
    let inv = sub.neighborhood_invariants()?;
    let h = core.neighborhood_invariants()?.genus;
    let type_e = core.graph_tests().e_arboreal;
    let check = |name: &str, holds: bool| Check {
        name: name.to_string(),
        holds,
    };

    let mut checklist = vec![
        check("core genus matches g_C", h == g_c && inv.genus == g_c),
        check("g_C >= 3", g_c >= 3),
        check("core is E-arboreal", type_e),
    ];
    if checklist.iter().all(|c| c.holds) && h >= 5 {
        checklist.push(check("h >= 5", true));
        return Ok(Routing {
            criterion: Criterion::AssemblageGenset,
            h,
            checklist,
        });
    }
    checklist.push(check("h >= 5", h >= 5));
    let windings = sub.face_windings();
    let constant_minus_two = windings
        .as_ref()
        .is_ok_and(|w| w.iter().all(|f| f.winding == -2));
    let hypotheses = vec![
        check("ambient genus >= 5", ambient_genus >= 5),
        check("subsurface genus >= 2", inv.genus >= 2),
        check("constant signature -2", constant_minus_two),
        check(
            "later curves enter and exit once",
            later_enter_once.iter().all(|&b| b),
        ),
    ];
    let usable = checklist[..2].iter().all(|c| c.holds) && hypotheses.iter().all(|c| c.holds);
    checklist.extend(hypotheses);
    if usable {
        Ok(Routing {
            criterion: Criterion::Gencriterion,
            h,
            checklist,
        })
    } else {
        Err(ConfigError::NoCriterion(checklist))
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{chain, e6};
    use super::super::{build_induction_config, CoreKind};
    use super::*;
    use crate::spin_core::SurfaceSig;

    #[test]
    fn chain_assembles_from_empty() {
        for g in 1..=4 {
            let report = assemblage_check(&chain(2 * g), 0, 0).unwrap();
            assert_eq!(report.h, g);
            assert_eq!(report.stages.len(), 2 * g);
        }
        assert!(assemblage_check(&chain(4), 2, 1).is_ok());
        assert!(assemblage_check(&chain(4), 1, 1).is_err());
    }

    #[test]
    fn premature_curve_is_rejected() {
        let mut c = chain(4);
        c.order = Some(vec![0, 2, 1, 3]);
        match assemblage_check(&c, 0, 0) {
            Err(ConfigError::Stage { stage, curve, .. }) => {
                assert_eq!(stage, 1);
                assert_eq!(curve, "c3");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn enters_once_handle() {
        // A curve crossing two adjacent chain curves in a row.
        let mut c = chain(3);
        let x = c.add_curve("x", Some(0));
        c.add_crossing(0, x);
        c.add_crossing(1, x);
        c.order = Some(vec![0, 1, 2, 3]);
        c.core = Some(3);
        assert!(assemblage_check(&c, 0, 0).is_err());
        c.enters_once.insert(x);
        let report = assemblage_check(&c, 0, 0).unwrap();
        let last = report.stages.last().unwrap().invariants;
        assert_eq!(last.euler, report.stages[2].invariants.euler - 1);
    }

    #[test]
    fn induction_core_is_type_e() {
        let ind = build_induction_config(5, 1, 8, CoreKind::A).unwrap();
        let report = assemblage_check(&ind.config, 0, 0).unwrap();
        assert_eq!(report.h, 5);
        assert!(report.type_e);
        assert_eq!(
            report.stages.last().unwrap().invariants.boundary_components,
            8
        );
    }

    fn tagged(c: &mut RibbonConfig, genus: usize, tags: &[Vec<i64>]) {
        c.ambient = Some(SurfaceSig::new(genus, 0, 1).unwrap());
        for (n, t) in c.nodes.iter_mut().zip(tags) {
            n.homology = Some(t.clone());
        }
    }

    #[test]
    fn cut_connectivity() {
        let mut two = chain(2);
        tagged(&mut two, 2, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        assert!(dual_cut_connectivity(&two).unwrap());

        // Two disjoint homologous curves separate.
        let mut pair = RibbonConfig::default();
        pair.add_curve("a", None);
        pair.add_curve("b", None);
        tagged(&mut pair, 2, &[vec![1, 0, 0, 0], vec![1, 0, 0, 0]]);
        assert!(!dual_cut_connectivity(&pair).unwrap());

        let mut family = RibbonConfig::default();
        let mut tags = Vec::new();
        for i in 0..3 {
            family.add_curve(format!("a{i}"), None);
            let mut t = vec![0; 6];
            t[2 * i] = 1;
            tags.push(t);
        }
        tagged(&mut family, 3, &tags);
        assert!(dual_cut_connectivity(&family).unwrap());
        assert_eq!(
            dual_cut_connectivity(&chain(2)),
            Err(ConfigError::MissingAmbient)
        );
    }

    #[test]
    fn routing() {
        let big = build_induction_config(5, 1, 8, CoreKind::A).unwrap();
        assert_eq!(
            route_generation(5, &big.config, 9, &[]).unwrap().criterion,
            Criterion::AssemblageGenset
        );
        let quartic = build_induction_config(3, 1, 4, CoreKind::A).unwrap();
        let routed = route_generation(3, &quartic.config, 6, &[true; 6]).unwrap();
        assert_eq!(routed.criterion, Criterion::Gencriterion);
        assert!(route_generation(3, &quartic.config, 6, &[true, false]).is_err());
        assert!(matches!(
            route_generation(2, &chain(4), 6, &[]),
            Err(ConfigError::NoCriterion(_))
        ));
        let _ = e6();
    }
}
