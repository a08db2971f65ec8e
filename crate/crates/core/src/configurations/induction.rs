//! The curve configuration used to extend an assemblage over a surface of
//! genus `g` with `N` boundary components of winding `-r-1`.
//!
//! Layout: circles `o0..o{g-1}` joined by link curves `s{p}_{j}`, plus the
//! exceptional segment `t1` on top of circle 1. These `2g` curves form the
//! core. Attachment segments `t{c}` sit on top of circles `kr+1` and `b{c}`
//! on the bottom of circles `kr-1`; there are `N-1` of them.
//!
//! The attachment pattern is a reconstruction from schematic pictures. It is
//! validated by tracing: with every curve admissible, each of the `N`
//! boundary components has winding `-r-1`.

use super::{propagate_admissibility, ConfigError, LinearConstraint, RibbonConfig};
use crate::spin_core::SurfaceSig;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoreKind {
    /// The last circle hangs off its immediate left neighbour.
    A,
    /// The last circle hangs off the circle two to its left.
    B,
}

impl std::str::FromStr for CoreKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A" | "a" => Ok(CoreKind::A),
            "B" | "b" => Ok(CoreKind::B),
            other => Err(format!("unknown configuration type {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionConfig {
    pub genus: usize,
    pub r: i64,
    pub sheets: usize,
    pub kind: CoreKind,
    pub config: RibbonConfig,
    /// `r = 2`, type B, odd genus: the modified attachment is in use.
    pub special_case: bool,
    /// Attachments placed off their default circle.
    pub relocated: Vec<String>,
    /// Attachment labels derived by propagation from the boundary windings.
    pub propagated: Vec<String>,
    pub boundary_windings: Vec<i64>,
}

// Positions around a circle, in quarter turns times four.
const LEFT: u32 = 0;
const TOP: u32 = 4;
const RIGHT: u32 = 8;
const BOTTOM: u32 = 12;

struct Layout {
    config: RibbonConfig,
    // (node, slot, edge) triples, sorted into cyclic orders at the end.
    slots: Vec<(usize, u32, usize)>,
}

impl Layout {
    fn curve(&mut self, name: String, winding: Option<i64>) -> usize {
        self.config.add_curve(name, winding)
    }

    fn link(&mut self, a: usize, b: usize, slot_a: u32, slot_b: u32) {
        let e = self.config.add_crossing(a, b);
        self.slots.push((a, slot_a, e));
        self.slots.push((b, slot_b, e));
    }

    fn finish(mut self) -> RibbonConfig {
        self.slots.sort_by_key(|&(node, slot, e)| (node, slot, e));
        for order in &mut self.config.cyclic {
            order.clear();
        }
        for (node, _, e) in self.slots {
            self.config.cyclic[node].push(e);
        }
        self.config
    }
}

pub fn build_induction_config(
    genus: usize,
    r: i64,
    sheets: usize,
    kind: CoreKind,
) -> Result<InductionConfig, ConfigError> {
    let g = genus;
    if g < 3 {
        return Err(ConfigError::Infeasible(format!("genus {g} is below 3")));
    }
    if r < 1 {
        return Err(ConfigError::Infeasible(format!("r = {r} is below 1")));
    }
    if sheets < 2 {
        return Err(ConfigError::Infeasible(format!("N = {sheets} is below 2")));
    }
    if sheets as i64 * r != 2 * g as i64 - 2 {
        return Err(ConfigError::Infeasible(format!(
            "N r = {} differs from 2g - 2 = {}",
            sheets as i64 * r,
            2 * g - 2
        )));
    }
    if kind == CoreKind::B && r % 2 == 1 {
        return Err(ConfigError::Infeasible("type B needs even r".into()));
    }
    if kind == CoreKind::B && g < 4 {
        // With three circles the split link would turn the core into a path.
        return Err(ConfigError::Infeasible(
            "type B needs genus at least 4".into(),
        ));
    }
    let ru = r as usize;

    let mut tops: Vec<usize> = (1..).map(|k| k * ru + 1).take_while(|&c| c < g).collect();
    let mut bottoms: Vec<usize> = (1..=sheets / 2).map(|k| k * ru - 1).collect();
    let split_parent = g - 3;
    let split_slot = match (r, tops.last(), bottoms.last()) {
        (2, _, _) => 6,
        (_, Some(t), Some(b)) if t > b => 10,
        _ => 6,
    };

    let mut layout = Layout {
        config: RibbonConfig::default(),
        slots: Vec::new(),
    };
    let circles: Vec<usize> = (0..g)
        .map(|j| layout.curve(format!("o{j}"), Some(0)))
        .collect();
    // Assemblage order: each link right before the circle it reaches.
    let mut order = vec![circles[0]];
    for j in 1..g {
        let (parent, slot) = match kind {
            CoreKind::B if j == g - 1 => (split_parent, split_slot),
            _ => (j - 1, RIGHT),
        };
        let s = layout.curve(format!("s{parent}_{j}"), Some(0));
        layout.link(circles[parent], s, slot, LEFT);
        layout.link(s, circles[j], TOP, LEFT);
        order.extend([s, circles[j]]);
    }
    let t1 = layout.curve("t1".into(), Some(0));
    layout.link(circles[1], t1, TOP, LEFT);
    order.push(t1);
    let core_len = layout.config.nodes.len();

    let special_case = r == 2 && kind == CoreKind::B && g % 2 == 1;
    let mut relocated = Vec::new();
    let mut extra: Vec<(String, usize, u32)> = Vec::new();
    if r == 2 && kind == CoreKind::B {
        if g % 2 == 1 {
            bottoms.retain(|&c| c != g - 2);
            extra.push((format!("b{}", g - 2), g - 1, BOTTOM));
            relocated.push(format!("b{}", g - 2));
        } else {
            tops.retain(|&c| c != g - 1);
            extra.push((format!("t{}", g - 1), split_parent, 7));
            relocated.push(format!("t{}", g - 1));
        }
    }
    let mut attachments: Vec<(String, usize, u32)> =
        tops.iter().map(|&c| (format!("t{c}"), c, TOP)).collect();
    attachments.extend(bottoms.iter().map(|&c| (format!("b{c}"), c, BOTTOM)));
    attachments.extend(extra);
    for (name, circle, slot) in attachments {
        let node = layout.curve(name, None);
        layout.link(circles[circle], node, slot, LEFT);
        order.push(node);
    }

    let mut config = layout.finish();
    let total = config.nodes.len();
    config.order = Some(order);
    config.core = Some(core_len);
    config.ambient = Some(SurfaceSig::new(g, sheets, 0).expect("bordered signature"));
    if total != 2 * g + sheets - 1 {
        return Err(ConfigError::Infeasible(format!(
            "layout produced {total} curves"
        )));
    }

    // Every boundary component must carry winding -r-1.
    let constraints: Vec<LinearConstraint> = config
        .trace_faces()
        .into_iter()
        .map(|f| LinearConstraint {
            terms: f
                .coeffs
                .iter()
                .map(|(&c, &k)| (config.nodes[c].name.clone(), k))
                .collect(),
            value: -r - 1 - f.offset,
        })
        .collect();
    let propagation = propagate_admissibility(&config, &constraints)?;
    if !propagation.underdetermined.is_empty() {
        return Err(ConfigError::Infeasible(format!(
            "labels not forced: {:?}",
            propagation.underdetermined
        )));
    }
    let config = propagation.config;
    let boundary_windings: Vec<i64> = config.face_windings()?.iter().map(|f| f.winding).collect();
    if boundary_windings.len() != sheets || boundary_windings.iter().any(|&w| w != -r - 1) {
        return Err(ConfigError::Infeasible(format!(
            "boundary windings {boundary_windings:?}"
        )));
    }
    if config.nodes.iter().any(|n| n.winding != Some(0)) {
        return Err(ConfigError::Infeasible(
            "an attachment is not admissible".into(),
        ));
    }
    Ok(InductionConfig {
        genus: g,
        r,
        sheets,
        kind,
        config,
        special_case,
        relocated,
        propagated: propagation.assigned,
        boundary_windings,
    })
}
