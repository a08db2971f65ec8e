//! Configurations of simple closed curves given as ribbon graphs: one node
//! per curve, one edge per transverse intersection, and at every node the
//! cyclic order in which its intersection points occur along the curve.

mod assemblage;
mod induction;
mod propagate;
mod ribbon;

pub use assemblage::{
    assemblage_check, dual_cut_connectivity, route_generation, AssemblageReport, Check, Criterion,
    DualCutReport, Routing, StageRecord,
};
pub use induction::{build_induction_config, CoreKind, InductionConfig};
pub use propagate::{propagate_admissibility, LinearConstraint, Propagation};
pub use ribbon::{FaceTrace, FaceWinding};

use crate::spin_core::SurfaceSig;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("duplicate curve name {0:?}")]
    DuplicateName(String),
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("edge {0} joins a curve to itself")]
    SelfIntersection(usize),
    #[error("edge {edge} refers to a missing curve")]
    DanglingEdge { edge: usize },
    #[error("cyclic order at {node:?} is not a permutation of its intersections")]
    BadCyclicOrder { node: String },
    #[error("crossing signs must be +1 or -1 (edge {0})")]
    BadSign(usize),
    #[error("configuration has {0} components")]
    Disconnected(usize),
    #[error("curve {0:?} has no winding label")]
    MissingWinding(String),
    #[error("curve {0:?} has no homology tag of the ambient dimension")]
    MissingHomology(String),
    #[error("no ambient surface declared")]
    MissingAmbient,
    #[error("intersection graph has a cycle")]
    NotArboreal,
    #[error("no assemblage order declared")]
    MissingOrder,
    #[error("stage {stage} ({curve}): {reason}")]
    Stage {
        stage: usize,
        curve: String,
        reason: String,
    },
    #[error("constraint system is inconsistent")]
    Inconsistent,
    #[error("face winding is not an integer")]
    NonIntegral,
    #[error("infeasible induction data: {0}")]
    Infeasible(String),
    #[error("no generation criterion applies")]
    NoCriterion(Vec<Check>),
    #[error("{0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveNode {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub winding: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homology: Option<Vec<i64>>,
}

impl CurveNode {
    pub fn named(name: impl Into<String>) -> Self {
        CurveNode {
            name: name.into(),
            winding: None,
            homology: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodInvariants {
    pub euler: i64,
    pub boundary_components: usize,
    pub genus: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFlags {
    pub simple: bool,
    pub arboreal: bool,
    pub e_arboreal: bool,
    pub filling_possible: bool,
}

/// A curve configuration with ribbon structure.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct RibbonConfig {
    pub nodes: Vec<CurveNode>,
    /// Each edge joins its first curve to its second.
    pub edges: Vec<[usize; 2]>,
    /// Edge indices around each node.
    pub cyclic: Vec<Vec<usize>>,
    /// Local orientation of each crossing, +1 or -1.
    pub signs: Vec<i8>,
    /// Assemblage order as node indices.
    pub order: Option<Vec<usize>>,
    /// Length of the core prefix of `order`.
    pub core: Option<usize>,
    /// Curves declared to meet the current subsurface in a single arc.
    pub enters_once: BTreeSet<usize>,
    pub ambient: Option<SurfaceSig>,
}

/// Serialized form, with curves referred to by name.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawConfig {
    nodes: Vec<CurveNode>,
    edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    cyclic: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signs: Option<Vec<i8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    core: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    enters_once: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ambient: Option<SurfaceSig>,
}

impl TryFrom<RawConfig> for RibbonConfig {
    type Error = ConfigError;

    fn try_from(raw: RawConfig) -> Result<Self, ConfigError> {
        let mut c = RibbonConfig::default();
        for node in raw.nodes {
            c.push_node(node)?;
        }
        for [a, b] in &raw.edges {
            let (a, b) = (c.index_of(a)?, c.index_of(b)?);
            c.add_crossing(a, b);
        }
        for (name, order) in raw.cyclic {
            let idx = c.index_of(&name)?;
            c.cyclic[idx] = order;
        }
        if let Some(signs) = raw.signs {
            c.signs = signs;
        }
        c.order = raw
            .order
            .map(|o| o.iter().map(|n| c.index_of(n)).collect())
            .transpose()?;
        c.core = raw.core;
        c.enters_once = raw
            .enters_once
            .iter()
            .map(|n| c.index_of(n))
            .collect::<Result<_, _>>()?;
        c.ambient = raw.ambient;
        c.validate()?;
        Ok(c)
    }
}

impl From<RibbonConfig> for RawConfig {
    fn from(c: RibbonConfig) -> Self {
        let name = |i: usize| c.nodes[i].name.clone();
        let default_cyclic = c.default_cyclic();
        RawConfig {
            edges: c.edges.iter().map(|&[a, b]| [name(a), name(b)]).collect(),
            cyclic: c
                .cyclic
                .iter()
                .enumerate()
                .filter(|(i, order)| **order != default_cyclic[*i])
                .map(|(i, order)| (name(i), order.clone()))
                .collect(),
            signs: c.signs.iter().any(|&s| s != 1).then(|| c.signs.clone()),
            order: c
                .order
                .as_ref()
                .map(|o| o.iter().map(|&i| name(i)).collect()),
            core: c.core,
            enters_once: c.enters_once.iter().map(|&i| name(i)).collect(),
            ambient: c.ambient,
            nodes: c.nodes,
        }
    }
}

impl RibbonConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig =
            serde_json::from_str(text).map_err(|e| ConfigError::Json(e.to_string()))?;
        RibbonConfig::try_from(raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configurations always serialize")
    }

    fn push_node(&mut self, node: CurveNode) -> Result<usize, ConfigError> {
        if self.nodes.iter().any(|n| n.name == node.name) {
            return Err(ConfigError::DuplicateName(node.name));
        }
        self.nodes.push(node);
        self.cyclic.push(Vec::new());
        Ok(self.nodes.len() - 1)
    }

    /// Add a curve; panics on a duplicate name.
    pub fn add_curve(&mut self, name: impl Into<String>, winding: Option<i64>) -> usize {
        let node = CurveNode {
            name: name.into(),
            winding,
            homology: None,
        };
        self.push_node(node).expect("curve names are unique")
    }

    /// Add a positive crossing, appended to the end of both cyclic orders.
    pub fn add_crossing(&mut self, a: usize, b: usize) -> usize {
        let e = self.edges.len();
        self.edges.push([a, b]);
        self.signs.push(1);
        if a < self.cyclic.len() {
            self.cyclic[a].push(e);
        }
        if b < self.cyclic.len() && b != a {
            self.cyclic[b].push(e);
        }
        e
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ConfigError> {
        self.nodes
            .iter()
            .position(|n| n.name == name)
            .ok_or_else(|| ConfigError::UnknownCurve(name.to_string()))
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.nodes[idx].name
    }

    fn default_cyclic(&self) -> Vec<Vec<usize>> {
        let mut orders = vec![Vec::new(); self.nodes.len()];
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            orders[a].push(e);
            if b != a {
                orders[b].push(e);
            }
        }
        orders
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let n = self.nodes.len();
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(ConfigError::DanglingEdge { edge: e });
            }
            if a == b {
                return Err(ConfigError::SelfIntersection(e));
            }
        }
        if self.signs.len() != self.edges.len() {
            return Err(ConfigError::BadSign(self.signs.len().min(self.edges.len())));
        }
        if let Some(e) = self.signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(ConfigError::BadSign(e));
        }
        let expected = self.default_cyclic();
        for (i, order) in self.cyclic.iter().enumerate() {
            let mut got = order.clone();
            got.sort_unstable();
            if got != expected[i] {
                return Err(ConfigError::BadCyclicOrder {
                    node: self.nodes[i].name.clone(),
                });
            }
        }
        if let Some(order) = &self.order {
            let distinct: BTreeSet<_> = order.iter().collect();
            if distinct.len() != order.len() || self.core.is_some_and(|k| k > order.len()) {
                return Err(ConfigError::Stage {
                    stage: 0,
                    curve: String::new(),
                    reason: "order repeats a curve".into(),
                });
            }
        }
        Ok(())
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.cyclic[v]
            .iter()
            .map(|&e| self.other_end(e, v))
            .collect()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Connected components of the intersection graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut comp = vec![start];
            label[start] = out.len();
            let mut i = 0;
            while i < comp.len() {
                for w in self.neighbors(comp[i]) {
                    if label[w] == usize::MAX {
                        label[w] = out.len();
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The sub-configuration on `keep` (in that order), with cyclic orders restricted.
    pub fn restrict(&self, keep: &[usize]) -> RibbonConfig {
        let position: BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut sub = RibbonConfig::default();
        for &v in keep {
            sub.push_node(self.nodes[v].clone())
                .expect("names stay unique");
        }
        let mut edge_map = BTreeMap::new();
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            if let (Some(&pa), Some(&pb)) = (position.get(&a), position.get(&b)) {
                let new = sub.add_crossing(pa, pb);
                sub.signs[new] = self.signs[e];
                edge_map.insert(e, new);
            }
        }
        for (i, &v) in keep.iter().enumerate() {
            sub.cyclic[i] = self.cyclic[v]
                .iter()
                .filter_map(|e| edge_map.get(e).copied())
                .collect();
        }
        sub.ambient = self.ambient;
        sub
    }

    fn has_parallel_edges(&self) -> bool {
        let mut pairs = BTreeSet::new();
        self.edges
            .iter()
            .any(|&[a, b]| !pairs.insert((a.min(b), a.max(b))))
    }

    /// Intersection graph is a forest with at most one crossing per pair.
    pub fn is_forest(&self) -> bool {
        !self.has_parallel_edges() && self.edges.len() + self.components().len() == self.nodes.len()
    }

    pub fn graph_tests(&self) -> GraphFlags {
        let simple = !self.has_parallel_edges();
        let connected = self.components().len() == 1;
        let arboreal = simple && connected && self.edges.len() + 1 == self.nodes.len();
        let e_arboreal = arboreal && self.contains_e6_tree();
        let filling_possible = connected
            && match (self.ambient, self.neighborhood_invariants()) {
                (None, _) => true,
                (Some(amb), Ok(inv)) => {
                    inv.genus == amb.genus && inv.boundary_components >= amb.boundary
                }
                (Some(_), Err(_)) => false,
            };
        GraphFlags {
            simple,
            arboreal,
            e_arboreal,
            filling_possible,
        }
    }

    /// In a tree, an induced E6 exists iff some vertex has three branches of
    /// depths at least 1, 2 and 2.
    fn contains_e6_tree(&self) -> bool {
        (0..self.nodes.len()).any(|v| {
            let mut depths: Vec<usize> = self
                .neighbors(v)
                .into_iter()
                .map(|w| self.branch_depth(w, v))
                .collect();
            depths.sort_unstable_by(|a, b| b.cmp(a));
            depths.len() >= 3 && depths[1] >= 2 && depths[2] >= 1
        })
    }

    /// Number of vertices on the longest path starting at `start` away from `from`.
    fn branch_depth(&self, start: usize, from: usize) -> usize {
        let mut best = 1;
        let mut stack = vec![(start, from, 1)];
        while let Some((v, parent, depth)) = stack.pop() {
            best = best.max(depth);
            for w in self.neighbors(v) {
                if w != parent {
                    stack.push((w, v, depth + 1));
                }
            }
        }
        best
    }

    /// Euler characteristic, boundary count and genus of the regular neighborhood.
    pub fn neighborhood_invariants(&self) -> Result<NeighborhoodInvariants, ConfigError> {
        let parts = self.component_invariants();
        match parts.as_slice() {
            [single] => Ok(*single),
            _ => Err(ConfigError::Disconnected(parts.len())),
        }
    }

    /// Invariants of each connected component, in component order.
    pub fn component_invariants(&self) -> Vec<NeighborhoodInvariants> {
        let faces = self.trace_faces();
        self.components()
            .iter()
            .map(|comp| {
                let members: BTreeSet<usize> = comp.iter().copied().collect();
                let crossings = self
                    .edges
                    .iter()
                    .filter(|[a, _]| members.contains(a))
                    .count() as i64;
                let boundary = faces
                    .iter()
                    .filter(|f| members.contains(&f.curves[0]))
                    .count();
                let euler = -crossings;
                let twice_genus = 2 - euler - boundary as i64;
                debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
                NeighborhoodInvariants {
                    euler,
                    boundary_components: boundary,
                    genus: (twice_genus / 2) as usize,
                }
            })
            .collect()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn chain(len: usize) -> RibbonConfig {
        let mut c = RibbonConfig::default();
        for i in 0..len {
            c.add_curve(format!("c{}", i + 1), Some(0));
        }
        for i in 1..len {
            c.add_crossing(i - 1, i);
        }
        c.order = Some((0..len).collect());
        c
    }

    /// Arms of lengths 1, 2, 2 around `c3`.
    pub fn e6() -> RibbonConfig {
        let mut c = chain(5);
        let t = c.add_curve("c6", Some(0));
        c.add_crossing(2, t);
        c.order = Some((0..6).collect());
        c
    }
}
