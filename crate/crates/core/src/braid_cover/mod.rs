//! Simple branched covers of the sphere and the arc systems lifted from them.
//!
//! A cover is described by its local monodromies: one transposition of the
//! sheets per branch point, listed in the angular order of the paths from the
//! basepoint. Sheets are labeled `1..=N`. Arcs are recorded by the branch point
//! they come from and the two sheets they join; everything about the surface
//! is recovered from Euler characteristics and from tracing the ribbon graph
//! whose vertices are the sheets over the basepoint.

mod braid;
mod germ;

pub use braid::{cycle_map, winding_transport, BraidMove, BraidWord};
pub use germ::{
    parse_poly, quotient_dimension, versal_span_check, Conditions, Germ, Poly, SpanReport,
};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("a cover needs at least two sheets, got {0}")]
    TooFewSheets(usize),
    #[error("branch point {index}: ({a} {b}) is not a transposition of 1..={sheets}")]
    BadTransposition {
        index: usize,
        a: usize,
        b: usize,
        sheets: usize,
    },
    #[error("the monodromy group is not transitive")]
    NotTransitive,
    #[error("k - 2N + 2 = {0} is odd")]
    OddBranchCount(i64),
    #[error("k - 2N + 2 = {0} is negative")]
    TooFewBranchPoints(i64),
    #[error("the product of the local monodromies is not the identity")]
    OpenMonodromy,
    #[error("invalid order: {0}")]
    BadOrder(String),
    #[error("{phase} phase, stage {stage} (branch point {branch}): {reason}")]
    Stage {
        phase: Phase,
        stage: usize,
        branch: usize,
        reason: String,
    },
    #[error("branch index {index} out of range for {count} branch points")]
    BranchIndex { index: usize, count: usize },
    #[error("move {index}: half-twist joins points of weights {a} and {b}")]
    WeightViolation { index: usize, a: i64, b: i64 },
    #[error("move {index}: point {point} out of range for {count} points")]
    PointIndex {
        index: usize,
        point: usize,
        count: usize,
    },
    #[error("class of length {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("words with different weights or genus cannot be composed")]
    Mismatch,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Tree,
    Handle,
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Phase::Tree => "tree",
            Phase::Handle => "handle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBranchData", into = "RawBranchData")]
pub struct BranchData {
    sheets: usize,
    transpositions: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawBranchData {
    sheets: usize,
    transpositions: Vec<[usize; 2]>,
}

impl TryFrom<RawBranchData> for BranchData {
    type Error = BraidError;

    fn try_from(raw: RawBranchData) -> Result<Self, BraidError> {
        BranchData::new(
            raw.sheets,
            raw.transpositions
                .into_iter()
                .map(|[a, b]| (a, b))
                .collect(),
        )
    }
}

impl From<BranchData> for RawBranchData {
    fn from(b: BranchData) -> Self {
        RawBranchData {
            sheets: b.sheets,
            transpositions: b.transpositions.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// Union-find over sheet indices `0..n`.
struct Sheets(Vec<usize>);

impl Sheets {
    fn new(n: usize) -> Self {
        Sheets((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            y = std::mem::replace(&mut self.0[y], root);
        }
        root
    }

    /// Merge the classes of `a` and `b`; false if they were already one.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl BranchData {
    /// Validates the sheet count, every transposition, and transitivity.
    pub fn new(sheets: usize, transpositions: Vec<(usize, usize)>) -> Result<Self, BraidError> {
        if sheets < 2 {
            return Err(BraidError::TooFewSheets(sheets));
        }
        for (index, &(a, b)) in transpositions.iter().enumerate() {
            if a == b || a == 0 || b == 0 || a > sheets || b > sheets {
                return Err(BraidError::BadTransposition {
                    index,
                    a,
                    b,
                    sheets,
                });
            }
        }
        let mut uf = Sheets::new(sheets);
        let merges = transpositions
            .iter()
            .filter(|&&(a, b)| uf.union(a - 1, b - 1))
            .count();
        if merges != sheets - 1 {
            return Err(BraidError::NotTransitive);
        }
        Ok(BranchData {
            sheets,
            transpositions,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("branch data serializes")
    }

    pub fn sheets(&self) -> usize {
        self.sheets
    }

    pub fn transpositions(&self) -> &[(usize, usize)] {
        &self.transpositions
    }

    pub fn branch_points(&self) -> usize {
        self.transpositions.len()
    }

    /// Image of each sheet (0-based) under the loop around every branch point in turn.
    pub fn total_monodromy(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.sheets).collect();
        for &(a, b) in &self.transpositions {
            for x in perm.iter_mut() {
                if *x == a - 1 {
                    *x = b - 1;
                } else if *x == b - 1 {
                    *x = a - 1;
                }
            }
        }
        perm
    }

    /// Whether the loop around all branch points is trivial, as it is for a cover of the sphere.
    pub fn closes_up(&self) -> bool {
        self.total_monodromy()
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x)
    }

    /// Default witness: a path of transpositions, the same path backwards,
    /// then `genus` repeated pairs `(12)(12)`.
    pub fn synthesized(sheets: usize, genus: usize) -> Result<Self, BraidError> {
        let path: Vec<(usize, usize)> = (1..sheets).map(|i| (i, i + 1)).collect();
        let mut ts = path.clone();
        ts.extend(path.iter().rev());
        for _ in 0..genus {
            ts.extend([(1, 2), (1, 2)]);
        }
        BranchData::new(sheets, ts)
    }

    /// A random closed-up cover with `k >= 2N - 2` branch points, `k` even.
    /// Starts from a random tree read forwards and backwards plus repeated
    /// pairs, then mixes with Hurwitz moves, which keep the product and the
    /// generated group.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        sheets: usize,
        k: usize,
    ) -> Result<Self, BraidError> {
        if sheets < 2 {
            return Err(BraidError::TooFewSheets(sheets));
        }
        let excess = k as i64 - 2 * sheets as i64 + 2;
        if excess < 0 {
            return Err(BraidError::TooFewBranchPoints(excess));
        }
        if excess % 2 != 0 {
            return Err(BraidError::OddBranchCount(excess));
        }
        let mut labels: Vec<usize> = (1..=sheets).collect();
        labels.shuffle(rng);
        let tree: Vec<(usize, usize)> = (1..sheets)
            .map(|i| (labels[rng.gen_range(0..i)], labels[i]))
            .collect();
        let mut ts = tree.clone();
        ts.extend(tree.iter().rev());
        for _ in 0..excess / 2 {
            let a = rng.gen_range(1..=sheets);
            let mut b = rng.gen_range(1..sheets);
            if b >= a {
                b += 1;
            }
            ts.extend([(a, b), (a, b)]);
        }
        for _ in 0..8 * ts.len() {
            let i = rng.gen_range(0..ts.len() - 1);
            hurwitz(&mut ts, i, rng.gen_bool(0.5));
        }
        BranchData::new(sheets, ts)
    }
}

/// Hurwitz move at `i`: `(s, t) -> (t, t s t)` or its inverse `(s t s, s)`.
fn hurwitz(ts: &mut [(usize, usize)], i: usize, forward: bool) {
    let (s, t) = (ts[i], ts[i + 1]);
    let conj = |by: (usize, usize), x: (usize, usize)| {
        let swap = |v: usize| {
            if v == by.0 {
                by.1
            } else if v == by.1 {
                by.0
            } else {
                v
            }
        };
        let (a, b) = (swap(x.0), swap(x.1));
        (a.min(b), a.max(b))
    };
    if forward {
        ts[i] = t;
        ts[i + 1] = conj(t, s);
    } else {
        ts[i] = conj(s, t);
        ts[i + 1] = s;
    }
}

/// Genus of the cover by Riemann-Hurwitz: `(k - 2N + 2) / 2`.
pub fn genus_rh(b: &BranchData) -> Result<usize, BraidError> {
    let excess = b.branch_points() as i64 - 2 * b.sheets as i64 + 2;
    if excess % 2 != 0 {
        return Err(BraidError::OddBranchCount(excess));
    }
    if excess < 0 {
        return Err(BraidError::TooFewBranchPoints(excess));
    }
    Ok((excess / 2) as usize)
}

/// Order in which to add branch points, and the sheet relabeling under which
/// the first `N - 1` of them build a tree one new sheet at a time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningOrder {
    /// Branch indices in the order they are added.
    pub order: Vec<usize>,
    /// `relabel[s - 1]` is the new label of old sheet `s`.
    pub relabel: Vec<usize>,
    pub tree_len: usize,
}

impl SpanningOrder {
    /// Sheets `(a, b)` of branch point `branch` under the relabeling, smaller first.
    pub fn sheets_of(&self, b: &BranchData, branch: usize) -> (usize, usize) {
        let (x, y) = b.transpositions[branch];
        let (x, y) = (self.relabel[x - 1], self.relabel[y - 1]);
        (x.min(y), x.max(y))
    }
}

/// Greedy tree growth from branch point 0: at each step take the lowest index
/// that reaches a new sheet. Remaining branch points follow in index order.
pub fn select_spanning_order(b: &BranchData) -> Result<SpanningOrder, BraidError> {
    let n = b.sheets;
    let mut label = vec![0usize; n];
    let mut used = vec![false; b.branch_points()];
    let mut order = Vec::with_capacity(b.branch_points());
    let &(a0, b0) = b.transpositions.first().ok_or(BraidError::NotTransitive)?;
    label[a0.min(b0) - 1] = 1;
    label[a0.max(b0) - 1] = 2;
    used[0] = true;
    order.push(0);
    for next in 3..=n {
        let pick = (0..b.branch_points()).find(|&i| {
            let (x, y) = b.transpositions[i];
            !used[i] && ((label[x - 1] == 0) != (label[y - 1] == 0))
        });
        let i = pick.ok_or(BraidError::NotTransitive)?;
        let (x, y) = b.transpositions[i];
        let fresh = if label[x - 1] == 0 { x } else { y };
        label[fresh - 1] = next;
        used[i] = true;
        order.push(i);
    }
    order.extend((0..b.branch_points()).filter(|&i| !used[i]));
    Ok(SpanningOrder {
        order,
        relabel: label,
        tree_len: n - 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedArc {
    pub branch: usize,
    pub sheets: (usize, usize),
    pub tree: bool,
}

/// Invariants of the neighborhood after adding one more arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcStage {
    pub branch: usize,
    pub euler: i64,
    pub components: usize,
    pub boundaries: usize,
    pub genus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSystem {
    pub sheets: usize,
    pub arcs: Vec<LiftedArc>,
    pub stages: Vec<ArcStage>,
    pub cover_euler: i64,
    pub complement_euler: i64,
    pub complement_disks: usize,
    pub genus: usize,
}

/// Boundary components and connected components of the ribbon graph on the
/// sheets formed by `arcs`. Arcs meet each sheet in branch-index order.
fn trace(sheets: usize, arcs: &[(usize, usize, usize)]) -> (usize, usize) {
    let mut uf = Sheets::new(sheets);
    let mut at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); sheets];
    for (e, &(branch, x, y)) in arcs.iter().enumerate() {
        uf.union(x, y);
        at[x].push((branch, 2 * e));
        at[y].push((branch, 2 * e + 1));
    }
    let mut rotation = vec![0usize; 2 * arcs.len()];
    for darts in &mut at {
        darts.sort_unstable();
        for (i, &(_, d)) in darts.iter().enumerate() {
            rotation[d] = darts[(i + 1) % darts.len()].1;
        }
    }
    let mut seen = vec![false; rotation.len()];
    let mut faces = at.iter().filter(|d| d.is_empty()).count();
    for start in 0..rotation.len() {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = rotation[d ^ 1];
        }
    }
    let components = (0..sheets).filter(|&s| uf.find(s) == s).count();
    (faces, components)
}

fn check_order(b: &BranchData, order: &SpanningOrder) -> Result<(), BraidError> {
    let mut seen = vec![false; b.branch_points()];
    if order.order.len() != b.branch_points() {
        return Err(BraidError::BadOrder(format!(
            "{} entries for {} branch points",
            order.order.len(),
            b.branch_points()
        )));
    }
    for &i in &order.order {
        if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
            return Err(BraidError::BadOrder(format!(
                "branch index {i} is repeated or out of range"
            )));
        }
    }
    let mut labels = order.relabel.clone();
    labels.sort_unstable();
    if labels != (1..=b.sheets).collect::<Vec<_>>() {
        return Err(BraidError::BadOrder(
            "relabeling is not a permutation of the sheets".into(),
        ));
    }
    if order.tree_len != b.sheets - 1 {
        return Err(BraidError::BadOrder(format!(
            "tree of {} arcs on {} sheets",
            order.tree_len, b.sheets
        )));
    }
    Ok(())
}

/// Lift the paths to the branch points in the given order and check the
/// Euler bookkeeping stage by stage: the first `N - 1` arcs join the `N`
/// sheet disks into one disk, each later arc lowers the Euler
/// characteristic by one, and the complement in the closed cover is `N` disks.
pub fn lift_arc_system(b: &BranchData, order: &SpanningOrder) -> Result<ArcSystem, BraidError> {
    check_order(b, order)?;
    if !b.closes_up() {
        return Err(BraidError::OpenMonodromy);
    }
    let n = b.sheets;
    let genus = genus_rh(b)?;
    let cover_euler = 2 - 2 * genus as i64;

    let mut arcs = Vec::with_capacity(b.branch_points());
    let mut placed: Vec<(usize, usize, usize)> = Vec::new();
    let mut stages = Vec::with_capacity(b.branch_points());
    let mut uf = Sheets::new(n);
    for (pos, &branch) in order.order.iter().enumerate() {
        let tree = pos < order.tree_len;
        let (x, y) = order.sheets_of(b, branch);
        let joins = uf.union(x - 1, y - 1);
        let phase = if tree { Phase::Tree } else { Phase::Handle };
        let fail = |reason: String| BraidError::Stage {
            phase,
            stage: pos + 1,
            branch,
            reason,
        };
        if tree && !joins {
            return Err(fail(format!("arc ({x} {y}) closes a cycle")));
        }
        placed.push((branch, x - 1, y - 1));
        let (boundaries, components) = trace(n, &placed);
        let euler = n as i64 - placed.len() as i64;
        if tree && components != n - pos - 1 {
            return Err(fail(format!(
                "{components} components after {} tree arcs",
                pos + 1
            )));
        }
        if pos + 1 == order.tree_len && boundaries != 1 {
            return Err(fail(format!(
                "tree neighborhood has {boundaries} boundary components"
            )));
        }
        let twice_genus = 2 * components as i64 - euler - boundaries as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(fail(format!("inconsistent counts: euler {euler}, {components} components, {boundaries} boundaries")));
        }
        stages.push(ArcStage {
            branch,
            euler,
            components,
            boundaries,
            genus: (twice_genus / 2) as usize,
        });
        arcs.push(LiftedArc {
            branch,
            sheets: (x, y),
            tree,
        });
    }

    let last = stages.last().ok_or(BraidError::NotTransitive)?;
    let complement_euler = cover_euler - last.euler;
    let complement_disks = last.boundaries;
    let stage = stages.len();
    let branch = last.branch;
    if complement_euler != n as i64 || complement_disks != n || last.genus != genus {
        return Err(BraidError::Stage {
            phase: Phase::Handle,
            stage,
            branch,
            reason: format!(
                "complement has euler {complement_euler} in {complement_disks} pieces, neighborhood genus {} against {genus}",
                last.genus
            ),
        });
    }
    Ok(ArcSystem {
        sheets: n,
        arcs,
        stages,
        cover_euler,
        complement_euler,
        complement_disks,
        genus,
    })
}

/// Shadow of a tacnode vanishing cycle on the cover: the distinguished lift of
/// one path, crossing the two boundary circles of the sheets it joins.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TacnodeArc {
    pub branch: usize,
    pub sheets: (usize, usize),
    /// `(boundary curve, number of crossings)`.
    pub crossings: Vec<(String, usize)>,
    pub enters_once: bool,
    pub tree: bool,
}

pub fn tacnode_arc(
    b: &BranchData,
    order: &SpanningOrder,
    branch_index: usize,
) -> Result<TacnodeArc, BraidError> {
    if branch_index >= b.branch_points() {
        return Err(BraidError::BranchIndex {
            index: branch_index,
            count: b.branch_points(),
        });
    }
    check_order(b, order)?;
    let (x, y) = order.sheets_of(b, branch_index);
    let crossings = vec![(format!("beta{x}"), 1), (format!("beta{y}"), 1)];
    let enters_once = x != y && crossings.iter().all(|(_, n)| *n == 1);
    let tree = order.order[..order.tree_len].contains(&branch_index);
    Ok(TacnodeArc {
        branch: branch_index,
        sheets: (x, y),
        crossings,
        enters_once,
        tree,
    })
}

/// Arcs for every branch point, in the spanning order.
pub fn tacnode_arcs(b: &BranchData, order: &SpanningOrder) -> Result<Vec<TacnodeArc>, BraidError> {
    order
        .order
        .iter()
        .map(|&i| tacnode_arc(b, order, i))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complement {
    pub euler: i64,
    pub pieces: usize,
    pub all_disks: bool,
}

/// The complement of a set of arcs in the closed cover.
pub fn arc_complement(b: &BranchData, arcs: &[TacnodeArc]) -> Result<Complement, BraidError> {
    let genus = genus_rh(b)?;
    let placed: Vec<(usize, usize, usize)> = arcs
        .iter()
        .map(|a| (a.branch, a.sheets.0 - 1, a.sheets.1 - 1))
        .collect();
    let (pieces, components) = trace(b.sheets, &placed);
    let euler = 2 - 2 * genus as i64 - (b.sheets as i64 - placed.len() as i64);
    // Pieces are bounded surfaces, so Euler characteristic `pieces` forces disks.
    let all_disks = components == 1 && euler == pieces as i64;
    Ok(Complement {
        euler,
        pieces,
        all_disks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(n: usize, ts: &[(usize, usize)]) -> BranchData {
        BranchData::new(n, ts.to_vec()).unwrap()
    }

    #[test]
    fn riemann_hurwitz_examples() {
        assert_eq!(
            genus_rh(&data(3, &[(1, 2), (1, 2), (1, 3), (1, 3), (2, 3), (2, 3)])),
            Ok(1)
        );
        assert_eq!(genus_rh(&data(2, &[(1, 2), (1, 2)])), Ok(0));
        let ten: Vec<(usize, usize)> = [
            (1, 2),
            (2, 3),
            (3, 4),
            (3, 4),
            (2, 3),
            (1, 2),
            (1, 2),
            (1, 2),
            (1, 4),
            (1, 4),
        ]
        .to_vec();
        assert_eq!(genus_rh(&data(4, &ten)), Ok(2));
        assert_eq!(
            genus_rh(&data(2, &[(1, 2)])),
            Err(BraidError::OddBranchCount(-1))
        );
        assert_eq!(
            genus_rh(&data(3, &[(1, 2), (2, 3)])),
            Err(BraidError::TooFewBranchPoints(-2))
        );
    }

    #[test]
    fn validation() {
        assert_eq!(
            BranchData::new(3, vec![(1, 2), (1, 2)]),
            Err(BraidError::NotTransitive)
        );
        assert!(matches!(
            BranchData::new(3, vec![(1, 1)]),
            Err(BraidError::BadTransposition { .. })
        ));
        assert!(matches!(
            BranchData::new(2, vec![(1, 3)]),
            Err(BraidError::BadTransposition { .. })
        ));
        assert_eq!(BranchData::new(1, vec![]), Err(BraidError::TooFewSheets(1)));
    }

    #[test]
    fn spanning_order_examples() {
        let b = data(3, &[(1, 2), (1, 2), (1, 3), (1, 3), (2, 3), (2, 3)]);
        let s = select_spanning_order(&b).unwrap();
        assert_eq!(&s.order[..2], &[0, 2]);
        assert_eq!(s.order, vec![0, 2, 1, 3, 4, 5]);
        assert_eq!(s.relabel, vec![1, 2, 3]);
        let two = select_spanning_order(&data(2, &[(1, 2), (1, 2)])).unwrap();
        assert_eq!(two.order, vec![0, 1]);
        assert_eq!(two.relabel, vec![1, 2]);
    }

    #[test]
    fn relabeling_makes_tree_arcs_adjacent() {
        let b = data(4, &[(3, 4), (1, 2), (2, 4), (1, 2), (2, 4), (3, 4)]);
        let s = select_spanning_order(&b).unwrap();
        for (i, &branch) in s.order[..3].iter().enumerate() {
            let (x, y) = s.sheets_of(&b, branch);
            assert_eq!(y, i + 2);
            assert!(x <= i + 1);
        }
    }

    #[test]
    fn elliptic_example_stages() {
        let b = data(3, &[(1, 2), (1, 2), (1, 3), (1, 3), (2, 3), (2, 3)]);
        let s = select_spanning_order(&b).unwrap();
        let sys = lift_arc_system(&b, &s).unwrap();
        let euler: Vec<i64> = sys.stages.iter().map(|st| st.euler).collect();
        assert_eq!(euler, vec![2, 1, 0, -1, -2, -3]);
        assert_eq!(sys.complement_disks, 3);
        assert_eq!(sys.complement_euler, 3);
        assert_eq!(sys.genus, 1);
    }

    #[test]
    fn double_cover_of_sphere() {
        let b = data(2, &[(1, 2), (1, 2)]);
        let sys = lift_arc_system(&b, &select_spanning_order(&b).unwrap()).unwrap();
        assert_eq!(sys.arcs.iter().filter(|a| a.tree).count(), 1);
        assert_eq!(sys.complement_disks, 2);
    }

    #[test]
    fn cycle_arc_in_tree_phase_fails() {
        let b = data(3, &[(1, 2), (1, 2), (1, 3), (1, 3), (2, 3), (2, 3)]);
        let mut s = select_spanning_order(&b).unwrap();
        s.order = vec![0, 1, 2, 3, 4, 5];
        match lift_arc_system(&b, &s) {
            Err(BraidError::Stage {
                phase: Phase::Tree,
                stage: 2,
                branch: 1,
                ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn open_monodromy_is_rejected() {
        let b = data(3, &[(1, 2), (2, 3), (1, 2), (2, 3)]);
        assert!(!b.closes_up());
        let s = select_spanning_order(&b).unwrap();
        assert_eq!(lift_arc_system(&b, &s), Err(BraidError::OpenMonodromy));
    }

    #[test]
    fn tacnode_descriptors() {
        let b = data(2, &[(1, 2), (1, 2)]);
        let s = select_spanning_order(&b).unwrap();
        let arc = tacnode_arc(&b, &s, 1).unwrap();
        assert_eq!(
            arc.crossings,
            vec![("beta1".to_string(), 1), ("beta2".to_string(), 1)]
        );
        assert!(arc.enters_once);
        assert!(!arc.tree);
        assert!(matches!(
            tacnode_arc(&b, &s, 2),
            Err(BraidError::BranchIndex { .. })
        ));
        let all = tacnode_arcs(&b, &s).unwrap();
        assert!(arc_complement(&b, &all).unwrap().all_disks);
    }

    #[test]
    fn synthesized_witness() {
        let b = BranchData::synthesized(4, 1).unwrap();
        assert_eq!(b.branch_points(), 8);
        assert!(b.closes_up());
        assert_eq!(genus_rh(&b), Ok(1));
    }

    #[test]
    fn json_round_trip() {
        let b = data(3, &[(1, 2), (1, 2), (1, 3), (1, 3), (2, 3), (2, 3)]);
        let text = b.to_json();
        assert_eq!(
            text,
            r#"{"sheets":3,"transpositions":[[1,2],[1,2],[1,3],[1,3],[2,3],[2,3]]}"#
        );
        assert_eq!(BranchData::from_json(&text), Ok(b));
        assert!(BranchData::from_json(r#"{"sheets":3,"transpositions":[[1,2]]}"#).is_err());
    }
}
