//! Boundary tracing of the regular neighborhood, with the winding number of
//! each boundary component expressed through the windings of the curves.
//!
//! Angles are measured in eighths of a turn. At a crossing the two curves
//! meet at a right angle and the local framing points halfway between them.

use super::{ConfigError, RibbonConfig};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One boundary component: `winding = offset + sum(coeff * phi(curve))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceTrace {
    /// Curves whose arcs the component runs along, sorted.
    pub curves: Vec<usize>,
    pub offset: i64,
    pub coeffs: BTreeMap<usize, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceWinding {
    pub curves: Vec<String>,
    pub winding: i64,
}

const HALF_TURN: i64 = 4;

/// Reduce an angle to the interval (-1/2, 1/2] of a turn.
fn wrap(eighths: i64) -> i64 {
    let m = eighths.rem_euclid(8);
    if m > HALF_TURN {
        m - 8
    } else {
        m
    }
}

/// Half-edge at crossing `edge`, on the curve at end `side`, pointing forward or back.
fn dart(edge: usize, side: usize, backward: bool) -> usize {
    edge * 4 + side * 2 + backward as usize
}

fn split(d: usize) -> (usize, usize, bool) {
    (d / 4, (d / 2) % 2, d % 2 == 1)
}

impl RibbonConfig {
    /// Offset of the framing direction from the tangent of the curve at `side`.
    fn framing_offset(&self, edge: usize, side: usize) -> i64 {
        let s = self.signs[edge] as i64;
        if side == 0 {
            s
        } else {
            -s
        }
    }

    fn tangent_angle(&self, edge: usize, side: usize) -> i64 {
        if side == 0 {
            0
        } else {
            2 * self.signs[edge] as i64
        }
    }

    fn side_at(&self, edge: usize, node: usize) -> usize {
        if self.edges[edge][0] == node {
            0
        } else {
            1
        }
    }

    /// Trace every boundary component of the neighborhood.
    ///
    /// The winding of each curve is carried by the arc leaving the first
    /// crossing in its cyclic order; the totals do not depend on that choice.
    pub fn trace_faces(&self) -> Vec<FaceTrace> {
        let darts = 4 * self.edges.len();
        let mut rotate = vec![0; darts];
        for (e, &s) in self.signs.iter().enumerate() {
            let seq = if s == 1 {
                [
                    dart(e, 0, false),
                    dart(e, 1, false),
                    dart(e, 0, true),
                    dart(e, 1, true),
                ]
            } else {
                [
                    dart(e, 0, false),
                    dart(e, 1, true),
                    dart(e, 0, true),
                    dart(e, 1, false),
                ]
            };
            for i in 0..4 {
                rotate[seq[i]] = seq[(i + 1) % 4];
            }
        }

        // Arc partner of each dart, with the arc's rotation and orientation.
        let mut partner = vec![0; darts];
        let mut arc = vec![(0i64, 0i64, None::<usize>); darts];
        for (node, order) in self.cyclic.iter().enumerate() {
            let m = order.len();
            for j in 0..m {
                let (e1, e2) = (order[j], order[(j + 1) % m]);
                let (s1, s2) = (self.side_at(e1, node), self.side_at(e2, node));
                let a = dart(e1, s1, false);
                let b = dart(e2, s2, true);
                partner[a] = b;
                partner[b] = a;
                let turn = self.framing_offset(e1, s1) - self.framing_offset(e2, s2);
                let carrier = (j == 0).then_some(node);
                arc[a] = (turn, 1, carrier);
                arc[b] = (turn, -1, carrier);
            }
        }

        let mut seen = vec![false; darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if seen[start] {
                continue;
            }
            let mut face = FaceTrace {
                curves: Vec::new(),
                offset: 0,
                coeffs: BTreeMap::new(),
            };
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                let y = partner[x];
                let (turn, eps, carrier) = arc[x];
                face.offset += eps * turn;
                if let Some(c) = carrier {
                    *face.coeffs.entry(c).or_insert(0) += eps;
                }
                let (e_in, s_in, back_in) = split(y);
                face.curves.push(self.edges[e_in][s_in]);
                let angle_in = self.tangent_angle(e_in, s_in) + if back_in { 0 } else { HALF_TURN };
                let z = rotate[y];
                let (e_out, s_out, back_out) = split(z);
                let angle_out =
                    self.tangent_angle(e_out, s_out) + if back_out { HALF_TURN } else { 0 };
                face.offset += wrap(angle_out - angle_in);
                x = z;
            }
            face.coeffs.retain(|_, v| *v != 0);
            face.curves.sort_unstable();
            face.curves.dedup();
            faces.push(face);
        }

        // A curve meeting nothing bounds an annulus: one parallel copy each way.
        for (node, order) in self.cyclic.iter().enumerate() {
            if order.is_empty() {
                for sign in [1, -1] {
                    faces.push(FaceTrace {
                        curves: vec![node],
                        offset: 0,
                        coeffs: BTreeMap::from([(node, sign)]),
                    });
                }
            }
        }
        for f in &mut faces {
            debug_assert_eq!(f.offset % 8, 0);
            f.offset /= 8;
        }
        faces
    }

    /// Evaluate boundary windings from the curve labels.
    pub fn face_windings(&self) -> Result<Vec<FaceWinding>, ConfigError> {
        self.trace_faces()
            .into_iter()
            .map(|f| {
                let mut total = f.offset;
                for (&c, &k) in &f.coeffs {
                    let w = self.nodes[c]
                        .winding
                        .ok_or_else(|| ConfigError::MissingWinding(self.nodes[c].name.clone()))?;
                    total += k * w;
                }
                Ok(FaceWinding {
                    curves: f
                        .curves
                        .iter()
                        .map(|&c| self.nodes[c].name.clone())
                        .collect(),
                    winding: total,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::chain;
    use super::*;

    fn with_windings(mut c: RibbonConfig, w: &[i64]) -> RibbonConfig {
        for (n, &v) in c.nodes.iter_mut().zip(w) {
            n.winding = Some(v);
        }
        c
    }

    #[test]
    fn two_chain_boundary_is_minus_one() {
        for w in [[0, 0], [3, -2], [-5, 7]] {
            let faces = with_windings(chain(2), &w).face_windings().unwrap();
            assert_eq!(faces.len(), 1);
            assert_eq!(faces[0].winding, -1);
        }
    }

    #[test]
    fn three_chain_boundaries() {
        let faces = with_windings(chain(3), &[2, 9, -4])
            .face_windings()
            .unwrap();
        let mut values: Vec<i64> = faces.iter().map(|f| f.winding).collect();
        values.sort_unstable();
        // phi1 + phi3 - 1 and -1 - phi1 - phi3
        assert_eq!(values, vec![-3, 1]);
    }

    #[test]
    fn lone_curve_gives_opposite_copies() {
        let faces = with_windings(chain(1), &[4]).face_windings().unwrap();
        let values: Vec<i64> = faces.iter().map(|f| f.winding).collect();
        assert_eq!(values, vec![4, -4]);
    }

    #[test]
    fn carrier_choice_does_not_matter() {
        let mut c = with_windings(chain(5), &[1, -2, 3, 0, 5]);
        let before: Vec<i64> = c
            .face_windings()
            .unwrap()
            .iter()
            .map(|f| f.winding)
            .collect();
        c.cyclic[2].rotate_left(1);
        c.cyclic[3].rotate_left(1);
        let mut after: Vec<i64> = c
            .face_windings()
            .unwrap()
            .iter()
            .map(|f| f.winding)
            .collect();
        let mut before = before;
        before.sort_unstable();
        after.sort_unstable();
        assert_eq!(before, after);
    }
}
