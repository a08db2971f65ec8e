//! Words in the surface braid group with weighted points, and the weighted
//! cycle map to first homology.

use super::BraidError;
use crate::spin_core::chain_pairing;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BraidMove {
    /// Exchange two points along an arc.
    HalfTwist { a: usize, b: usize },
    /// Push one point once around a loop of the given class.
    StrandLoop { point: usize, class: Vec<i64> },
}

/// Homology classes have `dim >= 2 * genus` coordinates; the first `2g` are
/// chain coordinates, the rest pair trivially.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub genus: usize,
    pub dim: usize,
    pub weights: Vec<i64>,
    pub moves: Vec<BraidMove>,
}

impl BraidWord {
    pub fn new(genus: usize, dim: usize, weights: Vec<i64>) -> Self {
        BraidWord {
            genus,
            dim,
            weights,
            moves: Vec::new(),
        }
    }

    pub fn half_twist(mut self, a: usize, b: usize) -> Self {
        self.moves.push(BraidMove::HalfTwist { a, b });
        self
    }

    pub fn strand_loop(mut self, point: usize, class: Vec<i64>) -> Self {
        self.moves.push(BraidMove::StrandLoop { point, class });
        self
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.genus != other.genus || self.dim != other.dim || self.weights != other.weights {
            return Err(BraidError::Mismatch);
        }
        let mut word = self.clone();
        word.moves.extend(other.moves.iter().cloned());
        Ok(word)
    }

    fn point(&self, index: usize, point: usize) -> Result<i64, BraidError> {
        self.weights
            .get(point)
            .copied()
            .ok_or(BraidError::PointIndex {
                index,
                point,
                count: self.weights.len(),
            })
    }
}

/// `eta_lambda(w)`: the weighted sum of the classes traced by the strands.
/// Half-twists must join points of equal weight and contribute nothing.
pub fn cycle_map(w: &BraidWord) -> Result<Vec<i64>, BraidError> {
    let mut total = vec![0; w.dim];
    for (index, mv) in w.moves.iter().enumerate() {
        match mv {
            BraidMove::HalfTwist { a, b } => {
                let (wa, wb) = (w.point(index, *a)?, w.point(index, *b)?);
                if wa != wb {
                    return Err(BraidError::WeightViolation {
                        index,
                        a: wa,
                        b: wb,
                    });
                }
            }
            BraidMove::StrandLoop { point, class } => {
                let weight = w.point(index, *point)?;
                if class.len() != w.dim {
                    return Err(BraidError::Dimension {
                        expected: w.dim,
                        got: class.len(),
                    });
                }
                for (t, h) in total.iter_mut().zip(class) {
                    *t += weight * h;
                }
            }
        }
    }
    Ok(total)
}

/// `phi(c) + <[c], eta_lambda(w)>`, reduced into `[0, r)` when `r > 0`.
pub fn winding_transport(
    phi_c: i64,
    c_class: &[i64],
    w: &BraidWord,
    r: i64,
) -> Result<i64, BraidError> {
    if c_class.len() != w.dim {
        return Err(BraidError::Dimension {
            expected: w.dim,
            got: c_class.len(),
        });
    }
    let eta = cycle_map(w)?;
    let value = phi_c + chain_pairing(w.genus, c_class, &eta);
    Ok(if r > 0 { value.rem_euclid(r) } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_twists_are_simple() {
        let w = BraidWord::new(2, 4, vec![3, 3, 1])
            .half_twist(0, 1)
            .half_twist(1, 0);
        assert_eq!(cycle_map(&w), Ok(vec![0; 4]));
        assert_eq!(winding_transport(5, &[1, 0, 2, 1], &w, 0), Ok(5));
    }

    #[test]
    fn single_loop_is_weighted() {
        let w = BraidWord::new(1, 2, vec![4]).strand_loop(0, vec![1, -2]);
        assert_eq!(cycle_map(&w), Ok(vec![4, -8]));
    }

    #[test]
    fn orthogonal_class_is_unchanged() {
        let w = BraidWord::new(2, 4, vec![2]).strand_loop(0, vec![0, 0, 0, 1]);
        // <c1, c4> = 0 in chain coordinates.
        assert_eq!(winding_transport(3, &[1, 0, 0, 0], &w, 0), Ok(3));
        assert_eq!(winding_transport(3, &[0, 0, 1, 0], &w, 0), Ok(5));
    }

    #[test]
    fn violations() {
        let w = BraidWord::new(1, 2, vec![1, 2]).half_twist(0, 1);
        assert_eq!(
            cycle_map(&w),
            Err(BraidError::WeightViolation {
                index: 0,
                a: 1,
                b: 2
            })
        );
        let w = BraidWord::new(1, 2, vec![1]).strand_loop(3, vec![0, 1]);
        assert!(matches!(cycle_map(&w), Err(BraidError::PointIndex { .. })));
        let a = BraidWord::new(1, 2, vec![1]);
        assert_eq!(
            a.then(&BraidWord::new(1, 2, vec![2])),
            Err(BraidError::Mismatch)
        );
    }
}
