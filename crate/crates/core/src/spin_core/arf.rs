use super::WindingState;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArfUndefined {
    #[error("Arf invariant needs an even modulus, got {0}")]
    OddModulus(i64),
    #[error("boundary component {index} has even value {value}")]
    EvenBoundary { index: usize, value: i64 },
    #[error("marked curves span only {pairs} hyperbolic pairs, genus is {genus}")]
    Underspanned { pairs: usize, genus: usize },
    #[error("marked windings are not a quadratic refinement mod 2")]
    Inconsistent,
}

/// Arf invariant read off a `2g`-chain of curves with the given windings.
///
/// Uses the symplectic basis `a_i = c_1 + c_3 + ... + c_{2i-1}`, `b_i = c_{2i}`
/// and `q = phi + 1 (mod 2)`.
pub fn arf_from_chain(values: &[i64]) -> u8 {
    let q = |v: i64| ((v + 1).rem_euclid(2)) as u8;
    let mut odd_prefix = 0u8;
    let mut total = 0u8;
    for pair in values.chunks(2) {
        odd_prefix ^= q(pair[0]);
        total ^= odd_prefix & q(pair[1]);
    }
    total
}

impl WindingState {
    /// Arf invariant from a symplectic reduction of all marked classes over `F_2`.
    pub fn arf(&self) -> Result<u8, ArfUndefined> {
        if self.sig.r % 2 != 0 {
            return Err(ArfUndefined::OddModulus(self.sig.r));
        }
        for (index, value) in self.boundary_values().into_iter().enumerate() {
            if value.rem_euclid(2) == 0 {
                return Err(ArfUndefined::EvenBoundary { index, value });
            }
        }

        let bil = |x: &[i64], y: &[i64]| self.pairing(x, y).rem_euclid(2) as u8;
        let add = |x: &(Vec<i64>, u8), y: &(Vec<i64>, u8)| {
            let v: Vec<i64> =
                x.0.iter()
                    .zip(&y.0)
                    .map(|(a, b)| (a + b).rem_euclid(2))
                    .collect();
            (v, x.1 ^ y.1 ^ bil(&x.0, &y.0))
        };

        let mut pool: Vec<(Vec<i64>, u8)> = self
            .marked
            .iter()
            .map(|c| {
                let v: Vec<i64> = c.homology.iter().map(|x| x.rem_euclid(2)).collect();
                (v, ((c.winding + 1).rem_euclid(2)) as u8)
            })
            .collect();

        let mut arf = 0u8;
        let mut pairs = 0usize;
        while let Some(a) = pool.pop() {
            let partner = pool.iter().position(|y| bil(&a.0, &y.0) == 1);
            let Some(j) = partner else {
                // `a` lies in the radical of the span; it must be a boundary-type class.
                if a.1 != 0 {
                    return Err(ArfUndefined::Inconsistent);
                }
                continue;
            };
            let b = pool.swap_remove(j);
            arf ^= a.1 & b.1;
            pairs += 1;
            pool = pool
                .into_iter()
                .map(|y| {
                    let mut y = y;
                    if bil(&y.0, &b.0) == 1 {
                        y = add(&y, &a);
                    }
                    if bil(&y.0, &a.0) == 1 {
                        y = add(&y, &b);
                    }
                    y
                })
                .collect();
        }
        if pairs != self.sig.genus {
            return Err(ArfUndefined::Underspanned {
                pairs,
                genus: self.sig.genus,
            });
        }
        Ok(arf)
    }
}
