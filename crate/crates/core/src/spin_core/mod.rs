//! Winding-number functions stored as finite data on a marked curve system.
//!
//! Homology coordinates: the first `2g` are the chain curves `c_1..c_{2g}`,
//! paired by `<c_i, c_{i+1}> = +1`; the next `b - 1` are boundary classes,
//! which pair trivially. The last boundary class is minus the sum of the others.
//! Winding values travel with the curves since winding numbers are not linear
//! in homology.

mod arf;
mod handle;

pub use arf::{arf_from_chain, ArfUndefined};
pub use handle::{HandleEnds, HandleRecord};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpinError {
    #[error("modulus {r} does not divide 2g-2 = {two_g_minus_two} on a closed surface")]
    NoSpinStructure { r: i64, two_g_minus_two: i64 },
    #[error("negative modulus {0}")]
    NegativeModulus(i64),
    #[error("homology vector has length {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("boundary index {index} out of range for {count} boundary components")]
    BoundaryIndex { index: usize, count: usize },
    #[error("the surface has no boundary")]
    NoBoundary,
    #[error("{new} does not divide the modulus {old}")]
    NotADivisor { new: i64, old: i64 },
    #[error("expected {expected} values, got {got}")]
    ValueCount { expected: usize, got: usize },
    #[error("boundary values sum to {sum}, Euler characteristic is {chi} (mod {r})")]
    Incoherent { sum: i64, chi: i64, r: i64 },
    #[error("unknown curve name {0:?}")]
    UnknownCurve(String),
    #[error("handle extension requires an integer framing (r = 0)")]
    NotAFraming,
    #[error("handle extension: {0}")]
    Handle(String),
    #[error("no handle to forget")]
    NoHandle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: usize,
    pub boundary: usize,
    /// 0 encodes an integer-valued framing.
    pub r: i64,
}

impl SurfaceSig {
    pub fn new(genus: usize, boundary: usize, r: i64) -> Result<Self, SpinError> {
        let sig = SurfaceSig { genus, boundary, r };
        sig.validate()?;
        Ok(sig)
    }

    pub fn validate(&self) -> Result<(), SpinError> {
        if self.r < 0 {
            return Err(SpinError::NegativeModulus(self.r));
        }
        let two_g_minus_two = 2 * self.genus as i64 - 2;
        if self.boundary == 0 && !divides(self.r, two_g_minus_two) {
            return Err(SpinError::NoSpinStructure {
                r: self.r,
                two_g_minus_two,
            });
        }
        Ok(())
    }

    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }

    /// Rank of first homology.
    pub fn dim(&self) -> usize {
        2 * self.genus + self.boundary.saturating_sub(1)
    }

    /// Canonical representative: `[0, r)` for `r > 0`, unchanged for framings.
    pub fn norm(&self, v: i64) -> i64 {
        if self.r == 0 {
            v
        } else {
            v.rem_euclid(self.r)
        }
    }
}

/// Whether `m` divides `n` in the integers, with every `m` dividing 0.
pub fn divides(m: i64, n: i64) -> bool {
    if m == 0 {
        n == 0
    } else {
        n % m == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackedCurve {
    pub name: String,
    pub homology: Vec<i64>,
    pub winding: i64,
    #[serde(default = "yes")]
    pub oriented: bool,
}

fn yes() -> bool {
    true
}

impl TrackedCurve {
    pub fn new(name: impl Into<String>, homology: Vec<i64>, winding: i64) -> Self {
        TrackedCurve {
            name: name.into(),
            homology,
            winding,
            oriented: true,
        }
    }

    pub fn reversed(&self) -> Self {
        TrackedCurve {
            name: self.name.clone(),
            homology: self.homology.iter().map(|x| -x).collect(),
            winding: -self.winding,
            oriented: !self.oriented,
        }
    }
}

/// A family of marked curves that together bound a subsurface of Euler
/// characteristic `chi`, lying to the left of each. A leading `-` on a name
/// reverses that curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub curves: Vec<String>,
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindingState {
    #[serde(flatten)]
    pub sig: SurfaceSig,
    pub marked: Vec<TrackedCurve>,
    #[serde(default)]
    pub constraints: Vec<Constraint>,
    /// Gram matrix of the intersection form when it is no longer the standard one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<i64>>>,
    /// Indices of the boundary curves in `marked`; defaults to `2g..2g+b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_marks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub handles: Vec<HandleRecord>,
}

/// Standard form on chain coordinates: `sum_i u_i v_{i+1} - u_{i+1} v_i` over the first `2g`.
pub fn chain_pairing(genus: usize, u: &[i64], v: &[i64]) -> i64 {
    (0..(2 * genus).saturating_sub(1))
        .map(|i| u[i] * v[i + 1] - u[i + 1] * v[i])
        .sum()
}

/// `phi(d) + exponent * pairing * phi(c)` for `pairing = <c, d>`.
pub fn twist_value(phi_d: i64, phi_c: i64, pairing: i64, exponent: i64) -> i64 {
    phi_d + exponent * pairing * phi_c
}

/// Windings of a positively bounding family sum to `chi` (mod `r`).
pub fn coherence_check(curves: &[TrackedCurve], chi: i64, r: i64) -> bool {
    let sum: i64 = curves.iter().map(|c| c.winding).sum();
    if r == 0 {
        sum == chi
    } else {
        (sum - chi).rem_euclid(r) == 0
    }
}

impl WindingState {
    /// Chain curves `c1..c{2g}` with the given values, then boundary curves
    /// `d0..d{b-1}`, plus the constraint that the boundary family bounds `S`.
    pub fn standard(
        sig: SurfaceSig,
        chain_values: &[i64],
        boundary_values: &[i64],
    ) -> Result<Self, SpinError> {
        sig.validate()?;
        let dim = sig.dim();
        if chain_values.len() != 2 * sig.genus {
            return Err(SpinError::ValueCount {
                expected: 2 * sig.genus,
                got: chain_values.len(),
            });
        }
        if boundary_values.len() != sig.boundary {
            return Err(SpinError::ValueCount {
                expected: sig.boundary,
                got: boundary_values.len(),
            });
        }
        let mut marked = Vec::with_capacity(2 * sig.genus + sig.boundary);
        for (i, &w) in chain_values.iter().enumerate() {
            let mut h = vec![0; dim];
            h[i] = 1;
            marked.push(TrackedCurve::new(format!("c{}", i + 1), h, sig.norm(w)));
        }
        for (i, &w) in boundary_values.iter().enumerate() {
            let mut h = vec![0; dim];
            if i + 1 < sig.boundary {
                h[2 * sig.genus + i] = 1;
            } else {
                for x in &mut h[2 * sig.genus..] {
                    *x = -1;
                }
            }
            marked.push(TrackedCurve::new(format!("d{i}"), h, sig.norm(w)));
        }
        let constraints = if sig.boundary > 0 {
            vec![Constraint {
                curves: (0..sig.boundary).map(|i| format!("d{i}")).collect(),
                chi: sig.euler(),
            }]
        } else {
            Vec::new()
        };
        let state = WindingState {
            sig,
            marked,
            constraints,
            form: None,
            boundary_marks: None,
            handles: Vec::new(),
        };
        state.validate()?;
        Ok(state)
    }

    pub fn dim(&self) -> usize {
        self.form.as_ref().map_or(self.sig.dim(), Vec::len)
    }

    pub fn pairing(&self, u: &[i64], v: &[i64]) -> i64 {
        match &self.form {
            None => chain_pairing(self.sig.genus, u, v),
            Some(f) => f
                .iter()
                .zip(u)
                .map(|(row, &ui)| ui * row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>())
                .sum(),
        }
    }

    pub fn boundary_indices(&self) -> Vec<usize> {
        match &self.boundary_marks {
            Some(marks) => marks.clone(),
            None => (0..self.sig.boundary)
                .map(|i| 2 * self.sig.genus + i)
                .collect(),
        }
    }

    pub fn boundary_values(&self) -> Vec<i64> {
        self.boundary_indices()
            .iter()
            .map(|&i| self.marked[i].winding)
            .collect()
    }

    pub fn curve(&self, name: &str) -> Result<&TrackedCurve, SpinError> {
        self.marked
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| SpinError::UnknownCurve(name.to_string()))
    }

    /// Resolves a constraint entry, honouring a leading `-` for reversal.
    pub fn resolve(&self, entry: &str) -> Result<TrackedCurve, SpinError> {
        match entry.strip_prefix('-') {
            Some(name) => Ok(self.curve(name)?.reversed()),
            None => self.curve(entry).cloned(),
        }
    }

    /// One flag per declared constraint.
    pub fn check_constraints(&self) -> Result<Vec<bool>, SpinError> {
        self.constraints
            .iter()
            .map(|c| {
                let curves: Result<Vec<_>, _> = c.curves.iter().map(|n| self.resolve(n)).collect();
                Ok(coherence_check(&curves?, c.chi, self.sig.r))
            })
            .collect()
    }

    pub fn validate(&self) -> Result<(), SpinError> {
        self.sig.validate()?;
        let dim = self.dim();
        for c in &self.marked {
            if c.homology.len() != dim {
                return Err(SpinError::Dimension {
                    expected: dim,
                    got: c.homology.len(),
                });
            }
        }
        if self.sig.boundary > 0 {
            let sum: i64 = self.boundary_values().iter().sum();
            let chi = self.sig.euler();
            let ok = if self.sig.r == 0 {
                sum == chi
            } else {
                (sum - chi).rem_euclid(self.sig.r) == 0
            };
            if !ok {
                return Err(SpinError::Incoherent {
                    sum,
                    chi,
                    r: self.sig.r,
                });
            }
        }
        Ok(())
    }

    fn check_vector(&self, v: &[i64]) -> Result<(), SpinError> {
        if v.len() != self.dim() {
            return Err(SpinError::Dimension {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Image of every marked curve under `T_about^exponent`.
    pub fn apply_twist(&self, about: &TrackedCurve, exponent: i64) -> Result<Self, SpinError> {
        self.check_vector(&about.homology)?;
        let mut next = self.clone();
        for m in &mut next.marked {
            let p = self.pairing(&about.homology, &m.homology);
            if p == 0 {
                continue;
            }
            for (h, a) in m.homology.iter_mut().zip(&about.homology) {
                *h += exponent * p * a;
            }
            m.winding = self
                .sig
                .norm(twist_value(m.winding, about.winding, p, exponent));
        }
        Ok(next)
    }

    /// Push the puncture capped by boundary `boundary_index` around a loop of class `beta`.
    ///
    /// Equals `T_{beta_R} T_{beta_L}^{-1}`, where the pants bounded by `beta_R`,
    /// reversed `beta_L` and the boundary curve `d` force
    /// `[beta_R] = [beta_L] - [d]` and `phi(beta_R) = phi(beta_L) - phi(d) - 1`.
    pub fn point_push(&self, beta: &[i64], boundary_index: usize) -> Result<Self, SpinError> {
        self.check_vector(beta)?;
        let marks = self.boundary_indices();
        let &d_index = marks.get(boundary_index).ok_or(SpinError::BoundaryIndex {
            index: boundary_index,
            count: marks.len(),
        })?;
        let d = self.marked[d_index].clone();
        let mut next = self.clone();
        for m in &mut next.marked {
            let p = self.pairing(beta, &m.homology);
            if p == 0 {
                continue;
            }
            for (h, dh) in m.homology.iter_mut().zip(&d.homology) {
                *h -= p * dh;
            }
            m.winding = self.sig.norm(m.winding - (d.winding + 1) * p);
        }
        Ok(next)
    }

    /// `gcd(phi(d_i) + 1)`, folding in the modulus for spin structures.
    pub fn signature_gcd(&self) -> Result<i64, SpinError> {
        if self.sig.boundary == 0 {
            return Err(SpinError::NoBoundary);
        }
        Ok(self
            .boundary_values()
            .iter()
            .fold(self.sig.r, |acc, &v| acc.gcd(&(v + 1))))
    }

    pub fn reduce_mod(&self, r_new: i64) -> Result<Self, SpinError> {
        if r_new < 0 || !divides(r_new, self.sig.r) {
            return Err(SpinError::NotADivisor {
                new: r_new,
                old: self.sig.r,
            });
        }
        let mut next = self.clone();
        next.sig.r = r_new;
        for m in &mut next.marked {
            m.winding = next.sig.norm(m.winding);
        }
        Ok(next)
    }

    pub fn chain_values(&self) -> Vec<i64> {
        self.marked[..2 * self.sig.genus]
            .iter()
            .map(|c| c.winding)
            .collect()
    }
}
