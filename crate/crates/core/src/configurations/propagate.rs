//! Completing winding labels from linear coherence constraints.

use super::{ConfigError, RibbonConfig};
use crate::spin_core::Constraint;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// `sum(coeff * phi(curve)) = value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub terms: Vec<(String, i64)>,
    pub value: i64,
}

impl From<&Constraint> for LinearConstraint {
    /// A coherence constraint: windings of the boundary curves (a leading
    /// `-` reverses one) sum to the Euler characteristic.
    fn from(c: &Constraint) -> Self {
        let terms = c
            .curves
            .iter()
            .map(|n| match n.strip_prefix('-') {
                Some(base) => (base.to_string(), -1),
                None => (n.clone(), 1),
            })
            .collect();
        LinearConstraint {
            terms,
            value: c.chi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Propagation {
    pub config: RibbonConfig,
    /// Curves labeled by this run.
    pub assigned: Vec<String>,
    /// Curves still unlabeled.
    pub underdetermined: Vec<String>,
}

/// Fill in every winding label that the constraints force.
pub fn propagate_admissibility(
    c: &RibbonConfig,
    constraints: &[LinearConstraint],
) -> Result<Propagation, ConfigError> {
    let unknown: Vec<usize> = (0..c.nodes.len())
        .filter(|&i| c.nodes[i].winding.is_none())
        .collect();
    let column: BTreeMap<usize, usize> = unknown.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let width = unknown.len();

    let mut rows: Vec<Vec<Rational64>> = Vec::new();
    for con in constraints {
        let mut row = vec![Rational64::zero(); width + 1];
        let mut rhs = con.value;
        for (name, coeff) in &con.terms {
            let idx = c.index_of(name)?;
            match c.nodes[idx].winding {
                Some(w) => rhs -= coeff * w,
                None => row[column[&idx]] += Rational64::from(*coeff),
            }
        }
        row[width] = Rational64::from(rhs);
        rows.push(row);
    }

    let pivots = reduce(&mut rows, width);
    if rows
        .iter()
        .any(|r| r[..width].iter().all(Zero::is_zero) && !r[width].is_zero())
    {
        return Err(ConfigError::Inconsistent);
    }

    let mut next = c.clone();
    let mut assigned = Vec::new();
    for (row, &col) in rows.iter().zip(&pivots) {
        let alone = row[..width]
            .iter()
            .enumerate()
            .all(|(k, v)| k == col || v.is_zero());
        if !alone {
            continue;
        }
        let value = row[width];
        if !value.is_integer() {
            return Err(ConfigError::NonIntegral);
        }
        let node = unknown[col];
        next.nodes[node].winding = Some(value.to_integer());
        assigned.push(c.nodes[node].name.clone());
    }
    let underdetermined = next
        .nodes
        .iter()
        .filter(|n| n.winding.is_none())
        .map(|n| n.name.clone())
        .collect();
    Ok(Propagation {
        config: next,
        assigned,
        underdetermined,
    })
}

/// Reduced row echelon form in place; returns the pivot column of each leading row.
fn reduce(rows: &mut [Vec<Rational64>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        let Some(p) = (top..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let lead = rows[top][col];
        for v in rows[top].iter_mut() {
            *v /= lead;
        }
        debug_assert!(rows[top][col].is_one());
        for i in 0..rows.len() {
            if i != top && !rows[i][col].is_zero() {
                let factor = rows[i][col];
                let pivot = rows[top].clone();
                for (x, p) in rows[i].iter_mut().zip(pivot) {
                    *x -= factor * p;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}
