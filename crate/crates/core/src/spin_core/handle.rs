//! Extending a framing across a 1-handle, and forgetting it again.

use super::{Constraint, SpinError, SurfaceSig, TrackedCurve, WindingState};
use crate::linalg::rank_q;
use serde::{Deserialize, Serialize};

/// Where the feet of the attached band land.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HandleEnds {
    /// Two distinct boundary components merge; genus goes up by one.
    Across { a: usize, b: usize },
    /// Both feet on one boundary component, which splits in two; the first
    /// new component gets `first_value`.
    Within { component: usize, first_value: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleRecord {
    pub ends: HandleEnds,
    marked_before: usize,
    constraints_before: usize,
    sig_before: SurfaceSig,
    form_before: Option<Vec<Vec<i64>>>,
    marks_before: Option<Vec<usize>>,
}

impl WindingState {
    pub fn gram(&self) -> Vec<Vec<i64>> {
        if let Some(f) = &self.form {
            return f.clone();
        }
        let dim = self.dim();
        let unit = |i: usize| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v
        };
        (0..dim)
            .map(|i| (0..dim).map(|j| self.pairing(&unit(i), &unit(j))).collect())
            .collect()
    }

    /// Attach a band and extend the framing so the curve `name` running once
    /// over it has winding `w`. `pairings[j] = <new, e_j>` on the old coordinates.
    pub fn extend_over_handle(
        &self,
        ends: HandleEnds,
        pairings: &[i64],
        w: i64,
        name: &str,
    ) -> Result<Self, SpinError> {
        if self.sig.r != 0 {
            return Err(SpinError::NotAFraming);
        }
        let dim = self.dim();
        if pairings.len() != dim {
            return Err(SpinError::Dimension {
                expected: dim,
                got: pairings.len(),
            });
        }
        let marks = self.boundary_indices();
        let gram = self.gram();
        let mut form: Vec<Vec<i64>> = gram
            .iter()
            .zip(pairings)
            .map(|(row, &p)| row.iter().copied().chain([-p]).collect())
            .collect();
        form.push(pairings.iter().copied().chain([0]).collect());

        let record = HandleRecord {
            ends: ends.clone(),
            marked_before: self.marked.len(),
            constraints_before: self.constraints.len(),
            sig_before: self.sig,
            form_before: self.form.clone(),
            marks_before: self.boundary_marks.clone(),
        };

        let mut next = self.clone();
        for m in &mut next.marked {
            m.homology.push(0);
        }
        let new_pair = |h: &[i64]| h.iter().zip(pairings).map(|(a, b)| a * b).sum::<i64>();
        let mut unit = vec![0; dim + 1];
        unit[dim] = 1;

        let mut new_marks: Vec<usize>;
        match ends {
            HandleEnds::Across { a, b } => {
                let count = marks.len();
                for &i in &[a, b] {
                    if i >= count {
                        return Err(SpinError::BoundaryIndex { index: i, count });
                    }
                }
                if a == b {
                    return Err(SpinError::Handle(
                        "Across needs two distinct components".into(),
                    ));
                }
                let (da, db) = (&self.marked[marks[a]], &self.marked[marks[b]]);
                if new_pair(&da.homology) == 0 {
                    return Err(SpinError::Handle(
                        "new curve must cross the merged boundary".into(),
                    ));
                }
                for (k, &mi) in marks.iter().enumerate() {
                    if k != a && k != b && new_pair(&self.marked[mi].homology) != 0 {
                        return Err(SpinError::Handle(format!("new curve meets boundary {k}")));
                    }
                }
                if new_pair(&da.homology) + new_pair(&db.homology) != 0 {
                    return Err(SpinError::Handle(
                        "merged boundary would not be peripheral".into(),
                    ));
                }
                if rank_q(&form) != rank_q(&gram) + 2 {
                    return Err(SpinError::Handle("form rank must grow by two".into()));
                }
                let merged: Vec<i64> = da
                    .homology
                    .iter()
                    .zip(&db.homology)
                    .map(|(x, y)| x + y)
                    .chain([0])
                    .collect();
                let merged_value = da.winding + db.winding - 1;
                next.marked.push(TrackedCurve::new(name, unit, w));
                next.marked.push(TrackedCurve::new(
                    format!("{name}.bd"),
                    merged,
                    merged_value,
                ));
                new_marks = marks
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != a && *k != b)
                    .map(|(_, &i)| i)
                    .collect();
                new_marks.push(next.marked.len() - 1);
                next.sig.genus += 1;
                next.sig.boundary -= 1;
            }
            HandleEnds::Within {
                component,
                first_value,
            } => {
                if self.form.is_some() {
                    return Err(SpinError::Handle(
                        "Within is supported on the standard form only".into(),
                    ));
                }
                let count = marks.len();
                if component >= count {
                    return Err(SpinError::BoundaryIndex {
                        index: component,
                        count,
                    });
                }
                let g2 = 2 * self.sig.genus;
                if pairings[g2..].iter().any(|&p| p != 0) {
                    return Err(SpinError::Handle(
                        "new curve must miss boundary classes".into(),
                    ));
                }
                let x = solve_chain(self.sig.genus, &pairings[..g2]);
                let c = &self.marked[marks[component]];
                let mut first: Vec<i64> = unit.clone();
                for (slot, xi) in first.iter_mut().zip(&x) {
                    *slot -= xi;
                }
                let second: Vec<i64> = c
                    .homology
                    .iter()
                    .chain([&0])
                    .zip(&first)
                    .map(|(a, b)| a - b)
                    .collect();
                if rank_q(&form) != rank_q(&gram) {
                    return Err(SpinError::Handle("form rank must not change".into()));
                }
                let split_value = c.winding - 1 - first_value;
                next.marked.push(TrackedCurve::new(name, unit, w));
                next.marked
                    .push(TrackedCurve::new(format!("{name}.bd0"), first, first_value));
                next.marked.push(TrackedCurve::new(
                    format!("{name}.bd1"),
                    second,
                    split_value,
                ));
                let n = next.marked.len();
                new_marks = marks
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != component)
                    .map(|(_, &i)| i)
                    .collect();
                new_marks.extend([n - 2, n - 1]);
                next.sig.boundary += 1;
            }
        }

        next.form = Some(form);
        next.constraints.push(Constraint {
            curves: new_marks
                .iter()
                .map(|&i| next.marked[i].name.clone())
                .collect(),
            chi: next.sig.euler(),
        });
        next.boundary_marks = Some(new_marks);
        next.handles.push(record);
        next.validate()?;
        Ok(next)
    }

    /// Undo the most recent `extend_over_handle`.
    pub fn forget_handle(&self) -> Result<Self, SpinError> {
        let mut next = self.clone();
        let record = next.handles.pop().ok_or(SpinError::NoHandle)?;
        next.marked.truncate(record.marked_before);
        for m in &mut next.marked {
            m.homology.pop();
        }
        next.constraints.truncate(record.constraints_before);
        next.sig = record.sig_before;
        next.form = record.form_before;
        next.boundary_marks = record.marks_before;
        Ok(next)
    }
}

/// Solve `<x, e_j> = p_j` for `x` on the standard chain form (`x_{j-1} - x_{j+1} = p_j`).
fn solve_chain(genus: usize, p: &[i64]) -> Vec<i64> {
    let n = 2 * genus;
    let mut x = vec![0; n];
    if n == 0 {
        return x;
    }
    let mut j = 0;
    while j + 1 < n {
        let prev = if j >= 1 { x[j - 1] } else { 0 };
        x[j + 1] = prev - p[j];
        j += 2;
    }
    let mut j = n - 1;
    loop {
        let next = if j + 1 < n { x[j + 1] } else { 0 };
        x[j - 1] = p[j] + next;
        if j < 3 {
            break;
        }
        j -= 2;
    }
    x
}
