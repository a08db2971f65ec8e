//! Integer invariants of multidegrees of complete intersection curves.
//!
//! A multidegree `(d_1, ..., d_{n-1})` cuts a curve out of projective `n`-space.
//! Everything here is exact integer arithmetic.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumerologyError {
    #[error("a multidegree needs at least one entry")]
    Empty,
    #[error("multidegree entries must be at least 1, got {0}")]
    NonPositive(i64),
    #[error("enumeration needs max_genus >= 0 or max_r >= 0")]
    Unbounded,
    #[error("cannot parse multidegree {0:?}")]
    Parse(String),
}

/// Degrees stored sorted in descending order, so equal multidegrees compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Multidegree(Vec<i64>);

impl TryFrom<Vec<i64>> for Multidegree {
    type Error = NumerologyError;

    fn try_from(mut degrees: Vec<i64>) -> Result<Self, Self::Error> {
        if degrees.is_empty() {
            return Err(NumerologyError::Empty);
        }
        if let Some(&bad) = degrees.iter().find(|&&d| d < 1) {
            return Err(NumerologyError::NonPositive(bad));
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Multidegree(degrees))
    }
}

impl From<Multidegree> for Vec<i64> {
    fn from(d: Multidegree) -> Self {
        d.0
    }
}

impl std::str::FromStr for Multidegree {
    type Err = NumerologyError;

    /// Parses `"3,2"` or `"3 2"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parsed: Result<Vec<i64>, _> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect();
        parsed
            .map_err(|_| NumerologyError::Parse(s.to_string()))
            .and_then(Multidegree::try_from)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Genus0,
    Genus1,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub r_index: i64,
    pub genus: i64,
    pub regime: Regime,
}

impl Multidegree {
    pub fn new(degrees: &[i64]) -> Result<Self, NumerologyError> {
        Multidegree::try_from(degrees.to_vec())
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    /// Dimension of the ambient projective space.
    pub fn ambient_dim(&self) -> i64 {
        self.0.len() as i64 + 1
    }

    pub fn product(&self) -> i64 {
        self.0.iter().product()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn r_index(&self) -> i64 {
        self.sum() - self.ambient_dim() - 1
    }

    /// Exact genus; rational curves (negative r-index) report 0.
    pub fn genus(&self) -> i64 {
        let r = self.r_index();
        if r < 0 {
            return 0;
        }
        let twice = self.product() * r + 2;
        assert!(
            twice % 2 == 0,
            "odd Π·r for {self}: arithmetic invariant broken"
        );
        twice / 2
    }

    pub fn regime(&self) -> Regime {
        match self.r_index() {
            r if r < 0 => Regime::Genus0,
            0 => Regime::Genus1,
            _ => Regime::General,
        }
    }

    pub fn invariants(&self) -> CurveInvariants {
        CurveInvariants {
            r_index: self.r_index(),
            genus: self.genus(),
            regime: self.regime(),
        }
    }

    /// A line, or no entry equal to 1.
    pub fn is_reduced(&self) -> bool {
        self.0 == [1] || self.0.iter().all(|&d| d >= 2)
    }

    /// `(d⁺, d′, N)`: bump the last degree, replace it by 1, and the curve degree.
    pub fn induction_data(&self) -> (Multidegree, Multidegree, i64) {
        let mut plus = self.0.clone();
        let mut prime = self.0.clone();
        let last = plus.len() - 1;
        plus[last] += 1;
        prime[last] = 1;
        (
            Multidegree::try_from(plus).expect("entries stay positive"),
            Multidegree::try_from(prime).expect("entries stay positive"),
            self.product(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub degrees: Multidegree,
    pub genus: i64,
    pub r: i64,
}

/// Reduced multidegrees with `genus <= max_genus` or `r <= max_r`.
///
/// Growing an entry or appending an entry `>= 2` never lowers the genus or
/// the r-index, so the search stops at the first sequence failing both bounds.
pub fn enumerate_reduced(max_genus: i64, max_r: i64) -> Result<Vec<TableRow>, NumerologyError> {
    if max_genus < 0 && max_r < 0 {
        return Err(NumerologyError::Unbounded);
    }
    let accepts = |d: &Multidegree| d.genus() <= max_genus || d.r_index() <= max_r;

    let mut found = Vec::new();
    let line = Multidegree(vec![1]);
    if accepts(&line) {
        found.push(line);
    }
    let mut prefix = Vec::new();
    extend_prefix(&mut prefix, i64::MAX, &accepts, &mut found);

    let mut rows: Vec<TableRow> = found
        .into_iter()
        .map(|d| TableRow {
            genus: d.genus(),
            r: d.r_index(),
            degrees: d,
        })
        .collect();
    rows.sort_by(|a, b| {
        (a.genus, a.degrees.0.len(), &a.degrees.0).cmp(&(b.genus, b.degrees.0.len(), &b.degrees.0))
    });
    Ok(rows)
}

fn extend_prefix(
    prefix: &mut Vec<i64>,
    cap: i64,
    accepts: &dyn Fn(&Multidegree) -> bool,
    out: &mut Vec<Multidegree>,
) {
    let mut e = 2;
    while e <= cap {
        prefix.push(e);
        let candidate = Multidegree(prefix.clone());
        if !accepts(&candidate) {
            prefix.pop();
            break;
        }
        out.push(candidate);
        extend_prefix(prefix, e, accepts, out);
        prefix.pop();
        e += 1;
    }
}

pub fn table_tsv(rows: &[TableRow]) -> String {
    let mut s = String::from("degrees\tgenus\tr\n");
    for row in rows {
        s.push_str(&format!("{}\t{}\t{}\n", row.degrees, row.genus, row.r));
    }
    s
}
