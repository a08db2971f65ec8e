//! Germs at the tacnode modulo its Jacobian ideal `(w, z^3)`.

use super::BraidError;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in `z` and `w` with integer coefficients, keyed by `(deg_z, deg_w)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Poly(BTreeMap<(u32, u32), i64>);

impl Poly {
    pub fn constant(c: i64) -> Self {
        Poly::monomial(c, 0, 0)
    }

    pub fn monomial(c: i64, z: u32, w: u32) -> Self {
        let mut p = Poly::default();
        p.add_term(c, z, w);
        p
    }

    fn add_term(&mut self, c: i64, z: u32, w: u32) {
        let entry = self.0.entry((z, w)).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.0.remove(&(z, w));
        }
    }

    pub fn coeff(&self, z: u32, w: u32) -> i64 {
        self.0.get(&(z, w)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.0.iter().map(|(&k, &c)| (k, c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for ((z, w), c) in other.terms() {
            out.add_term(c, z, w);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Poly {
        let mut out = Poly::default();
        for ((z, w), c) in self.terms() {
            out.add_term(k * c, z, w);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for ((z1, w1), c1) in self.terms() {
            for ((z2, w2), c2) in other.terms() {
                out.add_term(c1 * c2, z1 + z2, w1 + w2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(1), |acc, _| acc.mul(self))
    }

    pub fn d_dz(&self) -> Poly {
        let mut out = Poly::default();
        for ((z, w), c) in self.terms().filter(|((z, _), _)| *z > 0) {
            out.add_term(c * z as i64, z - 1, w);
        }
        out
    }

    pub fn d_dw(&self) -> Poly {
        let mut out = Poly::default();
        for ((z, w), c) in self.terms().filter(|((_, w), _)| *w > 0) {
            out.add_term(c * w as i64, z, w - 1);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, ((z, w), c)) in self.terms().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let sep = if i > 0 { " " } else { "" };
            let gap = if i > 0 { " " } else { "" };
            write!(f, "{sep}{sign}{gap}")?;
            let mut factors = Vec::new();
            if c.abs() != 1 || (z == 0 && w == 0) {
                factors.push(c.abs().to_string());
            }
            for (var, e) in [("z", z), ("w", w)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Parse an integer polynomial in `z` and `w`. Accepts `+`, `-`, `*` or `·`,
/// juxtaposition, `^` with a non-negative integer exponent, and parentheses.
pub fn parse_poly(text: &str) -> Result<Poly, BraidError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut parser = Parser {
        chars,
        pos: 0,
        len: text.len(),
    };
    let p = parser.sum()?;
    match parser.peek() {
        None => Ok(p),
        Some(c) => Err(parser.error(format!("unexpected {c:?}"))),
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, msg: String) -> BraidError {
        let pos = self.chars.get(self.pos).map_or(self.len, |&(i, _)| i);
        BraidError::Parse { pos, msg }
    }

    fn sign(&mut self) -> Option<i64> {
        let s = match self.peek()? {
            '+' => 1,
            '-' | '−' => -1,
            _ => return None,
        };
        self.pos += 1;
        Some(s)
    }

    fn sum(&mut self) -> Result<Poly, BraidError> {
        let mut acc = Poly::default();
        let mut sign = self.sign().unwrap_or(1);
        loop {
            acc = acc.add(&self.product()?.scale(sign));
            match self.sign() {
                Some(s) => sign = s,
                None => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly, BraidError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(c) if c.is_ascii_digit() || c == 'z' || c == 'w' || c == '(' => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, BraidError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.integer()?;
        let e = u32::try_from(e).map_err(|_| self.error("exponent too large".into()))?;
        Ok(base.pow(e))
    }

    fn integer(&mut self) -> Result<i64, BraidError> {
        let start = self.pos;
        let mut value: i64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as i64))
                .ok_or_else(|| self.error("integer overflow".into()))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer".into()));
        }
        Ok(value)
    }

    fn atom(&mut self) -> Result<Poly, BraidError> {
        match self.peek() {
            Some('z') => {
                self.pos += 1;
                Ok(Poly::monomial(1, 1, 0))
            }
            Some('w') => {
                self.pos += 1;
                Ok(Poly::monomial(1, 0, 1))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(self.integer()?)),
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

/// Class in `Q[z, w] / (w, z^3)`, stored as `a + b z + c z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Germ(pub [Rational64; 3]);

impl Germ {
    pub fn value_at_origin(&self) -> Rational64 {
        self.0[0]
    }

    pub fn slope_at_origin(&self) -> Rational64 {
        self.0[1]
    }

    /// `-c z^2` with `c > 0`.
    pub fn is_negative_square(&self) -> bool {
        self.0[0].is_zero() && self.0[1].is_zero() && self.0[2].is_negative()
    }

    pub fn mul(&self, other: &Germ) -> Germ {
        let mut out = [Rational64::zero(); 3];
        for i in 0..3 {
            for j in 0..3 - i {
                out[i + j] += self.0[i] * other.0[j];
            }
        }
        Germ(out)
    }
}

impl From<&Poly> for Germ {
    fn from(p: &Poly) -> Self {
        Germ([0, 1, 2].map(|z| Rational64::from(p.coeff(z, 0))))
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Dimension of `Q[z, w] / I` for an ideal generated by monomials (up to
/// scalars). `None` if a generator is not a monomial or the quotient is infinite.
pub fn quotient_dimension(generators: &[Poly]) -> Option<usize> {
    let mut leads = Vec::new();
    for g in generators {
        let mut terms = g.terms();
        let ((z, w), _) = terms.next()?;
        if terms.next().is_some() {
            return None;
        }
        leads.push((z, w));
    }
    let z_bound = leads.iter().filter(|l| l.1 == 0).map(|l| l.0).min()?;
    let w_bound = leads.iter().filter(|l| l.0 == 0).map(|l| l.1).min()?;
    let standard = (0..z_bound)
        .flat_map(|z| (0..w_bound).map(move |w| (z, w)))
        .filter(|&(z, w)| !leads.iter().any(|&(lz, lw)| z >= lz && w >= lw))
        .count();
    Some(standard)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    /// `f` reduces to a nonzero multiple of `z^2`.
    pub f_quadratic: bool,
    pub h1_nonvanishing: bool,
    pub h2_vanishing: bool,
    pub h2_slope_nonzero: bool,
    pub h3_nonvanishing: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.f_quadratic
            && self.h1_nonvanishing
            && self.h2_vanishing
            && self.h2_slope_nonzero
            && self.h3_nonvanishing
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanReport {
    pub quotient_dim: usize,
    /// `f h1`, `h2`, `h3` in the basis `1, z, z^2`.
    pub vectors: Vec<[String; 3]>,
    pub f_reduced: String,
    pub matrix_rank: usize,
    pub spans: bool,
    pub conditions: Conditions,
    /// The sufficient conditions are not contradicted: they fail, or spanning holds.
    pub conditions_imply_span: bool,
}

fn rank3(rows: &[[Rational64; 3]; 3]) -> usize {
    let mut m = *rows;
    let mut rank = 0;
    for col in 0..3 {
        let Some(p) = (rank..3).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..3 {
            if i != rank && !m[i][col].is_zero() {
                let factor = m[i][col] / m[rank][col];
                let pivot = m[rank];
                for (x, p) in m[i].iter_mut().zip(pivot) {
                    *x -= factor * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whether `f h1`, `h2`, `h3` span `Q[z, w] / (w, z^3)`.
pub fn versal_span_check(f: &Germ, h1: &Germ, h2: &Germ, h3: &Germ) -> SpanReport {
    let tacnode = parse_poly("w^2 - z^4").expect("fixed expression");
    let quotient_dim =
        quotient_dimension(&[tacnode.d_dz(), tacnode.d_dw()]).expect("monomial Jacobian ideal");
    let rows = [f.mul(h1).0, h2.0, h3.0];
    let matrix_rank = rank3(&rows);
    let conditions = Conditions {
        f_quadratic: f.0[0].is_zero() && f.0[1].is_zero() && !f.0[2].is_zero(),
        h1_nonvanishing: !h1.value_at_origin().is_zero(),
        h2_vanishing: h2.value_at_origin().is_zero(),
        h2_slope_nonzero: !h2.slope_at_origin().is_zero(),
        h3_nonvanishing: !h3.value_at_origin().is_zero(),
    };
    let spans = matrix_rank == quotient_dim;
    SpanReport {
        quotient_dim,
        vectors: rows.iter().map(|r| r.map(|c| c.to_string())).collect(),
        f_reduced: f.to_string(),
        matrix_rank,
        spans,
        conditions_imply_span: !conditions.all() || spans,
        conditions,
    }
}
