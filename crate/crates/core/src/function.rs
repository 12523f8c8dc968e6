//! Elements of the function field of the Hermitian curve written as `h / x^N`,
//! where `h` lives in the coordinate ring `F[x, y] / (y^q + y - x^(q+1))` and
//! is kept reduced to y-degree below `q`.

use std::fmt;

use crate::field::{Elem, FieldSpec};

/// Polynomial in the coordinate ring, reduced so that every monomial
/// `x^i y^j` has `j < q`. `rows[j][i]` is the coefficient of `x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurvePoly {
    q: u32,
    rows: Vec<Vec<Elem>>,
}

impl CurvePoly {
    pub fn zero(q: u32) -> Self {
        CurvePoly { q, rows: vec![Vec::new(); q as usize] }
    }

    pub fn constant(q: u32, c: Elem) -> Self {
        Self::monomial(q, 0, 0, c)
    }

    /// `c x^i y^j` with `j < q`.
    pub fn monomial(q: u32, i: u32, j: u32, c: Elem) -> Self {
        assert!(j < q, "use CurvePoly::monomial_in for y-degree >= q");
        let mut rows = vec![Vec::new(); q as usize];
        if !c.is_zero() {
            rows[j as usize] = vec![Elem::ZERO; i as usize + 1];
            rows[j as usize][i as usize] = c;
        }
        CurvePoly { q, rows }
    }

    /// `c x^i y^j` for any `j`, reduced.
    pub fn monomial_in(field: &FieldSpec, q: u32, i: u32, j: u32, c: Elem) -> Self {
        let mut rows = vec![Vec::new(); (j.max(q - 1) + 1) as usize];
        if !c.is_zero() {
            rows[j as usize] = vec![Elem::ZERO; i as usize + 1];
            rows[j as usize][i as usize] = c;
        }
        let mut p = CurvePoly { q, rows };
        p.reduce(field);
        p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    fn trim(&mut self) {
        for r in &mut self.rows {
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
    }

    /// Apply `y^q = x^(q+1) - y` until every row index is below `q`.
    fn reduce(&mut self, field: &FieldSpec) {
        let q = self.q as usize;
        while self.rows.len() > q {
            let j = self.rows.len() - 1;
            let row = self.rows.pop().unwrap();
            if row.iter().all(|c| c.is_zero()) {
                continue;
            }
            // y^j = y^(j-q) x^(q+1) - y^(j-q+1)
            let lo = j - q;
            let shifted = &mut self.rows[lo];
            if shifted.len() < row.len() + q + 1 {
                shifted.resize(row.len() + q + 1, Elem::ZERO);
            }
            for (i, &c) in row.iter().enumerate() {
                shifted[i + q + 1] = field.add(shifted[i + q + 1], c);
            }
            let up = &mut self.rows[lo + 1];
            if up.len() < row.len() {
                up.resize(row.len(), Elem::ZERO);
            }
            for (i, &c) in row.iter().enumerate() {
                up[i] = field.sub(up[i], c);
            }
        }
        self.trim();
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn coeff(&self, i: u32, j: u32) -> Elem {
        self.rows
            .get(j as usize)
            .and_then(|r| r.get(i as usize))
            .copied()
            .unwrap_or(Elem::ZERO)
    }

    /// Nonzero terms as `(i, j, c)`, ordered by `j` then `i`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Elem)> + '_ {
        self.rows.iter().enumerate().flat_map(|(j, r)| {
            r.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, &c)| (i as u32, j as u32, c))
        })
    }

    pub fn x_rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    /// Pole order at infinity: `max(q i + (q+1) j)` over the monomials
    /// (distinct for reduced monomials, so no cancellation occurs).
    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms().map(|(i, j, _)| self.q * i + (self.q + 1) * j).max()
    }

    /// Largest `k` with `x^k | h`; `None` for zero.
    pub fn x_order(&self) -> Option<u32> {
        self.rows
            .iter()
            .filter_map(|r| r.iter().position(|c| !c.is_zero()))
            .min()
            .map(|k| k as u32)
    }

    pub fn shift_x(&self, k: i64) -> CurvePoly {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                if r.is_empty() {
                    Vec::new()
                } else if k >= 0 {
                    let mut v = vec![Elem::ZERO; k as usize];
                    v.extend_from_slice(r);
                    v
                } else {
                    let drop = (-k) as usize;
                    assert!(r[..drop.min(r.len())].iter().all(|c| c.is_zero()), "x does not divide");
                    r[drop.min(r.len())..].to_vec()
                }
            })
            .collect();
        let mut p = CurvePoly { q: self.q, rows };
        p.trim();
        p
    }

    pub fn add(&self, field: &FieldSpec, other: &CurvePoly) -> CurvePoly {
        self.combine(other, |a, b| field.add(a, b))
    }

    pub fn sub(&self, field: &FieldSpec, other: &CurvePoly) -> CurvePoly {
        self.combine(other, |a, b| field.sub(a, b))
    }

    fn combine(&self, other: &CurvePoly, op: impl Fn(Elem, Elem) -> Elem) -> CurvePoly {
        let n = self.rows.len().max(other.rows.len());
        let rows = (0..n)
            .map(|j| {
                let a = self.rows.get(j).map(Vec::as_slice).unwrap_or(&[]);
                let b = other.rows.get(j).map(Vec::as_slice).unwrap_or(&[]);
                (0..a.len().max(b.len()))
                    .map(|i| {
                        op(
                            a.get(i).copied().unwrap_or(Elem::ZERO),
                            b.get(i).copied().unwrap_or(Elem::ZERO),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut p = CurvePoly { q: self.q, rows };
        p.trim();
        p
    }

    pub fn scale(&self, field: &FieldSpec, c: Elem) -> CurvePoly {
        let rows = self.rows.iter().map(|r| r.iter().map(|&a| field.mul(a, c)).collect()).collect();
        let mut p = CurvePoly { q: self.q, rows };
        p.trim();
        p
    }

    pub fn mul(&self, field: &FieldSpec, other: &CurvePoly) -> CurvePoly {
        let q = self.q as usize;
        let mut rows = vec![Vec::new(); 2 * q - 1];
        for (j1, r1) in self.rows.iter().enumerate() {
            for (j2, r2) in other.rows.iter().enumerate() {
                if r1.is_empty() || r2.is_empty() {
                    continue;
                }
                let dst: &mut Vec<Elem> = &mut rows[j1 + j2];
                if dst.len() < r1.len() + r2.len() - 1 {
                    dst.resize(r1.len() + r2.len() - 1, Elem::ZERO);
                }
                for (i1, &a) in r1.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (i2, &b) in r2.iter().enumerate() {
                        if !b.is_zero() {
                            dst[i1 + i2] = field.add(dst[i1 + i2], field.mul(a, b));
                        }
                    }
                }
            }
        }
        let mut p = CurvePoly { q: self.q, rows };
        p.reduce(field);
        p
    }

    pub fn eval(&self, field: &FieldSpec, x: Elem, y: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut ypow = Elem::ONE;
        for r in &self.rows {
            let px = r.iter().rev().fold(Elem::ZERO, |s, &c| field.add(field.mul(s, x), c));
            acc = field.add(acc, field.mul(px, ypow));
            ypow = field.mul(ypow, y);
        }
        acc
    }

    pub fn display(&self, field: &FieldSpec) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .map(|(i, j, c)| format!("({}) x^{i} y^{j}", field.format(c)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `numerator / x^denom_exp` in canonical form: when `denom_exp > 0` the
/// numerator is not divisible by `x`. Zero is `0 / x^0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionElement {
    numerator: CurvePoly,
    denom_exp: u32,
}

impl FunctionElement {
    pub fn new(numerator: CurvePoly, denom_exp: u32) -> Self {
        let mut f = FunctionElement { numerator, denom_exp };
        f.canonicalize();
        f
    }

    pub fn zero(q: u32) -> Self {
        FunctionElement { numerator: CurvePoly::zero(q), denom_exp: 0 }
    }

    pub fn one(q: u32) -> Self {
        Self::constant(q, Elem::ONE)
    }

    pub fn constant(q: u32, c: Elem) -> Self {
        FunctionElement { numerator: CurvePoly::constant(q, c), denom_exp: 0 }
    }

    /// `x^i y^j / x^n`.
    pub fn monomial_ratio(q: u32, i: u32, j: u32, n: u32) -> Self {
        Self::new(CurvePoly::monomial(q, i, j, Elem::ONE), n)
    }

    fn canonicalize(&mut self) {
        if self.numerator.is_zero() {
            self.denom_exp = 0;
            return;
        }
        let k = self.numerator.x_order().unwrap_or(0).min(self.denom_exp);
        if k > 0 {
            self.numerator = self.numerator.shift_x(-(k as i64));
            self.denom_exp -= k;
        }
    }

    pub fn numerator(&self) -> &CurvePoly {
        &self.numerator
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn q(&self) -> u32 {
        self.numerator.q()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn lift(&self, n: u32) -> CurvePoly {
        self.numerator.shift_x((n - self.denom_exp) as i64)
    }

    pub fn add(&self, field: &FieldSpec, other: &FunctionElement) -> FunctionElement {
        let n = self.denom_exp.max(other.denom_exp);
        Self::new(self.lift(n).add(field, &other.lift(n)), n)
    }

    pub fn sub(&self, field: &FieldSpec, other: &FunctionElement) -> FunctionElement {
        let n = self.denom_exp.max(other.denom_exp);
        Self::new(self.lift(n).sub(field, &other.lift(n)), n)
    }

    pub fn scale(&self, field: &FieldSpec, c: Elem) -> FunctionElement {
        Self::new(self.numerator.scale(field, c), self.denom_exp)
    }

    pub fn mul(&self, field: &FieldSpec, other: &FunctionElement) -> FunctionElement {
        Self::new(self.numerator.mul(field, &other.numerator), self.denom_exp + other.denom_exp)
    }

    /// Scalar multiple whose monomial of largest weight has coefficient 1.
    pub fn monic(&self, field: &FieldSpec) -> FunctionElement {
        let q = self.q();
        let Some((_, _, c)) = self.numerator.terms().max_by_key(|&(i, j, _)| q * i + (q + 1) * j) else {
            return self.clone();
        };
        self.scale(field, field.inv(c).expect("nonzero leading coefficient"))
    }

    /// `sum c_ij x^i y^j / x^N` text form.
    pub fn display(&self, field: &FieldSpec) -> String {
        format!("{} / x^{}", self.numerator.display(field), self.denom_exp)
    }
}

impl fmt::Display for CurvePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(i, j, c)| format!("[{}]x^{i}y^{j}", c.index())).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
