//! Riemann–Roch spaces `L(a_1 Q_1 + ... + a_m Q_m)` for points `Q_i` on the
//! line `x = 0`, with explicit bases of the form `h / x^N`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use crate::curve::HermitianCurve;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::function::{CurvePoly, FunctionElement};
use crate::linalg::Matrix;
use crate::series;

/// Tuple `(a_1, ..., a_m)` of nonnegative integers, ordered componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorVector(Vec<u32>);

impl DivisorVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DivisorVector(entries)
    }

    pub fn zero(m: usize) -> Self {
        DivisorVector(vec![0; m])
    }

    /// `e_k` (zero-based `k`).
    pub fn unit(m: usize, k: usize) -> Self {
        let mut v = vec![0; m];
        v[k] = 1;
        DivisorVector(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, k: usize) -> u32 {
        self.0[k]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &DivisorVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DivisorVector) -> DivisorVector {
        DivisorVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn plus_unit(&self, k: usize) -> DivisorVector {
        let mut v = self.0.clone();
        v[k] += 1;
        DivisorVector(v)
    }

    pub fn minus_unit(&self, k: usize) -> Option<DivisorVector> {
        let mut v = self.0.clone();
        v[k] = v[k].checked_sub(1)?;
        Some(DivisorVector(v))
    }

    pub fn with(&self, k: usize, value: u32) -> DivisorVector {
        let mut v = self.0.clone();
        v[k] = value;
        DivisorVector(v)
    }

    /// Componentwise maximum.
    pub fn lub(items: &[DivisorVector]) -> Result<DivisorVector> {
        let first = items.first().ok_or(Error::EmptyLub)?;
        let mut out = first.0.clone();
        for it in &items[1..] {
            if it.m() != out.len() {
                return Err(Error::ArityMismatch { expected: out.len(), got: it.m() });
            }
            for (o, &x) in out.iter_mut().zip(&it.0) {
                *o = (*o).max(x);
            }
        }
        Ok(DivisorVector(out))
    }

    /// Every tuple `b` with `0 <= b <= self`, in lexicographic order.
    pub fn box_points(&self) -> Vec<DivisorVector> {
        let mut out = vec![DivisorVector(Vec::new())];
        for &hi in &self.0 {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=hi).map(move |x| {
                        let mut v = p.0.clone();
                        v.push(x);
                        DivisorVector(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for DivisorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DivisorVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        t.split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad tuple entry {x:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(DivisorVector)
    }
}

impl From<Vec<u32>> for DivisorVector {
    fn from(v: Vec<u32>) -> Self {
        DivisorVector(v)
    }
}

/// Basis of `L(a)`. Every element is `h / x^N` with `N = max a_i`; the basis
/// vectors have distinct leading monomials (largest pole order at infinity).
#[derive(Clone, Debug)]
pub struct RRBasis {
    pub divisor: DivisorVector,
    pub basis: Vec<FunctionElement>,
    /// Candidate monomials `(i, j)` for the numerator, by increasing weight.
    pub monomials: Vec<(u32, u32)>,
    /// Coefficient vector of each basis element over `monomials`.
    pub coefficients: Vec<Vec<Elem>>,
    pub denom_exp: u32,
}

impl RRBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Linear combination `sum c_i b_i`.
    pub fn combine(&self, field: &FieldSpec, coeffs: &[Elem]) -> FunctionElement {
        let q = self.basis.first().map(|b| b.q()).unwrap_or(2);
        let mut h = CurvePoly::zero(q);
        for (v, &c) in self.coefficients.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (&(i, j), &x) in self.monomials.iter().zip(v) {
                if !x.is_zero() {
                    h = h.add(field, &CurvePoly::monomial(q, i, j, field.mul(c, x)));
                }
            }
        }
        FunctionElement::new(h, self.denom_exp)
    }
}

/// Riemann–Roch spaces for a fixed choice of `Q_1, ..., Q_m`.
#[derive(Debug)]
pub struct RiemannRoch {
    curve: Arc<HermitianCurve>,
    /// Place indices of `Q_1, ..., Q_m`.
    q_places: Vec<usize>,
    /// All places on `x = 0`, with the position of each in `q_places`.
    x0: Vec<(usize, Option<usize>)>,
    /// `y(t)^j` at each `x = 0` place, `j < q`.
    ypow: Vec<Vec<Vec<Elem>>>,
    dims: RwLock<HashMap<DivisorVector, usize>>,
    bases: RwLock<HashMap<DivisorVector, Arc<RRBasis>>>,
}

impl RiemannRoch {
    /// `q_indices` index into the list of places on `x = 0`.
    pub fn new(curve: Arc<HermitianCurve>, q_indices: &[usize]) -> Result<Self> {
        let x0 = curve.x0_places();
        let q = curve.q() as usize;
        if q_indices.is_empty() {
            return Err(Error::InvalidPoints("at least one point Q is needed".into()));
        }
        if q_indices.len() > q {
            return Err(Error::InvalidPoints(format!(
                "{} points requested but only {q} places lie on x = 0",
                q_indices.len()
            )));
        }
        let mut q_places = Vec::new();
        for &i in q_indices {
            let p = *x0
                .get(i)
                .ok_or_else(|| Error::InvalidPoints(format!("index {i} out of range for {} places on x = 0", x0.len())))?;
            if q_places.contains(&p) {
                return Err(Error::InvalidPoints(format!("index {i} repeated")));
            }
            q_places.push(p);
        }
        let len = crate::curve::CACHED_PRECISION + 1;
        let ypow = x0.iter().map(|&p| Self::y_powers(&curve, p, len)).collect();
        let x0 = x0.iter().map(|&p| (p, q_places.iter().position(|&qp| qp == p))).collect();
        Ok(RiemannRoch { curve, q_places, x0, ypow, dims: RwLock::default(), bases: RwLock::default() })
    }

    fn y_powers(curve: &HermitianCurve, place: usize, len: usize) -> Vec<Vec<Elem>> {
        let f = curve.field();
        let y = curve.branch_expand(place, len - 1).expect("affine").y_series;
        let mut out = vec![series::one(len)];
        for _ in 1..curve.q() {
            let next = series::mul(f, out.last().unwrap(), &y, len);
            out.push(next);
        }
        out
    }

    pub fn curve(&self) -> &Arc<HermitianCurve> {
        &self.curve
    }

    pub fn m(&self) -> usize {
        self.q_places.len()
    }

    pub fn q_places(&self) -> &[usize] {
        &self.q_places
    }

    pub fn genus(&self) -> u32 {
        self.curve.genus()
    }

    fn check_arity(&self, a: &DivisorVector) -> Result<()> {
        if a.m() != self.m() {
            return Err(Error::ArityMismatch { expected: self.m(), got: a.m() });
        }
        Ok(())
    }

    /// Monomials `x^i y^j` (`j < q`) of weight `q i + (q+1) j <= q n`, by weight.
    fn candidates(&self, n: u32) -> Vec<(u32, u32)> {
        let q = self.curve.q();
        let mut out: Vec<(u32, u32)> = (0..q)
            .flat_map(|j| (0..).map(move |i| (i, j)).take_while(move |&(i, j)| q * i + (q + 1) * j <= q * n))
            .collect();
        out.sort_by_key(|&(i, j)| q * i + (q + 1) * j);
        out
    }

    fn constraint_matrix(&self, a: &DivisorVector, cands: &[(u32, u32)]) -> Matrix {
        let n = a.entries().iter().copied().max().unwrap_or(0);
        let mut rows = Vec::new();
        for (slot, &(place, qi)) in self.x0.iter().enumerate() {
            let need = n - qi.map_or(0, |k| a.get(k));
            if need == 0 {
                continue;
            }
            let len = need as usize;
            let fresh;
            let ypow = if len <= self.ypow[slot][0].len() {
                &self.ypow[slot]
            } else {
                fresh = Self::y_powers(&self.curve, place, len);
                &fresh
            };
            for c in 0..len {
                rows.push(
                    cands
                        .iter()
                        .map(|&(i, j)| {
                            let i = i as usize;
                            if c >= i {
                                ypow[j as usize][c - i]
                            } else {
                                Elem::ZERO
                            }
                        })
                        .collect(),
                );
            }
        }
        Matrix::from_rows(rows, cands.len())
    }

    pub fn rr_basis(&self, a: &DivisorVector) -> Result<Arc<RRBasis>> {
        self.check_arity(a)?;
        if let Some(b) = self.bases.read().unwrap().get(a) {
            return Ok(b.clone());
        }
        let f = self.curve.field();
        let q = self.curve.q();
        let n = a.entries().iter().copied().max().unwrap_or(0);
        let cands = self.candidates(n);
        let m = self.constraint_matrix(a, &cands);
        let coefficients = m.nullspace(f);
        let basis = coefficients
            .iter()
            .map(|v| {
                let mut h = CurvePoly::zero(q);
                for (&(i, j), &c) in cands.iter().zip(v) {
                    if !c.is_zero() {
                        h = h.add(f, &CurvePoly::monomial(q, i, j, c));
                    }
                }
                FunctionElement::new(h, n)
            })
            .collect();
        let b = Arc::new(RRBasis { divisor: a.clone(), basis, monomials: cands, coefficients, denom_exp: n });
        self.dims.write().unwrap().entry(a.clone()).or_insert(b.dim());
        Ok(self.bases.write().unwrap().entry(a.clone()).or_insert(b).clone())
    }

    /// `dim L(a)`, always by a rank computation.
    pub fn rr_dim(&self, a: &DivisorVector) -> Result<usize> {
        self.check_arity(a)?;
        if let Some(&d) = self.dims.read().unwrap().get(a) {
            return Ok(d);
        }
        let n = a.entries().iter().copied().max().unwrap_or(0);
        let cands = self.candidates(n);
        let d = cands.len() - self.constraint_matrix(a, &cands).rank(self.curve.field());
        Ok(*self.dims.write().unwrap().entry(a.clone()).or_insert(d))
    }

    /// `dim L(a)`, from the Riemann–Roch formula when `deg a > 2g - 2`.
    pub fn dim_fast(&self, a: &DivisorVector) -> Result<usize> {
        let g = self.genus();
        let deg = a.degree();
        if deg + 2 > 2 * g {
            self.check_arity(a)?;
            Ok((deg + 1 - g) as usize)
        } else {
            self.rr_dim(a)
        }
    }

    /// Pole orders `(rho_1(f), ..., rho_m(f))` of a function regular away from the `Q_i`.
    pub fn function_rho(&self, fe: &FunctionElement) -> Result<DivisorVector> {
        if fe.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let inf = self.curve.infinite_place().index;
        if self.curve.valuation(inf, fe)? < 0 {
            return Err(Error::NotInR { place: inf });
        }
        let mut rho = vec![0; self.m()];
        for &(place, qi) in &self.x0 {
            let v = self.curve.valuation(place, fe)?;
            match qi {
                Some(k) => rho[k] = (-v).max(0) as u32,
                None if v < 0 => return Err(Error::NotInR { place }),
                None => {}
            }
        }
        Ok(DivisorVector(rho))
    }
}
