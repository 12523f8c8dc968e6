//! The Hermitian curve `y^q + y = x^(q+1)` over GF(q^2): rational places,
//! local branch expansions and discrete valuations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::function::{CurvePoly, FunctionElement};
use crate::series;

/// Precision of the branch expansions computed at construction.
pub const CACHED_PRECISION: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaceKind {
    Affine { x: Elem, y: Elem },
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalPlace {
    pub index: usize,
    pub kind: PlaceKind,
}

impl RationalPlace {
    pub fn is_infinite(&self) -> bool {
        matches!(self.kind, PlaceKind::Infinite)
    }

    pub fn coords(&self) -> Option<(Elem, Elem)> {
        match self.kind {
            PlaceKind::Affine { x, y } => Some((x, y)),
            PlaceKind::Infinite => None,
        }
    }
}

/// Which coordinate serves as local parameter. On the Hermitian curve
/// `dF/dy = 1`, so `x - x0` always works; the other variant exists for
/// completeness of the model and is never produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Uniformizer {
    XMinusX0,
    YMinusY0,
}

/// `y = y_series(t)` with `x = x0 + t`, truncated to `precision + 1` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchExpansion {
    pub place: usize,
    pub uniformizer: Uniformizer,
    pub x0: Elem,
    pub y_series: Vec<Elem>,
}

impl BranchExpansion {
    pub fn precision(&self) -> usize {
        self.y_series.len() - 1
    }
}

#[derive(Debug)]
pub struct HermitianCurve {
    q: u32,
    field: Arc<FieldSpec>,
    places: Vec<RationalPlace>,
    expansions: Vec<Option<BranchExpansion>>,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

impl HermitianCurve {
    /// Curve over the built-in GF(q^2).
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidCurve(format!("q = {q} is not a prime power")))?;
        Self::with_field(q, FieldSpec::builtin(p, 2 * e)?)
    }

    pub fn with_field(q: u32, field: Arc<FieldSpec>) -> Result<Self> {
        let Some((p, e)) = prime_power(q) else {
            return Err(Error::InvalidCurve(format!("q = {q} is not a prime power")));
        };
        if field.characteristic() != p || field.degree() != 2 * e {
            return Err(Error::InvalidCurve(format!(
                "q = {q} needs GF({}), got a field of order {}",
                q * q,
                field.order()
            )));
        }
        let mut curve = HermitianCurve { q, field, places: Vec::new(), expansions: Vec::new() };
        curve.places = curve.enumerate_points()?;
        curve.expansions = curve
            .places
            .iter()
            .map(|pl| (!pl.is_infinite()).then(|| curve.expand(pl, CACHED_PRECISION)))
            .collect();
        Ok(curve)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn genus(&self) -> u32 {
        self.q * (self.q - 1) / 2
    }

    pub fn places(&self) -> &[RationalPlace] {
        &self.places
    }

    pub fn place(&self, index: usize) -> &RationalPlace {
        &self.places[index]
    }

    pub fn infinite_place(&self) -> &RationalPlace {
        self.places.last().expect("curve has places")
    }

    /// Affine places on the line `x = 0`, in place order.
    pub fn x0_places(&self) -> Vec<usize> {
        self.places
            .iter()
            .filter(|p| matches!(p.kind, PlaceKind::Affine { x, .. } if x.is_zero()))
            .map(|p| p.index)
            .collect()
    }

    pub fn on_curve(&self, x: Elem, y: Elem) -> bool {
        let f = &self.field;
        let q = self.q as u64;
        f.add(f.pow(y, q), y) == f.pow(x, q + 1)
    }

    /// All `q^3 + 1` rational places: affine ones sorted by coordinates, then
    /// the place at infinity.
    pub fn enumerate_points(&self) -> Result<Vec<RationalPlace>> {
        let f = &self.field;
        let q = self.q as u64;
        let els = f.elements();
        let mut affine = Vec::new();
        for &x in &els {
            for &y in &els {
                if !self.on_curve(x, y) {
                    continue;
                }
                // F = y^q + y - x^(q+1); F_x = -(q+1) x^q, F_y = q y^(q-1) + 1
                let fx = f.neg(f.mul(f.from_int(q as i64 + 1), f.pow(x, q)));
                let fy = f.add(f.mul(f.from_int(q as i64), f.pow(y, q - 1)), Elem::ONE);
                if fx.is_zero() && fy.is_zero() {
                    return Err(Error::SingularPoint(format!("({}; {})", f.format(x), f.format(y))));
                }
                affine.push((x, y));
            }
        }
        // elements() is already in coefficient order, so the double loop is sorted
        let mut places: Vec<RationalPlace> = affine
            .into_iter()
            .enumerate()
            .map(|(index, (x, y))| RationalPlace { index, kind: PlaceKind::Affine { x, y } })
            .collect();
        places.push(RationalPlace { index: places.len(), kind: PlaceKind::Infinite });
        let expected = (q * q * q + 1) as usize;
        if places.len() != expected {
            return Err(Error::Internal(format!("found {} places, expected {expected}", places.len())));
        }
        Ok(places)
    }

    fn expand(&self, place: &RationalPlace, precision: usize) -> BranchExpansion {
        let (x0, y0) = place.coords().expect("affine place");
        let f = &self.field;
        let len = precision + 1;
        let q = self.q as u64;
        // c(t) = (x0 + t)^(q+1) - x0^(q+1)
        let mut c = series::pow(f, &[x0, Elem::ONE], q + 1, len);
        c[0] = f.sub(c[0], f.pow(x0, q + 1));
        // u = y - y0 satisfies u^q + u = c(t) since y0^q + y0 = x0^(q+1) and
        // (y0 + u)^q = y0^q + u^q in characteristic p.
        let mut u = vec![Elem::ZERO; len];
        loop {
            let uq = series::pow(f, &u, q, len);
            let next: Vec<Elem> = c.iter().zip(&uq).map(|(&a, &b)| f.sub(a, b)).collect();
            if next == u {
                break;
            }
            u = next;
        }
        u[0] = f.add(u[0], y0);
        BranchExpansion { place: place.index, uniformizer: Uniformizer::XMinusX0, x0, y_series: u }
    }

    /// Branch expansion at an affine place to the given precision.
    pub fn branch_expand(&self, place: usize, precision: usize) -> Result<BranchExpansion> {
        let pl = self.places.get(place).ok_or_else(|| Error::InvalidPoints(format!("no place #{place}")))?;
        if pl.is_infinite() {
            return Err(Error::InfinitePlace);
        }
        let cached = self.expansions[place].as_ref().expect("affine places are cached");
        if precision <= cached.precision() {
            let mut e = cached.clone();
            e.y_series.truncate(precision + 1);
            return Ok(e);
        }
        Ok(self.expand(pl, precision))
    }

    /// Coefficients of `F(x0 + t, y(t))` for the curve polynomial; zero up to the precision.
    pub fn residual(&self, exp: &BranchExpansion) -> Vec<Elem> {
        let f = &self.field;
        let len = exp.y_series.len();
        let q = self.q as u64;
        let yq = series::pow(f, &exp.y_series, q, len);
        let xq = series::pow(f, &[exp.x0, Elem::ONE], q + 1, len);
        (0..len).map(|i| f.sub(f.add(yq[i], exp.y_series[i]), xq[i])).collect()
    }

    /// Series of `h(x0 + t, y(t))` with `len` coefficients.
    pub fn poly_series(&self, place: usize, h: &CurvePoly, len: usize) -> Result<Vec<Elem>> {
        let exp = self.branch_expand(place, len.max(1) - 1)?;
        Ok(self.poly_series_with(&exp, h, len))
    }

    fn poly_series_with(&self, exp: &BranchExpansion, h: &CurvePoly, len: usize) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; len];
        let mut ypow = series::one(len);
        for (j, row) in h.x_rows().iter().enumerate() {
            if j > 0 {
                ypow = series::mul(f, &ypow, &exp.y_series, len);
            }
            if row.is_empty() {
                continue;
            }
            // Horner in (x0 + t)
            let mut acc = vec![Elem::ZERO; len];
            for &c in row.iter().rev() {
                let mut next = vec![Elem::ZERO; len];
                for i in 0..len {
                    let mut v = f.mul(acc[i], exp.x0);
                    if i > 0 {
                        v = f.add(v, acc[i - 1]);
                    }
                    next[i] = v;
                }
                next[0] = f.add(next[0], c);
                acc = next;
            }
            let term = series::mul(f, &acc, &ypow, len);
            for (o, t) in out.iter_mut().zip(term) {
                *o = f.add(*o, t);
            }
        }
        out
    }

    /// Order of vanishing of a nonzero coordinate-ring element at an affine place.
    pub fn poly_order(&self, place: usize, h: &CurvePoly) -> Result<u32> {
        let cap = h.weighted_degree().ok_or(Error::ZeroFunction)? as usize;
        let mut len = 16.min(cap + 1);
        loop {
            let s = self.poly_series(place, h, len)?;
            if let Some(o) = series::order(&s) {
                return Ok(o as u32);
            }
            if len > cap {
                return Err(Error::Internal(format!(
                    "series of a nonzero function vanished past its degree bound at place #{place}"
                )));
            }
            len = (2 * len).min(cap + 1);
        }
    }

    pub fn valuation(&self, place: usize, fe: &FunctionElement) -> Result<i64> {
        if fe.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let pl = self.places.get(place).ok_or_else(|| Error::InvalidPoints(format!("no place #{place}")))?;
        let n = fe.denom_exp() as i64;
        match pl.kind {
            PlaceKind::Infinite => {
                let w = fe.numerator().weighted_degree().expect("nonzero") as i64;
                Ok(-w + self.q as i64 * n)
            }
            PlaceKind::Affine { x, .. } => {
                let o = self.poly_order(place, fe.numerator())? as i64;
                Ok(if x.is_zero() { o - n } else { o })
            }
        }
    }

    /// Value of `f` at an affine place where it is regular.
    pub fn evaluate(&self, place: usize, fe: &FunctionElement) -> Result<Elem> {
        let pl = self.places.get(place).ok_or_else(|| Error::InvalidPoints(format!("no place #{place}")))?;
        let (x, y) = pl.coords().ok_or(Error::InfinitePlace)?;
        let f = &self.field;
        if !x.is_zero() {
            let num = fe.numerator().eval(f, x, y);
            let den = f.pow(x, fe.denom_exp() as u64);
            return Ok(f.mul(num, f.inv(den)?));
        }
        // x is the local parameter here: read the coefficient of t^N
        let n = fe.denom_exp() as usize;
        let s = self.poly_series(place, fe.numerator(), n + 1)?;
        if s[..n].iter().any(|c| !c.is_zero()) {
            return Err(Error::PoleAtEvaluation { place });
        }
        Ok(s[n])
    }
}
