//! Exact arithmetic in small finite fields GF(p^e).
//!
//! Elements are stored as compact [`Elem`] handles (the integer
//! `c0 + c1 p + ... + c_{e-1} p^{e-1}` of the coefficient vector in the
//! polynomial basis) and all arithmetic goes through lookup tables held by
//! the owning [`FieldSpec`]. [`FieldElement`] pairs a handle with its field
//! and checks that operands come from the same field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order supported by the table-driven implementation.
pub const MAX_ORDER: u32 = 256;

/// Compact handle for an element of a [`FieldSpec`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field GF(p^e) = GF(p)[t]/(modulus).
pub struct FieldSpec {
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p). Coefficients little-endian.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let deg = modulus.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for n in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut rest = n;
            for _ in 0..d {
                div.push((rest % p as usize) as u32);
                rest /= p as usize;
            }
            div.push(1);
            if poly_rem(modulus, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Built-in moduli, little-endian, monic.
fn builtin_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    let m = match (p, e) {
        (_, 1) => vec![0, 1],
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        (2, 6) => vec![1, 1, 0, 0, 0, 0, 1],
        (3, 2) => vec![1, 0, 1],
        (3, 3) => vec![1, 2, 0, 1],
        (3, 4) => vec![2, 0, 0, 2, 1],
        (5, 2) => vec![2, 0, 1],
        (7, 2) => vec![1, 0, 1],
        _ => return None,
    };
    Some(m)
}

fn first_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as usize).pow(e);
    (0..count)
        .map(|n| {
            let mut m = Vec::with_capacity(e as usize + 1);
            let mut rest = n;
            for _ in 0..e {
                m.push((rest % p as usize) as u32);
                rest /= p as usize;
            }
            m.push(1);
            m
        })
        .find(|m| is_irreducible(p, m))
        .expect("an irreducible polynomial of every degree exists")
}

impl FieldSpec {
    /// GF(p^e) with the built-in modulus for (p, e).
    pub fn builtin(p: u32, e: u32) -> Result<Arc<FieldSpec>> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let modulus = builtin_modulus(p, e).unwrap_or_else(|| first_irreducible(p, e));
        FieldSpec::new(p, e, modulus)
    }

    /// GF(p^e) with an explicit monic modulus (little-endian coefficients).
    pub fn new(p: u32, e: u32, modulus: Vec<u32>) -> Result<Arc<FieldSpec>> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(e).filter(|&o| o <= MAX_ORDER as u64);
        let Some(order) = order else {
            return Err(Error::InvalidField(format!("GF({p}^{e}) is too large")));
        };
        if modulus.len() != e as usize + 1 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField(format!(
                "modulus must be monic of degree {e}, got {modulus:?}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus coefficients must be < {p}")));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over GF({p})"
            )));
        }
        Ok(Arc::new(Self::with_tables(p, e, modulus, order as usize)))
    }

    fn with_tables(p: u32, e: u32, modulus: Vec<u32>, order: usize) -> Self {
        let to_vec = |n: usize| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut rest = n;
            for _ in 0..e {
                v.push((rest % p as usize) as u32);
                rest /= p as usize;
            }
            v
        };
        let to_idx = |v: &[u32]| -> u16 {
            v.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize) as u16
        };
        let vecs: Vec<Vec<u32>> = (0..order).map(to_vec).collect();
        let mut add = vec![0u16; order * order];
        let mut mul = vec![0u16; order * order];
        for a in 0..order {
            for b in 0..order {
                let s: Vec<u32> = vecs[a].iter().zip(&vecs[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * order + b] = to_idx(&s);
                let mut prod = vec![0u32; 2 * e as usize - 1];
                for (i, x) in vecs[a].iter().enumerate() {
                    for (j, y) in vecs[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &modulus, p);
                r.resize(e as usize, 0);
                mul[a * order + b] = to_idx(&r);
            }
        }
        let neg = (0..order)
            .map(|a| to_idx(&vecs[a].iter().map(|&c| (p - c) % p).collect::<Vec<_>>()))
            .collect();
        let mut inv = vec![0u16; order];
        for a in 1..order {
            inv[a] = (1..order).find(|&b| mul[a * order + b] == 1).unwrap() as u16;
        }
        FieldSpec { p, e, modulus, order, add, mul, neg, inv }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.index() * self.order + b.index()])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(Elem(self.inv[a.index()]))
    }

    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Image of an integer under Z -> GF(p) -> GF(p^e).
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u16)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut rest = a.index();
        (0..self.e)
            .map(|_| {
                let c = (rest % self.p as usize) as u32;
                rest /= self.p as usize;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!(
                "element needs {} coefficients in 0..{}, got {coeffs:?}",
                self.e, self.p
            )));
        }
        let idx = coeffs.iter().rev().fold(0usize, |acc, &c| acc * self.p as usize + c as usize);
        Ok(Elem(idx as u16))
    }

    /// All elements, ordered lexicographically on the coefficient vector (c0 first).
    pub fn elements(&self) -> Vec<Elem> {
        let mut all: Vec<Elem> = (0..self.order).map(|i| Elem(i as u16)).collect();
        all.sort_by_key(|&a| self.coeffs(a));
        all
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.order).map(|i| Elem(i as u16))
    }

    /// Text form "c0,c1,...".
    pub fn format(&self, a: Elem) -> String {
        self.coeffs(a).iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn parse(&self, s: &str) -> Result<Elem> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad element {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs)
    }
}

/// A field element bound to its field; binary operations reject mixed fields.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<FieldSpec>,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.field.format(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.field == *other.field
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: &Arc<FieldSpec>, value: Elem) -> Self {
        FieldElement { field: Arc::clone(field), value }
    }

    pub fn zero(field: &Arc<FieldSpec>) -> Self {
        Self::new(field, Elem::ZERO)
    }

    pub fn one(field: &Arc<FieldSpec>) -> Self {
        Self::new(field, Elem::ONE)
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(Self::new(&self.field, self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(Self::new(&self.field, self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(Self::new(&self.field, self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(Self::new(&self.field, self.field.inv(self.value)?))
    }

    pub fn pow(&self, n: u64) -> FieldElement {
        Self::new(&self.field, self.field.pow(self.value, n))
    }
}

/// Enumerate GF(p^e) as bound elements in the deterministic coefficient order.
pub fn enumerate(field: &Arc<FieldSpec>) -> Vec<FieldElement> {
    field.elements().into_iter().map(|v| FieldElement::new(field, v)).collect()
}
