//! Truncated power series over a finite field, stored as dense coefficient
//! vectors: `s[i]` is the coefficient of `t^i`.

use crate::field::{Elem, FieldSpec};

pub fn mul(field: &FieldSpec, a: &[Elem], b: &[Elem], len: usize) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = field.add(out[i + j], field.mul(x, y));
            }
        }
    }
    out
}

pub fn pow(field: &FieldSpec, a: &[Elem], mut n: u64, len: usize) -> Vec<Elem> {
    let mut acc = one(len);
    let mut base: Vec<Elem> = a.iter().copied().take(len).collect();
    base.resize(len, Elem::ZERO);
    while n > 0 {
        if n & 1 == 1 {
            acc = mul(field, &acc, &base, len);
        }
        n >>= 1;
        if n > 0 {
            base = mul(field, &base, &base, len);
        }
    }
    acc
}

pub fn one(len: usize) -> Vec<Elem> {
    let mut s = vec![Elem::ZERO; len];
    if len > 0 {
        s[0] = Elem::ONE;
    }
    s
}

/// Index of the first nonzero coefficient, if any.
pub fn order(s: &[Elem]) -> Option<usize> {
    s.iter().position(|x| !x.is_zero())
}
