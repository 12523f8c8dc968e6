//! The multi-point Weierstrass semigroup `H` of pole-order tuples of
//! functions regular away from `Q_1, ..., Q_m`, its minimal elements, and the
//! one-point semigroups at each `Q_k`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::FunctionElement;
use crate::riemann_roch::{DivisorVector, RiemannRoch};

const WITNESS_RETRIES: usize = 64;

/// Cofinite submonoid of the nonnegative integers, stored as a bitmap up to a limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    bitmap: Vec<bool>,
    conductor: u32,
    multiplicity: u32,
    gaps: Vec<u32>,
}

impl NumericalSemigroup {
    /// `bitmap[s]` says whether `s` is a member, for `s <= limit`. The top of
    /// the bitmap must hold at least `multiplicity` consecutive members, which
    /// by closure under addition forces every larger integer in.
    pub fn from_bitmap(bitmap: Vec<bool>) -> Result<Self> {
        let limit = bitmap.len().saturating_sub(1) as u32;
        if bitmap.first() != Some(&true) {
            return Err(Error::Internal("0 must belong to a numerical semigroup".into()));
        }
        let multiplicity = (1..bitmap.len())
            .find(|&s| bitmap[s])
            .ok_or(Error::NotStabilized { limit })? as u32;
        let gaps: Vec<u32> = (0..bitmap.len()).filter(|&s| !bitmap[s]).map(|s| s as u32).collect();
        let conductor = gaps.last().map_or(0, |g| g + 1);
        if limit + 1 < conductor + multiplicity {
            return Err(Error::NotStabilized { limit });
        }
        Ok(NumericalSemigroup { bitmap, conductor, multiplicity, gaps })
    }

    /// Semigroup generated by the given integers.
    pub fn generated_by(gens: &[u32]) -> Result<Self> {
        let g = gens.iter().copied().filter(|&x| x > 0).min().ok_or(Error::NotStabilized { limit: 0 })?;
        let limit = (g * gens.iter().max().copied().unwrap_or(1) * 2) as usize + 1;
        let mut bitmap = vec![false; limit + 1];
        bitmap[0] = true;
        for s in 1..=limit {
            bitmap[s] = gens.iter().any(|&x| x > 0 && x as usize <= s && bitmap[s - x as usize]);
        }
        Self::from_bitmap(bitmap)
    }

    pub fn contains(&self, s: u32) -> bool {
        self.bitmap.get(s as usize).copied().unwrap_or(true)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn genus(&self) -> u32 {
        self.gaps.len() as u32
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn limit(&self) -> u32 {
        self.bitmap.len() as u32 - 1
    }

    /// Members up to `n`.
    pub fn elements_upto(&self, n: u32) -> Vec<u32> {
        (0..=n).filter(|&s| self.contains(s)).collect()
    }

    /// Minimal generating set.
    pub fn generators(&self) -> Vec<u32> {
        let top = self.conductor + self.multiplicity;
        (1..top)
            .filter(|&s| self.contains(s))
            .filter(|&s| !(1..s).any(|a| self.contains(a) && self.contains(s - a)))
            .collect()
    }
}

/// Dense membership data for all tuples `b <= bound`.
#[derive(Clone, Debug)]
pub struct BoxTable {
    bound: DivisorVector,
    strides: Vec<usize>,
    member: Vec<bool>,
    /// `fiber_min[k][idx]`: member minimal among members `w <= b` with `w_k = b_k`.
    fiber_min: Vec<Vec<bool>>,
}

impl BoxTable {
    pub fn bound(&self) -> &DivisorVector {
        &self.bound
    }

    fn index(&self, a: &DivisorVector) -> usize {
        a.entries().iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum()
    }

    fn point(&self, mut idx: usize) -> DivisorVector {
        let m = self.strides.len();
        let mut v = vec![0; m];
        for k in 0..m {
            v[k] = (idx / self.strides[k]) as u32;
            idx %= self.strides[k];
        }
        DivisorVector::new(v)
    }

    pub fn contains_box(&self, b: &DivisorVector) -> bool {
        b.leq(&self.bound)
    }

    pub fn is_member(&self, a: &DivisorVector) -> bool {
        self.member[self.index(a)]
    }

    /// Member `a` such that no other member `w <= a` has `w_k = a_k`.
    pub fn is_fiber_minimal(&self, a: &DivisorVector, k: usize) -> bool {
        self.fiber_min[k][self.index(a)]
    }

    /// Member minimal in the fiber of some positive coordinate (or zero).
    pub fn is_minimal(&self, a: &DivisorVector) -> bool {
        let idx = self.index(a);
        self.member[idx] && (a.is_zero() || (0..a.m()).any(|k| a.get(k) > 0 && self.fiber_min[k][idx]))
    }

    pub fn members(&self) -> impl Iterator<Item = DivisorVector> + '_ {
        (0..self.member.len()).filter(|&i| self.member[i]).map(|i| self.point(i))
    }

    /// Fiber-minimal members `w <= within` with `w_k = t`, in lexicographic order.
    pub fn fiber_minimals(&self, k: usize, t: u32, within: &DivisorVector) -> Vec<DivisorVector> {
        if t > within.get(k) {
            return Vec::new();
        }
        let mut lo = within.clone();
        lo = lo.with(k, t);
        lo.box_points()
            .into_iter()
            .filter(|w| w.get(k) == t && self.fiber_min[k][self.index(w)])
            .collect()
    }
}

/// Multi-point Weierstrass semigroup with a write-once membership cache.
#[derive(Debug)]
pub struct Semigroup {
    rr: Arc<RiemannRoch>,
    seed: u64,
    members: RwLock<HashMap<DivisorVector, bool>>,
    witnesses: RwLock<HashMap<DivisorVector, FunctionElement>>,
}

impl Semigroup {
    pub fn new(rr: Arc<RiemannRoch>, seed: u64) -> Self {
        Semigroup { rr, seed, members: RwLock::default(), witnesses: RwLock::default() }
    }

    pub fn rr(&self) -> &Arc<RiemannRoch> {
        &self.rr
    }

    pub fn m(&self) -> usize {
        self.rr.m()
    }

    /// `a` is in `H` iff `L(a - e_i)` is strictly smaller than `L(a)` for every
    /// `i` with `a_i > 0`: since `m < #F`, a space is never a union of `m`
    /// proper subspaces, so some element then has exactly the poles `a`.
    pub fn is_member(&self, a: &DivisorVector) -> Result<bool> {
        if let Some(&b) = self.members.read().unwrap().get(a) {
            return Ok(b);
        }
        let d = self.rr.dim_fast(a)?;
        let mut member = true;
        for k in 0..a.m() {
            if let Some(b) = a.minus_unit(k) {
                if self.rr.dim_fast(&b)? == d {
                    member = false;
                    break;
                }
            }
        }
        Ok(*self.members.write().unwrap().entry(a.clone()).or_insert(member))
    }

    fn witness_seed(&self, a: &DivisorVector) -> u64 {
        a.entries()
            .iter()
            .fold(self.seed ^ 0x9e37_79b9_7f4a_7c15, |h, &x| (h ^ x as u64).wrapping_mul(0x0100_0000_01b3))
    }

    /// A function with pole orders exactly `a`.
    pub fn witness(&self, a: &DivisorVector) -> Result<FunctionElement> {
        if let Some(f) = self.witnesses.read().unwrap().get(a) {
            return Ok(f.clone());
        }
        if !self.is_member(a)? {
            return Err(Error::NotAMember(a.entries().to_vec()));
        }
        let basis = self.rr.rr_basis(a)?;
        let field = self.rr.curve().field();
        let els = field.elements();
        let mut rng = ChaCha8Rng::seed_from_u64(self.witness_seed(a));
        for _ in 0..WITNESS_RETRIES {
            let coeffs: Vec<_> = (0..basis.dim()).map(|_| els[rng.gen_range(0..els.len())]).collect();
            let f = basis.combine(field, &coeffs);
            if f.is_zero() {
                continue;
            }
            let f = f.monic(field);
            if &self.rr.function_rho(&f)? == a {
                return Ok(self.witnesses.write().unwrap().entry(a.clone()).or_insert(f).clone());
            }
        }
        Err(Error::Internal(format!("no witness for {a} after {WITNESS_RETRIES} random draws")))
    }

    /// Membership together with a witness when `a` is a member.
    pub fn w_member(&self, a: &DivisorVector) -> Result<(bool, Option<FunctionElement>)> {
        if self.is_member(a)? {
            Ok((true, Some(self.witness(a)?)))
        } else {
            Ok((false, None))
        }
    }

    /// `S_k = { s : s e_k in H }`, computed up to `limit`.
    pub fn one_point_semigroup(&self, k: usize, limit: u32) -> Result<NumericalSemigroup> {
        if k >= self.m() {
            return Err(Error::InvalidPoints(format!("no point Q_{}", k + 1)));
        }
        let bitmap = (0..=limit)
            .map(|s| self.is_member(&DivisorVector::unit(self.m(), k).with(k, s)))
            .collect::<Result<Vec<_>>>()?;
        NumericalSemigroup::from_bitmap(bitmap)
    }

    /// One-point semigroups with a limit that suffices for the Hermitian curve.
    pub fn one_point_semigroups(&self) -> Result<Vec<NumericalSemigroup>> {
        let limit = 4 * self.rr.genus() + 4;
        (0..self.m()).map(|k| self.one_point_semigroup(k, limit)).collect()
    }

    pub fn box_table(&self, bound: &DivisorVector) -> Result<BoxTable> {
        let m = self.m();
        if bound.m() != m {
            return Err(Error::ArityMismatch { expected: m, got: bound.m() });
        }
        let mut strides = vec![1usize; m];
        for k in (0..m.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * (bound.get(k + 1) as usize + 1);
        }
        let points = bound.box_points();
        let member = points.par_iter().map(|p| self.is_member(p)).collect::<Result<Vec<_>>>()?;
        let mut table = BoxTable { bound: bound.clone(), strides, member, fiber_min: Vec::new() };
        // reach[idx]: some member w <= b has w_k = b_k
        for k in 0..m {
            let mut reach = vec![false; points.len()];
            let mut minimal = vec![false; points.len()];
            for (idx, p) in points.iter().enumerate() {
                let below = (0..m).filter(|&j| j != k && p.get(j) > 0).any(|j| reach[idx - table.strides[j]]);
                reach[idx] = table.member[idx] || below;
                minimal[idx] = table.member[idx] && !below;
            }
            table.fiber_min.push(minimal);
        }
        Ok(table)
    }

    /// Minimal elements of `H` inside the box.
    pub fn minimals(&self, bound: &DivisorVector) -> Result<Vec<DivisorVector>> {
        let t = self.box_table(bound)?;
        Ok(t.members().filter(|a| t.is_minimal(a)).collect())
    }

    pub fn is_fiber_minimal(&self, a: &DivisorVector, k: usize) -> Result<bool> {
        Ok(self.box_table(a)?.is_fiber_minimal(a, k))
    }

    /// Minimals with at least two nonzero entries. Each nonzero entry of such
    /// an element is a gap of the corresponding one-point semigroup, so the
    /// search runs over products of `{0} ∪ gaps`.
    pub fn gamma_tilde(&self) -> Result<Vec<DivisorVector>> {
        let sgs = self.one_point_semigroups()?;
        let bound = DivisorVector::new(sgs.iter().map(|s| s.gaps().last().copied().unwrap_or(0)).collect());
        let table = self.box_table(&bound)?;
        let mut out = Vec::new();
        for a in bound.box_points() {
            let allowed = (0..a.m()).all(|k| a.get(k) == 0 || !sgs[k].contains(a.get(k)));
            let nonzero = a.entries().iter().filter(|&&x| x > 0).count();
            if allowed && nonzero >= 2 && table.is_member(&a) && table.is_minimal(&a) {
                out.push(a);
            }
        }
        Ok(out)
    }

    /// Fiber minimals `b_k <= a` with `(b_k)_k = a_k` whose lub is `a`.
    pub fn lub_decompose(&self, a: &DivisorVector) -> Result<Vec<DivisorVector>> {
        if !self.is_member(a)? {
            return Err(Error::NotAMember(a.entries().to_vec()));
        }
        if a.is_zero() {
            return Ok(vec![a.clone()]);
        }
        let table = self.box_table(a)?;
        let mut parts: Vec<DivisorVector> = Vec::new();
        for k in (0..a.m()).filter(|&k| a.get(k) > 0) {
            let b = table
                .fiber_minimals(k, a.get(k), a)
                .into_iter()
                .next()
                .ok_or_else(|| Error::Internal(format!("no fiber minimal below {a}")))?;
            if !parts.contains(&b) {
                parts.push(b);
            }
        }
        if DivisorVector::lub(&parts)? != *a {
            return Err(Error::Internal(format!("lub of minimals differs from {a}")));
        }
        Ok(parts)
    }
}
