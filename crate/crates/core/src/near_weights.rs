//! Near weights `rho_k(f) = max(0, -v_k(f))` attached to the points `Q_k`,
//! and sampling checks of their defining axioms.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::function::FunctionElement;
use crate::riemann_roch::{DivisorVector, RiemannRoch};
use crate::weierstrass::{NumericalSemigroup, Semigroup};

/// Value of a near weight: `NegInf` for the zero function, otherwise a
/// nonnegative integer. `NegInf` sorts below every value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rho {
    NegInf,
    Value(u32),
}

impl Rho {
    pub fn value(self) -> Result<u32> {
        match self {
            Rho::Value(v) => Ok(v),
            Rho::NegInf => Err(Error::NegInfArithmetic),
        }
    }

    /// Sum of two finite values; the marker is rejected rather than absorbed.
    pub fn checked_add(self, other: Rho) -> Result<Rho> {
        Ok(Rho::Value(self.value()? + other.value()?))
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rho::NegInf => f.write_str("-inf"),
            Rho::Value(v) => write!(f, "{v}"),
        }
    }
}

/// The near weights `rho_1, ..., rho_m` of a Riemann–Roch setup.
#[derive(Debug, Clone)]
pub struct NearWeights {
    rr: Arc<RiemannRoch>,
}

impl NearWeights {
    pub fn new(rr: Arc<RiemannRoch>) -> Self {
        NearWeights { rr }
    }

    /// All `m` values at once.
    pub fn rho_all(&self, f: &FunctionElement) -> Result<Vec<Rho>> {
        if f.is_zero() {
            return Ok(vec![Rho::NegInf; self.rr.m()]);
        }
        Ok(self.rr.function_rho(f)?.entries().iter().map(|&v| Rho::Value(v)).collect())
    }

    pub fn rho(&self, k: usize, f: &FunctionElement) -> Result<Rho> {
        if k >= self.rr.m() {
            return Err(Error::InvalidPoints(format!("no point Q_{}", k + 1)));
        }
        Ok(self.rho_all(f)?[k])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub trials: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub samples: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }
}

const CHECK_NAMES: [&str; 12] = [
    "N0",
    "N1",
    "N2",
    "N3",
    "N4",
    "N5",
    "lemma-uniqueness",
    "lemma-strict-max",
    "normalization",
    "nontrivial",
    "no-zero-divisors",
    "valuation-consistency",
];

#[derive(Default)]
struct Tally {
    trials: [usize; 12],
    violations: [Vec<String>; 12],
}

impl Tally {
    fn check(&mut self, idx: usize, ok: bool, msg: impl FnOnce() -> String) {
        self.trials[idx] += 1;
        if !ok && self.violations[idx].len() < 10 {
            self.violations[idx].push(msg());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for i in 0..12 {
            self.trials[i] += other.trials[i];
            self.violations[i].extend(other.violations[i].iter().cloned());
            self.violations[i].truncate(10);
        }
        self
    }
}

/// Draw `f` as a random combination of a basis of `L(b)` for random `b` in the box.
fn sample(rr: &RiemannRoch, bound: &DivisorVector, rng: &mut ChaCha8Rng, same: Option<&DivisorVector>) -> Result<(DivisorVector, FunctionElement)> {
    let field = rr.curve().field();
    let els = field.elements();
    let b = match same {
        Some(b) => b.clone(),
        None => DivisorVector::new(bound.entries().iter().map(|&hi| rng.gen_range(0..=hi)).collect()),
    };
    let basis = rr.rr_basis(&b)?;
    loop {
        let coeffs: Vec<Elem> = (0..basis.dim()).map(|_| els[rng.gen_range(0..els.len())]).collect();
        let f = basis.combine(field, &coeffs);
        if !f.is_zero() {
            return Ok((b, f));
        }
    }
}

/// Check the near-weight axioms on `n` sampled pairs `(f, g)` plus an
/// auxiliary multiplier `h`, drawn from `L(b)` for `b` up to `2c_k - 1`.
pub fn verify_axioms(sg: &Semigroup, n: usize, seed: u64) -> Result<AxiomReport> {
    let rr = sg.rr().clone();
    let nw = NearWeights::new(rr.clone());
    let sgs = sg.one_point_semigroups()?;
    let bound = DivisorVector::new(sgs.iter().map(|s| 2 * s.conductor() - 1).collect());
    let field = rr.curve().field().clone();
    let m = rr.m();
    let q = rr.curve().q();

    let tallies = (0..n)
        .into_par_iter()
        .map(|i| -> Result<Tally> {
            let mut t = Tally::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(i as u64));
            let (bf, f) = sample(&rr, &bound, &mut rng, None)?;
            let same = rng.gen_bool(0.5).then_some(&bf);
            let (_, g) = sample(&rr, &bound, &mut rng, same)?;
            let (_, h) = sample(&rr, &bound, &mut rng, None)?;
            let show = |x: &FunctionElement| x.display(&field);

            let rf = nw.rho_all(&f)?;
            let rg = nw.rho_all(&g)?;
            let rh = nw.rho_all(&h)?;
            let one = nw.rho_all(&FunctionElement::one(q))?;
            let zero = nw.rho_all(&FunctionElement::zero(q))?;
            let sum = f.add(&field, &g);
            let rsum = nw.rho_all(&sum)?;
            let fg = f.mul(&field, &g);
            let rfg = nw.rho_all(&fg)?;
            let rfh = nw.rho_all(&f.mul(&field, &h))?;
            let rgh = nw.rho_all(&g.mul(&field, &h))?;
            let scaled = field
                .nonzero_elements()
                .map(|l| nw.rho_all(&f.scale(&field, l)))
                .collect::<Result<Vec<_>>>()?;

            for k in 0..m {
                let in_m = |r: &[Rho]| r[k] > one[k];
                t.check(0, zero[k] == Rho::NegInf && rf[k] != Rho::NegInf && rg[k] != Rho::NegInf, || {
                    format!("k={}: zero/nonzero marker mismatch for {}", k + 1, show(&f))
                });
                t.check(1, scaled.iter().all(|r| r[k] == rf[k]), || format!("k={}: scaling changes rho of {}", k + 1, show(&f)));
                t.check(2, rsum[k] <= rf[k].max(rg[k]), || format!("k={}: rho(f+g)={} > max({}, {})", k + 1, rsum[k], rf[k], rg[k]));
                for (a, b, pa, pb, ra, rb) in [(&f, &g, &rf, &rg, &rfh, &rgh), (&g, &f, &rg, &rf, &rgh, &rfh)] {
                    if pa[k] < pb[k] {
                        let ok = ra[k] <= rb[k] && (!in_m(&rh) || ra[k] < rb[k]);
                        t.check(3, ok, || format!("k={}: {} vs {} times {}", k + 1, show(a), show(b), show(&h)));
                    }
                }
                if rf[k] == rg[k] && in_m(&rf) && in_m(&rg) {
                    let lowering = field
                        .nonzero_elements()
                        .map(|l| nw.rho_all(&f.sub(&field, &g.scale(&field, l))).map(|r| r[k] < rf[k]))
                        .collect::<Result<Vec<_>>>()?
                        .into_iter()
                        .filter(|&b| b)
                        .count();
                    t.check(4, lowering >= 1, || format!("k={}: no lambda lowers rho for {} and {}", k + 1, show(&f), show(&g)));
                    t.check(6, lowering == 1, || format!("k={}: {lowering} lambdas lower rho", k + 1));
                }
                let bound_ok = rfg[k] <= rf[k].checked_add(rg[k])?;
                let eq_ok = !(in_m(&rf) && in_m(&rg)) || rfg[k] == rf[k].checked_add(rg[k])?;
                t.check(5, bound_ok && eq_ok, || format!("k={}: rho(fg)={} vs {}+{}", k + 1, rfg[k], rf[k], rg[k]));
                if rf[k] != rg[k] {
                    t.check(7, rsum[k] == rf[k].max(rg[k]), || format!("k={}: rho(f+g) not the max", k + 1));
                }
                t.check(8, one[k] == Rho::Value(0) && rf[k] >= Rho::Value(0), || format!("k={}: rho(1) = {}", k + 1, one[k]));
                if in_m(&rf) && in_m(&rg) {
                    t.check(10, !fg.is_zero(), || format!("k={}: product of M-elements vanished", k + 1));
                }
                if in_m(&rf) {
                    let v = rr.curve().valuation(rr.q_places()[k], &f)?;
                    t.check(11, v == -(rf[k].value()? as i64), || format!("k={}: v={v} but rho={}", k + 1, rf[k]));
                    t.check(9, true, String::new);
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(Tally::default(), Tally::merge);

    let mut checks: Vec<AxiomCheck> = (0..12)
        .map(|i| AxiomCheck { name: CHECK_NAMES[i], trials: tallies.trials[i], violations: tallies.violations[i].clone() })
        .collect();
    // each rho_k must be nontrivial: some sample had a pole at Q_k
    if checks[9].trials == 0 {
        checks[9].violations.push("no sampled function lies in M".into());
    }
    if checks[4].trials == 0 {
        checks[4].violations.push("no equal-rho pair sampled".into());
    }
    Ok(AxiomReport { samples: n, checks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteSetReport {
    pub dim_l0: usize,
    pub constants_only: bool,
    pub semigroups: Vec<NumericalSemigroup>,
}

impl CompleteSetReport {
    pub fn passed(&self) -> bool {
        self.dim_l0 == 1 && self.constants_only && !self.semigroups.is_empty()
    }
}

/// Functions without poles are constants, and every one-point semigroup has
/// finitely many gaps (its bitmap stabilizes).
pub fn complete_set_check(sg: &Semigroup) -> Result<CompleteSetReport> {
    let rr = sg.rr();
    let b0 = rr.rr_basis(&DivisorVector::zero(rr.m()))?;
    let constants_only = b0.basis.iter().all(|f| f.denom_exp() == 0 && f.numerator().weighted_degree() == Some(0));
    Ok(CompleteSetReport { dim_l0: b0.dim(), constants_only, semigroups: sg.one_point_semigroups()? })
}
