//! Pair chains `N_k(a)`, their maximal size `nu_k(a)`, truncation limits,
//! paths, and the resulting lower bound `delta_a` on the minimum distance of
//! `C(a)^perp`, next to the Goppa bound.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::FunctionElement;
use crate::riemann_roch::DivisorVector;
use crate::weierstrass::{BoxTable, NumericalSemigroup, Semigroup};

/// How condition `f_s g_r in L(a)` is certified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ChainMode {
    /// `u_s + v_r <= a` componentwise (sufficient, from `rho(fg) <= rho(f) + rho(g)`).
    #[default]
    Semigroup,
    /// Pole orders of the actual product of witness functions.
    Exact,
}

/// Which pairs may share a chain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ChainRule {
    /// Additionally require `f_s g_s in L(a + e_k)` for every pair, which the
    /// rank argument behind the bound relies on.
    #[default]
    Strict,
    /// Only the cross-product condition for `s < r`.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPair {
    pub u: DivisorVector,
    pub v: DivisorVector,
    pub f: Option<FunctionElement>,
    pub g: Option<FunctionElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairChain {
    pub k: usize,
    pub a: DivisorVector,
    pub pairs: Vec<ChainPair>,
    pub mode: ChainMode,
}

impl PairChain {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn rho_pairs(&self) -> Vec<(DivisorVector, DivisorVector)> {
        self.pairs.iter().map(|p| (p.u.clone(), p.v.clone())).collect()
    }

    /// Check every chain condition, certifying products in the given mode.
    /// Returns the list of violations (empty when the chain is admissible).
    pub fn violations(&self, sg: &Semigroup, mode: ChainMode, rule: ChainRule) -> Result<Vec<String>> {
        let k = self.k;
        let a = &self.a;
        let top = a.plus_unit(k);
        let field = sg.rr().curve().field().clone();
        let mut out = Vec::new();
        let wit = |p: &ChainPair| -> Result<(FunctionElement, FunctionElement)> {
            Ok((
                p.f.clone().map_or_else(|| sg.witness(&p.u), Ok)?,
                p.g.clone().map_or_else(|| sg.witness(&p.v), Ok)?,
            ))
        };
        let product_ok = |ps: &ChainPair, pr: &ChainPair, lim: &DivisorVector| -> Result<bool> {
            Ok(match mode {
                ChainMode::Semigroup => ps.u.add(&pr.v).leq(lim),
                ChainMode::Exact => {
                    let (f, _) = wit(ps)?;
                    let (_, g) = wit(pr)?;
                    sg.rr().function_rho(&f.mul(&field, &g))?.leq(lim)
                }
            })
        };
        for (i, p) in self.pairs.iter().enumerate() {
            if !p.u.leq(&top) || !p.v.leq(&top) {
                out.push(format!("pair {i}: {} or {} exceeds {top}", p.u, p.v));
            }
            if p.u.get(k) + p.v.get(k) != a.get(k) + 1 {
                out.push(format!("pair {i}: k-th entries do not sum to {}", a.get(k) + 1));
            }
            if !sg.is_member(&p.u)? || !sg.is_member(&p.v)? {
                out.push(format!("pair {i}: entry outside the semigroup"));
            }
            if mode == ChainMode::Exact {
                let (f, g) = wit(p)?;
                if sg.rr().function_rho(&f)? != p.u || sg.rr().function_rho(&g)? != p.v {
                    out.push(format!("pair {i}: witness pole orders differ from the listed tuples"));
                }
            }
            if i > 0 && self.pairs[i - 1].u.get(k) >= p.u.get(k) {
                out.push(format!("pair {i}: k-th entries not increasing"));
            }
            if rule == ChainRule::Strict && !product_ok(p, p, &top)? {
                out.push(format!("pair {i}: diagonal product outside L(a + e_k)"));
            }
            for (s, ps) in self.pairs[..i].iter().enumerate() {
                if !product_ok(ps, p, a)? {
                    out.push(format!("pairs {s},{i}: product outside L(a)"));
                }
            }
        }
        Ok(out)
    }
}

/// `2(c - g) + u - 1`, checked against the number of pairs of nonzero
/// members of `S` summing to `2c + u`.
pub fn pair_count_formula(s: &NumericalSemigroup, u: u32) -> Result<i64> {
    let (c, g) = (s.conductor() as i64, s.genus() as i64);
    let formula = 2 * (c - g) + u as i64 - 1;
    let total = 2 * s.conductor() + u;
    let enumerated = (1..total).filter(|&x| s.contains(x) && s.contains(total - x)).count() as i64;
    if formula != enumerated {
        return Err(Error::PairCountMismatch { formula, enumerated });
    }
    Ok(formula)
}

/// Truncation limits: `A_k = 2c_k + u - 1` when `nu_k > 2(c_k - g_k) - 1`
/// (with `u = nu_k - 2(c_k - g_k) + 1`), otherwise `2c_k - 1`.
pub fn truncation_limits(nu: &[usize], sgs: &[NumericalSemigroup]) -> DivisorVector {
    DivisorVector::new(
        nu.iter()
            .zip(sgs)
            .map(|(&n, s)| {
                let (c, g) = (s.conductor() as i64, s.genus() as i64);
                let n = n as i64;
                let h = 2 * (c - g) - 1;
                if n > h {
                    let u = n - 2 * (c - g) + 1;
                    (2 * c + u - 1) as u32
                } else {
                    (2 * c - 1) as u32
                }
            })
            .collect(),
    )
}

pub fn goppa_bound(a: &DivisorVector, genus: u32) -> i64 {
    a.degree() as i64 - (2 * genus as i64 - 2)
}

/// Unit-step ascending sequence `a_0, a_1, ...` with `a_{i+1} = a_i + e_{p(i)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub start: DivisorVector,
    pub places: Vec<usize>,
}

impl Path {
    pub fn new(start: DivisorVector, places: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = places.iter().find(|&&k| k >= start.m()) {
            return Err(Error::InvalidPath(format!("step place {} out of range", bad + 1)));
        }
        Ok(Path { start, places })
    }

    /// Check that consecutive tuples differ by exactly one unit step.
    pub fn from_points(points: &[DivisorVector]) -> Result<Self> {
        let first = points.first().ok_or_else(|| Error::InvalidPath("empty path".into()))?.clone();
        let mut places = Vec::new();
        for w in points.windows(2) {
            let diff: Vec<usize> = (0..first.m()).filter(|&k| w[0].get(k) != w[1].get(k)).collect();
            match diff.as_slice() {
                [k] if w[1].get(*k) == w[0].get(*k) + 1 => places.push(*k),
                _ => return Err(Error::InvalidPath(format!("{} -> {} is not a unit step", w[0], w[1]))),
            }
        }
        Ok(Path { start: first, places })
    }

    /// Raise coordinate 1 to `end_1`, then coordinate 2, and so on.
    pub fn coordinatewise(start: &DivisorVector, end: &DivisorVector) -> Path {
        let places = (0..start.m())
            .flat_map(|k| std::iter::repeat_n(k, end.get(k).saturating_sub(start.get(k)) as usize))
            .collect();
        Path { start: start.clone(), places }
    }

    /// `(a_i, p(i))` for every step.
    pub fn steps(&self) -> Vec<(DivisorVector, usize)> {
        let mut cur = self.start.clone();
        self.places
            .iter()
            .map(|&k| {
                let s = (cur.clone(), k);
                cur = cur.plus_unit(k);
                s
            })
            .collect()
    }

    pub fn end(&self) -> DivisorVector {
        self.places.iter().fold(self.start.clone(), |c, &k| c.plus_unit(k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathChoice {
    /// Coordinate by coordinate up to the truncation limits.
    Default,
    /// Best interleaving of coordinates (maximizes the minimum over steps).
    Search,
    Explicit(Path),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub a: DivisorVector,
    pub nu: Vec<usize>,
    pub limits: DivisorVector,
    pub path: Path,
    pub step_nu: Vec<usize>,
    pub delta: usize,
    /// Step attaining the minimum, `None` for an empty path.
    pub argmin: Option<usize>,
    pub goppa: i64,
}

impl BoundReport {
    /// `a;nu1,nu2,nu3;A1,A2,A3;delta;goppa`
    pub fn csv_row(&self) -> String {
        let join = |v: &[String]| v.join(",");
        format!(
            "{};{};{};{};{}",
            join(&self.a.entries().iter().map(u32::to_string).collect::<Vec<_>>()),
            join(&self.nu.iter().map(usize::to_string).collect::<Vec<_>>()),
            join(&self.limits.entries().iter().map(u32::to_string).collect::<Vec<_>>()),
            self.delta,
            self.goppa
        )
    }
}

/// Markdown table with columns `a`, `nu`, `A`, `delta`, `d`.
pub fn markdown(reports: &[BoundReport]) -> String {
    let mut s = String::from("| a | (nu1, nu2, nu3) | (A1, A2, A3) | delta | d |\n|---|---|---|---|---|\n");
    for c in reports {
        let nu: Vec<String> = c.nu.iter().map(usize::to_string).collect();
        s.push_str(&format!("| {} | ({}) | {} | {} | {} |\n", c.a, nu.join(","), c.limits, c.delta, c.goppa));
    }
    s
}

/// Computes chains and bounds against a frozen membership table.
#[derive(Debug)]
pub struct BoundEngine {
    sg: Arc<Semigroup>,
    sgs: Vec<NumericalSemigroup>,
    table: RwLock<Arc<BoxTable>>,
    grow: bool,
    nu_memo: RwLock<HashMap<(DivisorVector, usize, ChainMode, ChainRule), usize>>,
    pub mode: ChainMode,
    pub rule: ChainRule,
}

impl BoundEngine {
    /// Engine whose box starts at `2c_k - 1` per coordinate and grows on demand.
    pub fn new(sg: Arc<Semigroup>) -> Result<Self> {
        let sgs = sg.one_point_semigroups()?;
        let bound = DivisorVector::new(sgs.iter().map(|s| 2 * s.conductor() - 1).collect());
        let table = Arc::new(sg.box_table(&bound)?);
        Ok(Self::assemble(sg, sgs, table, true))
    }

    /// Engine restricted to a fixed box; queries outside it fail.
    pub fn with_box(sg: Arc<Semigroup>, bound: &DivisorVector) -> Result<Self> {
        let sgs = sg.one_point_semigroups()?;
        let table = Arc::new(sg.box_table(bound)?);
        Ok(Self::assemble(sg, sgs, table, false))
    }

    fn assemble(sg: Arc<Semigroup>, sgs: Vec<NumericalSemigroup>, table: Arc<BoxTable>, grow: bool) -> Self {
        BoundEngine {
            sg,
            sgs,
            table: RwLock::new(table),
            grow,
            nu_memo: RwLock::new(HashMap::new()),
            mode: ChainMode::default(),
            rule: ChainRule::default(),
        }
    }

    pub fn with_mode(mut self, mode: ChainMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_rule(mut self, rule: ChainRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn semigroup(&self) -> &Arc<Semigroup> {
        &self.sg
    }

    pub fn one_point_semigroups(&self) -> &[NumericalSemigroup] {
        &self.sgs
    }

    pub fn genus(&self) -> u32 {
        self.sg.rr().genus()
    }

    pub fn box_bound(&self) -> DivisorVector {
        self.table.read().unwrap().bound().clone()
    }

    fn table_for(&self, need: &DivisorVector) -> Result<Arc<BoxTable>> {
        let t = self.table.read().unwrap().clone();
        if t.contains_box(need) {
            return Ok(t);
        }
        if !self.grow {
            return Err(Error::BoxTooSmall { have: t.bound().entries().to_vec(), need: need.entries().to_vec() });
        }
        let mut w = self.table.write().unwrap();
        if !w.contains_box(need) {
            let bound = DivisorVector::lub(&[w.bound().clone(), need.clone()])?;
            *w = Arc::new(self.sg.box_table(&bound)?);
        }
        Ok(w.clone())
    }

    /// Make sure the table covers `bound` (no-op for fixed boxes that already do).
    pub fn ensure_box(&self, bound: &DivisorVector) -> Result<()> {
        self.table_for(bound).map(|_| ())
    }

    /// `#{ t : t, a_k + 1 - t in S_k }`, the size of the chain built from one-point pairs.
    pub fn baseline(&self, a: &DivisorVector, k: usize) -> usize {
        let s = &self.sgs[k];
        let total = a.get(k) + 1;
        (0..=total).filter(|&t| s.contains(t) && s.contains(total - t)).count()
    }

    /// Maximum-size admissible chain for `(a, k)`. Candidates at level
    /// `t = u_k` are fiber-minimal members below `a + e_k`; among chains of
    /// maximal size the first one in depth-first order (lexicographic
    /// candidates, taking a level before skipping it) is returned.
    pub fn nu(&self, a: &DivisorVector, k: usize) -> Result<(usize, PairChain)> {
        if a.m() != self.sg.m() {
            return Err(Error::ArityMismatch { expected: self.sg.m(), got: a.m() });
        }
        if k >= a.m() {
            return Err(Error::InvalidPoints(format!("no point Q_{}", k + 1)));
        }
        let top = a.plus_unit(k);
        let table = self.table_for(&top)?;
        let total = a.get(k) + 1;
        let field = self.sg.rr().curve().field().clone();

        let mut levels: Vec<Vec<(DivisorVector, DivisorVector)>> = Vec::new();
        for t in 0..=total {
            let us = table.fiber_minimals(k, t, &top);
            let vs = table.fiber_minimals(k, total - t, &top);
            let mut pairs = Vec::new();
            for u in &us {
                for v in &vs {
                    pairs.push((u.clone(), v.clone()));
                }
            }
            levels.push(pairs);
        }

        // exact mode works with witness functions and their products
        let mut witnesses: HashMap<DivisorVector, FunctionElement> = HashMap::new();
        if self.mode == ChainMode::Exact {
            for (u, v) in levels.iter().flatten() {
                for w in [u, v] {
                    if !witnesses.contains_key(w) {
                        witnesses.insert(w.clone(), self.sg.witness(w)?);
                    }
                }
            }
        }
        let mut product_cache: HashMap<(DivisorVector, DivisorVector), DivisorVector> = HashMap::new();
        let mut product = |u: &DivisorVector, v: &DivisorVector| -> Result<DivisorVector> {
            match self.mode {
                ChainMode::Semigroup => Ok(u.add(v)),
                ChainMode::Exact => {
                    let key = (u.clone(), v.clone());
                    if let Some(r) = product_cache.get(&key) {
                        return Ok(r.clone());
                    }
                    let fg = witnesses[u].mul(&field, &witnesses[v]);
                    let r = self.sg.rr().function_rho(&fg)?;
                    product_cache.insert(key, r.clone());
                    Ok(r)
                }
            }
        };

        if self.rule == ChainRule::Strict {
            for lvl in levels.iter_mut() {
                let mut keep = Vec::new();
                for (u, v) in lvl.drain(..) {
                    if product(&u, &v)?.leq(&top) {
                        keep.push((u, v));
                    }
                }
                *lvl = keep;
            }
        }
        // compat[t][i] lists, per later level r > t, the admissible partners
        let n = levels.len();
        let mut compat: Vec<Vec<Vec<Vec<bool>>>> = vec![Vec::new(); n];
        for t in 0..n {
            for (u, _) in &levels[t] {
                let mut per_level = Vec::with_capacity(n);
                for (r, lvl) in levels.iter().enumerate() {
                    if r <= t {
                        per_level.push(Vec::new());
                        continue;
                    }
                    let mut row = Vec::with_capacity(lvl.len());
                    for (_, v) in lvl {
                        row.push(product(u, v)?.leq(a));
                    }
                    per_level.push(row);
                }
                compat[t].push(per_level);
            }
        }
        let mut remaining = vec![0usize; n + 1];
        for t in (0..n).rev() {
            remaining[t] = remaining[t + 1] + usize::from(!levels[t].is_empty());
        }

        struct Search<'a> {
            levels: &'a [Vec<(DivisorVector, DivisorVector)>],
            compat: &'a [Vec<Vec<Vec<bool>>>],
            remaining: &'a [usize],
            best: Vec<(usize, usize)>,
            chain: Vec<(usize, usize)>,
        }
        impl Search<'_> {
            fn run(&mut self, t: usize) {
                if self.chain.len() + self.remaining[t] <= self.best.len() {
                    return;
                }
                if t == self.levels.len() {
                    self.best = self.chain.clone();
                    return;
                }
                for i in 0..self.levels[t].len() {
                    let ok = self.chain.iter().all(|&(s, j)| self.compat[s][j][t][i]);
                    if ok {
                        self.chain.push((t, i));
                        self.run(t + 1);
                        self.chain.pop();
                    }
                }
                self.run(t + 1);
            }
        }
        let mut search = Search { levels: &levels, compat: &compat, remaining: &remaining, best: Vec::new(), chain: Vec::new() };
        search.run(0);

        let pairs = search
            .best
            .iter()
            .map(|&(t, i)| {
                let (u, v) = levels[t][i].clone();
                let (f, g) = match self.mode {
                    ChainMode::Exact => (Some(witnesses[&u].clone()), Some(witnesses[&v].clone())),
                    ChainMode::Semigroup => (None, None),
                };
                ChainPair { u, v, f, g }
            })
            .collect::<Vec<_>>();
        Ok((pairs.len(), PairChain { k, a: a.clone(), pairs, mode: self.mode }))
    }

    /// `nu_k(a)` alone, memoized per engine settings.
    pub fn nu_value(&self, a: &DivisorVector, k: usize) -> Result<usize> {
        let key = (a.clone(), k, self.mode, self.rule);
        if let Some(&v) = self.nu_memo.read().unwrap().get(&key) {
            return Ok(v);
        }
        let v = self.nu(a, k)?.0;
        self.nu_memo.write().unwrap().insert(key, v);
        Ok(v)
    }

    pub fn nu_vector(&self, a: &DivisorVector) -> Result<Vec<usize>> {
        (0..a.m()).map(|k| self.nu_value(a, k)).collect()
    }

    pub fn truncation_limits(&self, a: &DivisorVector) -> Result<DivisorVector> {
        Ok(truncation_limits(&self.nu_vector(a)?, &self.sgs))
    }

    /// `delta_a`: minimum of `nu_{p(i)}(a_i)` over the steps of a path from
    /// `a` to `lub(a, A)`. An empty path falls back to `min_k nu_k(a)`.
    pub fn delta_bound(&self, a: &DivisorVector, choice: &PathChoice) -> Result<BoundReport> {
        let nu = self.nu_vector(a)?;
        let limits = truncation_limits(&nu, &self.sgs);
        let end = DivisorVector::lub(&[a.clone(), limits.clone()])?;
        let path = match choice {
            PathChoice::Default => Path::coordinatewise(a, &end),
            PathChoice::Explicit(p) => {
                if &p.start != a {
                    return Err(Error::InvalidPath(format!("path starts at {}, not {a}", p.start)));
                }
                p.clone()
            }
            PathChoice::Search => self.best_path(a, &end)?,
        };
        self.ensure_box(&path.end())?;
        let steps = path.steps();
        let step_nu = steps.par_iter().map(|(b, k)| self.nu_value(b, *k)).collect::<Result<Vec<_>>>()?;
        let (delta, argmin) = match step_nu.iter().enumerate().min_by_key(|&(i, &v)| (v, i)) {
            Some((i, &v)) => (v, Some(i)),
            None => (nu.iter().copied().min().unwrap_or(0), None),
        };
        Ok(BoundReport { a: a.clone(), nu, limits, path, step_nu, delta, argmin, goppa: goppa_bound(a, self.genus()) })
    }

    /// Path from `a` to `end` maximizing the minimum step value (dynamic
    /// programming over the box between them; ties prefer lower coordinates).
    fn best_path(&self, a: &DivisorVector, end: &DivisorVector) -> Result<Path> {
        self.ensure_box(end)?;
        let m = a.m();
        let span = DivisorVector::new((0..m).map(|k| end.get(k) - a.get(k)).collect());
        let offsets = span.box_points();
        let nus: Vec<Vec<Option<usize>>> = offsets
            .par_iter()
            .map(|o| {
                let b = a.add(o);
                (0..m)
                    .map(|k| if o.get(k) < span.get(k) { self.nu_value(&b, k).map(Some) } else { Ok(None) })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let index: HashMap<&DivisorVector, usize> = offsets.iter().enumerate().map(|(i, o)| (o, i)).collect();
        let mut best = vec![(usize::MAX, usize::MAX); offsets.len()];
        for i in (0..offsets.len()).rev() {
            for k in 0..m {
                if let Some(v) = nus[i][k] {
                    let next = index[&offsets[i].plus_unit(k)];
                    let val = v.min(best[next].0);
                    if best[i].1 == usize::MAX || val > best[i].0 {
                        best[i] = (val, k);
                    }
                }
            }
        }
        let mut places = Vec::new();
        let mut cur = DivisorVector::zero(m);
        while cur != span {
            let k = best[index[&cur]].1;
            places.push(k);
            cur = cur.plus_unit(k);
        }
        Ok(Path { start: a.clone(), places })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::HermitianCurve;
    use crate::riemann_roch::RiemannRoch;

    fn engine(q: u32) -> BoundEngine {
        let c = Arc::new(HermitianCurve::new(q).unwrap());
        let rr = Arc::new(RiemannRoch::new(c, &[0, 1, 2]).unwrap());
        BoundEngine::new(Arc::new(Semigroup::new(rr, 1))).unwrap()
    }

    fn dv(v: &[u32]) -> DivisorVector {
        DivisorVector::new(v.to_vec())
    }

    #[test]
    fn pair_counts() {
        let s = NumericalSemigroup::generated_by(&[3, 4]).unwrap();
        assert_eq!(pair_count_formula(&s, 0).unwrap(), 5);
        assert_eq!(pair_count_formula(&s, 3).unwrap(), 8);
        let s4 = NumericalSemigroup::generated_by(&[4, 5]).unwrap();
        assert_eq!(pair_count_formula(&s4, 0).unwrap(), 11);
    }

    #[test]
    fn truncation() {
        let s = NumericalSemigroup::generated_by(&[3, 4]).unwrap();
        assert_eq!(truncation_limits(&[2, 3, 4], &[s.clone(), s.clone(), s.clone()]), dv(&[11, 11, 11]));
        assert_eq!(truncation_limits(&[7], &[s]), dv(&[13]));
    }

    #[test]
    fn goppa() {
        assert_eq!(goppa_bound(&dv(&[2, 2, 3]), 3), 3);
        assert_eq!(goppa_bound(&dv(&[1, 2, 3]), 6), -4);
        assert_eq!(goppa_bound(&dv(&[0, 0, 0]), 3), -4);
    }

    #[test]
    fn first_coordinate_chain() {
        let e = engine(3);
        let (n, chain) = e.nu(&dv(&[2, 1, 1]), 0).unwrap();
        assert_eq!(n, 2);
        assert_eq!(chain.rho_pairs(), vec![(dv(&[0, 0, 0]), dv(&[3, 0, 0])), (dv(&[3, 0, 0]), dv(&[0, 0, 0]))]);
        assert!(chain.violations(e.semigroup(), ChainMode::Exact, ChainRule::Strict).unwrap().is_empty());
    }

    #[test]
    fn step_with_gap_has_empty_chain() {
        let e = engine(3);
        assert_eq!(e.baseline(&dv(&[0, 0, 0]), 0), 0);
        assert_eq!(e.nu(&dv(&[0, 0, 0]), 0).unwrap().0, 0);
    }

    #[test]
    fn chains_dominate_one_point_pairs() {
        let e = engine(3);
        for a in dv(&[6, 4, 4]).box_points() {
            for k in 0..3 {
                let (n, chain) = e.nu(&a, k).unwrap();
                assert!(n >= e.baseline(&a, k), "{a} k={k}");
                assert!(chain.violations(e.semigroup(), ChainMode::Semigroup, ChainRule::Strict).unwrap().is_empty());
            }
        }
        // above the truncation threshold the count exceeds 2(c - g) - 1
        let a = dv(&[13, 0, 0]);
        assert!(e.nu(&a, 0).unwrap().0 > 5);
    }

    #[test]
    fn fixed_box_is_enforced() {
        let c = Arc::new(HermitianCurve::new(3).unwrap());
        let rr = Arc::new(RiemannRoch::new(c, &[0, 1, 2]).unwrap());
        let e = BoundEngine::with_box(Arc::new(Semigroup::new(rr, 1)), &dv(&[3, 3, 3])).unwrap();
        assert!(e.nu(&dv(&[2, 1, 1]), 0).is_ok());
        assert!(matches!(e.nu(&dv(&[3, 1, 1]), 0), Err(Error::BoxTooSmall { .. })));
    }

    #[test]
    fn paths() {
        let p = Path::coordinatewise(&dv(&[1, 1]), &dv(&[3, 2]));
        assert_eq!(p.places, vec![0, 0, 1]);
        assert_eq!(p.end(), dv(&[3, 2]));
        let pts = [dv(&[1, 1]), dv(&[2, 1]), dv(&[2, 2])];
        assert_eq!(Path::from_points(&pts).unwrap().places, vec![0, 1]);
        assert!(Path::from_points(&[dv(&[1, 1]), dv(&[2, 2])]).is_err());
        assert!(Path::new(dv(&[1, 1]), vec![2]).is_err());
    }

    #[test]
    fn small_bound() {
        let e = engine(3);
        let r = e.delta_bound(&dv(&[2, 1, 1]), &PathChoice::Default).unwrap();
        assert_eq!(r.limits, dv(&[11, 11, 11]));
        assert_eq!((r.delta, r.goppa), (2, 0));
        assert_eq!(r.csv_row(), format!("2,1,1;{};11,11,11;2;0", r.nu.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
    }
}
