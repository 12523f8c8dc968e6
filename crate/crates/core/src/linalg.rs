//! Dense matrices over a [`FieldSpec`]: reduced row-echelon form, rank and nullspace.

use crate::field::{Elem, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Matrix restricted to the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row-echelon form. Pivots are taken column by column,
    /// using the first row with a nonzero entry. Returns the pivot columns.
    pub fn rref(&mut self, field: &FieldSpec) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pr) = (rank..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(rank, pr);
            let inv = field.inv(self.get(rank, c)).expect("pivot is nonzero");
            for cc in c..self.cols {
                let v = field.mul(self.get(rank, cc), inv);
                self.set(rank, cc, v);
            }
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = self.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for cc in c..self.cols {
                    let v = field.sub(self.get(r, cc), field.mul(factor, self.get(rank, cc)));
                    self.set(r, cc, v);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &FieldSpec) -> usize {
        self.clone().rref(field).len()
    }

    /// Basis of the right nullspace, one vector per free column (in increasing
    /// column order). The vector for free column `f` has a 1 at `f`, zeros at
    /// every other free column, and is supported on columns `<= f`.
    pub fn nullspace(&self, field: &FieldSpec) -> Vec<Vec<Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Elem::ZERO; self.cols];
                v[free] = Elem::ONE;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = field.neg(m.get(r, free));
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, field: &FieldSpec, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }
}

/// Incrementally maintained row-echelon basis of a set of vectors; used to
/// test linear dependence one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Elem>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduce `v` against the basis; returns the residue.
    pub fn reduce(&self, field: &FieldSpec, mut v: Vec<Elem>) -> Vec<Elem> {
        for (pivot, row) in &self.rows {
            let factor = v[*pivot];
            if factor.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        v
    }

    /// Insert `v`; returns false (and leaves the basis unchanged) if `v` is in the span.
    pub fn insert(&mut self, field: &FieldSpec, v: Vec<Elem>) -> bool {
        let mut v = self.reduce(field, v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = field.inv(v[pivot]).expect("nonzero");
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
        self.rows.push((pivot, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn gf9() -> Arc<FieldSpec> {
        FieldSpec::builtin(3, 2).unwrap()
    }

    fn random_matrix(f: &FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let els = f.elements();
        Matrix::from_rows(
            (0..rows).map(|_| (0..cols).map(|_| els[rng.gen_range(0..els.len())]).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn zero_and_identity() {
        let f = gf9();
        assert_eq!(Matrix::zeros(3, 3).nullspace(&f).len(), 3);
        let id = Matrix::identity(5);
        assert_eq!(id.rank(&f), 5);
        assert!(id.nullspace(&f).is_empty());
    }

    #[test]
    fn rank_is_row_order_independent() {
        let f = gf9();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_matrix(&f, 5, 8, &mut rng);
            let mut rows: Vec<Vec<Elem>> = (0..5).map(|r| m.row(r).to_vec()).collect();
            rows.reverse();
            rows.swap(0, 3);
            let shuffled = Matrix::from_rows(rows, 8);
            assert_eq!(m.rank(&f), shuffled.rank(&f));
        }
    }

    #[test]
    fn rank_nullity_and_annihilation() {
        let f = gf9();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (r, c) in [(5, 8), (8, 5), (6, 6), (1, 4), (4, 1)] {
            for _ in 0..20 {
                let mut m = random_matrix(&f, r, c, &mut rng);
                if rng.gen_bool(0.5) && r > 1 {
                    // force a dependent row
                    let dup: Vec<Elem> = m.row(0).to_vec();
                    for (cc, v) in dup.into_iter().enumerate() {
                        m.set(r - 1, cc, v);
                    }
                }
                let ns = m.nullspace(&f);
                assert_eq!(m.rank(&f) + ns.len(), c);
                assert_eq!(m.rank(&f), m.transpose().rank(&f));
                let mut basis = EchelonBasis::new();
                for v in &ns {
                    assert!(m.mul_vec(&f, v).iter().all(|x| x.is_zero()));
                    assert!(basis.insert(&f, v.clone()));
                }
            }
        }
    }

    #[test]
    fn echelon_basis_detects_dependence() {
        let f = gf9();
        let mut b = EchelonBasis::new();
        let two = f.from_int(2);
        assert!(b.insert(&f, vec![Elem::ONE, Elem::ZERO, Elem::ONE]));
        assert!(!b.insert(&f, vec![two, Elem::ZERO, two]));
        assert!(b.insert(&f, vec![Elem::ZERO, Elem::ONE, Elem::ZERO]));
        assert!(!b.insert(&f, vec![Elem::ONE, Elem::ONE, Elem::ONE]));
        assert_eq!(b.len(), 2);
    }
}
