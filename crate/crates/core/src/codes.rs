//! Evaluation codes `C(a) = { (f(P_1), ..., f(P_n)) : f in L(a) }` and
//! exact small-weight checks on their duals.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{EchelonBasis, Matrix};
use crate::riemann_roch::{DivisorVector, RiemannRoch};

#[derive(Clone, Debug)]
pub struct EvaluationCode {
    pub a: DivisorVector,
    pub eval_places: Vec<usize>,
    /// `dim L(a)` rows, one per basis function, `n` columns.
    pub generator: Matrix,
    pub rank: usize,
}

impl EvaluationCode {
    pub fn n(&self) -> usize {
        self.eval_places.len()
    }

    /// Rows of element strings, each quoted since elements contain commas.
    pub fn matrix_csv(&self, field: &FieldSpec) -> String {
        let mut s = String::new();
        for r in 0..self.generator.rows() {
            let row: Vec<String> = self.generator.row(r).iter().map(|&e| format!("\"{}\"", field.format(e))).collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

/// All affine places off the support of the divisor.
pub fn default_eval_places(rr: &RiemannRoch) -> Vec<usize> {
    rr.curve()
        .places()
        .iter()
        .filter(|p| !p.is_infinite() && !rr.q_places().contains(&p.index))
        .map(|p| p.index)
        .collect()
}

fn check_eval_places(rr: &RiemannRoch, places: &[usize]) -> Result<()> {
    let total = rr.curve().places().len();
    for (i, &p) in places.iter().enumerate() {
        if p >= total {
            return Err(Error::InvalidPoints(format!("no place #{p}")));
        }
        if rr.curve().place(p).is_infinite() {
            return Err(Error::InvalidPoints("the place at infinity cannot be an evaluation point".into()));
        }
        if rr.q_places().contains(&p) {
            return Err(Error::InvalidPoints(format!("place #{p} is one of the points Q")));
        }
        if places[..i].contains(&p) {
            return Err(Error::InvalidPoints(format!("place #{p} repeated")));
        }
    }
    Ok(())
}

pub fn build_code(rr: &RiemannRoch, a: &DivisorVector, eval_places: &[usize]) -> Result<EvaluationCode> {
    check_eval_places(rr, eval_places)?;
    let basis = rr.rr_basis(a)?;
    let curve = rr.curve();
    let rows = basis
        .basis
        .iter()
        .map(|f| {
            eval_places
                .iter()
                .map(|&p| {
                    curve.evaluate(p, f).map_err(|e| match e {
                        Error::PoleAtEvaluation { place } => {
                            Error::Internal(format!("basis function of L{a} has a pole at evaluation place #{place}"))
                        }
                        other => other,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let generator = Matrix::from_rows(rows, eval_places.len());
    let rank = generator.rank(curve.field());
    Ok(EvaluationCode { a: a.clone(), eval_places: eval_places.to_vec(), generator, rank })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualDistance {
    /// Minimum distance of the dual code, with a minimal set of dependent
    /// columns (positions into the evaluation places).
    Exact { d: usize, support: Vec<usize> },
    /// No dependent set of at most this many columns exists.
    Above(usize),
}

impl DualDistance {
    /// Whether the dual distance is certified to be at least `bound`.
    pub fn at_least(&self, bound: usize) -> bool {
        match self {
            DualDistance::Exact { d, .. } => *d >= bound,
            DualDistance::Above(w) => w + 1 >= bound,
        }
    }
}

fn first_dependent(
    field: &FieldSpec,
    cols: &[Vec<crate::field::Elem>],
    basis: &EchelonBasis,
    chosen: &mut Vec<usize>,
    start: usize,
    size: usize,
) -> Option<Vec<usize>> {
    for j in start..cols.len() {
        let mut b = basis.clone();
        let independent = b.insert(field, cols[j].clone());
        chosen.push(j);
        if chosen.len() == size {
            if !independent {
                return Some(chosen.clone());
            }
        } else if independent {
            if let Some(found) = first_dependent(field, cols, &b, chosen, j + 1, size) {
                return Some(found);
            }
        }
        chosen.pop();
    }
    None
}

/// Smallest number of linearly dependent generator columns, searching sizes
/// `1..=wmax` in order. The witness is the lexicographically first minimal set.
pub fn dual_min_distance_upto(code: &EvaluationCode, field: &Arc<FieldSpec>, wmax: usize) -> DualDistance {
    let n = code.n();
    let cols: Vec<_> = (0..n).map(|c| code.generator.column(c)).collect();
    for size in 1..=wmax.min(n) {
        let found = (0..n)
            .into_par_iter()
            .filter_map(|first| {
                let mut b = EchelonBasis::new();
                let independent = b.insert(field, cols[first].clone());
                let mut chosen = vec![first];
                if size == 1 {
                    return (!independent).then_some(chosen);
                }
                if !independent {
                    return None;
                }
                first_dependent(field, &cols, &b, &mut chosen, first + 1, size)
            })
            .min();
        if let Some(support) = found {
            return DualDistance::Exact { d: size, support };
        }
    }
    DualDistance::Above(wmax.min(n))
}

/// Ascend from `a` by unit steps, cycling through the coordinates, until the
/// evaluation map is onto `F^n`.
pub fn dim_jump_full_rank(rr: &RiemannRoch, a: &DivisorVector, eval_places: &[usize]) -> Result<DivisorVector> {
    check_eval_places(rr, eval_places)?;
    let n = eval_places.len();
    let mut b = a.clone();
    let mut k = 0;
    loop {
        if build_code(rr, &b, eval_places)?.rank == n {
            return Ok(b);
        }
        b = b.plus_unit(k);
        k = (k + 1) % b.m();
    }
}
