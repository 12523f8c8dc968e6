use std::sync::{Arc, OnceLock};

use nearweight::linalg::Matrix;
use nearweight::{DivisorVector, Elem, FieldSpec, HermitianCurve, RiemannRoch, Semigroup};
use proptest::prelude::*;

fn fields() -> &'static [Arc<FieldSpec>] {
    static F: OnceLock<Vec<Arc<FieldSpec>>> = OnceLock::new();
    F.get_or_init(|| {
        [(2, 2), (3, 2), (2, 4), (5, 2), (3, 3)]
            .iter()
            .map(|&(p, e)| FieldSpec::builtin(p, e).unwrap())
            .collect()
    })
}

fn rr3() -> &'static Arc<RiemannRoch> {
    static R: OnceLock<Arc<RiemannRoch>> = OnceLock::new();
    R.get_or_init(|| Arc::new(RiemannRoch::new(Arc::new(HermitianCurve::new(3).unwrap()), &[0, 1, 2]).unwrap()))
}

/// Product of coefficient vectors modulo the field's modulus, by schoolbook
/// multiplication and long division.
fn slow_mul(f: &FieldSpec, a: Elem, b: Elem) -> Vec<u32> {
    let p = f.characteristic();
    let (x, y) = (f.coeffs(a), f.coeffs(b));
    let mut prod = vec![0u32; x.len() + y.len()];
    for (i, &u) in x.iter().enumerate() {
        for (j, &v) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u * v) % p;
        }
    }
    let m = f.modulus();
    let e = f.degree() as usize;
    for d in (e..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = d - e + i;
                prod[idx] = (prod[idx] + p * p - c * mi % p) % p;
            }
        }
    }
    prod.truncate(e);
    prod
}

fn elem(f: &FieldSpec, i: usize) -> Elem {
    f.elements()[i % f.order()]
}

fn small_tuple(max: u32) -> impl Strategy<Value = DivisorVector> {
    prop::collection::vec(0..=max, 3).prop_map(DivisorVector::new)
}

proptest! {
    #[test]
    fn field_axioms(fi in 0usize..5, a in 0usize..256, b in 0usize..256, c in 0usize..256) {
        let f = &fields()[fi];
        let (a, b, c) = (elem(f, a), elem(f, b), elem(f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
        prop_assert_eq!(f.coeffs(f.mul(a, b)), slow_mul(f, a, b));
        // Frobenius is additive, and x^(order) = x
        let p = f.characteristic() as u64;
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
        prop_assert_eq!(f.pow(a, f.order() as u64), a);
        prop_assert_eq!(f.parse(&f.format(a)).unwrap(), a);
    }

    #[test]
    fn lub_is_least_upper_bound(a in small_tuple(9), b in small_tuple(9), c in small_tuple(9)) {
        let l = DivisorVector::lub(&[a.clone(), b.clone()]).unwrap();
        prop_assert!(a.leq(&l) && b.leq(&l));
        prop_assert_eq!(&l, &DivisorVector::lub(&[b.clone(), a.clone()]).unwrap());
        prop_assert_eq!(DivisorVector::lub(&[a.clone(), a.clone()]).unwrap(), a.clone());
        if a.leq(&c) && b.leq(&c) {
            prop_assert!(l.leq(&c));
        }
        prop_assert_eq!(a.leq(&b) && b.leq(&a), a == b);
        prop_assert_eq!(a.add(&b).degree(), a.degree() + b.degree());
        prop_assert_eq!(a.to_string().parse::<DivisorVector>().unwrap(), a);
    }

    #[test]
    fn rank_nullity(fi in 0usize..5, rows in 1usize..6, cols in 1usize..7, seed in prop::collection::vec(0usize..256, 42)) {
        let f = &fields()[fi];
        let data: Vec<Vec<Elem>> = (0..rows).map(|r| (0..cols).map(|c| elem(f, seed[r * cols + c])).collect()).collect();
        let m = Matrix::from_rows(data, cols);
        let rank = m.rank(f);
        prop_assert_eq!(rank, m.transpose().rank(f));
        let null = m.nullspace(f);
        prop_assert_eq!(rank + null.len(), cols);
        for v in &null {
            prop_assert!(m.mul_vec(f, v).iter().all(|x| x.is_zero()));
        }
        let mut r = m.clone();
        let pivots = r.rref(f);
        prop_assert_eq!(pivots.len(), rank);
    }

    #[test]
    fn dimension_is_monotone_with_unit_jumps(a in small_tuple(7), k in 0usize..3) {
        let rr = rr3();
        let d = rr.rr_dim(&a).unwrap();
        let up = rr.rr_dim(&a.plus_unit(k)).unwrap();
        prop_assert!(up == d || up == d + 1);
        prop_assert!(d <= a.degree() as usize + 1);
        prop_assert!(d as i64 >= a.degree() as i64 + 1 - rr.genus() as i64);
    }

    #[test]
    fn basis_functions_have_bounded_poles(a in small_tuple(5)) {
        let rr = rr3();
        let basis = rr.rr_basis(&a).unwrap();
        for f in &basis.basis {
            let rho = rr.function_rho(f).unwrap();
            prop_assert!(rho.leq(&a), "{} not below {}", rho, a);
        }
    }

    #[test]
    fn membership_closed_under_sum(a in small_tuple(5), b in small_tuple(5)) {
        let sg = Semigroup::new(rr3().clone(), 3);
        if sg.is_member(&a).unwrap() && sg.is_member(&b).unwrap() {
            prop_assert!(sg.is_member(&a.add(&b)).unwrap());
            prop_assert!(sg.is_member(&DivisorVector::lub(&[a.clone(), b.clone()]).unwrap()).unwrap());
            let w = sg.witness(&a).unwrap();
            prop_assert_eq!(rr3().function_rho(&w).unwrap(), a);
        }
    }
}
