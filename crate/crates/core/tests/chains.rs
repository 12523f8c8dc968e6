use std::sync::Arc;

use nearweight::codes::{build_code, default_eval_places};
use nearweight::tables::Preset;
use nearweight::{
    dual_min_distance_upto, BoundEngine, ChainMode, ChainRule, DivisorVector, HermitianCurve, PathChoice, RiemannRoch,
    Semigroup,
};

fn sg(q: u32) -> Arc<Semigroup> {
    let curve = Arc::new(HermitianCurve::new(q).unwrap());
    Arc::new(Semigroup::new(Arc::new(RiemannRoch::new(curve, &[0, 1, 2]).unwrap()), 5))
}

fn dv(v: &[u32]) -> DivisorVector {
    DivisorVector::new(v.to_vec())
}

#[test]
fn semigroup_chains_hold_for_functions() {
    let s = sg(3);
    let engine = BoundEngine::new(s.clone()).unwrap();
    for row in Preset::T1.rows() {
        for k in 0..3 {
            let (_, chain) = engine.nu(&row.a, k).unwrap();
            let bad = chain.violations(&s, ChainMode::Exact, ChainRule::Strict).unwrap();
            assert!(bad.is_empty(), "{} k={}: {bad:?}", row.a, k + 1);
        }
    }
}

#[test]
fn exact_and_semigroup_modes_agree_on_table_rows() {
    let s = sg(3);
    let semi = BoundEngine::new(s.clone()).unwrap();
    let exact = BoundEngine::new(s).unwrap().with_mode(ChainMode::Exact);
    for row in Preset::T1.rows() {
        assert_eq!(semi.nu_vector(&row.a).unwrap(), exact.nu_vector(&row.a).unwrap(), "{}", row.a);
    }
}

#[test]
fn nu_does_not_depend_on_box_size() {
    let s = sg(3);
    let auto = BoundEngine::new(s.clone()).unwrap();
    let small = BoundEngine::with_box(s.clone(), &dv(&[8, 8, 8])).unwrap();
    let large = BoundEngine::with_box(s, &dv(&[14, 14, 14])).unwrap();
    for a in dv(&[6, 6, 6]).box_points() {
        let n = small.nu_vector(&a).unwrap();
        assert_eq!(n, large.nu_vector(&a).unwrap(), "{a}");
        assert_eq!(n, auto.nu_vector(&a).unwrap(), "{a}");
    }
    assert!(small.nu_vector(&dv(&[9, 0, 0])).is_err());
}

#[test]
fn searched_path_is_never_worse() {
    let engine = BoundEngine::new(sg(3)).unwrap();
    for a in dv(&[3, 3, 3]).box_points() {
        let d = engine.delta_bound(&a, &PathChoice::Default).unwrap();
        let s = engine.delta_bound(&a, &PathChoice::Search).unwrap();
        assert!(s.delta >= d.delta, "{a}: search {} < default {}", s.delta, d.delta);
        assert_eq!(s.path.end(), d.path.end());
        assert_eq!(s.step_nu.iter().min().copied().unwrap_or(s.delta), s.delta);
    }
}

#[test]
fn bound_holds_on_small_divisors() {
    let s = sg(3);
    let engine = BoundEngine::new(s.clone()).unwrap();
    let rr = s.rr();
    let field = rr.curve().field().clone();
    let eval = default_eval_places(rr);
    for a in dv(&[3, 3, 3]).box_points() {
        let delta = engine.delta_bound(&a, &PathChoice::Search).unwrap().delta;
        let code = build_code(rr, &a, &eval).unwrap();
        let d = dual_min_distance_upto(&code, &field, delta.saturating_sub(1));
        assert!(d.at_least(delta), "{a}: delta {delta}, found {d:?}");
    }
}
