mod common;

use inducibility::bounds::{
    construction_density, lower_bound_a5, lower_bound_q4, objective_f, s_construction_sizes, two_branch_q4_densities,
    verify_minimal_polynomial, OptimizeConfig,
};
use inducibility::{ConstructionParams, Error, PatternSpec};
use rand::Rng;
use rug::{Float, Rational};

const PREC: u32 = 256;

fn random_simplex_point(rng: &mut impl Rng) -> [f64; 3] {
    let mut u = [rng.gen::<f64>(), rng.gen(), rng.gen()];
    u.sort_by(f64::total_cmp);
    [u[0], u[1] - u[0], u[2] - u[1]]
}

#[test]
fn gradient_matches_central_differences() {
    let f = objective_f();
    let grad = f.gradient();
    let mut rng = common::rng(7);
    let h = Float::with_val(PREC, 1e-8);
    for _ in 0..100 {
        let x = random_simplex_point(&mut rng).map(|v| Float::with_val(PREC, v));
        let exact: Vec<f64> = grad.iter().map(|g| g.eval_float(&x, PREC).to_f64()).collect();
        let scale = exact.iter().map(|g| g.abs()).fold(0.0, f64::max);
        for i in 0..3 {
            let (mut up, mut down) = (x.clone(), x.clone());
            up[i] += &h;
            down[i] -= &h;
            let diff: Float = (f.eval_float(&up, PREC) - f.eval_float(&down, PREC)) / Float::with_val(PREC, 2 * &h);
            let err = (diff.to_f64() - exact[i]).abs();
            assert!(err <= 1e-5 * scale, "dF/dx{} at {x:?}: {err:e}", i + 1);
        }
    }
}

#[test]
fn objective_is_symmetric_at_random_points() {
    let f = objective_f();
    let mut rng = common::rng(11);
    for _ in 0..100 {
        let p = random_simplex_point(&mut rng).map(|v| Rational::from_f64(v).unwrap());
        let x4 = Rational::from(1) - &p[0] - &p[1] - &p[2];
        let mirrored = [p[0].clone(), p[1].clone(), x4];
        assert_eq!(f.eval_rational(&p), f.eval_rational(&mirrored));
    }
}

#[test]
fn s_construction_converges_from_above() {
    let (target, m) = lower_bound_a5(OptimizeConfig::default()).unwrap();
    let x = m.argmax.clone().map(|v| v.to_f64());
    let mut previous = f64::INFINITY;
    for e in 8..=12 {
        let n = 1usize << e;
        let sizes = s_construction_sizes(x, n).unwrap();
        let d = construction_density(&ConstructionParams::SConstruction { n: sizes }, &PatternSpec::a5()).unwrap();
        let gap = d.to_f64() - target.to_f64();
        // Error shrinks like C / n.
        assert!(gap > 0.0 && gap < previous, "n = {n}: gap {gap:e}");
        assert!(
            (gap * n as f64) > 0.3 && (gap * n as f64) < 1.0,
            "n = {n}: n * gap = {}",
            gap * n as f64
        );
        if n == 4096 {
            assert!(gap < 1e-2);
        }
        previous = gap;
    }
}

#[test]
fn two_branch_ternary_optimum_is_near_a_quarter() {
    let densities = two_branch_q4_densities(1024).unwrap();
    let best = densities.iter().max().unwrap();
    let first = densities.iter().position(|d| d == best).unwrap() + 1;
    assert!(first.abs_diff(256) <= 2, "first maximiser n1 = {first}");
    // The mirror split n1 -> n - n1 gives the same tree.
    assert_eq!(densities[first - 1], densities[1024 - first - 1]);
    assert!(best.to_f64() < lower_bound_q4().to_f64() + 1e-2);
}

#[test]
fn w_trees_approach_the_q4_bound() {
    let limit = lower_bound_q4();
    let w6 = construction_density(&ConstructionParams::WTree { h: 6 }, &PatternSpec::q4()).unwrap();
    assert!(
        (w6.to_f64() - limit.to_f64()).abs() < 1e-3,
        "γ(Q4, W6) = {}",
        w6.to_f64()
    );
    let w1 = construction_density(&ConstructionParams::WTree { h: 1 }, &PatternSpec::q4()).unwrap();
    assert!((w1.to_f64() - limit.to_f64()).abs() > (w6.to_f64() - limit.to_f64()).abs());
}

#[test]
fn complete_trees_approach_their_limits() {
    let q4 = construction_density(&ConstructionParams::Complete { d: 3, h: 7 }, &PatternSpec::q4()).unwrap();
    assert!((q4.to_f64() - 1.0 / 13.0).abs() < 1e-3);
    let a5 = construction_density(&ConstructionParams::Complete { d: 2, h: 10 }, &PatternSpec::a5()).unwrap();
    assert!((a5.to_f64() - 1.0 / 7.0).abs() < 1e-2);
}

#[test]
fn minimal_polynomial_rejects_wrong_candidates() {
    let (bound, _) = lower_bound_a5(OptimizeConfig::default()).unwrap();
    assert!(verify_minimal_polynomial(&bound).unwrap().passes);
    let off = Float::with_val(bound.prec(), &bound + 1e-9);
    assert!(!verify_minimal_polynomial(&off).unwrap().passes);
    let coarse = Float::with_val(53, &bound);
    assert!(matches!(
        verify_minimal_polynomial(&coarse),
        Err(Error::InsufficientPrecision { .. })
    ));
}

#[test]
fn optimisation_is_reproducible_and_stable_in_precision() {
    let a = lower_bound_a5(OptimizeConfig {
        starts: 256,
        digits: 40,
    })
    .unwrap()
    .0;
    let b = lower_bound_a5(OptimizeConfig {
        starts: 1024,
        digits: 60,
    })
    .unwrap()
    .0;
    let gap = Float::with_val(256, &a - &b).abs();
    assert!(gap < 1e-35, "{gap}");
}
