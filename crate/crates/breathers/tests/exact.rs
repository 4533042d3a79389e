use breathers::exact::*;
use breathers::{fd, Error, SpaceTimeGrid, C64};
use proptest::prelude::*;

fn all() -> [BreatherSpec64; 4] {
    [
        BreatherSpec64::constant(),
        BreatherSpec64::akhmediev(0.6).unwrap(),
        BreatherSpec64::kuznetsov_ma(1.25).unwrap(),
        BreatherSpec64::peregrine(),
    ]
}

#[test]
fn residuals_reach_tolerance_at_256() {
    for s in all() {
        let g = default_window(&s, 256, 256).unwrap();
        let r = nls_residual(&WaveField::sample(s, g));
        assert!(r.max < 1e-8 && !r.under_resolved, "{:?}: {}", s.kind(), r.max);
    }
}

#[test]
fn residual_order_is_four() {
    for s in &all()[1..] {
        let w = default_window(s, 32, 32).unwrap();
        let study = fixed_node_refinement(s, &w, &[16, 32, 64, 128, 256]).unwrap();
        let p = asymptotic_order(&study, 1e-7).unwrap();
        assert!((p - 4.0).abs() < 0.5, "{:?}: {p} {study:?}", s.kind());
    }
}

#[test]
fn coarse_grid_is_flagged() {
    let s = BreatherSpec64::kuznetsov_ma(1.25).unwrap();
    let g = default_window(&s, 8, 8).unwrap();
    assert!(nls_residual(&WaveField::sample(s, g)).under_resolved);
}

#[test]
fn perturbed_field_has_large_residual() {
    // negative control: a wrong amplitude is not a solution
    let s = BreatherSpec64::akhmediev(0.6).unwrap();
    let r = residual_at(&s, 0.3, 0.2, 1e-3, 1e-3).norm();
    assert!(r < 1e-8);
    let h = 1e-3;
    let bad = |x: f64, t: f64| s.eval(x, t) * 1.01;
    let (x, t) = (0.3, 0.2);
    let u = bad(x, t);
    let ut = fd::d1(|q| bad(x, q), t, h);
    let uxx = fd::d2(|q| bad(q, t), x, h);
    let r = C64::i() * ut + uxx * 0.5 + u * (u.norm_sqr() - 1.0);
    assert!(r.norm() > 1e-2);
}

#[test]
fn modulus_identity() {
    for s in &all()[1..3] {
        let g = default_window(s, 64, 64).unwrap();
        assert!(modulus_identity_residual(s, &g).unwrap() < 1e-12);
    }
}

#[test]
fn periodicity() {
    let ab = BreatherSpec64::akhmediev(0.6).unwrap();
    let g = SpaceTimeGrid::line(-2.0, 2.0, 21, -2.0, 2.0, 21).unwrap();
    assert!(shift_mismatch(|x, t| ab.eval(x, t), &g, ab.period_x().unwrap(), 0.0) < 1e-12);
    assert!(shift_mismatch(|x, t| ab.eval(x, t), &g, 0.5, 0.0) > 1e-2);
    let kmb = BreatherSpec64::kuznetsov_ma(1.25).unwrap();
    assert!(shift_mismatch(|x, t| kmb.eval(x, t), &g, 0.0, kmb.period_t().unwrap()) < 1e-12);
}

#[test]
fn peregrine_limit_is_linear_in_the_gap() {
    let g = SpaceTimeGrid::line(-3.0, 3.0, 61, -3.0, 3.0, 61).unwrap();
    for gap in [1e-2, 1e-3, 1e-4] {
        let ab = BreatherSpec64::akhmediev(1.0 - gap).unwrap();
        let kmb = BreatherSpec64::kuznetsov_ma(1.0 + gap).unwrap();
        // peak 1 + 2λ0 against 3
        assert!(((ab.eval(0.0, 0.0) - BreatherSpec64::peregrine().eval(0.0, 0.0)).norm() - 2.0 * gap).abs() < 1e-9);
        let (da, dk) = (peregrine_deviation(&ab, &g), peregrine_deviation(&kmb, &g));
        assert!(da / gap > 2.0 && da / gap < 6.0, "{gap}: {da}");
        assert!(dk / gap > 2.0 && dk / gap < 6.0, "{gap}: {dk}");
    }
}

#[test]
fn constructors_validate() {
    assert!(matches!(BreatherSpec64::akhmediev(1.0), Err(Error::OutOfRange { .. })));
    assert!(matches!(BreatherSpec64::kuznetsov_ma(0.5), Err(Error::OutOfRange { .. })));
    assert!(BreatherSpec64::new(BreatherKind::Akhmediev, None).is_err());
    assert!(BreatherSpec64::new(BreatherKind::Peregrine, Some(3.0)).is_ok());
}

#[test]
fn wavefield_json_round_trip() {
    let s = BreatherSpec64::kuznetsov_ma(1.25).unwrap();
    let f = WaveField::sample(s, SpaceTimeGrid::line(-1.0, 1.0, 4, 0.0, 1.0, 3).unwrap());
    let back: WaveField = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
    assert_eq!(f, back);
}

proptest! {
    #[test]
    fn time_reversal_conjugates(x in -10.0..10.0f64, t in -5.0..5.0f64, l in 0.05..0.95f64, m in 1.05..3.0f64) {
        for s in [BreatherSpec64::akhmediev(l).unwrap(), BreatherSpec64::kuznetsov_ma(m).unwrap(), BreatherSpec64::peregrine()] {
            let a = s.eval(x, -t);
            let b = s.eval(x, t).conj();
            prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
            prop_assert!((s.eval(-x, t) - s.eval(x, t)).norm() <= 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn ab_modulus_tends_to_one(l in 0.05..0.95f64, x in 0.0..10.0f64) {
        let s = BreatherSpec64::akhmediev(l).unwrap();
        let t = 40.0 / s.sigma0().unwrap();
        prop_assert!((s.eval(x, t).norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn residual_vanishes_at_random_points(l in 0.2..0.9f64, m in 1.1..2.0f64, x in -3.0..3.0f64, t in -2.0..2.0f64) {
        for s in [BreatherSpec64::akhmediev(l).unwrap(), BreatherSpec64::kuznetsov_ma(m).unwrap()] {
            let r = residual_at(&s, x, t, 2e-3, 2e-3).norm();
            prop_assert!(r < 1e-6, "{:?} {}", s.kind(), r);
        }
    }
}
