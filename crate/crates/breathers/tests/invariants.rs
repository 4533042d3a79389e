//! Property tests for algebraic invariants shared across modules.

use breathers::darboux::{build_seed, SeedKind};
use breathers::families::{self, pair_value, Pair, Variant};
use breathers::lax::{self, classify_background_lambda, Domain, SpectralPoint};
use breathers::v2::{M2, V2};
use breathers::{BreatherSpec, C64};
use proptest::prelude::*;

fn c64() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| C64::new(a, b))
}

fn m2() -> impl Strategy<Value = M2<f64>> {
    (c64(), c64(), c64(), c64()).prop_map(|(a, b, c, d)| M2::new(a, b, c, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn darboux_determinant(l0 in prop_oneof![0.1..0.95f64, 1.05..2.5f64], lam in c64(), x in -4.0..4.0f64, t in -2.0..2.0f64) {
        let kind = if l0 < 1.0 { SeedKind::AB } else { SeedKind::KMB };
        let d = build_seed(kind, l0).unwrap().darboux();
        prop_assume!((lam - l0).norm() > 0.1 && (lam + l0).norm() > 0.1);
        let got = d.eval(lam, x, t).unwrap().det();
        let want = d.det_expected(lam);
        prop_assert!((got - want).norm() < 1e-9 * want.norm().max(1.0), "{got} vs {want}");
    }

    #[test]
    fn matrix_algebra(a in m2(), b in m2()) {
        let (da, db) = (a.det(), b.det());
        prop_assert!(((a * b).det() - da * db).norm() < 1e-10 * (1.0 + (da * db).norm()));
        prop_assume!(da.norm() > 1e-2);
        let r = a * a.inverse().unwrap() - M2::identity();
        prop_assert!(r.max_abs() < 1e-9 / da.norm().min(1.0));
    }

    #[test]
    fn pair_value_is_real_bilinear(a in (c64(), c64()), b in (c64(), c64()), c in (c64(), c64()), s in -3.0..3.0f64) {
        let (a, b, c) = (V2::new(a.0, a.1), V2::new(b.0, b.1), V2::new(c.0, c.1));
        for v in [Variant::Real, Variant::Imag] {
            let lhs = pair_value(a, b + c * s, v);
            let rhs = pair_value(a, b, v) + pair_value(a, c, v) * s;
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn k_squared(lam in c64()) {
        let k = lax::k_of_lambda(lam);
        prop_assert!((k * k - (C64::new(1.0, 0.0) - lam * lam) * 4.0).norm() < 1e-12 * (1.0 + lam.norm_sqr()));
    }

    #[test]
    fn background_spectrum_is_symmetric(period in 2.0..20.0f64, m in 0usize..12, anti in any::<bool>()) {
        let m = if anti { 2 * m + 1 } else { 2 * m };
        let domain = if anti { Domain::AntiperiodicL { period } } else { Domain::PeriodicL { period } };
        let l = lax::lambda_m(period, m);
        let base = classify_background_lambda(SpectralPoint { lambda: l, domain }).unwrap();
        for z in [-l, l.conj(), -l.conj()] {
            let r = classify_background_lambda(SpectralPoint { lambda: z, domain }).unwrap();
            prop_assert_eq!(r.counts(), base.counts());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn constant_modes_solve_the_linearized_equation(k in prop_oneof![0.05..1.95f64, 2.05..4.0f64]) {
        let spec = BreatherSpec::constant();
        let grid = breathers::SpaceTimeGrid::line(-3.0, 3.0, 7, 0.0, 1.0, 5).unwrap();
        for v in families::constant_basis(k) {
            let r = families::lin_nls_residual(&spec, &v, &grid).max;
            let scale = grid.nodes().map(|(x, t)| v.eval(x, t).norm()).fold(1.0, f64::max);
            prop_assert!(r / scale < 1e-8, "{} k={k}: {r}", v.label);
        }
    }

    #[test]
    fn squared_maps_of_background_solutions(lam in prop_oneof![-0.95..-0.05f64, 0.05..0.95f64], x in -3.0..3.0f64, t in -1.0..1.0f64) {
        let spec = BreatherSpec::constant();
        let sols = lax::background_solutions(C64::new(lam, 0.0)).unwrap();
        let (phi, psi) = (&sols[0], &sols[1]);
        for pair in [Pair::I, Pair::II, Pair::III] {
            for v in [Variant::Real, Variant::Imag] {
                let w = families::squared_map(spec, phi, psi, pair, v).unwrap();
                let terms = families::lin_terms(&spec, &w, x, t, 0.03, 0.03);
                let scale = w.eval(x, t).norm().max(1.0);
                prop_assert!(terms.sum().norm() / scale < 1e-8, "{pair:?} {v:?}: {}", terms.sum().norm());
            }
        }
    }
}
