use breathers::darboux::{self, DarbouxSeed, SeedKind};
use breathers::lax::{self, chain_residual, lax_residual};
use breathers::{Error, SpaceTimeGrid, C64};

fn seeds() -> [breathers::Seed; 2] {
    [
        DarbouxSeed::new(SeedKind::AB, 0.6).unwrap(),
        DarbouxSeed::new(SeedKind::KMB, 1.25).unwrap(),
    ]
}

fn scale(v: &breathers::lax::VectorSolution, g: &SpaceTimeGrid) -> f64 {
    g.nodes().map(|(x, t)| v.eval(x, t).max_abs()).fold(1.0, f64::max)
}

fn window(seed: &breathers::Seed) -> SpaceTimeGrid {
    match seed.kind {
        SeedKind::AB => SpaceTimeGrid::line(-4.0, 4.0, 161, -2.0, 2.0, 81).unwrap(),
        SeedKind::KMB => SpaceTimeGrid::line(-4.0, 4.0, 161, 0.0, 3.0, 61).unwrap(),
    }
}

#[test]
fn transformed_potential_is_the_breather() {
    for s in seeds() {
        let e = darboux::potential_mismatch(&s, &window(&s));
        assert!(e < 1e-12, "{:?}: {e}", s.kind);
    }
}

#[test]
fn transformed_eigenfunction_solves_the_lax_pair() {
    for s in seeds() {
        let u = s.potential_fn();
        let phi = s.eigenfunction();
        let (rx, rt) = lax_residual(&*u, phi.lambda, &phi, &window(&s));
        assert!(rx < 1e-8 && rt < 1e-8, "{:?}: {rx} {rt}", s.kind);
    }
}

#[test]
fn seed_solves_the_background_lax_pair() {
    let one = |_: f64, _: f64| C64::new(1.0, 0.0);
    for s in seeds() {
        let v = s.seed_solution();
        let (rx, rt) = lax_residual(&one, v.lambda, &v, &window(&s));
        assert!(rx < 1e-8 && rt < 1e-8, "{:?}: {rx} {rt}", s.kind);
    }
}

#[test]
fn laurent_chain_relations() {
    for s in seeds() {
        let u = s.potential_fn();
        let exp = s.laurent_expansion();
        let g = window(&s);
        for (name, phi, rhs) in exp.chain() {
            let r = chain_residual(&*u, phi.lambda, phi, rhs, &g);
            let sc = scale(phi, &g);
            assert!(r / sc < 1e-8, "{:?} {name}: {r} (scale {sc})", s.kind);
        }
    }
}

#[test]
fn closed_forms_match_the_matrix_route() {
    let pts: Vec<(f64, f64)> = (0..25).map(|j| (-3.0 + 0.25 * j as f64, -1.0 + 0.1 * j as f64)).collect();
    for s in seeds() {
        let e = s.laurent_route_mismatch(&pts);
        assert!(e < 1e-10, "{:?}: {e}", s.kind);
    }
}

#[test]
fn contour_sums_recover_the_laurent_coefficients() {
    for s in seeds() {
        for &(x, t) in &[(0.3, 0.2), (-1.1, 0.7), (2.0, -0.4)] {
            let [m1, m0, _] = s.laurent_matrices(x, t);
            let (c1, c0) = s.contour_laurent(x, t, 1e-3, 16);
            let e1 = (c1 - m1).max_abs() / m1.max_abs().max(1.0);
            let e0 = (c0 - m0).max_abs() / m0.max_abs().max(1.0);
            assert!(e1 < 1e-6 && e0 < 1e-6, "{:?} at ({x},{t}): {e1} {e0}", s.kind);
        }
    }
}

#[test]
fn pole_is_reported() {
    let s = seeds()[0];
    let d = s.darboux();
    assert!(matches!(d.eval(C64::new(0.6, 0.0), 0.0, 0.0), Err(Error::Pole(_))));
    assert!(matches!(d.eval(C64::new(-0.6, 0.0), 0.0, 0.0), Err(Error::Pole(_))));
    assert!(d.eval(C64::new(0.3, 0.1), 0.0, 0.0).is_ok());
}

#[test]
fn determinant_and_inverse() {
    for s in seeds() {
        let d = s.darboux();
        let samples: Vec<(C64, f64, f64)> = [C64::new(0.2, 0.1), C64::new(0.0, 1.5), C64::new(-0.9, 0.0)]
            .iter()
            .flat_map(|&l| [(l, 0.4, 0.1), (l, -1.3, 1.2)])
            .collect();
        assert!(darboux::determinant_error(&d, &samples).unwrap() < 1e-12);
        let pts = [(0.4, 0.1), (-1.3, 1.2)];
        assert!(darboux::inverse_identity_error(&d, C64::new(0.2, 0.3), &pts).unwrap() < 1e-12);
    }
}

#[test]
fn transformed_background_solution_solves_new_system() {
    for s in seeds() {
        let d = s.darboux();
        let lam = C64::new(0.3, 0.0);
        let u = s.potential_fn();
        for phi in lax::background_solutions(lam).unwrap() {
            let t = darboux::transform_solution(&d, &phi, lam).unwrap();
            let g = window(&s);
            let (rx, rt) = lax_residual(&*u, lam, &t, &g);
            let (rx, rt) = (rx / scale(&t, &g), rt / scale(&t, &g));
            assert!(rx < 1e-8 && rt < 1e-8, "{:?} {}: {rx} {rt}", s.kind, t.label);
        }
    }
}

#[test]
fn lambda_one_solutions_solve_the_lax_pair() {
    for s in seeds() {
        let u = s.potential_fn();
        let (a, b) = s.lambda_one_solutions();
        for v in [a, b] {
            let g = window(&s);
            let (rx, rt) = lax_residual(&*u, v.lambda, &v, &g);
            let (rx, rt) = (rx / scale(&v, &g), rt / scale(&v, &g));
            assert!(rx < 1e-8 && rt < 1e-8, "{:?} {}: {rx} {rt}", s.kind, v.label);
        }
    }
}

#[test]
fn akhmediev_eigenfunction_is_antiperiodic() {
    let s = seeds()[0];
    let per = 2.0 * std::f64::consts::PI / s.k0().re;
    let g = window(&s);
    assert!(s.eigenfunction().shift_mismatch(per, -1.0, &g) < 1e-12);
    assert!(s.laurent_expansion().phi1.shift_mismatch(per, -1.0, &g) < 1e-12);
    assert!(s.laurent_expansion().psi0.shift_mismatch(per, -1.0, &g) > 1e-3);
    let (one, _) = s.lambda_one_solutions();
    assert!(one.shift_mismatch(per, 1.0, &g) < 1e-12);
}

#[test]
fn fredholm_certificates_match() {
    for s in seeds() {
        for t in [0.0, 0.7] {
            for c in s.fredholm_certificates(t).unwrap() {
                assert!(c.abs_err < 1e-8, "{:?} t={t} {}: {} vs {}", s.kind, c.quantity, c.computed, c.analytic);
            }
        }
    }
}

#[test]
fn akhmediev_pairing_value() {
    let s = seeds()[0];
    let c = s.fredholm_certificates(0.0).unwrap();
    assert!((c[1].analytic.re - 1.104_466_167_277_661_4).abs() < 1e-12);
}
