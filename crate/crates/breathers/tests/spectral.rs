use std::f64::consts::PI;

use breathers::spectral::*;
use breathers::{BreatherSpec, Error, C64};

fn one(_: f64, _: f64) -> C64 {
    C64::new(1.0, 0.0)
}

fn ab() -> BreatherSpec<f64> {
    BreatherSpec::akhmediev(0.6).unwrap()
}

fn kmb() -> BreatherSpec<f64> {
    BreatherSpec::kuznetsov_ma(1.25).unwrap()
}

const L_AB: f64 = 2.0 * PI / 1.6;

#[test]
fn background_periodic_spectrum_is_exact() {
    let op = discretize(&one, 0.0, Basis::FourierInteger { n: 64, period: L_AB }).unwrap();
    let targets = periodic_targets(L_AB, 64);
    let r = compute_spectrum(&op, &targets).unwrap();
    assert!(r.max_match_distance < 1e-10, "{}", r.max_match_distance);
    // and nothing else: every eigenvalue sits on a target
    for z in &r.eigenvalues {
        let d = targets.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
        assert!(d < 1e-10, "stray eigenvalue {z}");
    }
}

#[test]
fn background_antiperiodic_spectrum_is_exact() {
    let op = discretize(&one, 0.0, Basis::FourierHalfInteger { n: 64, period: L_AB }).unwrap();
    let targets = antiperiodic_targets(L_AB, 63);
    let r = compute_spectrum(&op, &targets).unwrap();
    assert!(r.max_match_distance < 1e-10, "{}", r.max_match_distance);
    for z in &r.eigenvalues {
        let d = targets.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
        assert!(d < 1e-10, "stray eigenvalue {z}");
    }
}

#[test]
fn background_zero_has_multiplicity_two_four() {
    // λ = 0 needs the wavenumber 1, present for L = π (antiperiodic) and L = 2π (periodic)
    for basis in [Basis::FourierHalfInteger { n: 16, period: PI }, Basis::FourierInteger { n: 16, period: 2.0 * PI }] {
        let op = discretize(&one, 0.0, basis).unwrap();
        let m = multiplicity_probe(&op, C64::new(0.0, 0.0)).unwrap();
        assert_eq!(m.pair(), Some((2, 4)), "{basis:?}: {m:?}");
    }
    // ±1 algebraically simple
    let op = discretize(&one, 0.0, Basis::FourierInteger { n: 16, period: L_AB }).unwrap();
    assert_eq!(multiplicity_probe(&op, C64::new(1.0, 0.0)).unwrap().pair(), Some((1, 1)));
}

#[test]
fn akhmediev_antiperiodic_spectrum() {
    let u = ab();
    let f = |x: f64, t: f64| u.eval(x, t);
    let op = discretize(&f, 0.0, Basis::FourierHalfInteger { n: 128, period: L_AB }).unwrap();
    let r = compute_spectrum(&op, &antiperiodic_targets(L_AB, 9)).unwrap();
    assert!(r.max_match_distance < 1e-8, "{:?}", r.matches);
    let l0 = r.matched(C64::new(0.6, 0.0)).unwrap();
    assert!(l0.distance < 1e-8 && l0.count == 2, "{l0:?}");
    let d = r.symmetry_defect(10.0);
    assert!(d < 1e-8, "{d}");
}

#[test]
fn akhmediev_antiperiodic_multiplicities() {
    let u = ab();
    let f = |x: f64, t: f64| u.eval(x, t);
    let op = discretize(&f, 0.0, Basis::FourierHalfInteger { n: 64, period: L_AB }).unwrap();
    let m = multiplicity_probe(&op, C64::new(0.6, 0.0)).unwrap();
    assert_eq!(m.pair(), Some((1, 2)), "{m:?}");
    let m = multiplicity_probe(&op, C64::new(-0.6, 0.0)).unwrap();
    assert_eq!(m.pair(), Some((1, 2)), "{m:?}");
    let l3 = antiperiodic_targets(L_AB, 3)[2];
    let m = multiplicity_probe(&op, l3).unwrap();
    assert_eq!(m.pair(), Some((2, 2)), "{l3} {m:?}");
}

#[test]
fn akhmediev_periodic_spectrum() {
    let u = ab();
    let f = |x: f64, t: f64| u.eval(x, t);
    let op = discretize(&f, 0.0, Basis::FourierInteger { n: 128, period: L_AB }).unwrap();
    let r = compute_spectrum(&op, &periodic_targets(L_AB, 10)).unwrap();
    assert!(r.max_match_distance < 1e-8, "{:?}", r.matches);
    // λ0 is not a periodic eigenvalue
    let near = r.eigenvalues.iter().map(|z| (z - 0.6).norm()).fold(f64::INFINITY, f64::min);
    assert!(near > 0.1, "{near}");
    let small = multiplicity_probe(&discretize(&f, 0.0, Basis::FourierInteger { n: 64, period: L_AB }).unwrap(), C64::new(1.0, 0.0)).unwrap();
    assert_eq!(small.pair(), Some((1, 1)), "{small:?}");
}

#[test]
fn spectra_are_time_independent() {
    let u = ab();
    let f = |x: f64, t: f64| u.eval(x, t);
    for basis in [Basis::FourierInteger { n: 96, period: L_AB }, Basis::FourierHalfInteger { n: 96, period: L_AB }] {
        let a = discretize(&f, 0.0, basis).unwrap().eigenvalues().unwrap();
        let b = discretize(&f, 0.7, basis).unwrap().eigenvalues().unwrap();
        let d = spectral_drift(&a, &b, 6.0).max(spectral_drift(&b, &a, 6.0));
        assert!(d < 1e-8, "{basis:?}: {d}");
    }
}

#[test]
fn under_resolved_fourier_basis_is_rejected() {
    let u = ab();
    let f = |x: f64, t: f64| u.eval(x, t);
    match discretize(&f, 0.0, Basis::FourierHalfInteger { n: 16, period: L_AB }) {
        Err(Error::UnderResolved { suggested, .. }) => assert!(suggested >= 32, "{suggested}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn kuznetsov_ma_isolated_eigenvalues() {
    let u = kmb();
    let f = |x: f64, t: f64| u.eval(x, t);
    let op = discretize(&f, 0.0, Basis::FiniteDifference { n: 1024, half_width: 30.0 }).unwrap();
    let targets = [C64::new(1.25, 0.0), C64::new(-1.25, 0.0)];
    let r = compute_spectrum(&op, &targets).unwrap();
    assert!(r.max_match_distance < 1e-6, "{:?}", r.matches);
    // the only real eigenvalues outside [−1, 1] are ±λ0
    for z in r.eigenvalues.iter().filter(|z| z.im.abs() < 1e-3 && z.re.abs() > 1.0 + 1e-3) {
        assert!(targets.iter().any(|w| (w - z).norm() < 1e-6), "{z}");
    }
}

#[test]
fn kuznetsov_ma_drift_separates_points_from_bands() {
    let u = kmb();
    let f = |x: f64, t: f64| u.eval(x, t);
    let (pts, band) = classify_by_drift(&f, 0.0, 400, 14.0, 1.25, 1e-4).unwrap();
    assert!(pts.iter().any(|z| (z - 1.25).norm() < 1e-6), "{pts:?}");
    assert!(pts.iter().any(|z| (z + 1.25).norm() < 1e-6), "{pts:?}");
    assert!(band.len() > pts.len());
    // box artifacts off iℝ ∪ [−1, 1] all move with X
    for z in pts.iter().filter(|z| background_distance(**z) > 1e-3) {
        assert!((z.norm() - 1.25).abs() < 1e-6 && z.im.abs() < 1e-6, "{z}");
    }
}

#[test]
fn kuznetsov_ma_truncation_convergence() {
    let u = kmb();
    let f = |x: f64, t: f64| u.eval(x, t);
    let beta0 = u.beta0().unwrap();
    let (slope, pts) = truncation_decay_rate(&f, 1.25, &[3.0, 4.0, 5.0, 6.0, 7.0], 0.05).unwrap();
    assert!(slope <= -0.5 * beta0 * 0.8, "{slope} {pts:?}");
}
