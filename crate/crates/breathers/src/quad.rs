//! Adaptive Gauss-Kronrod (7/15) quadrature for complex integrands.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

fn gk15(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol` (with a tiny absolute floor).
pub fn integrate(f: impl Fn(f64) -> Complex64, a: f64, b: f64, rel_tol: f64) -> Result<QuadResult> {
    const MAX_INTERVALS: usize = 4000;
    let f: &dyn Fn(f64) -> Complex64 = &f;
    let (v0, e0) = gk15(f, a, b);
    let mut parts = vec![(a, b, v0, e0)];
    let mut evaluations = 15;
    loop {
        let value: Complex64 = parts.iter().map(|p| p.2).sum();
        let error: f64 = parts.iter().map(|p| p.3).sum();
        let target = (rel_tol * value.norm()).max(1e-15 * (b - a).abs());
        if error <= target {
            return Ok(QuadResult { value, error, evaluations });
        }
        if parts.len() >= MAX_INTERVALS || !value.is_finite() {
            return Err(Error::Quadrature {
                achieved: error / value.norm().max(f64::MIN_POSITIVE),
                requested: rel_tol,
            });
        }
        let (i, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (lo, hi, _, _) = parts.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        let (vl, el) = gk15(f, lo, mid);
        let (vr, er) = gk15(f, mid, hi);
        evaluations += 30;
        parts.push((lo, mid, vl, el));
        parts.push((mid, hi, vr, er));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| Complex64::new(x.powi(5) - 3.0 * x, x * x), -1.0, 2.0, 1e-12).unwrap();
        assert!((r.value - Complex64::new(10.5 - 4.5, 3.0)).norm() < 1e-13);
    }

    #[test]
    fn oscillatory() {
        let r = integrate(|x| Complex64::new(0.0, 40.0 * x).exp(), 0.0, 1.0, 1e-10).unwrap();
        let exact = (Complex64::new(0.0, 40.0).exp() - 1.0) / Complex64::new(0.0, 40.0);
        assert!((r.value - exact).norm() < 1e-11);
    }

    #[test]
    fn reports_failure() {
        let r = integrate(|x| Complex64::new(1.0 / x.abs().max(1e-300).sqrt().powi(3), 0.0), -1.0, 1.0, 1e-14);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
