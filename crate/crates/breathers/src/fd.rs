//! Finite-difference oracles: central differences with one Richardson step (4th order).
//!
//! Every residual in the crate differentiates analytic evaluators through these helpers,
//! never through the closed-form derivatives they are meant to test.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::v2::V2;

/// Ratio between a grid spacing and the step used to differentiate at its nodes.
pub const ORACLE_SUBSTEP: f64 = 16.0;

/// Fixed step for the eighth-order linearized residual oracle. Balances truncation
/// against round-off for fields of magnitude up to a few hundred.
pub const LIN_ORACLE_STEP: f64 = 0.03;

pub trait FdValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl FdValue for f64 {}
impl FdValue for Complex64 {}
impl FdValue for V2<f64> {}

/// Step used at nodes of spacing `spacing`.
#[inline]
pub fn oracle_step(spacing: f64) -> f64 {
    spacing / ORACLE_SUBSTEP
}

pub fn d1<V: FdValue>(f: impl Fn(f64) -> V, x: f64, h: f64) -> V {
    let c = |h: f64| (f(x + h) - f(x - h)) * (0.5 / h);
    (c(0.5 * h) * 4.0 - c(h)) * (1.0 / 3.0)
}

pub fn d2<V: FdValue>(f: impl Fn(f64) -> V, x: f64, h: f64) -> V {
    let f0 = f(x);
    let c = |h: f64| (f(x + h) + f(x - h) - f0 * 2.0) * (1.0 / (h * h));
    (c(0.5 * h) * 4.0 - c(h)) * (1.0 / 3.0)
}

/// Sixth-order first derivative (two Richardson levels on `h, h/2, h/4`).
pub fn d1_6<V: FdValue>(f: impl Fn(f64) -> V, x: f64, h: f64) -> V {
    let a = d1(&f, x, h);
    let b = d1(&f, x, 0.5 * h);
    (b * 16.0 - a) * (1.0 / 15.0)
}

/// Sixth-order second derivative.
pub fn d2_6<V: FdValue>(f: impl Fn(f64) -> V, x: f64, h: f64) -> V {
    let a = d2(&f, x, h);
    let b = d2(&f, x, 0.5 * h);
    (b * 16.0 - a) * (1.0 / 15.0)
}

/// Eighth-order first derivative (three Richardson levels). Used for the linearized
/// residual, where large cancelling terms leave 4th order short of the tolerance.
pub fn d1_8<V: FdValue>(f: impl Fn(f64) -> V, x: f64, h: f64) -> V {
    let a = d1_6(&f, x, h);
    let b = d1_6(&f, x, 0.5 * h);
    (b * 64.0 - a) * (1.0 / 63.0)
}

/// Eighth-order second derivative.
pub fn d2_8<V: FdValue>(f: impl Fn(f64) -> V, x: f64, h: f64) -> V {
    let a = d2_6(&f, x, h);
    let b = d2_6(&f, x, 0.5 * h);
    (b * 64.0 - a) * (1.0 / 63.0)
}

/// Second-order central difference (used only to exhibit the refinement order).
pub fn d1_central<V: FdValue>(f: impl Fn(f64) -> V, x: f64, h: f64) -> V {
    (f(x + h) - f(x - h)) * (0.5 / h)
}

/// Observed convergence order between consecutive refinements with ratio `ratio`.
pub fn observed_order(coarse: f64, fine: f64, ratio: f64) -> f64 {
    (coarse / fine).ln() / ratio.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixth_order() {
        let f = |x: f64| (1.3 * x).sin();
        let e = |h: f64| (d1_6(f, 0.7, h) - 1.3 * (0.91f64).cos()).abs();
        let p = observed_order(e(0.4), e(0.2), 2.0);
        assert!((p - 6.0).abs() < 0.3, "order {p}");
        let e = |h: f64| (d2_6(f, 0.7, h) + 1.69 * (0.91f64).sin()).abs();
        let p = observed_order(e(0.4), e(0.2), 2.0);
        assert!((p - 6.0).abs() < 0.3, "order {p}");
    }

    #[test]
    fn eighth_order() {
        let f = |x: f64| (1.3 * x).sin();
        let e = |h: f64| (d1_8(f, 0.7, h) - 1.3 * (0.91f64).cos()).abs();
        let p = observed_order(e(0.8), e(0.4), 2.0);
        assert!((p - 8.0).abs() < 0.4, "order {p}");
        let e = |h: f64| (d2_8(f, 0.7, h) + 1.69 * (0.91f64).sin()).abs();
        let p = observed_order(e(0.8), e(0.4), 2.0);
        assert!((p - 8.0).abs() < 0.4, "order {p}");
    }

    #[test]
    fn fourth_order_first_derivative() {
        let f = |x: f64| x.sin();
        let e1 = (d1(f, 0.7, 0.1) - 0.7f64.cos()).abs();
        let e2 = (d1(f, 0.7, 0.05) - 0.7f64.cos()).abs();
        let p = observed_order(e1, e2, 2.0);
        assert!((p - 4.0).abs() < 0.2, "order {p}");
    }

    #[test]
    fn fourth_order_second_derivative() {
        let f = |x: f64| (2.0 * x).exp();
        let exact = 4.0 * 1.4f64.exp();
        let e1 = (d2(f, 0.7, 0.1) - exact).abs();
        let e2 = (d2(f, 0.7, 0.05) - exact).abs();
        assert!((observed_order(e1, e2, 2.0) - 4.0).abs() < 0.2);
    }

    #[test]
    fn vector_values() {
        let f = |x: f64| V2::new(Complex64::new(x * x, 0.0), Complex64::new(0.0, x));
        let d = d1(f, 1.5, 0.1);
        assert!((d.a.re - 3.0).abs() < 1e-12);
        assert!((d.b.im - 1.0).abs() < 1e-12);
    }
}
