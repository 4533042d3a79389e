//! Complex 2-vectors and 2x2 matrices for the Lax system.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex;

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct V2<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
}

impl<T: Real> V2<T> {
    pub fn new(a: Complex<T>, b: Complex<T>) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(Complex::new(T::zero(), T::zero()), Complex::new(T::zero(), T::zero()))
    }

    pub fn conj(self) -> Self {
        Self::new(self.a.conj(), self.b.conj())
    }

    pub fn norm_sqr(self) -> T {
        self.a.norm_sqr() + self.b.norm_sqr()
    }

    pub fn max_abs(self) -> T {
        self.a.norm().max(self.b.norm())
    }

    pub fn is_finite(self) -> bool {
        self.a.re.is_finite() && self.a.im.is_finite() && self.b.re.is_finite() && self.b.im.is_finite()
    }
}

impl<T: Real> Add for V2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl<T: Real> AddAssign for V2<T> {
    fn add_assign(&mut self, o: Self) {
        self.a = self.a + o.a;
        self.b = self.b + o.b;
    }
}

impl<T: Real> Sub for V2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl<T: Real> Neg for V2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl<T: Real> Mul<T> for V2<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.a * s, self.b * s)
    }
}

impl<T: Real> Mul<Complex<T>> for V2<T> {
    type Output = Self;
    fn mul(self, s: Complex<T>) -> Self {
        Self::new(self.a * s, self.b * s)
    }
}

/// Row-major 2x2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct M2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> M2<T> {
    pub fn new(m00: Complex<T>, m01: Complex<T>, m10: Complex<T>, m11: Complex<T>) -> Self {
        Self { m: [[m00, m01], [m10, m11]] }
    }

    pub fn identity() -> Self {
        let o = Complex::new(T::one(), T::zero());
        let z = Complex::new(T::zero(), T::zero());
        Self::new(o, z, z, o)
    }

    pub fn from_cols(c0: V2<T>, c1: V2<T>) -> Self {
        Self::new(c0.a, c1.a, c0.b, c1.b)
    }

    /// Outer product `u vᵀ` (no conjugation).
    pub fn outer(u: V2<T>, v: V2<T>) -> Self {
        Self::new(u.a * v.a, u.a * v.b, u.b * v.a, u.b * v.b)
    }

    pub fn col(&self, j: usize) -> V2<T> {
        V2::new(self.m[0][j], self.m[1][j])
    }

    pub fn apply(&self, v: V2<T>) -> V2<T> {
        V2::new(
            self.m[0][0] * v.a + self.m[0][1] * v.b,
            self.m[1][0] * v.a + self.m[1][1] * v.b,
        )
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == T::zero() || !(d.re.is_finite() && d.im.is_finite()) {
            return None;
        }
        let r = Complex::new(T::one(), T::zero()) / d;
        Some(Self::new(
            self.m[1][1] * r,
            -self.m[0][1] * r,
            -self.m[1][0] * r,
            self.m[0][0] * r,
        ))
    }

    pub fn max_abs(&self) -> T {
        let mut out = T::zero();
        for row in &self.m {
            for z in row {
                out = out.max(z.norm());
            }
        }
        out
    }
}

impl<T: Real> Mul for M2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = &self.m;
        let b = &o.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl<T: Real> Add for M2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut m = self.m;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                *z = *z + o.m[i][j];
            }
        }
        Self { m }
    }
}

impl<T: Real> Sub for M2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut m = self.m;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                *z = *z - o.m[i][j];
            }
        }
        Self { m }
    }
}

impl<T: Real> Mul<Complex<T>> for M2<T> {
    type Output = Self;
    fn mul(self, s: Complex<T>) -> Self {
        let mut m = self.m;
        for row in m.iter_mut() {
            for z in row.iter_mut() {
                *z = *z * s;
            }
        }
        Self { m }
    }
}
