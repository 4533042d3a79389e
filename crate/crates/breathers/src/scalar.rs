use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar used by the closed-form layers (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Default + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Default + Debug + Display + Send + Sync + 'static
{
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(v: f64) -> T {
    T::from_f64(v).expect("literal representable in scalar type")
}

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn re<T: Real>(v: T) -> Complex<T> {
    Complex::new(v, T::zero())
}

#[inline]
pub fn imag_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// Widens a complex value to double precision.
#[inline]
pub fn to_c64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}
