//! Real scalar abstraction shared by every numerical routine in the crate.
//!
//! All algorithms are written once against [`Real`] and operate on
//! `Complex<T>` entries. `f64` is the reference instantiation (every
//! documented tolerance is an `f64` tolerance); `f32` works with tolerances
//! floored at a small multiple of its machine epsilon.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst};

/// Floating point type usable as the real field of a [`crate::Matrix`].
pub trait Real:
    Float + FloatConst + Debug + Display + LowerExp + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("literal representable in scalar type")
    }

    /// A tolerance of `x`, but never below a few ulps of `Self`.
    ///
    /// For `f64` every tolerance used in the crate is well above the floor,
    /// so this returns `x` unchanged.
    #[inline]
    fn tol(x: f64) -> Self {
        Self::lit(x).max(Self::epsilon() * Self::lit(16.0))
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over a [`Real`] field.
pub type Cx<T> = Complex<T>;

#[inline]
pub(crate) fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn real<T: Real>(re: T) -> Cx<T> {
    Complex::new(re, T::zero())
}

/// `e^{i theta}`.
#[inline]
pub(crate) fn cis<T: Real>(theta: T) -> Cx<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Reduces an angle into `[0, 2pi)`.
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let tau = T::TAU();
    let mut t = theta % tau;
    if t < T::zero() {
        t = t + tau;
    }
    if t >= tau {
        t = t - tau;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_floor_only_affects_single_precision() {
        assert_eq!(<f64 as Real>::tol(1e-12), 1e-12);
        assert!(<f32 as Real>::tol(1e-12) > 1e-7);
    }

    #[test]
    fn wrap_angle_lands_in_range() {
        for &t in &[-7.0, -0.1, 0.0, 3.0, 6.3, 100.0] {
            let w: f64 = wrap_angle(t);
            assert!((0.0..std::f64::consts::TAU).contains(&w));
            assert!(((w - t) / std::f64::consts::TAU).fract().abs() < 1e-12 || ((w - t) / std::f64::consts::TAU).fract().abs() > 1.0 - 1e-12);
        }
    }
}
