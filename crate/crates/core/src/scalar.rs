//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All math is written against [`Real`], implemented for `f32` and `f64`.
//! Tolerances are stated in `f64` terms and rescaled by machine epsilon for
//! narrower types via [`Real::tol`].

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Real floating-point scalar.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal. Exact for `f64`, rounded for `f32`.
    fn lit(x: f64) -> Self;

    /// Rescales an `f64` tolerance to this type's precision.
    fn tol(x: f64) -> Self;

    /// One draw from the standard normal distribution.
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("usize converts to float")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn lit(x: f64) -> Self {
        x
    }

    fn tol(x: f64) -> Self {
        x
    }

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

impl Real for f32 {
    fn lit(x: f64) -> Self {
        x as f32
    }

    fn tol(x: f64) -> Self {
        (x * (f32::EPSILON as f64 / f64::EPSILON)) as f32
    }

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

/// Complex scalar over a [`Real`].
pub type C<T> = Complex<T>;

/// Relative slack of a few ulps, used only to absorb rounding when a value
/// sits on the boundary of its admissible interval.
pub(crate) fn ulp_slack<T: Real>(x: T) -> T {
    T::lit(16.0) * T::epsilon() * x.abs().max(T::one())
}

/// Checks `lo <= x <= hi` up to rounding and clamps into the interval.
pub(crate) fn clamp_to_range<T: Real>(x: T, lo: T, hi: T) -> Option<T> {
    if x.is_nan() || x < lo - ulp_slack(lo) || x > hi + ulp_slack(hi) {
        None
    } else {
        Some(x.max(lo).min(hi))
    }
}
