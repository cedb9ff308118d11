//! Scalar abstraction shared by the kernel and readout algebra.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar the kernels and the two-level algebra are generic over.
///
/// Implemented for `f32` and `f64`. Tolerances quoted in the docs assume `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only if the target type cannot represent finite `f64`s,
    /// which never happens for the implemented types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `1 - e^{ix}` without the cancellation of `1 - cos x` near zero.
#[inline]
pub fn one_minus_expi<T: Real>(x: T) -> num_complex::Complex<T> {
    let half = x * T::lit(0.5);
    let s = half.sin();
    num_complex::Complex::new(T::lit(2.0) * s * s, -x.sin())
}
