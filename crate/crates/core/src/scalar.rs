//! Scalar abstractions.
//!
//! [`Scalar`] is the ring-like bound used by the purely algebraic parts of the
//! crate (quaternion products, finite differences, wedge products). It is met
//! by `f32`, `f64` and small exact rationals such as
//! [`Rational64`](num_rational::Rational64), so identities that only involve
//! additions and multiplications can be checked exactly.
//!
//! [`Real`] adds the transcendental functions needed once exponentials,
//! square roots or norms enter; it is only met by the IEEE float types.

use std::fmt::{Debug, Display, LowerExp};
use std::ops::Neg;

use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Ring-like scalar with exact small-integer embedding.
pub trait Scalar: Num + Copy + Neg<Output = Self> + PartialOrd + Debug + FromPrimitive + ToPrimitive {
    /// Embeds a small integer.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable in scalar type")
    }
}

impl<T> Scalar for T where T: Num + Copy + Neg<Output = T> + PartialOrd + Debug + FromPrimitive + ToPrimitive {}

/// Floating point scalar: `f32` or `f64`.
pub trait Real: Scalar + Float + FloatConst + Display + LowerExp + Default + Send + Sync + 'static {
    /// Converts an `f64` constant, rounding for narrower types.
    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("finite literal")
    }

    /// Widened value for reports and serialization.
    fn widen(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where T: Scalar + Float + FloatConst + Display + LowerExp + Default + Send + Sync + 'static {}
