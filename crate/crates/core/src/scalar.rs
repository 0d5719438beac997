use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar the closed-form machinery is written against: f32 or f64.
pub trait Scalar: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Lossy conversion of an `f64` literal into the scalar type.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Machine-epsilon-relative tolerance used by consistency checks.
    fn tiny() -> Self {
        Self::epsilon() * Self::lit(64.0)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[inline]
pub(crate) fn lit<T: Scalar>(v: f64) -> T {
    T::lit(v)
}

#[inline]
pub(crate) fn half<T: Scalar>() -> T {
    lit(0.5)
}
