//! Scalar abstraction: all feature values, impurities and probabilities are
//! generic over an IEEE float type.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar used throughout the toolkit: `f32` or `f64`.
pub trait Scalar:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + FromStr
    + Display
    + Debug
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Lossy cast from `f64`, panicking only on NaN-free conversion failure
/// (which cannot happen for `f32`/`f64` targets).
#[inline]
pub fn from_f64<F: Scalar>(x: f64) -> F {
    F::from_f64(x).expect("f64 converts to every supported scalar")
}

/// Exact-as-possible cast from a count.
#[inline]
pub fn from_usize<F: Scalar>(n: usize) -> F {
    F::from_usize(n).expect("usize converts to every supported scalar")
}
