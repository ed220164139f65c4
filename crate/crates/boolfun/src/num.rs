//! Scalar abstraction the spectral types are generic over.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar for coefficients, truth-table values, and weights.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Converts an `f64` constant into the working scalar type.
pub(crate) fn fl<F: Scalar>(x: f64) -> F {
    F::from_f64(x).expect("f64 constant must be representable in the scalar type")
}
