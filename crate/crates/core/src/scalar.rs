//! Scalar abstraction: all numerics in this crate are generic over a real
//! floating-point type, with complex arithmetic built on top via
//! [`num_complex::Complex`].

use std::fmt;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar type the library is generic over: `f32` or `f64`.
///
/// Tolerances quoted throughout the crate (and asserted by the acceptance
/// suite) assume `f64`; the `f32` instantiation is valid but only accurate
/// to single precision.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Shorthand for lossy conversion of an `f64` constant.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }

    /// Exact conversion of a small non-negative integer.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("index representable in scalar type")
    }

    /// Exact conversion of a small signed integer.
    fn of_i64(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over the crate's scalar.
pub type Cplx<T> = Complex<T>;
