use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Arbitrary-precision rational, used where results must be exact.
pub type Rational = Ratio<BigInt>;

/// Numeric type the interval, evidence and Markov code is generic over.
///
/// Only field operations and ordering are required; nothing here takes a
/// square root or a logarithm.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
    /// Converts a small integer constant.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer constant representable in scalar type")
    }

    /// Converts an `f64`, exactly for rationals, rounding for `f32`.
    fn from_real(x: f64) -> Self {
        Self::from_f64(x).expect("finite real representable in scalar type")
    }

    fn to_real(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Tolerance used when checking that masses and probabilities sum to one.
    fn normalization_tolerance() -> Self {
        Self::from_real(1e-9)
    }

    fn approx_eq(&self, other: &Self, tol: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= *tol
    }
}

impl<T> Scalar for T where
    T: Num
        + Signed
        + Clone
        + PartialOrd
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Send
        + Sync
{
}

pub(crate) fn sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v)
}
