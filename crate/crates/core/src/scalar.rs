//! Scalar abstraction for exact linear algebra.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact field of characteristic zero.
///
/// Every computation in this crate relies on exact cancellation, so only
/// rational types implement this trait. Machine-width ratios are fine for
/// small inputs; [`crate::Rational`] never overflows.
pub trait Field:
    Num + Clone + Debug + Display + Hash + Eq + Send + Sync + 'static
    + for<'a> std::ops::AddAssign<&'a Self>
    + for<'a> std::ops::SubAssign<&'a Self>
    + for<'a> std::ops::Mul<&'a Self, Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn is_negative(&self) -> bool;
}

impl<T> Field for Ratio<T>
where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + Send + Sync + 'static,
    for<'a> Ratio<T>: std::ops::AddAssign<&'a Ratio<T>>
        + std::ops::SubAssign<&'a Ratio<T>>
        + std::ops::Mul<&'a Ratio<T>, Output = Ratio<T>>,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer fits the scalar type"))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn ratio_is_reduced() {
        let x = Rational::ratio(6, -4);
        assert_eq!(x.to_string(), "-3/2");
        assert!(Field::is_negative(&x));
        let y: Ratio<i64> = Field::ratio(2, 4);
        assert_eq!(y, Ratio::new(1, 2));
    }
}
