//! Integer scalar abstraction for objective values and ILP coefficients.
//!
//! All distance arithmetic is exact. Callers pick the width: `i64` covers
//! every desk-scale instance, `i128` leaves headroom for large reduction
//! budgets. Overflow is always reported, never wrapped.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{FromPrimitive, PrimInt, Signed};

use crate::error::{Error, Result};

pub trait Scalar:
    PrimInt + Signed + FromPrimitive + Display + Debug + Hash + Default + Send + Sync + 'static
{
    #[inline]
    fn from_u64_checked(v: u64) -> Result<Self> {
        Self::from_u64(v).ok_or_else(|| Error::overflow(format!("{v} does not fit")))
    }

    #[inline]
    fn from_i64_checked(v: i64) -> Result<Self> {
        Self::from_i64(v).ok_or_else(|| Error::overflow(format!("{v} does not fit")))
    }

    #[inline]
    fn add_checked(self, rhs: Self) -> Result<Self> {
        self.checked_add(&rhs)
            .ok_or_else(|| Error::overflow(format!("{self} + {rhs}")))
    }

    #[inline]
    fn mul_checked(self, rhs: Self) -> Result<Self> {
        self.checked_mul(&rhs)
            .ok_or_else(|| Error::overflow(format!("{self} * {rhs}")))
    }

    #[inline]
    fn sub_checked(self, rhs: Self) -> Result<Self> {
        self.checked_sub(&rhs)
            .ok_or_else(|| Error::overflow(format!("{self} - {rhs}")))
    }

    /// Lossless widening, used to compare values of different widths.
    #[inline]
    fn widen(self) -> i128 {
        self.to_i128().expect("scalar wider than i128")
    }
}

impl<T> Scalar for T where
    T: PrimInt + Signed + FromPrimitive + Display + Debug + Hash + Default + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_ops_report_overflow() {
        assert!(i64::MAX.add_checked(1).is_err());
        assert!(i64::MAX.mul_checked(2).is_err());
        assert_eq!(3i64.mul_checked(4).unwrap(), 12);
        assert_eq!(i128::from_u64_checked(u64::MAX).unwrap(), u64::MAX as i128);
        assert!(i64::from_u64_checked(u64::MAX).is_err());
    }
}
