//! Numeric abstraction over distance values.
//!
//! Every algorithm in this crate is written against [`Scalar`], so the same
//! search runs on `f64` matrices (the default), `f32` matrices, or integer
//! matrices (`i64`) where sums are exact and ties are unambiguous.

use std::fmt::{Debug, Display};

use num_traits::{NumAssign, NumCast, Signed};

/// A signed numeric type usable as a pairwise distance.
pub trait Scalar:
    Copy + Debug + Display + PartialOrd + Signed + NumAssign + NumCast + Send + Sync + 'static
{
    /// Objective differences at or below this magnitude are treated as ties.
    const TOLERANCE: Self;

    /// Converts a parsed decimal value, refusing values the type cannot hold.
    ///
    /// Floating types accept any finite value (with rounding for `f32`);
    /// integer types accept only integral values.
    fn from_f64_checked(value: f64) -> Option<Self>;

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `self` is strictly better (smaller) than `other` beyond the tolerance.
    #[inline]
    fn improves_on(self, other: Self) -> bool {
        self < other - Self::TOLERANCE
    }

    /// `self` and `other` are equal up to the tolerance.
    #[inline]
    fn ties_with(self, other: Self) -> bool {
        (self - other).abs() <= Self::TOLERANCE
    }

    #[inline]
    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    #[inline]
    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

macro_rules! impl_float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const TOLERANCE: Self = $tol;

            fn from_f64_checked(value: f64) -> Option<Self> {
                value.is_finite().then_some(value as $t)
            }
        }
    };
}

macro_rules! impl_int_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const TOLERANCE: Self = 0;

            fn from_f64_checked(value: f64) -> Option<Self> {
                if value.fract() != 0.0 {
                    return None;
                }
                let v: $t = NumCast::from(value)?;
                Some(v)
            }
        }
    };
}

impl_float_scalar!(f64, 1e-9);
impl_float_scalar!(f32, 1e-4);
impl_int_scalar!(i64);
impl_int_scalar!(i32);
