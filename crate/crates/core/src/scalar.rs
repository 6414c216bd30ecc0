//! The exact scalar fields representations are defined over.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact field of characteristic zero. Hom and Ext dimensions of rigid
/// representations of Dynkin quivers do not depend on the field, so any
/// implementor gives the same answers; only speed and overflow behaviour
/// differ.
pub trait Field: Num + Neg<Output = Self> + Clone + Debug + Display + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    /// The value as an integer, when it is one and fits.
    fn to_i64(&self) -> Option<i64>;
}

impl<T> Field for Ratio<T>
where
    T: Integer + Signed + Clone + Debug + Display + Send + Sync + From<i64> + 'static,
    T: TryInto<i64>,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from(v))
    }

    fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().try_into().ok()
        } else {
            None
        }
    }
}
