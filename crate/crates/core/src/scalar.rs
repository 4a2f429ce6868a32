use std::ops::{Add, Mul, Neg, Sub};

/// Number-like carrier for chart evaluation.
///
/// Chart formulas are written once, generically, and instantiated both at
/// `f64` (plain point evaluation) and at [`crate::Jet2`] (evaluation with all
/// partials to total degree 3). Only the operations charts actually need are
/// required; in particular there is no division, and `sqrt` is the
/// positive-argument branch: charts must keep radicands positive on their
/// domain, and the jet implementation panics if one does not.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Embeds a constant.
    fn lift(value: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
    fn asinh(self) -> Self;
}

impl Scalar for f64 {
    #[inline]
    fn lift(value: f64) -> Self {
        value
    }
    #[inline]
    fn sin(self) -> Self {
        f64::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        f64::cos(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn asinh(self) -> Self {
        f64::asinh(self)
    }
}
