//! Truncated formal power series in `t` over a coefficient ring, plus the
//! special series (hypergeometric, erfi difference kernel) the generating
//! functions are built from.

mod series;
mod special;

use std::fmt::Debug;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{Poly, Rational};

pub use series::{poly_at_series, Series};
pub use special::{erfi_kernel, hypergeometric_series};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term of the divisor is not invertible")]
    NonUnitConstantTerm,
    #[error("inner series must have zero constant term")]
    InnerConstantTermNonzero,
    #[error("constant term must equal 1")]
    ConstantTermNotOne,
    #[error("denominator parameter hits a pole at index {0}")]
    DenominatorParameterPole(usize),
}

/// A commutative coefficient ring containing the rationals.
///
/// Method names avoid the `std::ops` names so that generic code reads the
/// same for both implementors and never needs by-value operator bounds.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + Zero + One {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, k: &Rational) -> Self;
    /// Multiplicative inverse, if the element is a unit.
    fn try_inverse(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
}

impl Coeff for Rational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, k: &Rational) -> Self {
        self * k
    }
    fn try_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::one()
    }
}

impl Coeff for Poly {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, k: &Rational) -> Self {
        self.scale(k)
    }
    /// Only nonzero constants are units of `Q[x]`.
    fn try_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        (!Zero::is_zero(&c)).then(|| Poly::constant(c.recip()))
    }
    fn from_rational(r: &Rational) -> Self {
        Poly::constant(r.clone())
    }
}
