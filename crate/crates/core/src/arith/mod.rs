//! Exact scalars and dense polynomials in `x`: the ground ring for every
//! series and identity in the crate.

mod poly;
mod rational;

pub use poly::Poly;
pub use rational::{
    binomial, checked_div, checked_recip, factorial, int, is_nonpositive_integer, parse_rational,
    pochhammer, powi, rat, rational_sqrt, Rational,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational `{0}` (expected p/q)")]
    Parse(String),
}
