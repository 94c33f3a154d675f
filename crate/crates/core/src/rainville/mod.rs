//! Rainville generating functions `A(t)^k F^{(m)}(x t A(t) - R(t))`: their
//! expansion into coefficient polynomials, and the recurrence-coefficient
//! identities relating `(A, R, F)` to the Jacobi–Szegő parameters.

mod props;

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{Poly, Rational};
use crate::families::FamilyError;
use crate::fps::{Series, SeriesError};

pub use props::{
    akn_table, verify_corollaries, verify_prop1, verify_prop1_with, verify_prop2, verify_prop3,
    AknTable, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RainvilleError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("alpha_{0} vanishes")]
    ZeroAlpha(usize),
    #[error("normalization violated: {0}")]
    Normalization(&'static str),
    #[error("series known to order {have}, need {need}")]
    InsufficientOrder { have: usize, need: usize },
}

/// Where and how an identity check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Index of the first failing coefficient / equation.
    pub n: usize,
    /// Which relation failed (e.g. `"gf"`, `"prop3.ii"`).
    pub relation: String,
    pub expected: String,
    pub actual: String,
}

impl Mismatch {
    pub fn new(
        n: usize,
        relation: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Self {
        Mismatch {
            n,
            relation: relation.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at n = {}: expected {}, got {}",
            self.relation, self.n, self.expected, self.actual
        )
    }
}

/// Coefficients `S_n` of `A'/A` and `R_n` of `R'/A`.
#[derive(Debug, Clone, PartialEq)]
pub struct RainvilleCoeffs {
    pub s: Vec<Rational>,
    pub r: Vec<Rational>,
}

impl RainvilleCoeffs {
    /// Highest index for which `S_n` and `R_n` are known.
    pub fn order(&self) -> usize {
        self.s.len() - 1
    }
}

fn check_normalization(a: &Series<Rational>, r: &Series<Rational>) -> Result<(), RainvilleError> {
    if !a.coeff(0).is_one() {
        return Err(RainvilleError::Normalization("A(0) must be 1"));
    }
    if !r.coeff(0).is_zero() {
        return Err(RainvilleError::Normalization("R(0) must be 0"));
    }
    Ok(())
}

pub fn compute_s_r(
    a: &Series<Rational>,
    r: &Series<Rational>,
) -> Result<RainvilleCoeffs, RainvilleError> {
    check_normalization(a, r)?;
    let s = a.derivative().div(a)?;
    let rc = r.derivative().div(a)?;
    let order = s.order().min(rc.order());
    Ok(RainvilleCoeffs {
        s: s.truncate(order).into_coeffs(),
        r: rc.truncate(order).into_coeffs(),
    })
}

/// The data of a generating function `A(t)^k F^{(m)}(x t A(t) - R(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GfData {
    pub a: Series<Rational>,
    pub r: Series<Rational>,
    pub f: Series<Rational>,
    pub k_power: Rational,
    pub m: usize,
}

impl GfData {
    /// Plain form `A(t) F(x t A(t) - R(t))`.
    pub fn plain(a: Series<Rational>, r: Series<Rational>, f: Series<Rational>) -> Self {
        GfData {
            a,
            r,
            f,
            k_power: Rational::one(),
            m: 0,
        }
    }

    /// The `m`-th x-derivative of the plain form, `A^{m+1} F^{(m)}(...)`.
    pub fn derived(&self, m: usize) -> Self {
        GfData {
            k_power: &self.k_power + Rational::from_integer((m as i64).into()),
            m: self.m + m,
            ..self.clone()
        }
    }

    pub fn expand(&self, order: usize) -> Result<Vec<Poly>, RainvilleError> {
        expand_gf(&self.a, &self.f, &self.r, &self.k_power, self.m, order)
    }
}

/// Coefficient polynomials of `A(t)^k F^{(m)}(x t A(t) - R(t))` through `t^order`.
///
/// `F` must be known to order `order + m` so that its `m`-th derivative is
/// known to `order`.
pub fn expand_gf(
    a: &Series<Rational>,
    f: &Series<Rational>,
    r: &Series<Rational>,
    k_power: &Rational,
    m: usize,
    order: usize,
) -> Result<Vec<Poly>, RainvilleError> {
    check_normalization(a, r)?;
    let have = a.order().min(r.order()).min(f.order().saturating_sub(m));
    if have < order || f.order() < m {
        return Err(RainvilleError::InsufficientOrder { have, need: order });
    }
    let a = a.truncate(order);
    let r = r.truncate(order);
    let fm = f.nth_derivative(m).truncate(order);
    let u = Series::<Poly>::rainville_argument(&a, &r);
    let composed = fm.lift().compose(&u)?;
    let prefactor = a.powq(k_power)?.lift();
    Ok((&prefactor * &composed).into_coeffs())
}

/// True when a series has only even powers of `t`.
pub fn is_even(s: &Series<Rational>) -> bool {
    s.coeffs().iter().skip(1).step_by(2).all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn h1() -> (Series<Rational>, Series<Rational>, Series<Rational>) {
        let n = 8;
        (
            Series::one(n),
            Series::monomial(rat(1, 4), 2, n),
            Series::var(n).exp().unwrap(),
        )
    }

    #[test]
    fn s_r_for_hermite_data() {
        let (a, r, _) = h1();
        let c = compute_s_r(&a, &r).unwrap();
        assert!(c.s.iter().all(Zero::is_zero));
        assert_eq!(c.r[1], rat(1, 2));
        assert!(c.r.iter().enumerate().all(|(i, v)| i == 1 || v.is_zero()));
    }

    #[test]
    fn s_r_for_laguerre_data() {
        let n = 6;
        let alpha = rat(2, 3);
        let one_minus_t = Series::new(vec![int(1), int(-1)], n);
        let a = one_minus_t.recip().unwrap();
        let r = one_minus_t.log().unwrap().scale(&-alpha.clone());
        let c = compute_s_r(&a, &r).unwrap();
        assert!(c.s.iter().all(|v| v == &int(1)));
        assert_eq!(c.r[0], alpha);
        assert!(c.r[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn s_for_ultra2_data() {
        let lambda = int(2);
        let a = Series::new(vec![int(1), int(0), rat(-1, 4)], 6)
            .powq(&-lambda.recip())
            .unwrap();
        let r = &(&a * &Series::new(vec![int(1), int(0), rat(1, 4)], 6)) - &Series::one(6);
        let c = compute_s_r(&a, &r).unwrap();
        assert_eq!(c.s[1], rat(1, 4));
        assert_eq!(c.s[2], int(0));
    }

    #[test]
    fn expansion_examples() {
        let (a, r, f) = h1();
        let polys = expand_gf(&a, &f, &r, &int(1), 0, 6).unwrap();
        assert_eq!(polys[2], Poly::new(vec![rat(-1, 4), int(0), rat(1, 2)]));
        assert_eq!(polys[0], Poly::one());

        let lambda = rat(3, 2);
        let f = Series::new(vec![int(1), int(-1)], 6)
            .powq(&-lambda.clone())
            .unwrap();
        let polys = expand_gf(&a, &f, &r, &int(1), 0, 6).unwrap();
        let half_poch = &lambda * (&lambda + int(1)) / int(2);
        assert_eq!(
            polys[2],
            Poly::new(vec![-&lambda / int(4), int(0), half_poch])
        );
    }

    #[test]
    fn expansion_requires_enough_order() {
        let (a, r, f) = h1();
        assert!(matches!(
            expand_gf(&a, &f, &r, &int(1), 1, 8),
            Err(RainvilleError::InsufficientOrder { .. })
        ));
        assert!(matches!(
            expand_gf(&Series::constant(int(2), 4), &f, &r, &int(1), 0, 4),
            Err(RainvilleError::Normalization(_))
        ));
    }
}
