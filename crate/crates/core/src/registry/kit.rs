//! Small series constructors shared by the catalog entries.

use crate::arith::{int, Poly, Rational};
use crate::fps::{hypergeometric_series, Series, SeriesError};

/// A polynomial in `t`, given by its coefficients, as a series.
pub(crate) fn poly_t(coeffs: &[Rational], order: usize) -> Series<Rational> {
    Series::new(coeffs.to_vec(), order)
}

/// `(1 + c1 t + c2 t^2)^e`.
pub(crate) fn quad_pow(c1: Rational, c2: Rational, e: &Rational, order: usize) -> Series<Rational> {
    poly_t(&[int(1), c1, c2], order)
        .powq(e)
        .expect("constant term is one")
}

/// `(1 - t)^e`.
pub(crate) fn one_minus_t_pow(e: &Rational, order: usize) -> Series<Rational> {
    quad_pow(int(-1), int(0), e, order)
}

/// `(1 - c z)^e` as a series in `z`.
pub(crate) fn binomial_series(c: &Rational, e: &Rational, order: usize) -> Series<Rational> {
    quad_pow(-c.clone(), int(0), e, order)
}

/// `(1 + t^2/4) A - 1`, the inner shift shared by several entries.
pub(crate) fn quarter_shift(a: &Series<Rational>) -> Series<Rational> {
    let order = a.order();
    &(a * &poly_t(&[int(1), int(0), Rational::new(1.into(), 4.into())], order))
        - &Series::one(order)
}

pub(crate) fn hyp(
    num: &[Rational],
    den: &[Rational],
    order: usize,
) -> Result<Series<Rational>, SeriesError> {
    hypergeometric_series(num, den, order)
}

/// `1 - x t + t^2/4`.
pub(crate) fn ultra_base(order: usize) -> Series<Poly> {
    Series::new(
        vec![
            Poly::one(),
            Poly::monomial(int(-1), 1),
            Poly::constant(Rational::new(1.into(), 4.into())),
        ],
        order,
    )
}

/// `exp(2 rho t - t^2)` as a series in `t`.
pub(crate) fn mehler_exp(rho: &Rational, order: usize) -> Series<Rational> {
    poly_t(&[int(0), int(2) * rho, int(-1)], order)
        .exp()
        .expect("zero constant term")
}

pub(crate) fn lift_const(c: Rational, order: usize) -> Series<Poly> {
    Series::constant(Poly::constant(c), order)
}
