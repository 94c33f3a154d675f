use num_traits::{One, Zero};

use super::{Series, SeriesError};
use crate::arith::{int, is_nonpositive_integer, Rational};

/// Generalized hypergeometric series `pFq(num; den; t)` truncated at `order`,
/// built from the term ratio
/// `c_{n+1} = c_n * prod(mu_i + n) / (prod(nu_j + n) * (n + 1))`.
///
/// A denominator parameter equal to `-j` with `j < order` would divide by
/// zero inside the truncation and is reported with the index `j`.
pub fn hypergeometric_series(
    num: &[Rational],
    den: &[Rational],
    order: usize,
) -> Result<Series<Rational>, SeriesError> {
    for nu in den {
        if is_nonpositive_integer(nu) {
            let j = (-nu).to_integer();
            let j = usize::try_from(j).unwrap_or(usize::MAX);
            if j < order {
                return Err(SeriesError::DenominatorParameterPole(j));
            }
        }
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    for n in 0..=order {
        coeffs.push(c.clone());
        if n == order {
            break;
        }
        let shift = int(n as i64);
        let mut ratio = Rational::one();
        for mu in num {
            ratio *= mu + &shift;
        }
        let mut denom = int(n as i64 + 1);
        for nu in den {
            denom *= nu + &shift;
        }
        c = c * ratio / denom;
    }
    Ok(Series::new(coeffs, order))
}

/// The erfi difference kernel
/// `G(t) = sqrt(pi) e^{-rho^2} [erfi(rho) - erfi(rho - t)]`,
/// characterised by `G(0) = 0` and `G'(t) = 2 exp(-2 rho t + t^2)`. All of its
/// coefficients are rational.
pub fn erfi_kernel(rho: &Rational, order: usize) -> Series<Rational> {
    let exponent = Series::new(vec![Rational::zero(), -(int(2) * rho), int(1)], order);
    let derivative = exponent
        .exp()
        .expect("exponent has zero constant term")
        .scale(&int(2));
    derivative.integrate()
}
