//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value in
//! reduced form with a positive denominator. The helpers here cover the
//! handful of operations the rest of the crate needs beyond the field ops:
//! checked division, Pochhammer symbols, factorials and integer powers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ArithError;

pub type Rational = BigRational;

/// `p/q` as a reduced rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "rat: zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational, ArithError> {
    if b.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    Ok(a / b)
}

pub fn checked_recip(a: &Rational) -> Result<Rational, ArithError> {
    checked_div(&Rational::one(), a)
}

/// Rising factorial `(mu)_n = mu (mu+1) ... (mu+n-1)`, with `(mu)_0 = 1`.
pub fn pochhammer(mu: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = mu.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * int(k as i64))
}

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `base^e` for a signed integer exponent.
pub fn powi(base: &Rational, e: i64) -> Result<Rational, ArithError> {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        checked_recip(&acc)
    } else {
        Ok(acc)
    }
}

/// True when `r` is an integer `<= 0`, i.e. a pole of `1/(r)_n` for large n.
pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// Exact square root, if `r` is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Parse `"p/q"`, `"p"` or `"-p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let s = s.trim();
    let bad = || ArithError::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    let g = num.gcd(&den);
    let (mut num, mut den) = (num / &g, den / g);
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    Ok(Rational::new_raw(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_signed() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            checked_div(&int(1), &Rational::zero()),
            Err(ArithError::DivisionByZero)
        );
        assert!(parse_rational("3/0").is_err());
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(1, 2), 0), int(1));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer(&int(1), 5), factorial(5));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("2/-4").unwrap(), rat(-1, 2));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sqrt_of_squares_only() {
        assert_eq!(rational_sqrt(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 4)), None);
    }
}
