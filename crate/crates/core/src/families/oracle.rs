//! Explicit finite-sum definitions of the families, used as an independent
//! check on the recurrence.

use num_traits::Zero;

use super::{Family, FamilyError};
use crate::arith::{binomial, factorial, int, pochhammer, powi, rat, Poly, Rational};

/// `sum_k (-n)_k (b)_k / ((c)_k k!) * ((1-x)/2)^k`, the terminating 2F1 in
/// the variable `(1-x)/2`.
fn f21_half_shift(n: usize, b: &Rational, c: &Rational) -> Result<Poly, FamilyError> {
    let var = Poly::linear(rat(1, 2), rat(-1, 2));
    let minus_n = int(-(n as i64));
    let mut sum = Poly::zero();
    let mut power = Poly::one();
    for k in 0..=n {
        let den = pochhammer(c, k) * factorial(k);
        if den.is_zero() {
            return Err(FamilyError::DenominatorParameterPole(n));
        }
        let coef = pochhammer(&minus_n, k) * pochhammer(b, k) / den;
        sum += &power.scale(&coef);
        power = &power * &var;
    }
    Ok(sum)
}

fn nonzero(r: Rational, n: usize) -> Result<Rational, FamilyError> {
    if r.is_zero() {
        Err(FamilyError::DenominatorParameterPole(n))
    } else {
        Ok(r)
    }
}

fn hermite(n: usize) -> Poly {
    // x^n 2F0(-n/2, -(n-1)/2; ; -1/x^2)
    let a = int(-(n as i64)) / int(2);
    let b = int(1 - n as i64) / int(2);
    let mut coeffs = vec![Rational::zero(); n + 1];
    for k in 0..=n / 2 {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        coeffs[n - 2 * k] = pochhammer(&a, k) * pochhammer(&b, k) / factorial(k) * sign;
    }
    Poly::new(coeffs)
}

fn ultraspherical(n: usize, lambda: &Rational) -> Result<Poly, FamilyError> {
    let two_lambda = int(2) * lambda;
    let lead = nonzero(int(2).pow(n as i32) * pochhammer(lambda, n), n)?;
    let f = f21_half_shift(n, &(int(n as i64) + &two_lambda), &(lambda + rat(1, 2)))?;
    Ok(f.scale(&(pochhammer(&two_lambda, n) / lead)))
}

pub(super) fn explicit(family: &Family, n: usize) -> Result<Poly, FamilyError> {
    family.validate()?;
    let nn = int(n as i64);
    match family {
        Family::Hermite => Ok(hermite(n)),
        Family::AssociatedHermite { c } => Ok(associated_hermite(n, c)),
        Family::Ultraspherical { lambda } => ultraspherical(n, lambda),
        Family::ChebyshevU => ultraspherical(n, &int(1)),
        Family::ChebyshevT => {
            if n == 0 {
                return Ok(Poly::one());
            }
            let f = f21_half_shift(n, &nn, &rat(1, 2))?;
            Ok(f.scale(&powi(&int(2), 1 - n as i64).expect("nonzero base")))
        }
        Family::Jacobi { alpha, beta } => {
            // 2^n (a+1)_n / (n+a+b+1)_n * 2F1(-n, n+a+b+1; a+1; (1-x)/2), with
            // (a+1)_n / (a+1)_k folded into (a+1+k)_{n-k} so a = -1 is fine.
            let b = &nn + alpha + beta + int(1);
            let den = nonzero(pochhammer(&b, n), n)?;
            let var = Poly::linear(rat(1, 2), rat(-1, 2));
            let mut sum = Poly::zero();
            let mut power = Poly::one();
            for k in 0..=n {
                let kk = int(k as i64);
                let coef = pochhammer(&-&nn, k)
                    * pochhammer(&b, k)
                    * pochhammer(&(alpha + int(1) + kk), n - k)
                    / factorial(k);
                sum += &power.scale(&coef);
                power = &power * &var;
            }
            Ok(sum.scale(&(int(2).pow(n as i32) / den)))
        }
        Family::Laguerre { alpha } => {
            // (-1)^n (a+1)_n 1F1(-n; a+1; x), with (a+1)_n/(a+1)_k folded.
            let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
            let coeffs = (0..=n)
                .map(|k| {
                    let kk = int(k as i64);
                    &sign * pochhammer(&-&nn, k) * pochhammer(&(alpha + int(1) + kk), n - k)
                        / factorial(k)
                })
                .collect();
            Ok(Poly::new(coeffs))
        }
        Family::Bessel { alpha } => {
            // 2^n y_n^{(a,1)}(x/2) / (n+a-1)_n
            let shift = &nn + alpha - int(1);
            let den = nonzero(pochhammer(&shift, n), n)?;
            let coeffs = (0..=n)
                .map(|k| binomial(n, k) * pochhammer(&shift, k) / int(2).pow(k as i32))
                .collect();
            Ok(Poly::new(coeffs).scale(&(int(2).pow(n as i32) / den)))
        }
    }
}

/// Associated monic Hermite polynomial `H_n(x, c)` from its expansion in
/// ordinary Hermite polynomials,
/// `sum_k (-2)^{-k} (c)_k (n-k)! / (k! (n-2k)!) H_{n-2k}(x)`.
pub fn associated_hermite(n: usize, c: &Rational) -> Poly {
    let mut sum = Poly::zero();
    for k in 0..=n / 2 {
        let weight = powi(&int(-2), -(k as i64)).expect("nonzero base")
            * pochhammer(c, k)
            * factorial(n - k)
            / (factorial(k) * factorial(n - 2 * k));
        sum += &hermite(n - 2 * k).scale(&weight);
    }
    sum
}

/// `i^{-n} H_n(i x)`: the monic Hermite polynomial with every other
/// coefficient sign flipped, so `x^{n-2j}` picks up `(-1)^j`.
pub fn hermite_sign_flipped(n: usize) -> Poly {
    let h = hermite(n);
    let coeffs = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(d, c)| {
            if ((n - d) / 2) % 2 == 1 {
                -c
            } else {
                c.clone()
            }
        })
        .collect();
    Poly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[Rational]) -> Poly {
        Poly::new(v.to_vec())
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            Family::Hermite.hypergeometric_oracle(2).unwrap(),
            p(&[rat(-1, 2), int(0), int(1)])
        );
        assert_eq!(
            Family::Ultraspherical { lambda: rat(5, 2) }
                .hypergeometric_oracle(1)
                .unwrap(),
            Poly::x()
        );
        let a = rat(2, 3);
        assert_eq!(
            Family::Laguerre { alpha: a.clone() }
                .hypergeometric_oracle(1)
                .unwrap(),
            p(&[-(a + int(1)), int(1)])
        );
    }

    #[test]
    fn associated_hermite_examples() {
        let c = rat(3, 7);
        assert_eq!(
            associated_hermite(2, &c),
            p(&[-(int(1) + &c) / int(2), int(0), int(1)])
        );
        assert_eq!(associated_hermite(1, &c), Poly::x());
        for n in 0..8 {
            assert_eq!(associated_hermite(n, &int(0)), hermite(n));
        }
    }

    #[test]
    fn sign_flipped_examples() {
        assert_eq!(hermite_sign_flipped(2), p(&[rat(1, 2), int(0), int(1)]));
        assert_eq!(hermite_sign_flipped(1), Poly::x());
        assert_eq!(
            hermite_sign_flipped(3),
            p(&[int(0), rat(3, 2), int(0), int(1)])
        );
    }

    #[test]
    fn oracle_pole() {
        assert_eq!(
            Family::Ultraspherical { lambda: rat(-1, 2) }.hypergeometric_oracle(2),
            Err(FamilyError::DenominatorParameterPole(2))
        );
    }
}
