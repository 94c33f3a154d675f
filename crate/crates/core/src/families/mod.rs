//! Classical monic orthogonal polynomial families, built from their
//! Jacobi–Szegő parameters and, independently, from explicit finite sums.

mod oracle;

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{factorial, int, rat, Poly, Rational};

pub use oracle::{associated_hermite, hermite_sign_flipped};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("recurrence coefficient is singular at n = {0}")]
    ParameterPole(usize),
    #[error("explicit sum has a zero Pochhammer denominator at n = {0}")]
    DenominatorParameterPole(usize),
    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),
    #[error("no derivative rule for {0} with m = {1}")]
    NoDerivativeRule(String, usize),
}

/// A classical family together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Hermite,
    AssociatedHermite { c: Rational },
    Ultraspherical { lambda: Rational },
    ChebyshevT,
    ChebyshevU,
    Jacobi { alpha: Rational, beta: Rational },
    Laguerre { alpha: Rational },
    Bessel { alpha: Rational },
}

fn ratio(num: Rational, den: Rational, n: usize) -> Result<Rational, FamilyError> {
    if den.is_zero() {
        Err(FamilyError::ParameterPole(n))
    } else {
        Ok(num / den)
    }
}

impl Family {
    /// Symmetric families satisfy `P_n(-x) = (-1)^n P_n(x)`, i.e. `beta_n = 0`.
    pub fn is_symmetric(&self) -> bool {
        matches!(
            self,
            Family::Hermite
                | Family::AssociatedHermite { .. }
                | Family::Ultraspherical { .. }
                | Family::ChebyshevT
                | Family::ChebyshevU
        )
    }

    /// Parameter restrictions beyond the pointwise pole checks.
    pub fn validate(&self) -> Result<(), FamilyError> {
        match self {
            Family::Ultraspherical { lambda } => {
                if *lambda < rat(-1, 2) {
                    return Err(FamilyError::InvalidParameters(format!(
                        "ultraspherical needs lambda >= -1/2, got {lambda}"
                    )));
                }
                if lambda.is_zero() {
                    return Err(FamilyError::InvalidParameters(
                        "ultraspherical needs lambda != 0 (use ChebyshevT)".into(),
                    ));
                }
                Ok(())
            }
            Family::Bessel { alpha } => {
                if alpha.is_integer() && *alpha <= Rational::zero() {
                    return Err(FamilyError::InvalidParameters(format!(
                        "Bessel needs alpha outside the nonpositive integers, got {alpha}"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `beta_n` of `x P_n = P_{n+1} + beta_n P_n + omega_n P_{n-1}`.
    pub fn beta(&self, n: usize) -> Result<Rational, FamilyError> {
        let nn = int(n as i64);
        match self {
            Family::Hermite
            | Family::AssociatedHermite { .. }
            | Family::Ultraspherical { .. }
            | Family::ChebyshevT
            | Family::ChebyshevU => Ok(Rational::zero()),
            Family::Jacobi { alpha: a, beta: b } => {
                let s = a + b;
                if n == 0 {
                    // Removable singularity at a+b = 0 cancelled.
                    ratio(b - a, &s + int(2), n)
                } else {
                    let h = &s / int(2);
                    ratio(b * b - a * a, int(4) * (&nn + &h) * (&nn + &h + int(1)), n)
                }
            }
            Family::Laguerre { alpha } => Ok(int(2) * nn + alpha + int(1)),
            Family::Bessel { alpha } => {
                if n == 0 {
                    ratio(int(-2), alpha.clone(), n)
                } else {
                    let d = int(2) * nn + alpha;
                    ratio(int(2) * (int(2) - alpha), &d * (&d - int(2)), n)
                }
            }
        }
    }

    /// `omega_n` for `n >= 1` (and `omega_0 = 0`).
    pub fn omega(&self, n: usize) -> Result<Rational, FamilyError> {
        if n == 0 {
            return Ok(Rational::zero());
        }
        let nn = int(n as i64);
        match self {
            Family::Hermite => Ok(nn / int(2)),
            Family::AssociatedHermite { c } => Ok((nn + c) / int(2)),
            Family::Ultraspherical { lambda: l } => ratio(
                &nn * (&nn - int(1) + int(2) * l),
                int(4) * (&nn + l) * (&nn - int(1) + l),
                n,
            ),
            Family::ChebyshevT => Ok(if n == 1 { rat(1, 2) } else { rat(1, 4) }),
            Family::ChebyshevU => Ok(rat(1, 4)),
            Family::Jacobi { alpha: a, beta: b } => {
                let s = a + b;
                if n == 1 {
                    // Removable singularity at a+b = -1 cancelled.
                    let s2 = &s + int(2);
                    ratio(
                        int(4) * (int(1) + a) * (int(1) + b),
                        (&s + int(3)) * &s2 * &s2,
                        n,
                    )
                } else {
                    let h = &nn + &s / int(2);
                    ratio(
                        &nn * (&nn + a) * (&nn + b) * (&nn + &s),
                        int(4)
                            * (&nn + (&s - int(1)) / int(2))
                            * (&nn + (&s + int(1)) / int(2))
                            * &h
                            * &h,
                        n,
                    )
                }
            }
            Family::Laguerre { alpha } => Ok(&nn * (&nn + alpha)),
            Family::Bessel { alpha } => {
                if n == 1 {
                    // Removable singularity at alpha = 1 cancelled.
                    ratio(int(-4), (alpha + int(1)) * alpha * alpha, n)
                } else {
                    let d = int(2) * &nn + alpha;
                    ratio(
                        int(-4) * &nn * (&nn + alpha - int(2)),
                        (&d - int(1)) * (&d - int(3)) * (&d - int(2)) * (&d - int(2)),
                        n,
                    )
                }
            }
        }
    }

    /// `P_0, ..., P_{n_max}` from the three-term recurrence.
    pub fn sequence(&self, n_max: usize) -> Result<Vec<Poly>, FamilyError> {
        self.validate()?;
        let x = Poly::x();
        let mut polys = Vec::with_capacity(n_max + 1);
        polys.push(Poly::one());
        if n_max == 0 {
            return Ok(polys);
        }
        polys.push(&x - &Poly::constant(self.beta(0)?));
        for n in 1..n_max {
            let shifted = &x - &Poly::constant(self.beta(n)?);
            let next = &(&shifted * &polys[n]) - &polys[n - 1].scale(&self.omega(n)?);
            polys.push(next);
        }
        Ok(polys)
    }

    /// The family whose members are (up to `n!/(n-m)!`) the `m`-th
    /// derivatives of this one.
    pub fn derivative_family(&self, m: usize) -> Result<Family, FamilyError> {
        if m == 0 {
            return Ok(self.clone());
        }
        let mm = int(m as i64);
        Ok(match self {
            Family::Hermite => Family::Hermite,
            Family::AssociatedHermite { .. } => {
                return Err(FamilyError::NoDerivativeRule(self.to_string(), m))
            }
            Family::Ultraspherical { lambda } => Family::Ultraspherical {
                lambda: lambda + mm,
            },
            Family::ChebyshevT => Family::Ultraspherical { lambda: mm },
            Family::ChebyshevU => Family::Ultraspherical {
                lambda: Rational::one() + mm,
            },
            Family::Jacobi { alpha, beta } => Family::Jacobi {
                alpha: alpha + &mm,
                beta: beta + mm,
            },
            Family::Laguerre { alpha } => Family::Laguerre { alpha: alpha + mm },
            Family::Bessel { alpha } => Family::Bessel {
                alpha: alpha + int(2) * mm,
            },
        })
    }

    /// Checks `d^m P_n = n!/(n-m)! Q_{n-m}` with `Q` the derivative family.
    pub fn derivative_shift_check(&self, n: usize, m: usize) -> Result<bool, FamilyError> {
        assert!(m <= n, "derivative order exceeds degree");
        let p = self.sequence(n)?.pop().expect("nonempty sequence");
        let q = self
            .derivative_family(m)?
            .sequence(n - m)?
            .pop()
            .expect("nonempty sequence");
        Ok(p.derivative(m) == q.scale(&(factorial(n) / factorial(n - m))))
    }

    pub fn hypergeometric_oracle(&self, n: usize) -> Result<Poly, FamilyError> {
        oracle::explicit(self, n)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hermite => write!(f, "Hermite"),
            Family::AssociatedHermite { c } => write!(f, "AssociatedHermite(c={c})"),
            Family::Ultraspherical { lambda } => write!(f, "Ultraspherical(lambda={lambda})"),
            Family::ChebyshevT => write!(f, "ChebyshevT"),
            Family::ChebyshevU => write!(f, "ChebyshevU"),
            Family::Jacobi { alpha, beta } => write!(f, "Jacobi(alpha={alpha}, beta={beta})"),
            Family::Laguerre { alpha } => write!(f, "Laguerre(alpha={alpha})"),
            Family::Bessel { alpha } => write!(f, "Bessel(alpha={alpha})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_examples() {
        assert_eq!(
            Family::Hermite.sequence(2).unwrap()[2],
            Poly::new(vec![rat(-1, 2), int(0), int(1)])
        );
        assert_eq!(
            Family::ChebyshevU.sequence(2).unwrap()[2],
            Poly::new(vec![rat(-1, 4), int(0), int(1)])
        );
        assert_eq!(
            Family::Laguerre { alpha: int(3) }.sequence(0).unwrap(),
            vec![Poly::one()]
        );
    }

    #[test]
    fn chebyshev_t_low_degrees() {
        let t = Family::ChebyshevT.sequence(3).unwrap();
        assert_eq!(t[2], Poly::new(vec![rat(-1, 2), int(0), int(1)]));
        assert_eq!(t[3], Poly::new(vec![int(0), rat(-3, 4), int(0), int(1)]));
    }

    #[test]
    fn jacobi_degenerate_parameters() {
        // a+b = -1 (GF3) and a+b = 0 both go through the cancelled forms.
        let gf3 = Family::Jacobi {
            alpha: int(-1),
            beta: int(0),
        };
        assert!(gf3.sequence(8).is_ok());
        assert_eq!(gf3.omega(1).unwrap(), int(0));
        let sym = Family::Jacobi {
            alpha: rat(1, 2),
            beta: rat(-1, 2),
        };
        assert!(sym.sequence(8).is_ok());
        // a+b = -2 is a genuine pole.
        let bad = Family::Jacobi {
            alpha: int(-1),
            beta: int(-1),
        };
        assert_eq!(bad.sequence(3), Err(FamilyError::ParameterPole(0)));
    }

    #[test]
    fn validity() {
        assert!(Family::Ultraspherical { lambda: int(0) }
            .sequence(2)
            .is_err());
        assert!(Family::Ultraspherical { lambda: int(-1) }
            .sequence(2)
            .is_err());
        assert!(Family::Bessel { alpha: int(-2) }.sequence(2).is_err());
        assert!(Family::Bessel { alpha: int(1) }.sequence(6).is_ok());
    }

    #[test]
    fn derivative_shift_examples() {
        assert!(Family::Hermite.derivative_shift_check(3, 1).unwrap());
        assert!(Family::ChebyshevU.derivative_shift_check(2, 1).unwrap());
        assert!(Family::ChebyshevT.derivative_shift_check(5, 0).unwrap());
        assert!(Family::Bessel { alpha: int(3) }
            .derivative_shift_check(6, 2)
            .unwrap());
        assert!(Family::AssociatedHermite { c: int(1) }
            .derivative_shift_check(4, 1)
            .is_err());
    }
}
