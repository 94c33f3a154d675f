//! The coefficient identities linking a Rainville generating function to the
//! three-term recurrence of the polynomials it generates.

use num_traits::Zero;

use super::{compute_s_r, Mismatch, RainvilleCoeffs, RainvilleError};
use crate::arith::{int, Poly, Rational};
use crate::families::Family;
use crate::fps::Series;

/// Outcome of one identity family: `Err` carries the first failure.
pub type Verdict = Result<(), Mismatch>;

/// The table `A^k_n`, `0 <= k < n <= n_max`. Entries with `k >= n` are not
/// defined by the generating function; they only ever appear multiplied by a
/// vanishing factor and read as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct AknTable {
    values: Vec<Vec<Rational>>,
}

impl AknTable {
    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize, n: usize) -> Rational {
        assert!(n <= self.n_max(), "A^{k}_{n} beyond table range");
        self.values[n]
            .get(k)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Overwrites an entry; used to check that the verifiers are not vacuous.
    pub fn set(&mut self, k: usize, n: usize, v: Rational) {
        assert!(k < n && n <= self.n_max(), "A^{k}_{n} is not a table entry");
        self.values[n][k] = v;
    }
}

fn rn(n: usize) -> Rational {
    int(n as i64)
}

fn frac(p: usize, q: usize) -> Rational {
    rn(p) / rn(q)
}

fn recurrence_params(
    family: &Family,
    n_max: usize,
) -> Result<(Vec<Rational>, Vec<Rational>), RainvilleError> {
    let betas = (0..=n_max)
        .map(|n| family.beta(n))
        .collect::<Result<_, _>>()?;
    let omegas = (0..=n_max)
        .map(|n| family.omega(n))
        .collect::<Result<_, _>>()?;
    Ok((betas, omegas))
}

/// Builds `A^k_n` from `S`, `R`, `alpha` and the recurrence of `family`.
pub fn akn_table(
    coeffs: &RainvilleCoeffs,
    alpha: &[Rational],
    family: &Family,
    n_max: usize,
) -> Result<AknTable, RainvilleError> {
    if alpha.len() <= n_max || coeffs.order() + 1 < n_max {
        return Err(RainvilleError::InsufficientOrder {
            have: (alpha.len().saturating_sub(1)).min(coeffs.order() + 1),
            need: n_max,
        });
    }
    let (betas, omegas) = recurrence_params(family, n_max)?;
    let s = &coeffs.s;
    let r = &coeffs.r;
    let mut values = vec![Vec::new()];
    for n in 1..=n_max {
        if alpha[n].is_zero() {
            return Err(RainvilleError::ZeroAlpha(n));
        }
        let row = (0..n)
            .map(|k| {
                let mut acc = -(&s[k] * &alpha[n - k - 1]) + &r[k] * &alpha[n - k];
                if k >= 1 {
                    acc -= &s[k - 1] * &alpha[n - k] * &betas[n - k];
                }
                if k >= 2 {
                    acc -= &s[k - 2] * &alpha[n - k + 1] * &omegas[n - k + 1];
                }
                acc / &alpha[n]
            })
            .collect();
        values.push(row);
    }
    Ok(AknTable { values })
}

fn first_poly_failure(
    n_max: usize,
    relation: &str,
    mut sides: impl FnMut(usize) -> (Poly, Poly),
) -> Verdict {
    for n in 1..=n_max {
        let (lhs, rhs) = sides(n);
        if lhs != rhs {
            return Err(Mismatch::new(n, relation, lhs, rhs));
        }
    }
    Ok(())
}

/// `x P_n' - n P_n`.
fn euler_defect(p: &Poly, n: usize) -> Poly {
    &(&Poly::x() * &p.derivative(1)) - &p.scale(&rn(n))
}

/// The first structure relation with `S`, `R` and `alpha` supplied directly.
pub fn verify_prop1_with(
    coeffs: &RainvilleCoeffs,
    alpha: &[Rational],
    polys: &[Poly],
    n_max: usize,
) -> Verdict {
    first_poly_failure(n_max, "prop1", |n| {
        let lhs = euler_defect(&polys[n], n).scale(&alpha[n]);
        let mut rhs = Poly::zero();
        for k in 0..n {
            let p = &polys[n - k - 1];
            let bracket = &(&Poly::x() * &p.derivative(1)) + p;
            rhs -= &bracket.scale(&(&coeffs.s[k] * &alpha[n - k - 1]));
            rhs += &polys[n - k]
                .derivative(1)
                .scale(&(&coeffs.r[k] * &alpha[n - k]));
        }
        (lhs, rhs)
    })
}

/// First structure relation: `alpha_n (x P_n' - n P_n)` expressed through `S_k`, `R_k`,
/// with `alpha_n` read off the coefficients of `F`.
pub fn verify_prop1(
    a: &Series<Rational>,
    r: &Series<Rational>,
    f: &Series<Rational>,
    polys: &[Poly],
    n_max: usize,
) -> Result<Verdict, RainvilleError> {
    let coeffs = compute_s_r(a, r)?;
    let have = coeffs.order().min(f.order()).min(polys.len() - 1);
    if have < n_max.saturating_sub(1) || f.order() < n_max || polys.len() <= n_max {
        return Err(RainvilleError::InsufficientOrder { have, need: n_max });
    }
    Ok(verify_prop1_with(&coeffs, f.coeffs(), polys, n_max))
}

/// Second structure relation: `x P_n' - n P_n = sum_k A^k_n P'_{n-k}`.
pub fn verify_prop2(table: &AknTable, polys: &[Poly], n_max: usize) -> Verdict {
    first_poly_failure(n_max.min(table.n_max()), "prop2", |n| {
        let lhs = euler_defect(&polys[n], n);
        let mut rhs = Poly::zero();
        for k in 0..n {
            rhs += &polys[n - k].derivative(1).scale(&table.get(k, n));
        }
        (lhs, rhs)
    })
}

fn compare(n: usize, relation: &str, lhs: Rational, rhs: Rational) -> Verdict {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Mismatch::new(n, relation, lhs, rhs))
    }
}

/// Third structure relation set, (i)–(v), for every `n` with `n + 1` inside the
/// table and `n <= n_max`.
pub fn verify_prop3(
    table: &AknTable,
    family: &Family,
    n_max: usize,
) -> Result<Verdict, RainvilleError> {
    let top = n_max.min(table.n_max().saturating_sub(1));
    let (b, w) = recurrence_params(family, table.n_max())?;
    let a = |k: usize, n: usize| table.get(k, n);
    let check = || -> Verdict {
        for n in 0..=top {
            // (i)
            compare(
                n,
                "prop3.i",
                b[n].clone(),
                rn(n + 1) * a(0, n + 1) - rn(n) * a(0, n),
            )?;
            // (ii)
            if n >= 1 {
                let d = &b[n] - a(0, n);
                let rhs = frac(n, 2) * a(1, n + 1)
                    - (rn(n) - int(1)) / int(2) * a(1, n)
                    - frac(n, 2 * (n + 1)) * &d * &d;
                compare(n, "prop3.ii", w[n].clone(), rhs)?;
            }
            // (iii)
            if n >= 2 {
                let lhs = a(2, n + 1) - frac(n - 2, n - 1) * a(2, n);
                let rhs = &w[n]
                    * (&b[n] / rn(n + 1) + int(2) * &b[n - 1] / rn(n)
                        - frac(n + 2, n) * a(0, n - 1)
                        + frac(n, n + 1) * a(0, n))
                    + a(1, n)
                        * (-frac(n + 2, n + 1) * &b[n]
                            + frac(n - 1, n) * &b[n - 1]
                            + a(0, n) / rn(n + 1)
                            + a(0, n - 1) / rn(n));
                compare(n, "prop3.iii", lhs, rhs)?;
            }
            // (iv)
            if n >= 3 {
                let lhs = int(2) / rn(n) * &w[n] * &w[n - 1];
                let rhs = a(3, n + 1) - frac(n - 3, n - 2) * a(3, n)
                    + frac(n + 2, n) * &w[n] * a(1, n - 1)
                    - frac(n - 1, n) * &w[n - 1] * a(1, n)
                    - a(1, n) * a(1, n - 1) / rn(n)
                    - (-frac(n + 2, n + 1) * &b[n]
                        + frac(n - 2, n - 1) * &b[n - 2]
                        + a(0, n) / rn(n + 1)
                        + a(0, n - 2) / rn(n - 1))
                        * a(2, n);
                compare(n, "prop3.iv", lhs, rhs)?;
            }
            // (v)
            for k in 4..=n {
                let lhs = a(k, n + 1) - frac(n - k, n - k + 1) * a(k, n)
                    + (frac(n + 2, n + 1) * &b[n] - frac(n - k + 1, n - k + 2) * &b[n - k + 1])
                        * a(k - 1, n)
                    + frac(n + 2, n) * &w[n] * a(k - 2, n - 1)
                    - frac(n - k + 2, n - k + 3) * &w[n - k + 2] * a(k - 2, n);
                let rhs = (0..k).fold(Rational::zero(), |acc, l| {
                    acc + a(k - l - 1, n) * a(l, n - k + l + 1) / rn(n - k + l + 2)
                });
                compare(n, &format!("prop3.v(k={k})"), lhs, rhs)?;
            }
        }
        Ok(())
    };
    Ok(check())
}

/// The two corollaries: vanishing of `A^2`, `A^3` forces vanishing of all
/// higher `A^k`; for symmetric families the even entries vanish and the
/// reduced relations hold.
pub fn verify_corollaries(
    table: &AknTable,
    family: &Family,
    n_max: usize,
) -> Result<Verdict, RainvilleError> {
    let nm = n_max.min(table.n_max());
    let (_, w) = recurrence_params(family, table.n_max())?;
    let a = |k: usize, n: usize| table.get(k, n);
    let check = || -> Verdict {
        let low_vanish = (3..=nm).all(|n| a(2, n).is_zero()) && (4..=nm).all(|n| a(3, n).is_zero());
        if low_vanish {
            for n in 5..=nm {
                for k in 4..n {
                    compare(n, &format!("vanishing(k={k})"), Rational::zero(), a(k, n))?;
                }
            }
        }
        if !family.is_symmetric() {
            return Ok(());
        }
        for n in 1..=nm {
            for k in (0..n).step_by(2) {
                compare(
                    n,
                    &format!("symmetric.even(k={k})"),
                    Rational::zero(),
                    a(k, n),
                )?;
            }
        }
        let top = nm.min(table.n_max().saturating_sub(1));
        for n in 1..=top {
            let rhs = frac(n, 2) * a(1, n + 1) - (rn(n) - int(1)) / int(2) * a(1, n);
            compare(n, "symmetric.ii", w[n].clone(), rhs)?;
            if n >= 3 {
                let lhs = int(2) / rn(n) * &w[n] * &w[n - 1];
                let rhs = a(3, n + 1) - frac(n - 3, n - 2) * a(3, n)
                    + frac(n + 2, n) * &w[n] * a(1, n - 1)
                    - frac(n - 1, n) * &w[n - 1] * a(1, n)
                    - a(1, n) * a(1, n - 1) / rn(n);
                compare(n, "symmetric.iii", lhs, rhs)?;
            }
            for k in 2..=(n.saturating_sub(1) / 2) {
                let lhs = a(2 * k + 1, n + 1) - frac(n - 2 * k - 1, n - 2 * k) * a(2 * k + 1, n)
                    + frac(n + 2, n) * &w[n] * a(2 * k - 1, n - 1)
                    - frac(n - 2 * k + 1, n - 2 * k + 2) * &w[n - 2 * k + 1] * a(2 * k - 1, n);
                let rhs = (0..k).fold(Rational::zero(), |acc, l| {
                    acc + a(2 * k - 2 * l - 1, n) * a(2 * l + 1, n - 2 * k + 2 * l + 1)
                        / rn(n - 2 * k + 2 * l + 2)
                });
                compare(n, &format!("symmetric.iv(k={k})"), lhs, rhs)?;
            }
        }
        Ok(())
    };
    Ok(check())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorial, rat};

    fn hermite_table(n_max: usize) -> (AknTable, Vec<Poly>) {
        let a = Series::one(n_max);
        let r = Series::monomial(rat(1, 4), 2, n_max);
        let coeffs = compute_s_r(&a, &r).unwrap();
        let alpha: Vec<Rational> = (0..=n_max).map(|n| factorial(n).recip()).collect();
        let table = akn_table(&coeffs, &alpha, &Family::Hermite, n_max).unwrap();
        (table, Family::Hermite.sequence(n_max).unwrap())
    }

    #[test]
    fn hermite_a1_is_half_n() {
        let (table, _) = hermite_table(10);
        for n in 2..=10 {
            assert_eq!(table.get(1, n), rn(n) / int(2));
            assert!(table.get(0, n).is_zero());
            assert!(table.get(2, n).is_zero());
        }
    }

    #[test]
    fn hermite_props_hold_and_mutation_breaks_them() {
        let (mut table, polys) = hermite_table(10);
        assert_eq!(verify_prop2(&table, &polys, 10), Ok(()));
        assert_eq!(verify_prop3(&table, &Family::Hermite, 10).unwrap(), Ok(()));
        assert_eq!(
            verify_corollaries(&table, &Family::Hermite, 10).unwrap(),
            Ok(())
        );
        table.set(1, 2, int(2));
        assert_eq!(verify_prop2(&table, &polys, 10).unwrap_err().n, 2);
    }

    #[test]
    fn prop1_detects_perturbed_r() {
        let n = 6;
        let a = Series::one(n);
        let f = Series::var(n).exp().unwrap();
        let polys = Family::Hermite.sequence(n).unwrap();
        let r = Series::monomial(rat(1, 4), 2, n);
        assert_eq!(verify_prop1(&a, &r, &f, &polys, 5).unwrap(), Ok(()));
        let bumped = &r + &Series::monomial(int(1), 3, n);
        assert!(verify_prop1(&a, &bumped, &f, &polys, 5).unwrap().is_err());
    }

    #[test]
    fn missing_alpha_is_an_error() {
        let coeffs = compute_s_r(&Series::one(4), &Series::zero(4)).unwrap();
        let alpha = vec![int(1), int(0), int(1), int(1), int(1)];
        assert_eq!(
            akn_table(&coeffs, &alpha, &Family::Hermite, 4),
            Err(RainvilleError::ZeroAlpha(1))
        );
    }
}
