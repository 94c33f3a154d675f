use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{Coeff, SeriesError};
use crate::arith::{int, Poly, Rational};

/// A power series in `t` known modulo `t^(order+1)`.
///
/// Binary operations on series of different orders truncate to the smaller
/// order; the result never claims more precision than its inputs carry.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Series<C> {
    /// Pads with zeros or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `t`.
    pub fn var(order: usize) -> Self {
        Self::monomial(C::one(), 1, order)
    }

    /// `c t^k`.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `t^n`. Panics when `n` exceeds the order, since that
    /// coefficient is not known.
    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(
            self.coeffs[..=order.min(self.order())].to_vec(),
            order.min(self.order()),
        )
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map(|c| c.scaled(k))
    }

    pub fn mul_coeff(&self, k: &C) -> Self {
        self.map(|c| c.times(k))
    }

    /// `f(c t)`.
    pub fn dilate(&self, c: &C) -> Self {
        let mut power = C::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.times(&power));
            power = power.times(c);
        }
        Series { coeffs }
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![C::zero(); k.min(order + 1)];
        coeffs.extend(
            self.coeffs
                .iter()
                .take((order + 1).saturating_sub(k))
                .cloned(),
        );
        Series { coeffs }
    }

    /// `d/dt`. The result is known to one order less; a series of order 0
    /// differentiates to the zero series of order 0.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c.scaled(&int(n as i64)))
            .collect();
        Series { coeffs }
    }

    pub fn nth_derivative(&self, m: usize) -> Self {
        (0..m).fold(self.clone(), |acc, _| acc.derivative())
    }

    /// Antiderivative with zero constant term, at the same order: the
    /// contribution of the top coefficient lands beyond the order and is
    /// dropped.
    pub fn integrate(&self) -> Self {
        let order = self.order();
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(C::zero());
        for (n, c) in self.coeffs.iter().take(order).enumerate() {
            coeffs.push(c.scaled(&Rational::new(1.into(), ((n + 1) as i64).into())));
        }
        Series { coeffs }
    }

    /// `f / g`, defined when `g(0)` is a unit of the coefficient ring.
    pub fn div(&self, g: &Self) -> Result<Self, SeriesError> {
        let inv = g.coeffs[0]
            .try_inverse()
            .ok_or(SeriesError::NonUnitConstantTerm)?;
        let order = self.order().min(g.order());
        let mut h: Vec<C> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                if !g.coeffs[k].is_zero() {
                    acc = acc.minus(&g.coeffs[k].times(&h[n - k]));
                }
            }
            h.push(acc.times(&inv));
        }
        Ok(Series { coeffs: h })
    }

    pub fn recip(&self) -> Result<Self, SeriesError> {
        Self::one(self.order()).div(self)
    }

    /// `f(u(t))` by Horner accumulation over the coefficients of `f`.
    pub fn compose(&self, u: &Self) -> Result<Self, SeriesError> {
        if !u.coeffs[0].is_zero() {
            return Err(SeriesError::InnerConstantTermNonzero);
        }
        let order = self.order().min(u.order());
        let u = u.truncate(order);
        let mut acc = Self::constant(self.coeffs[order].clone(), order);
        for k in (0..order).rev() {
            acc = &acc * &u;
            acc.coeffs[0] = acc.coeffs[0].plus(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// `exp(u)` for `u(0) = 0`, from the recursion `n y_n = sum k u_k y_{n-k}`
    /// that follows from `y' = u' y`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::InnerConstantTermNonzero);
        }
        let order = self.order();
        let weighted: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.scaled(&int(k as i64)))
            .collect();
        let mut y: Vec<C> = Vec::with_capacity(order + 1);
        y.push(C::one());
        for n in 1..=order {
            let mut acc = C::zero();
            for k in 1..=n {
                if !weighted[k].is_zero() {
                    acc = acc.plus(&weighted[k].times(&y[n - k]));
                }
            }
            y.push(acc.scaled(&Rational::new(1.into(), (n as i64).into())));
        }
        Ok(Series { coeffs: y })
    }

    /// `log(f)` for `f(0) = 1`, as the antiderivative of `f'/f`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != C::one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        let ratio = self.derivative().div(self)?;
        // ratio has order N-1; integrating lifts it back to order N.
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(C::zero());
        for (n, c) in ratio.coeffs.iter().enumerate() {
            coeffs.push(c.scaled(&Rational::new(1.into(), ((n + 1) as i64).into())));
        }
        Ok(Series { coeffs })
    }

    /// `f^e = exp(e log f)` for `f(0) = 1` and any rational exponent.
    pub fn powq(&self, e: &Rational) -> Result<Self, SeriesError> {
        if self.coeffs[0] != C::one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        if e.is_zero() {
            return Ok(Self::one(self.order()));
        }
        self.log()?.scale(e).exp()
    }

    /// `f^k` by repeated squaring; no constraint on `f(0)`.
    pub fn powu(&self, k: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        result
    }
}

impl Series<Rational> {
    /// Embeds a rational series into the bivariate ring of series with
    /// polynomial-in-x coefficients.
    pub fn lift(&self) -> Series<Poly> {
        self.map(|c| Poly::constant(c.clone()))
    }
}

impl Series<Poly> {
    /// `u = x t A(t) - R(t)`, the inner argument of a Rainville generating
    /// function.
    pub fn rainville_argument(a: &Series<Rational>, r: &Series<Rational>) -> Series<Poly> {
        let xa = a.map(|c| Poly::monomial(c.clone(), 1));
        &xa.shift_up(1) - &r.lift()
    }

    /// Applies `f` to every coefficient polynomial.
    pub fn map_polys(&self, f: impl Fn(&Poly) -> Poly) -> Series<Poly> {
        self.map(f)
    }
}

/// `p(z)` for a polynomial `p` over the rationals and a series `z` over any
/// coefficient ring, by Horner's rule.
pub fn poly_at_series<C: Coeff>(p: &Poly, z: &Series<C>) -> Series<C> {
    let order = z.order();
    p.coeffs().iter().rev().fold(Series::zero(order), |acc, c| {
        let mut next = &acc * z;
        next.coeffs[0] = next.coeffs[0].plus(&C::from_rational(c));
        next
    })
}

impl<C: Coeff> Add<&Series<C>> for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: &Series<C>) -> Series<C> {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|n| self.coeffs[n].plus(&rhs.coeffs[n]))
                .collect(),
        }
    }
}

impl<C: Coeff> Sub<&Series<C>> for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: &Series<C>) -> Series<C> {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|n| self.coeffs[n].minus(&rhs.coeffs[n]))
                .collect(),
        }
    }
}

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        self.map(|c| c.negated())
    }
}

impl<C: Coeff> Mul<&Series<C>> for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: &Series<C>) -> Series<C> {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
                }
            }
        }
        Series { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn s(v: &[Rational], order: usize) -> Series<Rational> {
        Series::new(v.to_vec(), order)
    }

    #[test]
    fn mul_examples() {
        let p = s(&[int(1), int(1)], 3);
        let m = s(&[int(1), int(-1)], 3);
        assert_eq!(&p * &m, s(&[int(1), int(0), int(-1)], 3));
        assert_eq!(&p * &Series::one(3), p);
        let a = s(&[int(1), int(1), int(1)], 2);
        let b = s(&[int(1), int(1)], 2);
        assert_eq!(&a * &b, s(&[int(1), int(2), int(2)], 2));
    }

    #[test]
    fn mixed_orders_truncate_to_min() {
        let a = s(&[int(1), int(2), int(3), int(4)], 3);
        let b = s(&[int(1), int(1)], 1);
        assert_eq!((&a + &b).order(), 1);
        assert_eq!((&a * &b).order(), 1);
    }

    #[test]
    fn div_examples() {
        let geo = Series::one(3).div(&s(&[int(1), int(-1)], 3)).unwrap();
        assert_eq!(geo, s(&vec![int(1); 4], 3));
        let f = s(&[int(2), rat(1, 3), int(5)], 2);
        assert_eq!(f.div(&f).unwrap(), Series::one(2));
        // A = 1/(1-t): A'/A = 1/(1-t)
        let a = Series::one(3).div(&s(&[int(1), int(-1)], 3)).unwrap();
        let ratio = a.derivative().div(&a).unwrap();
        assert_eq!(ratio, s(&vec![int(1); 3], 2));
        assert_eq!(
            Series::<Rational>::one(2).div(&s(&[int(0), int(1)], 2)),
            Err(SeriesError::NonUnitConstantTerm)
        );
    }

    #[test]
    fn div_by_poly_unit_and_non_unit() {
        let g = Series::new(vec![Poly::constant(int(2)), Poly::x()], 2);
        let h = Series::<Poly>::one(2).div(&g).unwrap();
        assert_eq!(&h * &g, Series::one(2));
        let bad = Series::new(vec![Poly::x()], 2);
        assert_eq!(
            Series::<Poly>::one(2).div(&bad),
            Err(SeriesError::NonUnitConstantTerm)
        );
    }

    #[test]
    fn compose_examples() {
        let f = s(&[int(3), int(1), rat(1, 2)], 2);
        assert_eq!(f.compose(&Series::var(2)).unwrap(), f);
        let g = s(&[int(1), int(1), int(1)], 4);
        let t2 = Series::monomial(int(1), 2, 4);
        assert_eq!(
            g.compose(&t2).unwrap(),
            s(&[int(1), int(0), int(1), int(0), int(1)], 4)
        );
        let e = Series::var(2).exp().unwrap();
        let inner = s(&[int(0), int(2), int(-1)], 2);
        assert_eq!(e.compose(&inner).unwrap(), s(&[int(1), int(2), int(1)], 2));
        assert_eq!(
            f.compose(&Series::one(2)),
            Err(SeriesError::InnerConstantTermNonzero)
        );
    }

    #[test]
    fn exp_examples() {
        let e = Series::<Rational>::var(3).exp().unwrap();
        assert_eq!(e, s(&[int(1), int(1), rat(1, 2), rat(1, 6)], 3));
        assert_eq!(Series::<Rational>::zero(3).exp().unwrap(), Series::one(3));
        // exp(x t - t^2/4): coefficient of t^2 is x^2/2 - 1/4
        let u = Series::new(vec![Poly::zero(), Poly::x(), Poly::constant(rat(-1, 4))], 2);
        let y = u.exp().unwrap();
        assert_eq!(y.coeff(2), &Poly::new(vec![rat(-1, 4), int(0), rat(1, 2)]));
        assert_eq!(
            Series::<Rational>::one(2).exp(),
            Err(SeriesError::InnerConstantTermNonzero)
        );
    }

    #[test]
    fn log_examples() {
        assert_eq!(Series::<Rational>::one(3).log().unwrap(), Series::zero(3));
        let mercator = -&s(&[int(1), int(-1)], 3).log().unwrap();
        assert_eq!(mercator, s(&[int(0), int(1), rat(1, 2), rat(1, 3)], 3));
        // -log(1 - x t + t^2/4), coefficient of t^2 = x^2/2 - 1/4 = T_2/2
        let f = Series::new(vec![Poly::one(), -&Poly::x(), Poly::constant(rat(1, 4))], 2);
        let l = -&f.log().unwrap();
        assert_eq!(l.coeff(2), &Poly::new(vec![rat(-1, 4), int(0), rat(1, 2)]));
        assert_eq!(s(&[int(2)], 2).log(), Err(SeriesError::ConstantTermNotOne));
    }

    #[test]
    fn powq_examples() {
        let f = s(&[int(1), int(-1)], 2);
        assert_eq!(
            f.powq(&rat(-1, 2)).unwrap(),
            s(&[int(1), rat(1, 2), rat(3, 8)], 2)
        );
        assert_eq!(f.powq(&int(0)).unwrap(), Series::one(2));
        let g = s(&[int(1), int(0), int(-1)], 4);
        assert_eq!(
            g.powq(&rat(-1, 2)).unwrap(),
            s(&[int(1), int(0), rat(1, 2), int(0), rat(3, 8)], 4)
        );
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(
            Series::<Rational>::one(2).integrate(),
            s(&[int(0), int(1)], 2)
        );
        let rho = rat(3, 2);
        let f = s(&[int(2), -(int(4) * &rho)], 2);
        assert_eq!(f.integrate(), s(&[int(0), int(2), -(int(2) * &rho)], 2));
        let g = s(&[int(5), int(1), int(-3), rat(1, 7)], 3);
        let back = g.derivative().integrate();
        assert_eq!(
            back.coeffs()[1..],
            (&g - &Series::constant(int(5), 3)).coeffs()[1..3]
        );
    }

    #[test]
    fn shift_and_dilate() {
        let f = s(&[int(1), int(2), int(3)], 2);
        assert_eq!(f.shift_up(1), s(&[int(0), int(1), int(2)], 2));
        assert_eq!(f.dilate(&int(2)), s(&[int(1), int(4), int(12)], 2));
        assert_eq!(f.powu(2), &f * &f);
    }

    #[test]
    fn poly_at_series_horner() {
        // (x^2 - 1/2) at z = 1 + t (order 2) = 1/2 + 2t + t^2
        let p = Poly::new(vec![rat(-1, 2), int(0), int(1)]);
        let z = s(&[int(1), int(1)], 2);
        assert_eq!(poly_at_series(&p, &z), s(&[rat(1, 2), int(2), int(1)], 2));
    }
}
