//! Strategies and law checks shared by the property tests and the
//! acceptance run.

#![allow(dead_code)]

use num_traits::Zero;
use opgf_core::arith::{int, rat, Rational};
use opgf_core::fps::{erfi_kernel, Series};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn series(order: usize) -> impl Strategy<Value = Series<Rational>> {
    vec(small_rat(), order + 1).prop_map(move |c| Series::new(c, order))
}

/// A series with its constant term forced to `c0`.
pub fn series_with(order: usize, c0: i64) -> impl Strategy<Value = Series<Rational>> {
    series(order).prop_map(move |s| {
        let mut c = s.coeffs().to_vec();
        c[0] = int(c0);
        Series::new(c, order)
    })
}

fn ensure(cond: bool, what: &str) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn triple() -> impl Strategy<Value = (Series<Rational>, Series<Rational>, Series<Rational>)> {
    (0usize..=10).prop_flat_map(|n| (series(n), series(n), series(n)))
}

pub fn ring_laws(
    (f, g, h): (Series<Rational>, Series<Rational>, Series<Rational>),
) -> Result<(), TestCaseError> {
    let n = f.order();
    ensure(&(&f + &g) + &h == &f + &(&g + &h), "addition associative")?;
    ensure(&f + &g == &g + &f, "addition commutative")?;
    ensure(
        &(&f * &g) * &h == &f * &(&g * &h),
        "multiplication associative",
    )?;
    ensure(&f * &g == &g * &f, "multiplication commutative")?;
    ensure(&f * &(&g + &h) == &(&f * &g) + &(&f * &h), "distributive")?;
    ensure(&f + &Series::zero(n) == f, "additive identity")?;
    ensure(&f * &Series::one(n) == f, "multiplicative identity")?;
    ensure(
        (&f + &(-&f)).coeffs().iter().all(Zero::is_zero),
        "additive inverse",
    )
}

pub fn exp_log_pair() -> impl Strategy<Value = (Series<Rational>, Series<Rational>)> {
    (0usize..=10).prop_flat_map(|n| (series_with(n, 0), series_with(n, 1)))
}

pub fn exp_log_inverse((f, g): (Series<Rational>, Series<Rational>)) -> Result<(), TestCaseError> {
    ensure(f.exp().unwrap().log().unwrap() == f, "log(exp f) = f")?;
    ensure(g.log().unwrap().exp().unwrap() == g, "exp(log g) = g")
}

pub fn powq_case() -> impl Strategy<Value = (Series<Rational>, Rational, Rational, u32)> {
    (0usize..=10).prop_flat_map(|n| (series_with(n, 1), small_rat(), small_rat(), 0u32..5))
}

pub fn powq_consistency(
    (g, p, q, k): (Series<Rational>, Rational, Rational, u32),
) -> Result<(), TestCaseError> {
    let gp = g.powq(&p).unwrap();
    let gq = g.powq(&q).unwrap();
    ensure(
        &gp * &gq == g.powq(&(&p + &q)).unwrap(),
        "g^p g^q = g^(p+q)",
    )?;
    ensure(
        g.powq(&int(k as i64)).unwrap() == g.powu(k),
        "rational power agrees with integer power",
    )?;
    ensure(
        gp.powq(&q).unwrap() == g.powq(&(&p * &q)).unwrap(),
        "(g^p)^q = g^(pq)",
    )?;
    ensure(
        g.powq(&Rational::zero()).unwrap() == Series::one(g.order()),
        "g^0 = 1",
    )
}

pub fn chain_pair() -> impl Strategy<Value = (Series<Rational>, Series<Rational>)> {
    (1usize..=10).prop_flat_map(|n| (series(n), series_with(n, 0)))
}

pub fn chain_rule((f, u): (Series<Rational>, Series<Rational>)) -> Result<(), TestCaseError> {
    let lhs = f.compose(&u).unwrap().derivative();
    let rhs = &f.derivative().compose(&u).unwrap() * &u.derivative();
    ensure(lhs == rhs, "(f o u)' = (f' o u) u'")
}

pub fn erfi_case() -> impl Strategy<Value = (Rational, usize)> {
    (small_rat(), 1usize..=10)
}

pub fn erfi_ode((rho, n): (Rational, usize)) -> Result<(), TestCaseError> {
    let g = erfi_kernel(&rho, n);
    let exponent = Series::new(vec![int(0), int(-2) * &rho, int(1)], n);
    let rhs = exponent.exp().unwrap().scale(&int(2)).truncate(n - 1);
    ensure(g.coeff(0).is_zero(), "G(0) = 0")?;
    ensure(g.derivative() == rhs, "G' = 2 exp(-2 rho t + t^2)")
}
