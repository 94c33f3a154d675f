//! Construction of every registered identity: its Rainville data, target
//! coefficients, polynomial family, closed form and derivative routes.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::kit::{
    binomial_series, hyp, lift_const, mehler_exp, one_minus_t_pow, poly_t, quad_pow, quarter_shift,
    ultra_base,
};
use super::{descriptor, Descriptor, Params, RegistryError};
use crate::arith::{
    factorial, int, is_nonpositive_integer, pochhammer, powi, rat, rational_sqrt, Poly, Rational,
};
use crate::families::{associated_hermite, Family};
use crate::fps::{erfi_kernel, poly_at_series, Series};
use crate::rainville::GfData;

/// A generating-function identity instantiated at concrete parameters.
#[derive(Debug, Clone)]
pub struct GfInstance {
    pub data: GfData,
    /// The registered expansion is `scale` times the expansion of `data`.
    pub scale: Rational,
    pub family: Family,
    /// Target polynomials are `alpha_n P_n(x + x_shift)`.
    pub x_shift: Rational,
    pub alpha: Vec<Rational>,
    /// `P_0 .. P_order` of `family` (unshifted).
    pub polys: Vec<Poly>,
    pub closed_form: Option<Series<Poly>>,
    /// Whether the recurrence-coefficient identities apply (plain form only).
    pub prop_suite: bool,
    /// `F(0) = 1`; false for the entries with `alpha_0 = 0`.
    pub normalized: bool,
    pub routes: Vec<Route>,
}

/// `derived[n] = scale * (d/dx)^m base[n + m]`, evaluated at `x + x_shift`.
#[derive(Debug, Clone)]
pub struct Route {
    pub base_id: &'static str,
    pub base_params: Params,
    pub derived_id: &'static str,
    pub derived_params: Params,
    pub m: usize,
    pub scale: Rational,
    pub x_shift: Rational,
}

#[derive(Debug, Clone)]
pub enum Kind {
    Gf(Box<GfInstance>),
    /// A series in `t` alone, with `limit_of` the identity whose leading
    /// x-coefficients it reproduces.
    Scalar {
        series: Series<Rational>,
        alpha: Vec<Rational>,
        limit_of: (&'static str, Params),
    },
    /// A finite polynomial identity in `rho`, indexed by `m`.
    Convolution {
        m: usize,
    },
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub id: &'static str,
    pub params: Params,
    pub order: usize,
    pub kind: Kind,
}

impl Instance {
    pub fn as_gf(&self) -> Option<&GfInstance> {
        match &self.kind {
            Kind::Gf(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_gf_mut(&mut self) -> Option<&mut GfInstance> {
        match &mut self.kind {
            Kind::Gf(g) => Some(g),
            _ => None,
        }
    }
}

#[derive(Debug)]
struct Fail(String);

impl<E: fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T, Fail> {
    Err(Fail(msg.into()))
}

type Built<T> = Result<T, Fail>;

pub(crate) fn params(entries: &[(&str, Rational)]) -> Params {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn nat(r: &Rational) -> usize {
    r.to_integer()
        .try_into()
        .expect("checked nonnegative integer")
}

fn ri(n: usize) -> Rational {
    int(n as i64)
}

fn sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

fn alphas(order: usize, f: impl Fn(usize) -> Rational) -> Vec<Rational> {
    (0..=order).map(f).collect()
}

/// Default parameter grid of an identity; the first point supplies defaults.
pub fn default_grid(id: &str) -> Result<Vec<Params>, RegistryError> {
    let desc = descriptor(id)?;
    let one = |name: &str, values: &[Rational]| -> Vec<Params> {
        values
            .iter()
            .map(|v| params(&[(name, v.clone())]))
            .collect()
    };
    let pairs = |a: &str, b: &str, values: &[(Rational, Rational)]| -> Vec<Params> {
        values
            .iter()
            .map(|(x, y)| params(&[(a, x.clone()), (b, y.clone())]))
            .collect()
    };
    let ms = [int(0), int(1), int(2), int(3)];
    let rhos = [rat(1, 2), int(1), rat(3, 2)];
    let with_m = |base: Vec<Params>| -> Vec<Params> {
        base.into_iter()
            .flat_map(|p| {
                ms.iter().map(move |m| {
                    let mut q = p.clone();
                    q.insert("m".into(), m.clone());
                    q
                })
            })
            .collect()
    };
    let lambdas = [rat(1, 2), int(1), rat(3, 2), int(2), rat(5, 2)];
    let jl_alphas = [int(0), rat(1, 2), int(1), int(2)];
    Ok(match desc.id {
        "Ultra1" | "Ultra2" => one("lambda", &lambdas),
        "U3" => one("a_choice", &[int(0), int(1), int(2)]),
        "U4" => pairs(
            "rho",
            "alpha1",
            &[(rat(1, 2), int(3)), (int(1), int(1)), (rat(3, 2), int(4))],
        ),
        "U1" => pairs(
            "rho",
            "alpha1",
            &[
                (int(1), int(3)),
                (rat(3, 2), int(4)),
                (int(2), int(5)),
                (rat(3, 2), int(1)),
            ],
        ),
        "U2a" | "U2b" => one("rho", &[int(1), rat(3, 2), int(2)]),
        "H2" => pairs(
            "rho",
            "alpha1",
            &[(rat(1, 2), int(3)), (int(1), int(3)), (rat(3, 2), int(5))],
        ),
        "Mehler" => one("rho", &rhos),
        // H_{n-1}(rho, 1) vanishes at rho = 1 (n = 3) and rho = 2 (n = 5).
        "H44" => one("rho", &[rat(1, 2), rat(3, 2), rat(5, 2)]),
        "J1" | "L1" | "L2" => one("alpha", &jl_alphas),
        "J3" => {
            let mut grid = Vec::new();
            for a in &jl_alphas {
                for r0 in [int(1), int(-1)] {
                    if *a == int(2) && r0 == int(-1) {
                        continue; // c = 0
                    }
                    grid.push(params(&[("alpha", a.clone()), ("r0", r0)]));
                }
            }
            grid
        }
        "U22" => with_m(vec![
            params(&[("rho", rat(5, 4)), ("alpha1", rat(1, 3))]),
            params(&[("rho", rat(5, 3)), ("alpha1", int(2))]),
            params(&[("rho", rat(3, 2)), ("alpha1", int(3))]),
        ]),
        "H30" | "H31" | "H32" | "H33" => with_m(one("rho", &rhos)),
        "J22" | "B11" => one("m", &ms),
        "J333" => pairs(
            "alpha",
            "beta",
            &[
                (rat(1, 2), rat(1, 2)),
                (rat(1, 3), rat(8, 3)),
                (int(2), int(3)),
                (rat(1, 2), rat(13, 2)),
                (rat(1, 3), rat(5, 7)),
            ],
        ),
        "L11" => with_m(one("alpha", &[int(0), rat(1, 2), int(2)])),
        "F415" => one("m", &(1..=8).map(int).collect::<Vec<_>>()),
        _ => vec![Params::new()],
    })
}

fn complete(desc: &Descriptor, given: &Params) -> Result<Params, RegistryError> {
    for key in given.keys() {
        if !desc.params.contains(&key.as_str()) {
            return Err(RegistryError::invalid(
                desc.id,
                format!("unknown parameter `{key}` (expected {:?})", desc.params),
            ));
        }
    }
    let defaults = default_grid(desc.id)?
        .into_iter()
        .next()
        .unwrap_or_default();
    let mut out = Params::new();
    for name in desc.params {
        let value = given
            .get(*name)
            .or_else(|| defaults.get(*name))
            .cloned()
            .expect("every parameter has a default");
        out.insert(name.to_string(), value);
    }
    Ok(out)
}

/// Instantiates identity `id` at `params` (missing entries take their
/// defaults) with every series known through `t^order`.
///
/// Entries subject to the recurrence-coefficient identities additionally
/// require every `alpha_n` (from `n = 1`, or `n = 0` when normalized) to be
/// nonzero.
pub fn build(id: &str, given: &Params, order: usize) -> Result<Instance, RegistryError> {
    let inst = build_unchecked(id, given, order)?;
    if let Some(g) = inst.as_gf().filter(|g| g.prop_suite) {
        let start = if g.normalized { 0 } else { 1 };
        if let Some(n) = (start..=order).find(|&n| g.alpha[n].is_zero()) {
            return Err(RegistryError::invalid(
                inst.id,
                format!("alpha_{n} vanishes at these parameters"),
            ));
        }
    }
    Ok(inst)
}

/// [`build`] without the `alpha_n != 0` requirement, for instances that only
/// serve as the base of a derivative or limit route.
pub(crate) fn build_unchecked(
    id: &str,
    given: &Params,
    order: usize,
) -> Result<Instance, RegistryError> {
    let desc = descriptor(id)?;
    let params = complete(desc, given)?;
    let p = |name: &str| params[name].clone();
    let kind =
        build_kind(desc.id, &p, order).map_err(|Fail(e)| RegistryError::invalid(desc.id, e))?;
    Ok(Instance {
        id: desc.id,
        params,
        order,
        kind,
    })
}

fn check_nat(name: &str, v: &Rational) -> Built<usize> {
    if !v.is_integer() || v.is_negative() || *v > int(64) {
        return fail(format!("{name} must be an integer in 0..=64, got {v}"));
    }
    Ok(nat(v))
}

fn build_kind(id: &str, p: &dyn Fn(&str) -> Rational, n: usize) -> Built<Kind> {
    let gf = |g: GfInstance| Ok(Kind::Gf(Box::new(g)));
    match id {
        "Ultra1" => gf(ultra1(&p("lambda"), n)?),
        "Ultra2" => gf(ultra2(&p("lambda"), n)?),
        "T1" => gf(t1(n)?),
        "U3" => gf(u3(&p("a_choice"), n)?),
        "U4" => gf(u4(&p("rho"), &p("alpha1"), n)?),
        "U1" => gf(u1(&p("rho"), &p("alpha1"), n)?),
        "U2a" => gf(u2(&p("rho"), false, n)?),
        "U2b" => gf(u2(&p("rho"), true, n)?),
        "H1" => gf(h1(n)?),
        "H2" => gf(h2(&p("rho"), &p("alpha1"), n)?),
        "Mehler" => gf(h2_part(&p("rho"), HPart::Mehler, n)?),
        "H44" => gf(h2_part(&p("rho"), HPart::Kernel, n)?),
        "J1" => gf(j1(&p("alpha"), n)?),
        "GF3" => gf(j1(&int(-1), n)?),
        "J2" => gf(j2(n)?),
        "J3" => gf(j3(&p("alpha"), &p("r0"), n)?),
        "L1" => gf(l1(&p("alpha"), n)?),
        "L2" => gf(l2(&p("alpha"), n)?),
        "B1" => gf(b1(n)?),
        "U22" => gf(u22(&p("rho"), &p("alpha1"), check_nat("m", &p("m"))?, n)?),
        "H30" => gf(h3x(&p("rho"), HPart::Mehler, check_nat("m", &p("m"))?, n)?),
        "H32" => gf(h3x(&p("rho"), HPart::Kernel, check_nat("m", &p("m"))?, n)?),
        "H31" => h3x_scalar(&p("rho"), HPart::Mehler, check_nat("m", &p("m"))?, n),
        "H33" => h3x_scalar(&p("rho"), HPart::Kernel, check_nat("m", &p("m"))?, n),
        "J22" => gf(j22(check_nat("m", &p("m"))?, n)?),
        "J333" => gf(j333(&p("alpha"), &p("beta"), n)?),
        "L11" => gf(l11(&p("alpha"), check_nat("m", &p("m"))?, n)?),
        "B11" => gf(b11(check_nat("m", &p("m"))?, n)?),
        "F415" => {
            let m = check_nat("m", &p("m"))?;
            if m == 0 {
                return fail("m must be at least 1");
            }
            Ok(Kind::Convolution { m })
        }
        other => unreachable!("catalog entry {other} has no builder"),
    }
}

/// Assembles an instance, checking the family parameters.
fn instance(
    data: GfData,
    family: Family,
    alpha: Vec<Rational>,
    closed_form: Option<Series<Poly>>,
    prop_suite: bool,
) -> Built<GfInstance> {
    let order = alpha.len() - 1;
    let polys = family.sequence(order)?;
    let normalized = data.f.coeff(0).is_one();
    Ok(GfInstance {
        data,
        scale: Rational::one(),
        family,
        x_shift: Rational::zero(),
        alpha,
        polys,
        closed_form,
        prop_suite,
        normalized,
        routes: Vec::new(),
    })
}

fn plain(
    data: GfData,
    family: Family,
    alpha: Vec<Rational>,
    closed: Series<Poly>,
) -> Built<GfInstance> {
    instance(data, family, alpha, Some(closed), true)
}

fn derived(
    data: GfData,
    scale: Rational,
    family: Family,
    alpha: Vec<Rational>,
    closed: Option<Series<Poly>>,
) -> Built<GfInstance> {
    let mut g = instance(data, family, alpha, closed, false)?;
    g.scale = scale;
    Ok(g)
}

fn self_routes(
    id: &'static str,
    base: Params,
    target: impl Fn(usize) -> (&'static str, Params, Rational),
) -> Vec<Route> {
    (1..=3)
        .map(|m| {
            let (derived_id, derived_params, scale) = target(m);
            Route {
                base_id: id,
                base_params: base.clone(),
                derived_id,
                derived_params,
                m,
                scale,
                x_shift: Rational::zero(),
            }
        })
        .collect()
}

fn own_route(
    base_id: &'static str,
    base: Params,
    id: &'static str,
    own: Params,
    m: usize,
    scale: &Rational,
) -> Route {
    Route {
        base_id,
        base_params: base,
        derived_id: id,
        derived_params: own,
        m,
        scale: scale.clone(),
        x_shift: Rational::zero(),
    }
}

// --- ultraspherical and Chebyshev ---------------------------------------

fn quarter_r(order: usize) -> Series<Rational> {
    Series::monomial(rat(1, 4), 2, order)
}

fn ultra1(lambda: &Rational, n: usize) -> Built<GfInstance> {
    let data = GfData::plain(
        Series::one(n),
        quarter_r(n),
        binomial_series(&int(1), &-lambda.clone(), n),
    );
    let alpha = alphas(n, |k| pochhammer(lambda, k) / factorial(k));
    let closed = ultra_base(n).powq(&-lambda.clone())?;
    let mut g = plain(
        data,
        Family::Ultraspherical {
            lambda: lambda.clone(),
        },
        alpha,
        closed,
    )?;
    g.routes = self_routes("Ultra1", params(&[("lambda", lambda.clone())]), |m| {
        (
            "Ultra1",
            params(&[("lambda", lambda + ri(m))]),
            pochhammer(lambda, m).recip(),
        )
    });
    Ok(g)
}

fn ultra2(lambda: &Rational, n: usize) -> Built<GfInstance> {
    if lambda.is_zero() {
        return fail("lambda must be nonzero");
    }
    let family = Family::Ultraspherical {
        lambda: lambda.clone(),
    };
    family.validate()?;
    let a = quad_pow(int(0), rat(-1, 4), &-lambda.recip(), n);
    let r = quarter_shift(&a);
    let l1 = lambda + int(1);
    let data = GfData::plain(a, r, binomial_series(&int(1), &-l1.clone(), n));
    let alpha = alphas(n, |k| pochhammer(&l1, k) / factorial(k));
    let closed =
        &poly_t(&[int(1), int(0), rat(-1, 4)], n).lift() * &ultra_base(n).powq(&-l1.clone())?;
    let mut g = plain(data, family, alpha, closed)?;
    g.routes = self_routes("Ultra2", params(&[("lambda", lambda.clone())]), |m| {
        (
            "Ultra2",
            params(&[("lambda", lambda + ri(m))]),
            pochhammer(&l1, m).recip(),
        )
    });
    Ok(g)
}

fn t1(n: usize) -> Built<GfInstance> {
    let f = &Series::one(n) - &poly_t(&[int(1), int(-1)], n).log()?;
    let data = GfData::plain(Series::one(n), quarter_r(n), f);
    let alpha = alphas(n, |k| if k == 0 { int(1) } else { ri(k).recip() });
    let closed = &Series::one(n) - &ultra_base(n).log()?;
    let mut g = plain(data, Family::ChebyshevT, alpha, closed)?;
    g.routes = self_routes("T1", Params::new(), |m| {
        (
            "Ultra1",
            params(&[("lambda", ri(m))]),
            factorial(m - 1).recip(),
        )
    });
    Ok(g)
}

fn u3(choice: &Rational, n: usize) -> Built<GfInstance> {
    let a = match check_nat("a_choice", choice)? {
        0 => Series::one(n),
        1 => one_minus_t_pow(&int(-1), n),
        2 => Series::var(n).exp()?,
        other => return fail(format!("a_choice must be 0, 1 or 2, got {other}")),
    };
    let r = quarter_shift(&a);
    let data = GfData::plain(a, r, binomial_series(&int(1), &int(-1), n));
    let closed = ultra_base(n).recip()?;
    let mut g = plain(data, Family::ChebyshevU, alphas(n, |_| int(1)), closed)?;
    g.routes = self_routes("U3", params(&[("a_choice", choice.clone())]), |m| {
        (
            "Ultra1",
            params(&[("lambda", ri(m + 1))]),
            factorial(m).recip(),
        )
    });
    Ok(g)
}

fn u4(rho: &Rational, a1: &Rational, n: usize) -> Built<GfInstance> {
    if rho.is_zero() || a1.is_zero() {
        return fail("rho and alpha1 must be nonzero");
    }
    let d = a1 - int(2) * rho;
    let f = poly_t(&[int(1), d.clone()], n).div(&poly_t(&[int(1), int(-2) * rho], n))?;
    let data = GfData::plain(Series::one(n), Series::monomial(rho / int(2), 2, n), f);
    let two_rho = int(2) * rho;
    let alpha = alphas(n, |k| {
        if k == 0 {
            int(1)
        } else {
            a1 * powi(&two_rho, k as i64 - 1).expect("nonzero")
        }
    });
    let num = Series::new(
        vec![
            Poly::one(),
            Poly::monomial(d.clone(), 1),
            Poly::constant(-(&d * rho) / int(2)),
        ],
        n,
    );
    let den = Series::new(
        vec![
            Poly::one(),
            Poly::monomial(-two_rho.clone(), 1),
            Poly::constant(rho * rho),
        ],
        n,
    );
    plain(data, Family::ChebyshevU, alpha, num.div(&den)?)
}

/// Monic Chebyshev U values `U_{-1}(rho) = 0, U_0(rho), ..., U_n(rho)`.
fn cheb_u_values(rho: &Rational, n: usize) -> Built<Vec<Rational>> {
    let mut v = vec![Rational::zero()];
    v.extend(Family::ChebyshevU.sequence(n)?.iter().map(|p| p.eval(rho)));
    Ok(v)
}

fn u1_data(rho: &Rational, a1: &Rational, n: usize, f_order: usize) -> GfData {
    let a = quad_pow(int(0), rat(-1, 4), &int(-1), n);
    let r = a.shift_up(2).scale(&(rho / int(2)));
    let den = poly_t(&[int(1), int(-2) * rho, int(1)], f_order);
    let num = poly_t(&[int(1), a1 - int(2) * rho], f_order);
    GfData::plain(a, r, num.div(&den).expect("unit constant term"))
}

fn u1_alpha(rho: &Rational, a1: &Rational, n: usize) -> Built<Vec<Rational>> {
    let u = cheb_u_values(rho, n)?;
    let c = a1 / int(2) - rho;
    Ok(alphas(n, |k| {
        int(2).pow(k as i32) * (&u[k + 1] + &c * &u[k])
    }))
}

/// `D(x, t) = 4 - 8 rho x t + (4 rho^2 + 4 x^2 - 2) t^2 - 2 rho x t^3 + t^4/4`.
fn u_denominator(rho: &Rational, n: usize) -> Series<Poly> {
    Series::new(
        vec![
            Poly::constant(int(4)),
            Poly::monomial(int(-8) * rho, 1),
            Poly::new(vec![int(4) * rho * rho - int(2), int(0), int(4)]),
            Poly::monomial(int(-2) * rho, 1),
            Poly::constant(rat(1, 4)),
        ],
        n,
    )
}

/// `2 x t - rho t^2`.
fn two_xt_minus_rho_t2(rho: &Rational, n: usize) -> Series<Poly> {
    Series::new(
        vec![
            Poly::zero(),
            Poly::monomial(int(2), 1),
            Poly::constant(-rho.clone()),
        ],
        n,
    )
}

fn u1(rho: &Rational, a1: &Rational, n: usize) -> Built<GfInstance> {
    let data = u1_data(rho, a1, n, n);
    let alpha = u1_alpha(rho, a1, n)?;
    let num = &poly_t(&[int(4), int(0), int(-1)], n).lift()
        + &two_xt_minus_rho_t2(rho, n).scale(&(int(2) * (a1 - int(2) * rho)));
    plain(
        data,
        Family::ChebyshevU,
        alpha,
        num.div(&u_denominator(rho, n))?,
    )
}

fn u2(rho: &Rational, odd_part: bool, n: usize) -> Built<GfInstance> {
    let mut data = u1_data(rho, &(int(2) * rho), n, n);
    let u = cheb_u_values(rho, n)?;
    let (alpha, num) = if odd_part {
        data.f = data.f.shift_up(1).scale(&int(2));
        (
            alphas(n, |k| int(2).pow(k as i32) * &u[k]),
            two_xt_minus_rho_t2(rho, n).scale(&int(4)),
        )
    } else {
        (
            alphas(n, |k| int(2).pow(k as i32) * &u[k + 1]),
            poly_t(&[int(4), int(0), int(-1)], n).lift(),
        )
    };
    plain(
        data,
        Family::ChebyshevU,
        alpha,
        num.div(&u_denominator(rho, n))?,
    )
}

fn u22(rho: &Rational, a1: &Rational, m: usize, n: usize) -> Built<GfInstance> {
    let data = u1_data(rho, a1, n, n + m).derived(m);
    let base = u1_alpha(rho, a1, n + m)?;
    let alpha = alphas(n, |k| {
        factorial(k + m) / (factorial(k) * factorial(m)) * &base[k + m]
    });
    let closed = u22_closed_form(rho, a1, m, n)?;
    let scale = factorial(m).recip();
    let own = params(&[("alpha1", a1.clone()), ("m", ri(m)), ("rho", rho.clone())]);
    let base_params = params(&[("alpha1", a1.clone()), ("rho", rho.clone())]);
    let mut g = derived(
        data,
        scale.clone(),
        Family::Ultraspherical { lambda: ri(m + 1) },
        alpha,
        closed,
    )?;
    g.routes = vec![own_route("U1", base_params, "U22", own, m, &scale)];
    Ok(g)
}

/// Partial-fraction closed form, available when `rho^2 - 1` is a nonzero
/// rational square so that the roots `t1, t2` of `1 - 2 rho z + z^2` are
/// rational.
fn u22_closed_form_signed(
    rho: &Rational,
    a1: &Rational,
    m: usize,
    n: usize,
    sign: &Rational,
) -> Built<Option<Series<Poly>>> {
    let s = match rational_sqrt(&(rho * rho - int(1))) {
        Some(s) if !s.is_zero() => s,
        _ => return Ok(None),
    };
    let (t1, t2) = (rho - &s, rho + &s);
    let d = a1 - int(2) * rho;
    let c1 = (int(1) + sign * &d * &t1) / (&t2 - &t1);
    let c2 = (int(1) + sign * &d * &t2) / (&t1 - &t2);
    let e = -ri(m + 1);
    let mut total = Series::zero(n);
    for (ti, ci) in [(t1, c1), (t2, c2)] {
        // (t_i - x t - (t_i/4 - rho/2) t^2)^{-(m+1)}
        let inner = Series::new(
            vec![
                Poly::one(),
                Poly::monomial(-ti.recip(), 1),
                Poly::constant(-(&ti / int(4) - rho / int(2)) / &ti),
            ],
            n,
        );
        let coef = ci * powi(&ti, -(m as i64 + 1)).expect("t_i is nonzero");
        total = &total + &inner.powq(&e)?.scale(&coef);
    }
    Ok(Some(total))
}

fn u22_closed_form(
    rho: &Rational,
    a1: &Rational,
    m: usize,
    n: usize,
) -> Built<Option<Series<Poly>>> {
    u22_closed_form_signed(rho, a1, m, n, &int(1))
}

// --- Hermite --------------------------------------------------------------

fn h1(n: usize) -> Built<GfInstance> {
    let data = GfData::plain(Series::one(n), quarter_r(n), Series::var(n).exp()?);
    let closed = Series::new(vec![Poly::zero(), Poly::x(), Poly::constant(rat(-1, 4))], n).exp()?;
    let mut g = plain(
        data,
        Family::Hermite,
        alphas(n, |k| factorial(k).recip()),
        closed,
    )?;
    g.routes = self_routes("H1", Params::new(), |_| ("H1", Params::new(), int(1)));
    Ok(g)
}

#[derive(Clone, Copy, PartialEq)]
enum HPart {
    /// `exp(z (2 rho - z))`.
    Mehler,
    /// `K(z) exp(z (2 rho - z))` with `K` the erfi kernel.
    Kernel,
}

fn h2_a(n: usize) -> Series<Rational> {
    quad_pow(int(0), int(-1), &rat(-1, 2), n)
}

fn h2_data(rho: &Rational, a1: &Rational, n: usize, f_order: usize) -> GfData {
    let a = h2_a(n);
    let r = (&a - &Series::one(n)).scale(rho);
    let e = mehler_exp(rho, f_order);
    let kernel = erfi_kernel(rho, f_order);
    let c = a1 / int(2) - rho;
    let f = &(&Series::one(f_order) + &kernel.scale(&c)) * &e;
    GfData::plain(a, r, f)
}

fn h2_part_data(rho: &Rational, part: HPart, n: usize, f_order: usize) -> GfData {
    let mut data = h2_data(rho, &(int(2) * rho), n, f_order);
    if part == HPart::Kernel {
        data.f = &erfi_kernel(rho, f_order) * &mehler_exp(rho, f_order);
    }
    data
}

/// `H_n(rho)` and the associated `H_{n-1}(rho, 1)` (zero at `n = 0`).
fn hermite_values(rho: &Rational, n: usize) -> Built<(Vec<Rational>, Vec<Rational>)> {
    let h = Family::Hermite
        .sequence(n)?
        .iter()
        .map(|p| p.eval(rho))
        .collect();
    let assoc = (0..=n)
        .map(|k| {
            if k == 0 {
                Rational::zero()
            } else {
                associated_hermite(k - 1, &int(1)).eval(rho)
            }
        })
        .collect();
    Ok((h, assoc))
}

/// Pieces of the Hermite closed forms: `A^(m+1)`, `w`, `K(rho - w)` and
/// `exp(rho^2 - w^2)` with `w = (rho - x t) A`, `A = (1 - t^2)^(-1/2)`.
struct HermiteClosed {
    a_pow: Series<Poly>,
    w: Series<Poly>,
    kernel: Series<Poly>,
    gauss: Series<Poly>,
}

fn hermite_closed(rho: &Rational, m: usize, n: usize) -> Built<HermiteClosed> {
    let a = h2_a(n);
    let rho_minus_xt = Series::new(
        vec![Poly::constant(rho.clone()), Poly::monomial(int(-1), 1)],
        n,
    );
    let w = &a.lift() * &rho_minus_xt;
    let inner = &lift_const(rho.clone(), n) - &w;
    let kernel = erfi_kernel(rho, n).lift().compose(&inner)?;
    let gauss = (&lift_const(rho * rho, n) - &(&w * &w)).exp()?;
    let a_pow = quad_pow(int(0), int(-1), &(-ri(m + 1) / int(2)), n).lift();
    Ok(HermiteClosed {
        a_pow,
        w,
        kernel,
        gauss,
    })
}

fn hermite_poly(m: usize) -> Built<Poly> {
    Ok(Family::Hermite.sequence(m)?.pop().expect("nonempty"))
}

/// `H_{m-1}(z, 1)`, zero for `m = 0`.
fn assoc_poly(m: usize) -> Poly {
    if m == 0 {
        Poly::zero()
    } else {
        associated_hermite(m - 1, &int(1))
    }
}

fn h2(rho: &Rational, a1: &Rational, n: usize) -> Built<GfInstance> {
    let data = h2_data(rho, a1, n, n);
    let (h, assoc) = hermite_values(rho, n)?;
    let c = a1 / int(2) - rho;
    let alpha = alphas(n, |k| {
        int(2).pow(k as i32) / factorial(k) * (&h[k] + &c * &assoc[k])
    });
    let hc = hermite_closed(rho, 0, n)?;
    let bracket = &Series::one(n) + &hc.kernel.scale(&c);
    let closed = &(&hc.a_pow * &bracket) * &hc.gauss;
    plain(data, Family::Hermite, alpha, closed)
}

fn h2_part(rho: &Rational, part: HPart, n: usize) -> Built<GfInstance> {
    let data = h2_part_data(rho, part, n, n);
    let (h, assoc) = hermite_values(rho, n)?;
    let vals = if part == HPart::Mehler { h } else { assoc };
    let alpha = alphas(n, |k| int(2).pow(k as i32) / factorial(k) * &vals[k]);
    let hc = hermite_closed(rho, 0, n)?;
    let mut closed = &hc.a_pow * &hc.gauss;
    if part == HPart::Kernel {
        closed = &closed * &hc.kernel;
    }
    plain(data, Family::Hermite, alpha, closed)
}

fn h3x(rho: &Rational, part: HPart, m: usize, n: usize) -> Built<GfInstance> {
    let data = h2_part_data(rho, part, n, n + m).derived(m);
    let (h, assoc) = hermite_values(rho, n + m)?;
    let vals = if part == HPart::Mehler { h } else { assoc };
    let alpha = alphas(n, |k| int(2).pow(k as i32) / factorial(k) * &vals[k + m]);
    let hc = hermite_closed(rho, m, n)?;
    let hm_w = poly_at_series(&hermite_poly(m)?, &hc.w);
    let body = match part {
        HPart::Mehler => &hc.gauss * &hm_w,
        HPart::Kernel => {
            let head = poly_at_series(&assoc_poly(m), &hc.w);
            &head + &(&(&hc.kernel * &hc.gauss) * &hm_w)
        }
    };
    let closed = &hc.a_pow * &body;
    let scale = powi(&int(2), -(m as i64)).expect("nonzero");
    // H30 differentiates H2 at alpha1 = 2 rho; H32 differentiates the part of
    // H2 linear in alpha1, H2 = Mehler + (alpha1/2 - rho) H44.
    let (base_id, base_params, id) = match part {
        HPart::Mehler => (
            "H2",
            params(&[("alpha1", int(2) * rho), ("rho", rho.clone())]),
            "H30",
        ),
        HPart::Kernel => ("H44", params(&[("rho", rho.clone())]), "H32"),
    };
    let mut g = derived(data, scale.clone(), Family::Hermite, alpha, Some(closed))?;
    g.routes = vec![own_route(
        base_id,
        base_params,
        id,
        params(&[("m", ri(m)), ("rho", rho.clone())]),
        m,
        &scale,
    )];
    Ok(g)
}

fn h3x_scalar(rho: &Rational, part: HPart, m: usize, n: usize) -> Built<Kind> {
    let (h, assoc) = hermite_values(rho, n + m)?;
    let vals = if part == HPart::Mehler { h } else { assoc };
    let alpha = alphas(n, |k| int(2).pow(k as i32) / factorial(k) * &vals[k + m]);
    let rho_minus_t = poly_t(&[rho.clone(), int(-1)], n);
    let gauss = mehler_exp(rho, n);
    let hm = poly_at_series(&hermite_poly(m)?, &rho_minus_t);
    let (series, limit_id) = match part {
        HPart::Mehler => (&hm * &gauss, "H30"),
        HPart::Kernel => {
            let head = poly_at_series(&assoc_poly(m), &rho_minus_t);
            let tail = &(&erfi_kernel(rho, n) * &gauss) * &hm;
            (&head + &tail, "H32")
        }
    };
    Ok(Kind::Scalar {
        series,
        alpha,
        limit_of: (limit_id, params(&[("m", ri(m)), ("rho", rho.clone())])),
    })
}

// --- Jacobi ---------------------------------------------------------------

fn j1(alpha: &Rational, n: usize) -> Built<GfInstance> {
    if *alpha == rat(-1, 2) {
        return fail("alpha = -1/2 makes A singular");
    }
    let e = alpha + rat(3, 2);
    if is_nonpositive_integer(&e) {
        return fail("alpha + 3/2 must not be a nonpositive integer");
    }
    let a = quad_pow(
        rat(-1, 2),
        int(0),
        &(int(-2) / (int(2) * alpha + int(1))),
        n,
    );
    let r = quarter_shift(&a);
    let data = GfData::plain(a, r, binomial_series(&int(1), &-e.clone(), n));
    let family = Family::Jacobi {
        alpha: alpha.clone(),
        beta: alpha + int(1),
    };
    let alpha_n = alphas(n, |k| pochhammer(&e, k) / factorial(k));
    let closed = &poly_t(&[int(1), rat(-1, 2)], n).lift() * &ultra_base(n).powq(&-e.clone())?;
    let mut g = plain(data, family, alpha_n, closed)?;
    g.routes = self_routes("J1", params(&[("alpha", alpha.clone())]), |m| {
        (
            "J1",
            params(&[("alpha", alpha + ri(m))]),
            pochhammer(&e, m).recip(),
        )
    });
    if *alpha == int(-1) {
        // The GF3 entry is this identity at alpha = -1.
        for route in &mut g.routes {
            route.base_id = "GF3";
            route.base_params = Params::new();
        }
    }
    Ok(g)
}

/// `(c0 + c1 x) t g(t)` as a series with polynomial coefficients.
fn affine_xt(c0: &Rational, c1: &Rational, g: &Series<Rational>) -> Series<Poly> {
    g.map(|c| Poly::new(vec![c * c0, c * c1])).shift_up(1)
}

fn j2_data(n: usize, f_order: usize) -> Built<GfData> {
    let a = quad_pow(rat(1, 2), int(0), &int(-2), n);
    let r = quarter_shift(&a);
    let f = hyp(&[rat(3, 2), int(1)], &[int(2)], f_order)?;
    Ok(GfData::plain(a, r, f))
}

fn j2(n: usize) -> Built<GfInstance> {
    let data = j2_data(n, n)?;
    let alpha = alphas(n, |k| pochhammer(&rat(3, 2), k) / factorial(k + 1));
    let inner = affine_xt(&int(1), &int(1), &data.a);
    let closed = &data.a.lift() * &data.f.lift().compose(&inner)?;
    plain(
        data,
        Family::Jacobi {
            alpha: int(0),
            beta: int(1),
        },
        alpha,
        closed,
    )
}

fn j22(m: usize, n: usize) -> Built<GfInstance> {
    let data = j2_data(n, n + m)?.derived(m);
    let mm = ri(m);
    let (a, b, c) = (rat(3, 2) + &mm, int(1) + &mm, int(2) + &mm);
    let alpha = alphas(n, |k| {
        pochhammer(&a, k) * pochhammer(&b, k) / (pochhammer(&c, k) * factorial(k))
    });
    let base_a = quad_pow(rat(1, 2), int(0), &int(-2), n);
    let inner = affine_xt(&int(1), &int(1), &base_a);
    let f = hyp(&[a, b], &[c], n)?;
    let closed = &quad_pow(rat(1, 2), int(0), &(int(-2) - int(2) * &mm), n).lift()
        * &f.lift().compose(&inner)?;
    let scale = (&mm + int(1)) / pochhammer(&rat(3, 2), m);
    let family = Family::Jacobi {
        alpha: mm.clone(),
        beta: &mm + int(1),
    };
    let mut g = derived(data, scale.clone(), family, alpha, Some(closed))?;
    g.routes = vec![own_route(
        "J2",
        Params::new(),
        "J22",
        params(&[("m", mm)]),
        m,
        &scale,
    )];
    Ok(g)
}

fn j3_c(alpha: &Rational, r0: &Rational) -> Built<Rational> {
    if *r0 != int(1) && *r0 != int(-1) {
        return fail(format!("r0 must be 1 or -1, got {r0}"));
    }
    let c = rat(3, 2) + (int(2) * alpha - int(1)) / (int(2) * r0);
    if is_nonpositive_integer(&c) {
        return fail(format!("c = {c} is a nonpositive integer"));
    }
    Ok(c)
}

fn j3(alpha: &Rational, r0: &Rational, n: usize) -> Built<GfInstance> {
    let c = j3_c(alpha, r0)?;
    let a = one_minus_t_pow(&int(-2), n);
    let half = r0 / int(2);
    let r = &(&a * &poly_t(&[int(1), int(0), int(1)], n)).scale(&half)
        - &Series::constant(half.clone(), n);
    let two_over = int(2) / r0;
    let base_f = hyp(&[rat(3, 2), int(1)], std::slice::from_ref(&c), n)?;
    let data = GfData::plain(a.clone(), r, base_f.dilate(&two_over));
    let alpha_n = alphas(n, |k| {
        pochhammer(&rat(3, 2), k) / pochhammer(&c, k) * two_over.pow(k as i32)
    });
    let inner = affine_xt(&(-&two_over * r0), &two_over, &a);
    let closed = &a.lift() * &base_f.lift().compose(&inner)?;
    let family = Family::Jacobi {
        alpha: alpha.clone(),
        beta: int(1) - alpha,
    };
    plain(data, family, alpha_n, closed)
}

fn j333(alpha: &Rational, beta: &Rational, n: usize) -> Built<GfInstance> {
    let s = alpha + beta;
    let (pa, pb, pc) = (
        (&s + int(2)) / int(2),
        (&s + int(1)) / int(2),
        alpha + int(1),
    );
    let base_f = hyp(&[pa.clone(), pb.clone()], std::slice::from_ref(&pc), n)?;
    let a = one_minus_t_pow(&int(-2), n);
    let data = GfData {
        a: a.clone(),
        r: Series::zero(n),
        f: base_f.dilate(&int(2)),
        k_power: pb.clone(),
        m: 0,
    };
    let alpha_n = alphas(n, |k| {
        pochhammer(&pa, k) * pochhammer(&pb, k) * int(2).pow(k as i32)
            / (pochhammer(&pc, k) * factorial(k))
    });
    let inner = affine_xt(&int(0), &int(2), &a);
    let closed = &one_minus_t_pow(&-(&s + int(1)), n).lift() * &base_f.lift().compose(&inner)?;
    let family = Family::Jacobi {
        alpha: alpha.clone(),
        beta: beta.clone(),
    };
    let mut g = derived(data, Rational::one(), family, alpha_n, Some(closed))?;
    g.x_shift = int(1);
    // alpha + beta = 2m + 1: the m-th derivative of the r0 = 1 entry.
    let m2 = &s - int(1);
    if m2.is_integer() && m2 >= Rational::zero() && (&m2 / int(2)).is_integer() {
        let m = nat(&(&m2 / int(2)));
        let base_alpha = alpha - ri(m);
        if let Ok(c) = j3_c(&base_alpha, &int(1)) {
            let scale = pochhammer(&c, m)
                / (pochhammer(&rat(3, 2), m) * int(2).pow(m as i32) * factorial(m));
            g.routes = vec![Route {
                base_id: "J3",
                base_params: params(&[("alpha", base_alpha), ("r0", int(1))]),
                derived_id: "J333",
                derived_params: params(&[("alpha", alpha.clone()), ("beta", beta.clone())]),
                m,
                scale,
                x_shift: int(1),
            }];
        }
    }
    Ok(g)
}

// --- Laguerre and Bessel ----------------------------------------------------

fn l1_data(alpha: &Rational, n: usize, f_order: usize) -> Built<GfData> {
    let f = hyp(&[int(1)], &[alpha + int(1)], f_order)?.dilate(&int(-1));
    Ok(GfData::plain(
        one_minus_t_pow(&int(-1), n),
        Series::zero(n),
        f,
    ))
}

fn laguerre_closed(num: Rational, den: Rational, k: Rational, n: usize) -> Built<Series<Poly>> {
    // (1-t)^(-k) 1F1(num; den; -x t/(1-t))
    let inner = affine_xt(&int(0), &int(-1), &one_minus_t_pow(&int(-1), n));
    let f = hyp(&[num], &[den], n)?;
    Ok(&one_minus_t_pow(&-k, n).lift() * &f.lift().compose(&inner)?)
}

fn l1(alpha: &Rational, n: usize) -> Built<GfInstance> {
    let data = l1_data(alpha, n, n)?;
    let ap1 = alpha + int(1);
    let alpha_n = alphas(n, |k| sign(k) / pochhammer(&ap1, k));
    let closed = laguerre_closed(int(1), ap1, int(1), n)?;
    plain(
        data,
        Family::Laguerre {
            alpha: alpha.clone(),
        },
        alpha_n,
        closed,
    )
}

fn l11(alpha: &Rational, m: usize, n: usize) -> Built<GfInstance> {
    let data = l1_data(alpha, n, n + m)?.derived(m);
    let mm = ri(m);
    let c = alpha + &mm + int(1);
    let alpha_n = alphas(n, |k| {
        pochhammer(&(&mm + int(1)), k) * sign(k) / (pochhammer(&c, k) * factorial(k))
    });
    let closed = laguerre_closed(&mm + int(1), c, &mm + int(1), n)?;
    let scale = pochhammer(&(alpha + int(1)), m) * sign(m) / factorial(m);
    let mut g = derived(
        data,
        scale.clone(),
        Family::Laguerre { alpha: alpha + &mm },
        alpha_n,
        Some(closed),
    )?;
    g.routes = vec![own_route(
        "L1",
        params(&[("alpha", alpha.clone())]),
        "L11",
        params(&[("alpha", alpha.clone()), ("m", mm)]),
        m,
        &scale,
    )];
    Ok(g)
}

fn l2(alpha: &Rational, n: usize) -> Built<GfInstance> {
    let a = one_minus_t_pow(&int(-1), n);
    let r = poly_t(&[int(1), int(-1)], n).log()?.scale(&-alpha.clone());
    let f = poly_t(&[int(0), int(-1)], n).exp()?;
    let data = GfData::plain(a.clone(), r, f);
    let alpha_n = alphas(n, |k| sign(k) / factorial(k));
    let inner = affine_xt(&int(0), &int(-1), &a);
    let closed = &one_minus_t_pow(&-(alpha + int(1)), n).lift() * &inner.exp()?;
    let mut g = plain(
        data,
        Family::Laguerre {
            alpha: alpha.clone(),
        },
        alpha_n,
        closed,
    )?;
    g.routes = self_routes("L2", params(&[("alpha", alpha.clone())]), |m| {
        ("L2", params(&[("alpha", alpha + ri(m))]), sign(m))
    });
    Ok(g)
}

fn b1_data(n: usize, f_order: usize) -> Built<GfData> {
    let f = hyp(&[rat(3, 2), int(1)], &[], f_order)?.dilate(&int(2));
    Ok(GfData::plain(
        one_minus_t_pow(&int(-2), n),
        Series::zero(n),
        f,
    ))
}

fn bessel_closed(m: usize, n: usize) -> Built<Series<Poly>> {
    let mm = ri(m);
    let inner = affine_xt(&int(0), &int(2), &one_minus_t_pow(&int(-2), n));
    let f = hyp(&[rat(3, 2) + &mm, int(1) + &mm], &[], n)?;
    Ok(&one_minus_t_pow(&(int(-2) - int(2) * mm), n).lift() * &f.lift().compose(&inner)?)
}

fn b1(n: usize) -> Built<GfInstance> {
    let data = b1_data(n, n)?;
    let alpha = alphas(n, |k| pochhammer(&rat(3, 2), k) * int(2).pow(k as i32));
    plain(
        data,
        Family::Bessel { alpha: int(3) },
        alpha,
        bessel_closed(0, n)?,
    )
}

fn b11(m: usize, n: usize) -> Built<GfInstance> {
    let data = b1_data(n, n + m)?.derived(m);
    let mm = ri(m);
    let alpha = alphas(n, |k| {
        pochhammer(&(rat(3, 2) + &mm), k) * pochhammer(&(int(1) + &mm), k) * int(2).pow(k as i32)
            / factorial(k)
    });
    let scale = (pochhammer(&rat(3, 2), m) * int(2).pow(m as i32) * factorial(m)).recip();
    let family = Family::Bessel {
        alpha: int(3) + int(2) * &mm,
    };
    let mut g = derived(
        data,
        scale.clone(),
        family,
        alpha,
        Some(bessel_closed(m, n)?),
    )?;
    g.routes = vec![own_route(
        "B1",
        Params::new(),
        "B11",
        params(&[("m", mm)]),
        m,
        &scale,
    )];
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u22_expansion(rho: &Rational, a1: &Rational, m: usize, n: usize) -> Vec<Poly> {
        let p = params(&[("alpha1", a1.clone()), ("m", ri(m)), ("rho", rho.clone())]);
        let inst = build("U22", &p, n).unwrap();
        let gf = inst.as_gf().unwrap();
        gf.data
            .expand(n)
            .unwrap()
            .iter()
            .map(|q| q.scale(&gf.scale))
            .collect()
    }

    #[test]
    fn partial_fraction_signs() {
        let (rho, a1, n) = (rat(5, 4), rat(1, 3), 6);
        for m in 0..3 {
            let exp = u22_expansion(&rho, &a1, m, n);
            let good = u22_closed_form_signed(&rho, &a1, m, n, &int(1))
                .unwrap()
                .unwrap();
            assert!((0..=n).all(|k| good.coeff(k) == &exp[k]), "m = {m}");
            // Opposite sign on (alpha1 - 2 rho) in c1, c2: wrong whenever alpha1 != 2 rho.
            let flipped = u22_closed_form_signed(&rho, &a1, m, n, &int(-1))
                .unwrap()
                .unwrap();
            assert!((0..=n).any(|k| flipped.coeff(k) != &exp[k]), "m = {m}");
        }
        let a1 = int(2) * &rho;
        let exp = u22_expansion(&rho, &a1, 1, n);
        let flipped = u22_closed_form_signed(&rho, &a1, 1, n, &int(-1))
            .unwrap()
            .unwrap();
        assert!((0..=n).all(|k| flipped.coeff(k) == &exp[k]));
    }
}
