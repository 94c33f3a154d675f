//! Runs every applicable check on one instantiated identity and collects the
//! outcome into a serializable report.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::catalog::{build_unchecked, GfInstance, Kind, Route};
use super::{build, Instance, Params, RegistryError};
use crate::arith::{binomial, parse_rational, Poly, Rational};
use crate::families::{associated_hermite, hermite_sign_flipped, Family};
use crate::fps::Series;
use crate::rainville::{
    akn_table, compute_s_r, is_even, verify_corollaries, verify_prop1, verify_prop2, verify_prop3,
    Mismatch,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchReport {
    pub check: String,
    pub relation: String,
    pub n: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub order: usize,
    pub status: Status,
    pub checks: Vec<CheckReport>,
    pub first_mismatch: Option<MismatchReport>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Which series of the Rainville data a perturbation touches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    A,
    R,
    F,
}

/// Adds `delta` to one coefficient of `A`, `R` or `F`; used to confirm that
/// the checks actually detect a wrong identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perturbation {
    pub target: Target,
    pub index: usize,
    pub delta: Rational,
}

impl FromStr for Perturbation {
    type Err = String;

    /// `TARGET:INDEX:DELTA`, e.g. `R:3:1/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [target, index, delta] = parts.as_slice() else {
            return Err(format!("expected TARGET:INDEX:DELTA, got `{s}`"));
        };
        let target = match *target {
            "A" => Target::A,
            "R" => Target::R,
            "F" => Target::F,
            other => {
                return Err(format!(
                    "perturbation target must be A, R or F, got `{other}`"
                ))
            }
        };
        let index = index
            .parse()
            .map_err(|_| format!("bad perturbation index `{index}`"))?;
        let delta = parse_rational(delta).map_err(|e| e.to_string())?;
        Ok(Perturbation {
            target,
            index,
            delta,
        })
    }
}

impl Perturbation {
    fn apply(&self, inst: &mut Instance) -> Result<(), RegistryError> {
        let id = inst.id;
        let gf = inst.as_gf_mut().ok_or_else(|| {
            RegistryError::invalid(id, "only generating-function identities can be perturbed")
        })?;
        let series = match self.target {
            Target::A => &mut gf.data.a,
            Target::R => &mut gf.data.r,
            Target::F => &mut gf.data.f,
        };
        if self.index > series.order() {
            return Err(RegistryError::invalid(
                id,
                format!(
                    "perturbation index {} beyond series order {}",
                    self.index,
                    series.order()
                ),
            ));
        }
        let mut coeffs = series.coeffs().to_vec();
        coeffs[self.index] += &self.delta;
        *series = Series::new(coeffs, series.order());
        Ok(())
    }
}

enum Outcome {
    Pass,
    Mismatch(Mismatch),
    Error(String),
}

impl From<Result<(), Mismatch>> for Outcome {
    fn from(v: Result<(), Mismatch>) -> Self {
        match v {
            Ok(()) => Outcome::Pass,
            Err(m) => Outcome::Mismatch(m),
        }
    }
}

fn outcome<E: ToString>(r: Result<Result<(), Mismatch>, E>) -> Outcome {
    match r {
        Ok(v) => v.into(),
        Err(e) => Outcome::Error(e.to_string()),
    }
}

fn compare_polys(
    relation: &str,
    n_max: usize,
    mut pair: impl FnMut(usize) -> (Poly, Poly),
) -> Result<(), Mismatch> {
    for n in 0..=n_max {
        let (expected, actual) = pair(n);
        if expected != actual {
            return Err(Mismatch::new(n, relation, expected, actual));
        }
    }
    Ok(())
}

fn compare_scalars(
    relation: &str,
    expected: &[Rational],
    actual: &[Rational],
) -> Result<(), Mismatch> {
    for (n, (e, a)) in expected.iter().zip(actual).enumerate() {
        if e != a {
            return Err(Mismatch::new(n, relation, e, a));
        }
    }
    Ok(())
}

fn scaled_expansion(gf: &GfInstance, order: usize) -> Result<Vec<Poly>, String> {
    let polys = gf.data.expand(order).map_err(|e| e.to_string())?;
    Ok(polys.iter().map(|p| p.scale(&gf.scale)).collect())
}

fn gf_of(inst: &Instance) -> Result<&GfInstance, String> {
    inst.as_gf()
        .ok_or_else(|| format!("{} is not a generating-function identity", inst.id))
}

fn route_check(
    route: &Route,
    own: &Instance,
    own_expansion: &[Poly],
) -> Result<Result<(), Mismatch>, String> {
    let order = own.order;
    let base = build_unchecked(route.base_id, &route.base_params, order + route.m)
        .map_err(|e| e.to_string())?;
    let base_expansion = scaled_expansion(gf_of(&base)?, order + route.m)?;
    let derived_expansion = if route.derived_id == own.id && route.derived_params == own.params {
        own_expansion.to_vec()
    } else {
        let derived = build_unchecked(route.derived_id, &route.derived_params, order)
            .map_err(|e| e.to_string())?;
        scaled_expansion(gf_of(&derived)?, order)?
    };
    let relation = format!("d^{} {} -> {}", route.m, route.base_id, route.derived_id);
    Ok(compare_polys(&relation, order, |n| {
        let lhs = base_expansion[n + route.m]
            .derivative(route.m)
            .shift(&route.x_shift)
            .scale(&route.scale);
        (lhs, derived_expansion[n].clone())
    }))
}

/// `S_{2k} = R_{2k} = 0` when both `A` and `R` are even.
fn parity_check(gf: &GfInstance) -> Result<Result<(), Mismatch>, String> {
    let c = compute_s_r(&gf.data.a, &gf.data.r).map_err(|e| e.to_string())?;
    for k in (0..c.s.len()).step_by(2) {
        if !c.s[k].is_zero() {
            return Ok(Err(Mismatch::new(k, "S_even", 0, &c.s[k])));
        }
        if !c.r[k].is_zero() {
            return Ok(Err(Mismatch::new(k, "R_even", 0, &c.r[k])));
        }
    }
    Ok(Ok(()))
}

fn gf_checks(inst: &Instance, gf: &GfInstance) -> Vec<(&'static str, Outcome)> {
    let n = inst.order;
    let mut checks = Vec::new();
    let expansion = scaled_expansion(gf, n);
    match &expansion {
        Ok(exp) => {
            checks.push((
                "coefficient-match",
                compare_polys("gf", n, |k| {
                    (
                        gf.polys[k].shift(&gf.x_shift).scale(&gf.alpha[k]),
                        exp[k].clone(),
                    )
                })
                .into(),
            ));
            if let Some(cf) = &gf.closed_form {
                checks.push((
                    "closed-form",
                    compare_polys("closed form", n, |k| (cf.coeff(k).clone(), exp[k].clone()))
                        .into(),
                ));
            }
        }
        Err(e) => {
            checks.push(("coefficient-match", Outcome::Error(e.clone())));
            if gf.closed_form.is_some() {
                checks.push(("closed-form", Outcome::Error(e.clone())));
            }
        }
    }
    if gf.data.m == 0 && gf.scale.is_one() {
        let f = &gf.data.f.coeffs()[..=n.min(gf.data.f.order())];
        checks.push((
            "f-consistency",
            compare_scalars("F_n = alpha_n", &gf.alpha, f).into(),
        ));
    }
    if gf.prop_suite && n >= 1 {
        let d = &gf.data;
        checks.push((
            "prop1",
            outcome(verify_prop1(&d.a, &d.r, &d.f, &gf.polys, n)),
        ));
        let table =
            compute_s_r(&d.a, &d.r).and_then(|c| akn_table(&c, &d.f.coeffs()[..=n], &gf.family, n));
        match table {
            Ok(t) => {
                checks.push(("prop2", verify_prop2(&t, &gf.polys, n).into()));
                checks.push(("prop3", outcome(verify_prop3(&t, &gf.family, n))));
                checks.push((
                    "corollaries",
                    outcome(verify_corollaries(&t, &gf.family, n)),
                ));
            }
            Err(e) => {
                for name in ["prop2", "prop3", "corollaries"] {
                    checks.push((name, Outcome::Error(e.to_string())));
                }
            }
        }
        if gf.family.is_symmetric() && is_even(&d.a) && is_even(&d.r) {
            checks.push(("parity", outcome(parity_check(gf))));
        }
    }
    if !gf.routes.is_empty() {
        let own = expansion.unwrap_or_default();
        let mut result = Outcome::Pass;
        for route in &gf.routes {
            let r = if own.is_empty() {
                Outcome::Error("own expansion unavailable".into())
            } else {
                outcome(route_check(route, inst, &own))
            };
            if !matches!(r, Outcome::Pass) {
                result = r;
                break;
            }
        }
        checks.push(("derivative-route", result));
    }
    checks
}

fn scalar_checks(
    inst: &Instance,
    series: &Series<Rational>,
    alpha: &[Rational],
    limit_of: &(&'static str, Params),
) -> Vec<(&'static str, Outcome)> {
    let n = inst.order;
    let coefficient = compare_scalars("series", alpha, &series.coeffs()[..=n]).into();
    let limit = (|| -> Result<Result<(), Mismatch>, String> {
        let other = build_unchecked(limit_of.0, &limit_of.1, n).map_err(|e| e.to_string())?;
        let exp = scaled_expansion(gf_of(&other)?, n)?;
        let leading: Vec<Rational> = (0..=n).map(|k| exp[k].coeff(k)).collect();
        Ok(compare_scalars(
            &format!("leading x-coefficients of {}", limit_of.0),
            &leading,
            series.coeffs(),
        ))
    })();
    vec![
        ("coefficient-match", coefficient),
        ("limit-route", outcome(limit)),
    ]
}

/// `H_{m-1}(x, 1) = sum_{k=1}^m (-1)^(k-1) C(m,k) H~_{k-1}(x) H_{m-k}(x)`.
fn convolution_check(m: usize) -> Outcome {
    let hermite = match Family::Hermite.sequence(m) {
        Ok(h) => h,
        Err(e) => return Outcome::Error(e.to_string()),
    };
    let mut rhs = Poly::zero();
    for k in 1..=m {
        let sign = if (k - 1) % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let term = &hermite_sign_flipped(k - 1) * &hermite[m - k];
        rhs += &term.scale(&(sign * binomial(m, k)));
    }
    let lhs = associated_hermite(m - 1, &Rational::one());
    if lhs == rhs {
        Outcome::Pass
    } else {
        Outcome::Mismatch(Mismatch::new(m, "associated Hermite convolution", lhs, rhs))
    }
}

/// Runs all checks that apply to `inst`.
pub fn verify_instance(inst: &Instance) -> Report {
    let start = Instant::now();
    let raw = match &inst.kind {
        Kind::Gf(gf) => gf_checks(inst, gf),
        Kind::Scalar {
            series,
            alpha,
            limit_of,
        } => scalar_checks(inst, series, alpha, limit_of),
        Kind::Convolution { m } => vec![("convolution", convolution_check(*m))],
    };
    let mut checks = Vec::with_capacity(raw.len());
    let mut first_mismatch = None;
    for (name, result) in raw {
        let (passed, detail) = match result {
            Outcome::Pass => (true, None),
            Outcome::Mismatch(m) => {
                let detail = m.to_string();
                if first_mismatch.is_none() {
                    first_mismatch = Some(MismatchReport {
                        check: name.to_string(),
                        relation: m.relation,
                        n: m.n,
                        expected: m.expected,
                        actual: m.actual,
                    });
                }
                (false, Some(detail))
            }
            Outcome::Error(e) => (false, Some(format!("error: {e}"))),
        };
        checks.push(CheckReport {
            name: name.to_string(),
            passed,
            detail,
        });
    }
    let status = if checks.iter().all(|c| c.passed) {
        Status::Pass
    } else {
        Status::Fail
    };
    Report {
        id: inst.id.to_string(),
        params: inst
            .params
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect(),
        order: inst.order,
        status,
        checks,
        first_mismatch,
        elapsed: start.elapsed(),
    }
}

/// Builds and verifies one `(id, params, order)` job.
pub fn verify_identity(
    id: &str,
    params: &Params,
    order: usize,
    perturbation: Option<&Perturbation>,
) -> Result<Report, RegistryError> {
    let start = Instant::now();
    let mut inst = build(id, params, order)?;
    if let Some(p) = perturbation {
        p.apply(&mut inst)?;
    }
    let mut report = verify_instance(&inst);
    report.elapsed = start.elapsed();
    Ok(report)
}
