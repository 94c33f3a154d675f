//! The catalog of generating-function identities, the verifier that checks
//! one `(identity, parameters, order)` job, and the batch driver.

mod batch;
mod catalog;
mod kit;
mod verify;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::arith::Rational;

pub use batch::{parse_config, parse_point, run_all, BatchConfig, BatchOutput, Job, Summary};
pub use catalog::{build, default_grid, GfInstance, Instance, Kind, Route};
pub use verify::{
    verify_identity, verify_instance, CheckReport, MismatchReport, Perturbation, Report, Status,
    Target,
};

/// Named rational parameters of an identity, e.g. `{rho: 1/2, alpha1: 3}`.
pub type Params = BTreeMap<String, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("invalid parameters for {id}: {reason}")]
    InvalidParameters { id: String, reason: String },
    #[error("config error: {0}")]
    Config(String),
}

impl RegistryError {
    pub(crate) fn invalid(id: &str, reason: impl Into<String>) -> Self {
        RegistryError::InvalidParameters {
            id: id.to_string(),
            reason: reason.into(),
        }
    }
}

/// Static description of a registered identity.
#[derive(Debug, Clone, Serialize)]
pub struct Descriptor {
    pub id: &'static str,
    /// The identity, written out in plain ASCII.
    pub statement: &'static str,
    pub params: &'static [&'static str],
    /// Holds only as an equality of formal power series (divergent series).
    pub formal_only: bool,
    /// Obtained by differentiating another identity `m` times in `x`.
    pub derived: bool,
}

const fn d(
    id: &'static str,
    params: &'static [&'static str],
    statement: &'static str,
) -> Descriptor {
    Descriptor {
        id,
        statement,
        params,
        formal_only: false,
        derived: false,
    }
}

const fn derived(mut desc: Descriptor) -> Descriptor {
    desc.derived = true;
    desc
}

const fn formal(mut desc: Descriptor) -> Descriptor {
    desc.formal_only = true;
    desc
}

pub const CATALOG: &[Descriptor] = &[
    d("Ultra1", &["lambda"], "sum (lambda)_n/n! C_n^(lambda)(x) t^n = (1 - x t + t^2/4)^(-lambda)"),
    d("Ultra2", &["lambda"], "sum (lambda+1)_n/n! C_n^(lambda)(x) t^n = (1 - t^2/4) (1 - x t + t^2/4)^(-lambda-1)"),
    d("T1", &[], "1 + sum_{n>=1} T_n(x) t^n / n = 1 - log(1 - x t + t^2/4)"),
    d("U3", &["a_choice"], "sum U_n(x) t^n = 1/(1 - x t + t^2/4), with R = (1 + t^2/4) A - 1 for A in {1, 1/(1-t), exp(t)}"),
    d("U4", &["rho", "alpha1"], "1 + alpha1 sum_{n>=1} (2 rho)^(n-1) U_n(x) t^n = (1 + (alpha1 - 2 rho)(x t - rho t^2/2)) / (1 - 2 rho x t + rho^2 t^2)"),
    d("U1", &["rho", "alpha1"], "sum 2^n [U_n(rho) + (alpha1/2 - rho) U_{n-1}(rho)] U_n(x) t^n = (4 - t^2 + 2 (alpha1 - 2 rho)(2 x t - rho t^2)) / D(x, t)"),
    d("U2a", &["rho"], "sum 2^n U_n(rho) U_n(x) t^n = (4 - t^2) / D(x, t)"),
    d("U2b", &["rho"], "sum_{n>=1} 2^n U_{n-1}(rho) U_n(x) t^n = 4 (2 x t - rho t^2) / D(x, t)"),
    d("H1", &[], "sum H_n(x) t^n / n! = exp(x t - t^2/4)"),
    d("H2", &["rho", "alpha1"], "sum 2^n/n! [H_n(rho) + (alpha1/2 - rho) H_{n-1}(rho, 1)] H_n(x) t^n = (1-t^2)^(-1/2) (1 + (alpha1/2 - rho) K(w)) exp(rho^2 - w^2), w = (rho - x t)/sqrt(1 - t^2)"),
    d("Mehler", &["rho"], "sum 2^n/n! H_n(rho) H_n(x) t^n = (1-t^2)^(-1/2) exp((2 x rho t - (x^2 + rho^2) t^2)/(1 - t^2))"),
    d("H44", &["rho"], "sum_{n>=1} 2^n/n! H_{n-1}(rho, 1) H_n(x) t^n = (1-t^2)^(-1/2) K(w) exp(rho^2 - w^2)"),
    d("J1", &["alpha"], "sum (alpha+3/2)_n/n! P_n^(alpha, alpha+1)(x) t^n = (1 - t/2) (1 - x t + t^2/4)^(-(alpha+3/2))"),
    d("J2", &[], "sum (3/2)_n/(n+1)! P_n^(0,1)(x) t^n = (1+t/2)^(-2) 2F1(3/2, 1; 2; (x+1) t/(1+t/2)^2)"),
    d("J3", &["alpha", "r0"], "sum (3/2)_n/(c)_n P_n^(alpha, 1-alpha)(x) (2t/r0)^n = (1-t)^(-2) 2F1(3/2, 1; c; 2 t (x - r0)/(r0 (1-t)^2)), c = 3/2 + (2 alpha - 1)/(2 r0)"),
    d("GF3", &[], "sum (1/2)_n/n! P_n^(-1,0)(x) t^n = (1 - t/2) (1 - x t + t^2/4)^(-1/2)"),
    d("L1", &["alpha"], "sum (-1)^n/(alpha+1)_n L_n^(alpha)(x) t^n = (1-t)^(-1) 1F1(1; alpha+1; x t/(t-1))"),
    d("L2", &["alpha"], "sum L_n^(alpha)(x) (-t)^n/n! = (1-t)^(-alpha-1) exp(x t/(t-1))"),
    formal(d("B1", &[], "sum (3/2)_n y_n^(3)(x) (2t)^n = (1-t)^(-2) 2F0(3/2, 1; ; 2 x t/(1-t)^2)")),
    derived(d("U22", &["rho", "alpha1", "m"], "sum (n+m)!/(n! m!) a_{n+m} C_n^(m+1)(x) t^n = c1/(t1 - x t - (t1/4 - rho/2) t^2)^(m+1) + c2/(t2 - x t - (t2/4 - rho/2) t^2)^(m+1), a_n as in U1")),
    derived(d("H30", &["rho", "m"], "sum 2^n/n! H_{n+m}(rho) H_n(x) t^n = (1-t^2)^(-(m+1)/2) exp(rho^2 - w^2) H_m(w)")),
    derived(d("H31", &["rho", "m"], "sum 2^n/n! H_{n+m}(rho) t^n = H_m(rho - t) exp(2 rho t - t^2)")),
    derived(d("H32", &["rho", "m"], "sum 2^n/n! H_{n+m-1}(rho, 1) H_n(x) t^n = (1-t^2)^(-(m+1)/2) [H_{m-1}(w, 1) + K(w) exp(rho^2 - w^2) H_m(w)]")),
    derived(d("H33", &["rho", "m"], "sum 2^n/n! H_{n+m-1}(rho, 1) t^n = H_{m-1}(rho - t, 1) + K(rho - t) exp(2 rho t - t^2) H_m(rho - t)")),
    derived(d("J22", &["m"], "sum (3/2+m)_n (1+m)_n/((2+m)_n n!) P_n^(m, m+1)(x) t^n = (1+t/2)^(-2-2m) 2F1(3/2+m, 1+m; 2+m; (x+1) t/(1+t/2)^2)")),
    derived(d("J333", &["alpha", "beta"], "sum ((a+b+2)/2)_n ((a+b+1)/2)_n 2^n/((a+1)_n n!) P_n^(a,b)(x+1) t^n = (1-t)^(-(a+b+1)) 2F1((a+b+2)/2, (a+b+1)/2; a+1; 2 x t/(1-t)^2)")),
    derived(d("L11", &["alpha", "m"], "sum (1+m)_n (-1)^n/((alpha+m+1)_n n!) L_n^(alpha+m)(x) t^n = (1-t)^(-1-m) 1F1(1+m; alpha+m+1; -x t/(1-t))")),
    formal(derived(d("B11", &["m"], "sum (3/2+m)_n (1+m)_n/n! y_n^(3+2m)(x) (2t)^n = (1-t)^(-2-2m) 2F0(3/2+m, 1+m; ; 2 x t/(1-t)^2)"))),
    d("F415", &["m"], "H_{m-1}(rho, 1) = sum_{k=1}^m (-1)^(k-1) C(m,k) H~_{k-1}(rho) H_{m-k}(rho), H~_n(x) = i^(-n) H_n(i x)"),
];

pub fn registry_list() -> &'static [Descriptor] {
    CATALOG
}

pub fn descriptor(id: &str) -> Result<&'static Descriptor, RegistryError> {
    CATALOG
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| RegistryError::UnknownIdentity(id.to_string()))
}
