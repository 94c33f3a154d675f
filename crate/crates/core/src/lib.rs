//! Exact verification of generating-function identities for classical
//! orthogonal polynomials.
//!
//! Everything is computed over the rationals: truncated power series
//! ([`fps`]), the polynomial families ([`families`]), the Rainville
//! generating-function machinery ([`rainville`]) and the identity catalog
//! with its verifier ([`registry`]).

pub mod arith;
pub mod families;
pub mod fps;
pub mod rainville;
pub mod registry;

pub use arith::{Poly, Rational};
pub use families::Family;
pub use fps::Series;
pub use rainville::{GfData, Mismatch};
pub use registry::{
    build, registry_list, run_all, verify_identity, BatchConfig, BatchOutput, Descriptor, Params,
    Perturbation, RegistryError, Report, Status,
};
