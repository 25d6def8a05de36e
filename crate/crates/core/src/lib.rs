//! Simulation, closed-form solution, forbidden-set membership and
//! asymptotic classification for the rational difference equation
//!
//! ```text
//! x_{n+1} = x_n x_{n-k} / (a x_{n-k+1} + x_n x_{n-k+1} x_{n-k})
//! ```
//!
//! Every computation is generic over [`Scalar`], with an exact rational
//! backend for identities and membership and an `f64` backend for long
//! orbits.

pub mod classify;
pub mod cli;
pub mod demo;
pub mod dynamics;
mod error;
pub mod forbidden;
pub mod plot;
pub mod sampling;
pub mod scalar;

pub use classify::{
    classify_analytic, detect_period, ratio_diagnostics, ratio_limit, settle_index, Classification,
    DetectedPeriod,
};
pub use dynamics::{
    closed_form, geometric_sum, iterate_direct, kernel, linear_v, product_pair, ClosedForm, InitWindow,
    KernelValue, Orbit, Params, SingularCause, Terminator,
};
pub use error::{Error, Result};
pub use forbidden::{enumerate_roots, membership, ForbiddenRoot, ForbiddenVerdict, RootSet};
pub use scalar::{Backend, Rational, Scalar};
