//! Loop-equation solver, moment extraction, exact oracles and a Monte Carlo
//! verifier for the circular β ensemble.

pub mod ensembles;
pub mod error;
pub mod loops;
pub mod mc;
pub mod moments;
pub mod nseries;

pub use error::CoreError;
pub use loops::{CoeffKey, Domain, DomainConfig, ResolventTable};
pub use nseries::{pade_is_exact, pade_j_jplus1, InvNSeries, PadeApprox};
