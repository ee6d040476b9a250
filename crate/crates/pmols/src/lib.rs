//! Sparse-recovery toolkit built around pseudo-inverse preconditioning (PIP)
//! and the preconditioned multiple orthogonal least squares (PmOLS) solver.
//!
//! The crate bundles:
//!
//! - [`matrix`]: dense linear algebra primitives (SVD, subset least squares,
//!   orthogonal projections, mutual coherence);
//! - [`precondition`]: the PIP and modified-PIP preconditioners plus their
//!   theory-side quantities (probability bound, Parseval and idempotence
//!   checks);
//! - [`recovery`]: the mOLS / PmOLS / OMP greedy solvers and the
//!   deterministic and probabilistic success-condition calculators;
//! - [`imaging`]: a synthetic ghost-imaging pipeline (non-negative lifting,
//!   bucket sampling, correlation reconstruction, PSNR/MSE, PGM I/O);
//! - [`experiments`]: a seeded Monte Carlo harness emitting CSV;
//! - [`checks`]: numerical verifiers for the supporting lemmas on small
//!   instances with brute-force oracles.
//!
//! Monte Carlo trials run data-parallel through [`parallel::map_trials`]
//! when the `parallel` feature (default) is enabled; disabling the feature
//! produces a fully sequential build with identical outputs.

pub mod checks;
pub mod error;
pub mod experiments;
pub mod imaging;
pub mod io;
pub mod matrix;
pub mod parallel;
pub mod precondition;
pub mod recovery;

pub use error::{Error, Result};
