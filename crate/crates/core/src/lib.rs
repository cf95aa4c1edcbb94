//! Deconvolution of the discrete Helmholtz differential filter.
//!
//! The crate is organised in four layers:
//!
//! * [`discrete`]: uniform Dirichlet grids, interior-node fields, the
//!   finite-difference Laplacian, the Helmholtz operator `A = I + δ²(−Δʰ)`
//!   and its inverse, the filter `G = A⁻¹`.
//! * [`regularize`]: Tikhonov-Lavrentiev (TL), iterated TL (ITL), modified TL
//!   (MTL) and the modified iterated TL method (Mitlar), together with the
//!   analytic error bounds and dense-matrix oracles.
//! * [`stopping`]: energy functionals, the descent gap, the noise-aware
//!   stopping rule and the projected update.
//! * [`harness`]: signal presets, seeded noise, the comparison, convergence
//!   rate and stopping experiments, and the command line front end.

pub mod discrete;
pub mod error;
pub mod harness;
pub mod regularize;
pub mod stopping;

pub use discrete::{Field, Grid, HelmholtzFilter, Quadrature};
pub use error::{Error, Result};
pub use regularize::{IterateTrace, Method, RegConfig};
pub use stopping::{StopReason, StoppedRun, StoppingMode};
