//! The Tikhonov-Lavrentiev family of deconvolution methods for the
//! Helmholtz filter.
//!
//! Every occurrence of `G` in the defining equations is eliminated by
//! multiplying through by `A`, so each step costs one SPD shifted solve:
//!
//! | method | step operator                  | shifted form                     |
//! |--------|--------------------------------|----------------------------------|
//! | TL/ITL | `G + αI`                       | `(1+α)I + αδ²(−Δʰ)`              |
//! | MTL/Mitlar | `(1−α)G + αI`              | `I + αδ²(−Δʰ)`                   |

mod bounds;
mod dense;
mod methods;

use std::fmt;
use std::str::FromStr;

pub use bounds::{mitlar_noise_free_bound, mitlar_noisy_bound};
pub use dense::{dense_error_equation, dense_reg_operators, DenseRegOperators, DENSE_REG_NODE_CAP};
pub use methods::{deconvolve_itl, deconvolve_mitlar, deconvolve_mtl, deconvolve_tl};

use crate::discrete::{Field, HelmholtzFilter};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Tikhonov-Lavrentiev: `(G + αI)u₀ = ū`.
    Tl,
    /// Iterated Tikhonov-Lavrentiev.
    Itl,
    /// Modified Tikhonov-Lavrentiev, i.e. Mitlar with no updates.
    Mtl,
    /// Modified iterated Tikhonov-Lavrentiev.
    Mitlar,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Tl, Method::Itl, Method::Mtl, Method::Mitlar];

    /// Whether the method performs update steps after `u₀`.
    pub fn is_iterative(self) -> bool {
        matches!(self, Method::Itl | Method::Mitlar)
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Tl => "TL",
            Method::Itl => "ITL",
            Method::Mtl => "MTL",
            Method::Mitlar => "MITLAR",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tl" => Ok(Method::Tl),
            "itl" => Ok(Method::Itl),
            "mtl" => Ok(Method::Mtl),
            "mitlar" => Ok(Method::Mitlar),
            other => Err(Error::Config(format!(
                "unknown method '{other}' (expected tl, itl, mtl or mitlar)"
            ))),
        }
    }
}

/// A method together with its regularization parameter and update count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegConfig {
    method: Method,
    alpha: f64,
    updates: usize,
}

impl RegConfig {
    /// `0 < α ≤ 1`. TL and MTL ignore `updates` and always run zero updates.
    pub fn new(method: Method, alpha: f64, updates: usize) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "regularization parameter must lie in (0, 1], got {alpha}"
            )));
        }
        let updates = if method.is_iterative() { updates } else { 0 };
        Ok(RegConfig {
            method,
            alpha,
            updates,
        })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn updates(&self) -> usize {
        self.updates
    }

    /// Energy descent along the iterates is only guaranteed for `α ≤ ½`.
    pub fn descent_guaranteed(&self) -> bool {
        self.alpha <= 0.5
    }

    pub fn run(&self, filter: &HelmholtzFilter, u_bar: &Field) -> Result<IterateTrace> {
        match self.method {
            Method::Tl => deconvolve_tl(filter, u_bar, self.alpha).map(IterateTrace::single),
            Method::Itl => deconvolve_itl(filter, u_bar, self.alpha, self.updates),
            Method::Mtl => deconvolve_mtl(filter, u_bar, self.alpha).map(IterateTrace::single),
            Method::Mitlar => deconvolve_mitlar(filter, u_bar, self.alpha, self.updates),
        }
    }
}

/// Iterates `u₀ … u_J` of a regularization run.
///
/// `update_norms[j-1]` holds `‖u_j − u_{j−1}‖` for `j = 1..=J`.
#[derive(Debug, Clone, PartialEq)]
pub struct IterateTrace {
    iterates: Vec<Field>,
    update_norms: Vec<f64>,
}

impl IterateTrace {
    pub(crate) fn start(u0: Field) -> Self {
        IterateTrace {
            iterates: vec![u0],
            update_norms: Vec::new(),
        }
    }

    fn single(u0: Field) -> Self {
        IterateTrace::start(u0)
    }

    pub(crate) fn push(&mut self, next: Field) {
        let d = (&next - self.last()).l2_norm();
        self.update_norms.push(d);
        self.iterates.push(next);
    }

    pub fn iterates(&self) -> &[Field] {
        &self.iterates
    }

    pub fn update_norms(&self) -> &[f64] {
        &self.update_norms
    }

    /// Number of updates performed.
    pub fn updates(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn last(&self) -> &Field {
        self.iterates.last().expect("trace is never empty")
    }

    pub fn into_iterates(self) -> Vec<Field> {
        self.iterates
    }
}

pub(crate) fn check_alpha(alpha: f64, upper: Option<f64>) -> Result<()> {
    let ok = alpha.is_finite() && alpha >= 0.0 && upper.is_none_or(|u| alpha <= u);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(match upper {
            Some(u) => format!("regularization parameter must lie in [0, {u}], got {alpha}"),
            None => format!("regularization parameter must be non-negative, got {alpha}"),
        }))
    }
}
