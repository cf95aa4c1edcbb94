use crate::discrete::{neg_laplacian, Field, HelmholtzFilter};
use crate::error::{Error, Result};

/// Noise-free Mitlar error bound `(αδ²)^{J+1} ‖(−Δʰ)^{J+1} u‖`.
///
/// The stencil is composed `J+1` times, so for rough `u` the bound grows like
/// `h^{−2(J+1)}`; it is only informative for band-limited signals.
pub fn mitlar_noise_free_bound(filter: &HelmholtzFilter, u: &Field, alpha: f64, updates: usize) -> f64 {
    let power = updates as i32 + 1;
    let factor = (alpha * filter.delta_sq()).powi(power);
    if factor == 0.0 {
        return 0.0;
    }
    let mut lu = u.clone();
    for _ in 0..power {
        lu = neg_laplacian(&lu);
    }
    factor * lu.l2_norm()
}

/// Noisy bound: the noise-free bound plus `(J+1)ε₀/α`.
pub fn mitlar_noisy_bound(
    filter: &HelmholtzFilter,
    u: &Field,
    alpha: f64,
    updates: usize,
    eps0: f64,
) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "noisy bound needs α > 0, got {alpha}"
        )));
    }
    if !(eps0.is_finite() && eps0 >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "noise bound must be non-negative, got {eps0}"
        )));
    }
    Ok(mitlar_noise_free_bound(filter, u, alpha, updates) + (updates as f64 + 1.0) * eps0 / alpha)
}
