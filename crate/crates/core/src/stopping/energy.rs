use crate::discrete::{Field, HelmholtzFilter};
use crate::error::Result;

/// `E₀(v) = ½(Gv, v) − (ū, v)`. Costs one filter solve.
pub fn energy_noise_free(filter: &HelmholtzFilter, v: &Field, u_bar: &Field) -> Result<f64> {
    let gv = filter.apply(v)?;
    Ok(0.5 * gv.inner_product(v)? - u_bar.inner_product(v)?)
}

/// `E_ε(v) = ½(Gv, v) − (ū + ε, v)`.
pub fn energy_noisy(filter: &HelmholtzFilter, v: &Field, u_bar: &Field, epsilon: &Field) -> Result<f64> {
    let data = u_bar.axpy(1.0, epsilon)?;
    energy_noise_free(filter, v, &data)
}

/// `([(½ − α)G + αI]d, d)` with `d = u_next − u_j`; equals `E₀(u_j) − E₀(u_next)`
/// along Mitlar iterates.
pub fn descent_gap(filter: &HelmholtzFilter, u_j: &Field, u_next: &Field, alpha: f64) -> Result<f64> {
    let d = u_next.axpy(-1.0, u_j)?;
    let gd = filter.apply(&d)?;
    Ok((0.5 - alpha) * gd.inner_product(&d)? + alpha * d.inner_product(&d)?)
}
