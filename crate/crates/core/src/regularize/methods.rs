use super::{check_alpha, IterateTrace};
use crate::discrete::{solve_shifted, Field, HelmholtzFilter};
use crate::error::Result;

/// `(G + αI)u₀ = ū`, solved as `((1+α)I + αδ²(−Δʰ))u₀ = Aū`.
pub fn deconvolve_tl(filter: &HelmholtzFilter, u_bar: &Field, alpha: f64) -> Result<Field> {
    check_alpha(alpha, None)?;
    let a_ubar = filter.apply_a(u_bar)?;
    lavrentiev_step(filter, alpha, &a_ubar)
}

/// Iterated TL: `(G + αI)(u_j − u_{j−1}) = ū − G u_{j−1}`, i.e.
/// `(I + αA)(u_j − u_{j−1}) = Aū − u_{j−1}`.
pub fn deconvolve_itl(
    filter: &HelmholtzFilter,
    u_bar: &Field,
    alpha: f64,
    updates: usize,
) -> Result<IterateTrace> {
    check_alpha(alpha, None)?;
    let a_ubar = filter.apply_a(u_bar)?;
    iterate(&a_ubar, updates, |rhs| lavrentiev_step(filter, alpha, rhs))
}

/// Mitlar: `[(1−α)G + αI]u₀ = ū` followed by
/// `[(1−α)G + αI](u_j − u_{j−1}) = ū − G u_{j−1}`.
///
/// Multiplying by `A` turns `(1−α)G + αI` into `I + αδ²(−Δʰ)`, so each step
/// is one shifted solve with `θ = αδ²` against `Aū − u_{j−1}`.
pub fn deconvolve_mitlar(
    filter: &HelmholtzFilter,
    u_bar: &Field,
    alpha: f64,
    updates: usize,
) -> Result<IterateTrace> {
    check_alpha(alpha, Some(1.0))?;
    let a_ubar = filter.apply_a(u_bar)?;
    let theta = alpha * filter.delta_sq();
    iterate(&a_ubar, updates, |rhs| solve_shifted(filter.grid(), theta, rhs))
}

/// Mitlar with zero updates.
pub fn deconvolve_mtl(filter: &HelmholtzFilter, u_bar: &Field, alpha: f64) -> Result<Field> {
    deconvolve_mitlar(filter, u_bar, alpha, 0).map(|t| t.into_iterates().remove(0))
}

/// Solve `(I + αA)x = rhs` as `(I + αδ²/(1+α)(−Δʰ))x = rhs/(1+α)`.
fn lavrentiev_step(filter: &HelmholtzFilter, alpha: f64, rhs: &Field) -> Result<Field> {
    let s = 1.0 + alpha;
    solve_shifted(filter.grid(), alpha * filter.delta_sq() / s, &rhs.scale(1.0 / s))
}

/// Shared residual-correction loop: `u₀ = S(Aū)`, `u_j = u_{j−1} + S(Aū − u_{j−1})`.
fn iterate(
    a_ubar: &Field,
    updates: usize,
    solve: impl Fn(&Field) -> Result<Field>,
) -> Result<IterateTrace> {
    let mut trace = IterateTrace::start(solve(a_ubar)?);
    for _ in 0..updates {
        let prev = trace.last();
        let correction = solve(&(a_ubar - prev))?;
        let next = &correction + prev;
        trace.push(next);
    }
    Ok(trace)
}
