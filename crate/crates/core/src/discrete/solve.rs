use super::field::Field;
use super::grid::{Dim, Grid};
use super::stencil::apply_neg_laplacian;
use crate::error::{Error, Result};

/// Relative residual target for the 2D conjugate gradient path.
pub const CG_RELATIVE_TOLERANCE: f64 = 1e-12;

/// Iteration cap for conjugate gradient: `20·(n+1)` with `n` the largest
/// interval count of the grid.
pub fn cg_iteration_cap(grid: &Grid) -> usize {
    20 * (grid.max_intervals() + 1)
}

/// Solve `(I + θ(−Δʰ)) x = rhs`.
///
/// This is the one linear kernel in the crate: `θ = δ²` applies the filter,
/// `θ = αδ²` gives the modified Lavrentiev system. In 1D the tridiagonal
/// system is eliminated directly; in 2D the SPD system is solved with
/// unpreconditioned conjugate gradient.
pub fn solve_shifted(grid: &Grid, theta: f64, rhs: &Field) -> Result<Field> {
    if !(theta.is_finite() && theta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "shift θ must be finite and non-negative, got {theta}"
        )));
    }
    if rhs.grid() != grid {
        return Err(Error::GridMismatch);
    }
    if theta == 0.0 {
        return Ok(rhs.clone());
    }
    let values = match grid.dim() {
        Dim::One => tridiagonal(grid, theta, rhs.values()),
        Dim::Two => conjugate_gradient(grid, theta, rhs.values())?,
    };
    Field::from_values(grid, values)
}

/// Thomas elimination for the constant-coefficient tridiagonal system
/// `diag = 1 + 2θ/h²`, `off = −θ/h²`.
fn tridiagonal(grid: &Grid, theta: f64, rhs: &[f64]) -> Vec<f64> {
    let m = rhs.len();
    let c = theta / grid.spacing(0).powi(2);
    let diag = 1.0 + 2.0 * c;
    let off = -c;

    let mut upper = vec![0.0; m];
    let mut x = vec![0.0; m];
    let mut pivot = diag;
    upper[0] = off / pivot;
    x[0] = rhs[0] / pivot;
    for i in 1..m {
        pivot = diag - off * upper[i - 1];
        upper[i] = off / pivot;
        x[i] = (rhs[i] - off * x[i - 1]) / pivot;
    }
    for i in (0..m.saturating_sub(1)).rev() {
        x[i] -= upper[i] * x[i + 1];
    }
    x
}

fn apply_shifted(grid: &Grid, theta: f64, v: &[f64], out: &mut [f64]) {
    apply_neg_laplacian(grid, v, out);
    for (o, &vi) in out.iter_mut().zip(v) {
        *o = vi + theta * *o;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn conjugate_gradient(grid: &Grid, theta: f64, rhs: &[f64]) -> Result<Vec<f64>> {
    let m = rhs.len();
    let rhs_norm = dot(rhs, rhs).sqrt();
    if rhs_norm == 0.0 {
        return Ok(vec![0.0; m]);
    }
    let target = CG_RELATIVE_TOLERANCE * rhs_norm;
    let cap = cg_iteration_cap(grid);

    let mut x = vec![0.0; m];
    let mut r = rhs.to_vec();
    let mut p = r.clone();
    let mut ap = vec![0.0; m];
    let mut rr = dot(&r, &r);

    for _ in 0..cap {
        if rr.sqrt() <= target {
            break;
        }
        apply_shifted(grid, theta, &p, &mut ap);
        let step = rr / dot(&p, &ap);
        for i in 0..m {
            x[i] += step * p[i];
            r[i] -= step * ap[i];
        }
        let rr_next = dot(&r, &r);
        let beta = rr_next / rr;
        rr = rr_next;
        for i in 0..m {
            p[i] = r[i] + beta * p[i];
        }
    }

    // Recursive residuals drift; report the true one.
    apply_shifted(grid, theta, &x, &mut ap);
    let true_rr: f64 = rhs
        .iter()
        .zip(&ap)
        .map(|(b, ax)| (b - ax).powi(2))
        .sum();
    let residual = true_rr.sqrt() / rhs_norm;
    // Round-off floor of the true residual sits a little above the recursive one.
    if residual > 10.0 * CG_RELATIVE_TOLERANCE {
        return Err(Error::NotConverged {
            iterations: cap,
            residual,
        });
    }
    Ok(x)
}
