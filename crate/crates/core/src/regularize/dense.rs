//! Dense-matrix evaluation of the regularization operators for small grids.

use nalgebra::{DMatrix, DVector};

use crate::discrete::{dense_matrices, Field, Grid};
use crate::error::{Error, Result};

pub const DENSE_REG_NODE_CAP: usize = 1024;

/// `D_α = [(1−α)G + αI]⁻¹` and derived operators.
#[derive(Debug, Clone)]
pub struct DenseRegOperators {
    pub g: DMatrix<f64>,
    pub d_alpha: DMatrix<f64>,
    pub d_alpha_g: DMatrix<f64>,
    pub i_minus_d_alpha_g: DMatrix<f64>,
    /// `D_{α,J} = D_α Σ_{i=0}^{J} (α D_α (I − G))^i`.
    pub d_alpha_j: DMatrix<f64>,
}

pub fn dense_reg_operators(grid: &Grid, delta: f64, alpha: f64, updates: usize) -> Result<DenseRegOperators> {
    let m = grid.node_count();
    if m > DENSE_REG_NODE_CAP {
        return Err(Error::SizeCap {
            nodes: m,
            cap: DENSE_REG_NODE_CAP,
        });
    }
    if !(alpha.is_finite() && alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "dense operators need 0 < α ≤ 1, got {alpha}"
        )));
    }
    let g = dense_matrices(grid, delta)?.g;
    let eye = DMatrix::<f64>::identity(m, m);
    let shifted = &g * (1.0 - alpha) + &eye * alpha;
    let d_alpha = shifted
        .lu()
        .solve(&eye)
        .ok_or_else(|| Error::InvalidParameter("(1−α)G + αI is singular".into()))?;
    let d_alpha_g = &d_alpha * &g;
    let i_minus_d_alpha_g = &eye - &d_alpha_g;

    let step = &d_alpha * (&eye - &g) * alpha;
    let mut power = eye.clone();
    let mut series = eye.clone();
    for _ in 0..updates {
        power = &step * power;
        series += &power;
    }
    let d_alpha_j = &d_alpha * series;

    Ok(DenseRegOperators {
        g,
        d_alpha,
        d_alpha_g,
        i_minus_d_alpha_g,
        d_alpha_j,
    })
}

/// Right side of the noise-free error equation,
/// `(αδ²)^{J+1} (D_α G)^{J+1} (−Δʰ)^{J+1} u`, evaluated with dense matrices.
pub fn dense_error_equation(u: &Field, delta: f64, alpha: f64, updates: usize) -> Result<DVector<f64>> {
    let grid = u.grid();
    let ops = dense_reg_operators(grid, delta, alpha, 0)?;
    let lap = dense_matrices(grid, delta)?.neg_laplacian;
    let mut v = DVector::from_column_slice(u.values());
    for _ in 0..=updates {
        v = &lap * v;
    }
    for _ in 0..=updates {
        v = &ops.d_alpha_g * v;
    }
    Ok(v * (alpha * delta * delta).powi(updates as i32 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_one_is_identity() {
        let g = Grid::line(0.0, 1.0, 12).unwrap();
        let ops = dense_reg_operators(&g, 0.1, 1.0, 2).unwrap();
        let eye = DMatrix::<f64>::identity(11, 11);
        assert!((&ops.d_alpha - &eye).abs().max() < 1e-12);
    }

    #[test]
    fn spectral_radii_bounded() {
        let g = Grid::line(0.0, 1.0, 32).unwrap();
        for alpha in [0.01, 0.1, 0.5, 1.0] {
            let ops = dense_reg_operators(&g, 0.1, alpha, 1).unwrap();
            let r1 = ops.d_alpha_g.clone().symmetric_eigenvalues().amax();
            let r2 = ops.i_minus_d_alpha_g.clone().symmetric_eigenvalues().amax();
            assert!(r1 <= 1.0 + 1e-12, "α={alpha}: ρ(DG)={r1}");
            assert!(r2 <= 1.0 + 1e-12, "α={alpha}: ρ(I−DG)={r2}");
        }
    }

    #[test]
    fn rejects_large_grids_and_bad_alpha() {
        let g = Grid::square(0.0, 1.0, 40).unwrap();
        assert!(matches!(dense_reg_operators(&g, 0.1, 0.5, 0), Err(Error::SizeCap { .. })));
        let g = Grid::line(0.0, 1.0, 8).unwrap();
        assert!(dense_reg_operators(&g, 0.1, 0.0, 0).is_err());
    }
}
