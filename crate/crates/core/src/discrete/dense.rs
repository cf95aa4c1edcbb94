//! Explicit dense matrices for small grids, used as test oracles.

use nalgebra::DMatrix;

use super::field::Field;
use super::grid::Grid;
use super::stencil::neg_laplacian;
use crate::error::{Error, Result};

pub const DENSE_NODE_CAP: usize = 4096;

#[derive(Debug, Clone)]
pub struct DenseOperators {
    pub neg_laplacian: DMatrix<f64>,
    pub a: DMatrix<f64>,
    /// Exact inverse of `a`.
    pub g: DMatrix<f64>,
}

/// Assemble `−Δʰ`, `A = I + δ²(−Δʰ)` and `G = A⁻¹` column by column.
pub fn dense_matrices(grid: &Grid, delta: f64) -> Result<DenseOperators> {
    let m = grid.node_count();
    if m > DENSE_NODE_CAP {
        return Err(Error::SizeCap {
            nodes: m,
            cap: DENSE_NODE_CAP,
        });
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "filter radius must be positive, got {delta}"
        )));
    }
    let mut lap = DMatrix::zeros(m, m);
    for col in 0..m {
        let mut e = Field::zeros(grid);
        e.values_mut()[col] = 1.0;
        let le = neg_laplacian(&e);
        for (row, &v) in le.values().iter().enumerate() {
            lap[(row, col)] = v;
        }
    }
    let a = DMatrix::identity(m, m) + &lap * (delta * delta);
    let g = a
        .clone()
        .lu()
        .solve(&DMatrix::identity(m, m))
        .ok_or_else(|| Error::InvalidParameter("Helmholtz matrix is singular".into()))?;
    Ok(DenseOperators {
        neg_laplacian: lap,
        a,
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one() {
        let g = Grid::line(0.0, 1.0, 2).unwrap();
        let d = dense_matrices(&g, 0.1).unwrap();
        let h2 = 0.25;
        assert!((d.neg_laplacian[(0, 0)] - 2.0 / h2).abs() < 1e-14);
        assert!((d.a[(0, 0)] - (1.0 + 2.0 * 0.01 / h2)).abs() < 1e-14);
    }

    #[test]
    fn tridiagonal_pattern() {
        let g = Grid::line(0.0, 1.0, 4).unwrap();
        let d = dense_matrices(&g, 0.1).unwrap();
        let expect = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]) * 16.0;
        assert!((d.neg_laplacian - expect).abs().max() < 1e-12);
    }

    #[test]
    fn inverse_pair() {
        let g = Grid::line(0.0, 1.0, 16).unwrap();
        let d = dense_matrices(&g, 0.2).unwrap();
        let eye = DMatrix::<f64>::identity(15, 15);
        assert!((&d.a * &d.g - eye).abs().max() < 1e-12);
    }

    #[test]
    fn size_cap() {
        let g = Grid::square(0.0, 1.0, 66).unwrap();
        assert!(matches!(dense_matrices(&g, 0.1), Err(Error::SizeCap { .. })));
    }
}
