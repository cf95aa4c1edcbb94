use super::field::Field;
use super::grid::{Dim, Grid};

/// Centered-difference `−Δʰ` with zero Dirichlet ghost values: the 3-point
/// stencil in 1D and the 5-point stencil in 2D.
pub fn neg_laplacian(field: &Field) -> Field {
    let mut out = Field::zeros(field.grid());
    apply_neg_laplacian(field.grid(), field.values(), out.values_mut());
    out
}

/// Slice form used by the solvers: `out = −Δʰ v`.
pub(crate) fn apply_neg_laplacian(grid: &Grid, v: &[f64], out: &mut [f64]) {
    match grid.dim() {
        Dim::One => {
            let m = v.len();
            let inv_h2 = 1.0 / grid.spacing(0).powi(2);
            for i in 0..m {
                let left = if i > 0 { v[i - 1] } else { 0.0 };
                let right = if i + 1 < m { v[i + 1] } else { 0.0 };
                out[i] = (2.0 * v[i] - left - right) * inv_h2;
            }
        }
        Dim::Two => {
            let (mx, my) = (grid.interior(0), grid.interior(1));
            let cx = 1.0 / grid.spacing(0).powi(2);
            let cy = 1.0 / grid.spacing(1).powi(2);
            for j in 0..my {
                let row = j * mx;
                for i in 0..mx {
                    let k = row + i;
                    let c = v[k];
                    let west = if i > 0 { v[k - 1] } else { 0.0 };
                    let east = if i + 1 < mx { v[k + 1] } else { 0.0 };
                    let south = if j > 0 { v[k - mx] } else { 0.0 };
                    let north = if j + 1 < my { v[k + mx] } else { 0.0 };
                    out[k] = (2.0 * c - west - east) * cx + (2.0 * c - south - north) * cy;
                }
            }
        }
    }
}
