//! Uniform grids with homogeneous Dirichlet boundary and the discrete
//! Helmholtz filter built on them.

mod dense;
mod field;
mod filter;
mod grid;
mod solve;
mod stencil;

pub use dense::{dense_matrices, DenseOperators, DENSE_NODE_CAP};
pub use field::Field;
pub use filter::HelmholtzFilter;
pub use grid::{Dim, Grid, Quadrature};
pub use solve::{cg_iteration_cap, solve_shifted, CG_RELATIVE_TOLERANCE};
pub use stencil::neg_laplacian;
