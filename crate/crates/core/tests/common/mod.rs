//! Dense oracles assembled from scratch, independent of the library's own
//! dense helpers.
#![allow(dead_code)]

use mitlar::discrete::Dim;
use mitlar::{Field, Grid};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 1D `−Δʰ` with zero Dirichlet data: `tridiag(−1, 2, −1)/h²`.
pub fn neg_laplacian_1d(n: usize, h: f64) -> DMatrix<f64> {
    let m = n - 1;
    DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            2.0 / (h * h)
        } else if i.abs_diff(j) == 1 {
            -1.0 / (h * h)
        } else {
            0.0
        }
    })
}

/// `−Δʰ` for a 1D or square 2D grid, rows ordered with `x` fastest.
pub fn neg_laplacian(grid: &Grid) -> DMatrix<f64> {
    let t = neg_laplacian_1d(grid.intervals(0), grid.spacing(0));
    match grid.dim() {
        Dim::One => t,
        Dim::Two => {
            let ty = neg_laplacian_1d(grid.intervals(1), grid.spacing(1));
            let ix = DMatrix::<f64>::identity(t.nrows(), t.nrows());
            let iy = DMatrix::<f64>::identity(ty.nrows(), ty.nrows());
            iy.kronecker(&t) + ty.kronecker(&ix)
        }
    }
}

pub fn inverse(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eye = DMatrix::identity(m.nrows(), m.ncols());
    m.clone().lu().solve(&eye).expect("singular matrix in oracle")
}

pub struct Oracle {
    pub lap: DMatrix<f64>,
    pub a: DMatrix<f64>,
    pub g: DMatrix<f64>,
    pub eye: DMatrix<f64>,
}

impl Oracle {
    pub fn new(grid: &Grid, delta: f64) -> Self {
        let lap = neg_laplacian(grid);
        let eye = DMatrix::identity(lap.nrows(), lap.ncols());
        let a = &eye + &lap * (delta * delta);
        let g = inverse(&a);
        Oracle { lap, a, g, eye }
    }

    /// `D_α = [(1−α)G + αI]⁻¹`
    pub fn d_alpha(&self, alpha: f64) -> DMatrix<f64> {
        inverse(&(&self.g * (1.0 - alpha) + &self.eye * alpha))
    }

    /// `D_{α,J} = D_α Σ_{i≤J} (α D_α (I − G))^i`
    pub fn mitlar_operator(&self, alpha: f64, updates: usize) -> DMatrix<f64> {
        let d = self.d_alpha(alpha);
        let step = &d * (&self.eye - &self.g) * alpha;
        let mut term = self.eye.clone();
        let mut sum = self.eye.clone();
        for _ in 0..updates {
            term = &step * term;
            sum += &term;
        }
        d * sum
    }

    /// Normal-equation recurrence `(G+αI)(u_j − u_{j−1}) = ū − G u_{j−1}`, `u_{−1} = 0`.
    pub fn itl_iterates(&self, u_bar: &DVector<f64>, alpha: f64, updates: usize) -> Vec<DVector<f64>> {
        let lu = (&self.g + &self.eye * alpha).lu();
        let mut u = lu.solve(u_bar).unwrap();
        let mut out = vec![u.clone()];
        for _ in 0..updates {
            let r = u_bar - &self.g * &u;
            u += lu.solve(&r).unwrap();
            out.push(u.clone());
        }
        out
    }

    /// `(αδ²)^{J+1} (D_α G)^{J+1} (−Δʰ)^{J+1} u`, with the commuting factors
    /// interleaved as `(αδ² D_α G (−Δʰ))^{J+1} u` so intermediate vectors stay
    /// bounded.
    pub fn error_equation(&self, u: &DVector<f64>, delta: f64, alpha: f64, updates: usize) -> DVector<f64> {
        let dg = self.d_alpha(alpha) * &self.g;
        let mut v = u.clone();
        for _ in 0..=updates {
            v = &dg * (&self.lap * v) * (alpha * delta * delta);
        }
        v
    }
}

pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    m.clone().singular_values().max()
}

pub fn to_vector(f: &Field) -> DVector<f64> {
    DVector::from_column_slice(f.values())
}

/// `‖a − b‖ / ‖b‖` in the Euclidean norm.
pub fn rel_diff(a: &Field, b: &DVector<f64>) -> f64 {
    (to_vector(a) - b).norm() / b.norm()
}

/// Uniform `[−1, 1]` values at every interior node.
pub fn random_field(grid: &Grid, seed: u64) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..grid.node_count()).map(|_| rng.random_range(-1.0..1.0)).collect();
    Field::from_values(grid, values).unwrap()
}

/// Random combination of the first `modes` sine modes on `[0,1]`.
pub fn band_limited(grid: &Grid, modes: usize, seed: u64) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coef: Vec<f64> = (0..modes).map(|_| rng.random_range(-1.0..1.0)).collect();
    let pi = std::f64::consts::PI;
    Field::sample(grid, |p| {
        coef.iter()
            .enumerate()
            .map(|(k, c)| c * ((k + 1) as f64 * pi * p[0]).sin())
            .sum()
    })
}
