use super::field::Field;
use super::grid::Grid;
use super::solve::solve_shifted;
use super::stencil::neg_laplacian;
use crate::error::{Error, Result};

/// Discrete Helmholtz differential filter of radius `δ`.
///
/// `A = I + δ²(−Δʰ)` is applied directly; the filter `G = A⁻¹` is applied by
/// solving with `A` and is never formed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelmholtzFilter {
    grid: Grid,
    delta: f64,
}

impl HelmholtzFilter {
    pub fn new(grid: &Grid, delta: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "filter radius must be positive, got {delta}"
            )));
        }
        Ok(HelmholtzFilter { grid: *grid, delta })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn delta_sq(&self) -> f64 {
        self.delta * self.delta
    }

    fn check(&self, field: &Field) -> Result<()> {
        if field.grid() == &self.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// `A f = f + δ²(−Δʰ f)`.
    pub fn apply_a(&self, field: &Field) -> Result<Field> {
        self.check(field)?;
        field.axpy(self.delta_sq(), &neg_laplacian(field))
    }

    /// `G f`, the solution of `A x = f`.
    pub fn apply(&self, field: &Field) -> Result<Field> {
        self.check(field)?;
        solve_shifted(&self.grid, self.delta_sq(), field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn mode(n: usize, k: f64) -> (Grid, Field, f64) {
        let g = Grid::line(0.0, 1.0, n).unwrap();
        let h = g.spacing(0);
        let lam = 4.0 / (h * h) * (k * PI * h / 2.0).sin().powi(2);
        (g, Field::sample(&g, |p| (k * PI * p[0]).sin()), lam)
    }

    #[test]
    fn eigenmode_gains() {
        let (g, f, lam) = mode(50, 4.0);
        let filter = HelmholtzFilter::new(&g, 0.05).unwrap();
        let d2 = filter.delta_sq();
        let af = filter.apply_a(&f).unwrap();
        let gf = filter.apply(&f).unwrap();
        for ((a, b), x) in af.values().iter().zip(gf.values()).zip(f.values()) {
            assert!((a - (1.0 + d2 * lam) * x).abs() < 1e-12);
            assert!((b - x / (1.0 + d2 * lam)).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_and_round_trip() {
        let g = Grid::line(0.0, 2.0, 200).unwrap();
        let filter = HelmholtzFilter::new(&g, 0.03).unwrap();
        let z = Field::zeros(&g);
        assert_eq!(filter.apply(&z).unwrap(), z);
        assert_eq!(filter.apply_a(&z).unwrap(), z);
        let f = Field::sample(&g, |p| (PI * p[0]).sin() + 0.3 * (17.0 * PI * p[0]).sin() + p[0] * (2.0 - p[0]));
        let back = filter.apply(&filter.apply_a(&f).unwrap()).unwrap();
        assert!((&back - &f).l2_norm() <= 1e-10 * f.l2_norm());

        let g2 = Grid::square(0.0, 1.0, 24).unwrap();
        let filter2 = HelmholtzFilter::new(&g2, 0.1).unwrap();
        let f2 = Field::sample(&g2, |p| p[0] * p[1] * (1.0 - p[0]) * (1.0 - p[1]));
        let back2 = filter2.apply(&filter2.apply_a(&f2).unwrap()).unwrap();
        assert!((&back2 - &f2).l2_norm() <= 1e-10 * f2.l2_norm());
    }

    #[test]
    fn tiny_radius_is_identity() {
        let (g, f, _) = mode(20, 2.0);
        let filter = HelmholtzFilter::new(&g, 1e-12).unwrap();
        let af = filter.apply_a(&f).unwrap();
        assert!((&af - &f).l2_norm() < 1e-18);
    }

    #[test]
    fn rejects_bad_radius_and_foreign_fields() {
        let (g, f, _) = mode(10, 1.0);
        assert!(HelmholtzFilter::new(&g, 0.0).is_err());
        let other = HelmholtzFilter::new(&Grid::line(0.0, 1.0, 11).unwrap(), 0.1).unwrap();
        assert!(matches!(other.apply(&f), Err(Error::GridMismatch)));
        assert!(matches!(other.apply_a(&f), Err(Error::GridMismatch)));
    }
}
