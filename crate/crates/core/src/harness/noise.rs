use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::discrete::Field;
use crate::error::{Error, Result};
use crate::stopping::NoiseModel;

/// Standard-normal draws per node, rescaled so `‖ε‖ = level·‖reference‖`.
///
/// The stream is ChaCha8 seeded from `seed`, so the field is reproducible
/// across platforms and crate versions.
pub fn gen_noise(seed: u64, level: f64, reference: &Field) -> Result<NoiseModel> {
    if !(level.is_finite() && level >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "noise level must be non-negative, got {level}"
        )));
    }
    let grid = reference.grid();
    let target = level * reference.l2_norm();
    if target == 0.0 {
        return Ok(NoiseModel {
            level,
            ..NoiseModel::zero(grid)
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<f64> = (0..grid.node_count()).map(|_| StandardNormal.sample(&mut rng)).collect();
    let raw = Field::from_values(grid, draws)?;
    let epsilon = raw.scale(target / raw.l2_norm());
    let eps0 = epsilon.l2_norm();
    Ok(NoiseModel { epsilon, eps0, level })
}

/// `‖u − ũ‖ / ‖u‖`.
pub fn relative_error(u_true: &Field, u_approx: &Field) -> Result<f64> {
    let denom = u_true.l2_norm();
    if denom == 0.0 {
        return Err(Error::InvalidParameter("relative error of a zero signal".into()));
    }
    Ok(u_true.axpy(-1.0, u_approx)?.l2_norm() / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::Grid;

    fn reference() -> Field {
        let g = Grid::line(0.0, 2.0, 300).unwrap();
        Field::sample(&g, |p| (std::f64::consts::PI * p[0]).sin())
    }

    #[test]
    fn exact_norm_and_bound() {
        let r = reference();
        let noise = gen_noise(42, 0.01, &r).unwrap();
        let want = 0.01 * r.l2_norm();
        assert!((noise.epsilon.l2_norm() - want).abs() <= 1e-12 * want);
        assert_eq!(noise.eps0, noise.epsilon.l2_norm());
    }

    #[test]
    fn zero_level() {
        let noise = gen_noise(1, 0.0, &reference()).unwrap();
        assert_eq!(noise.eps0, 0.0);
        assert_eq!(noise.epsilon.l2_norm(), 0.0);
        assert!(gen_noise(1, -0.1, &reference()).is_err());
    }

    #[test]
    fn deterministic_in_seed() {
        let r = reference();
        assert_eq!(gen_noise(9, 0.05, &r).unwrap(), gen_noise(9, 0.05, &r).unwrap());
        assert_ne!(gen_noise(9, 0.05, &r).unwrap(), gen_noise(10, 0.05, &r).unwrap());
    }

    #[test]
    fn relative_error_cases() {
        let u = reference();
        assert_eq!(relative_error(&u, &u).unwrap(), 0.0);
        assert!((relative_error(&u, &Field::zeros(u.grid())).unwrap() - 1.0).abs() < 1e-15);
        assert!((relative_error(&u, &u.scale(2.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!(relative_error(&Field::zeros(u.grid()), &u).is_err());
    }
}
