use std::io::Write;
use std::ops::{Add, Mul, Neg, Sub};

use super::grid::{Dim, Grid};
use crate::error::{Error, Result};

/// Real values at the interior nodes of a [`Grid`]; boundary values are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<f64>,
}

impl Field {
    pub fn zeros(grid: &Grid) -> Self {
        Field {
            grid: *grid,
            values: vec![0.0; grid.node_count()],
        }
    }

    pub fn from_values(grid: &Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(Error::InvalidParameter(format!(
                "field has {} values, grid has {} interior nodes",
                values.len(),
                grid.node_count()
            )));
        }
        Ok(Field {
            grid: *grid,
            values,
        })
    }

    /// Evaluate `f` at every interior node. `f` receives `[x, y]`; `y` is zero in 1D.
    pub fn sample(grid: &Grid, f: impl Fn([f64; 2]) -> f64) -> Self {
        let values = (0..grid.node_count()).map(|k| f(grid.point(k))).collect();
        Field {
            grid: *grid,
            values,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub(crate) fn check_grid(&self, other: &Field) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    pub fn scale(&self, s: f64) -> Field {
        self.map(|v| s * v)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Field {
        Field {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// `self + s·other`
    pub fn axpy(&self, s: f64, other: &Field) -> Result<Field> {
        self.check_grid(other)?;
        Ok(Field {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + s * b)
                .collect(),
        })
    }

    /// Quadrature-weighted L² inner product.
    pub fn inner_product(&self, other: &Field) -> Result<f64> {
        self.check_grid(other)?;
        Ok(weighted_dot(&self.grid, &self.values, &other.values))
    }

    /// Quadrature-weighted L² norm.
    pub fn l2_norm(&self) -> f64 {
        weighted_dot(&self.grid, &self.values, &self.values)
            .max(0.0)
            .sqrt()
    }

    /// H¹ seminorm from forward differences of the zero-extended field,
    /// including the segments that touch the boundary.
    pub fn h1_seminorm(&self) -> f64 {
        let g = &self.grid;
        let v = &self.values;
        match g.dim() {
            Dim::One => {
                let n = g.intervals(0);
                let h = g.spacing(0);
                let at = |i: usize| if i == 0 || i == n { 0.0 } else { v[i - 1] };
                let sum: f64 = (0..n).map(|i| (at(i + 1) - at(i)).powi(2)).sum();
                (sum / h).sqrt()
            }
            Dim::Two => {
                let (nx, ny) = (g.intervals(0), g.intervals(1));
                let (hx, hy) = (g.spacing(0), g.spacing(1));
                let at = |i: usize, j: usize| {
                    if i == 0 || i == nx || j == 0 || j == ny {
                        0.0
                    } else {
                        v[g.index(i, j)]
                    }
                };
                let mut sx = 0.0;
                for j in 1..ny {
                    for i in 0..nx {
                        sx += (at(i + 1, j) - at(i, j)).powi(2);
                    }
                }
                let mut sy = 0.0;
                for j in 0..ny {
                    for i in 1..nx {
                        sy += (at(i, j + 1) - at(i, j)).powi(2);
                    }
                }
                (sx * hy / hx + sy * hx / hy).sqrt()
            }
        }
    }

    /// Write the field as CSV: `index,x,value` in 1D, `i,j,x,y,value` in 2D.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let g = &self.grid;
        match g.dim() {
            Dim::One => {
                w.write_record(["index", "x", "value"])?;
                for (k, v) in self.values.iter().enumerate() {
                    let p = g.point(k);
                    w.write_record(&[(k + 1).to_string(), p[0].to_string(), v.to_string()])?;
                }
            }
            Dim::Two => {
                w.write_record(["i", "j", "x", "y", "value"])?;
                let nx = g.interior(0);
                for (k, v) in self.values.iter().enumerate() {
                    let p = g.point(k);
                    w.write_record(&[
                        (k % nx + 1).to_string(),
                        (k / nx + 1).to_string(),
                        p[0].to_string(),
                        p[1].to_string(),
                        v.to_string(),
                    ])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn weighted_dot(grid: &Grid, a: &[f64], b: &[f64]) -> f64 {
    let w = grid.weights();
    a.iter()
        .zip(b)
        .zip(&w)
        .map(|((x, y), w)| w * x * y)
        .sum()
}

fn zip_with(a: &Field, b: &Field, f: impl Fn(f64, f64) -> f64) -> Field {
    assert_eq!(a.grid, b.grid, "field arithmetic across different grids");
    Field {
        grid: a.grid,
        values: a
            .values
            .iter()
            .zip(&b.values)
            .map(|(&x, &y)| f(x, y))
            .collect(),
    }
}

// Operator impls panic on grid mismatch; use `axpy` for a checked variant.
impl Add for &Field {
    type Output = Field;
    fn add(self, rhs: &Field) -> Field {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Field {
    type Output = Field;
    fn sub(self, rhs: &Field) -> Field {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul<&Field> for f64 {
    type Output = Field;
    fn mul(self, rhs: &Field) -> Field {
        rhs.scale(self)
    }
}

impl Neg for &Field {
    type Output = Field;
    fn neg(self) -> Field {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::Quadrature;
    use std::f64::consts::PI;

    #[test]
    fn sample_direct_evaluation() {
        let g = Grid::line(0.0, 2.0, 4).unwrap();
        let f = Field::sample(&g, |p| (PI * p[0]).sin());
        let expect = [1.0, 0.0, -1.0];
        for (a, b) in f.values().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        let z = Field::sample(&g, |_| 0.0);
        assert_eq!(z, Field::zeros(&g));
    }

    #[test]
    fn l2_norm_of_sine_is_one() {
        // ∫₀² sin²(πx) dx = 1
        let g = Grid::line(0.0, 2.0, 1000).unwrap();
        let f = Field::sample(&g, |p| (PI * p[0]).sin());
        assert!((f.l2_norm() - 1.0).abs() < 1e-5);
        let gs = g.with_quadrature(Quadrature::Simpson).unwrap();
        let fs = Field::sample(&gs, |p| (PI * p[0]).sin());
        assert!((fs.l2_norm() - 1.0).abs() < 1e-5);
        assert!((f.inner_product(&f).unwrap() - f.l2_norm().powi(2)).abs() < 1e-14);
    }

    #[test]
    fn zero_field_norms() {
        let g = Grid::square(0.0, 1.0, 5).unwrap();
        let z = Field::zeros(&g);
        assert_eq!(z.l2_norm(), 0.0);
        assert_eq!(z.h1_seminorm(), 0.0);
    }

    #[test]
    fn h1_of_sine_mode() {
        // |sin(πx)|₁² on [0,1] = π²/2
        let g = Grid::line(0.0, 1.0, 2000).unwrap();
        let f = Field::sample(&g, |p| (PI * p[0]).sin());
        assert!((f.h1_seminorm() - (PI * PI / 2.0).sqrt()).abs() < 1e-5);

        // |sin(πx)sin(πy)|₁² on [0,1]² = 2·π²/4
        let g = Grid::square(0.0, 1.0, 400).unwrap();
        let f = Field::sample(&g, |p| (PI * p[0]).sin() * (PI * p[1]).sin());
        assert!((f.h1_seminorm() - (PI * PI / 2.0).sqrt()).abs() < 1e-4);
    }

    #[test]
    fn grid_mismatch_is_reported() {
        let a = Field::zeros(&Grid::line(0.0, 1.0, 4).unwrap());
        let b = Field::zeros(&Grid::line(0.0, 1.0, 5).unwrap());
        assert!(matches!(a.inner_product(&b), Err(Error::GridMismatch)));
        assert!(Field::from_values(a.grid(), vec![1.0]).is_err());
    }

    #[test]
    fn csv_layout() {
        let g = Grid::square(0.0, 1.0, 3).unwrap();
        let f = Field::sample(&g, |p| p[0] + 10.0 * p[1]);
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "i,j,x,y,value");
        assert_eq!(lines.len(), 5);
        assert!(lines[2].starts_with("2,1,"));
    }
}
