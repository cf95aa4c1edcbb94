use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    One,
    Two,
}

impl Dim {
    pub fn count(self) -> usize {
        match self {
            Dim::One => 1,
            Dim::Two => 2,
        }
    }
}

/// Quadrature rule used for every L² norm and inner product on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Quadrature {
    /// Composite trapezoid rule, defined for any interval count.
    #[default]
    Trapezoid,
    /// Composite Simpson rule, requires an even interval count per axis.
    Simpson,
}

impl FromStr for Quadrature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "trapezoid" => Ok(Quadrature::Trapezoid),
            "simpson" => Ok(Quadrature::Simpson),
            other => Err(Error::Config(format!(
                "unknown quadrature '{other}' (expected trapezoid or simpson)"
            ))),
        }
    }
}

impl fmt::Display for Quadrature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quadrature::Trapezoid => "trapezoid",
            Quadrature::Simpson => "simpson",
        })
    }
}

/// Uniform tensor grid on an interval or a rectangle.
///
/// Only interior nodes carry unknowns; boundary values are identically zero.
/// In two dimensions interior nodes are stored with `x` varying fastest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: Dim,
    lower: [f64; 2],
    upper: [f64; 2],
    intervals: [usize; 2],
    quadrature: Quadrature,
}

impl Grid {
    /// Build a grid from per-axis bounds and interval counts.
    pub fn new(dim: Dim, bounds: &[(f64, f64)], intervals: &[usize]) -> Result<Self> {
        let d = dim.count();
        if bounds.len() != d || intervals.len() != d {
            return Err(Error::InvalidGrid(format!(
                "expected {d} axis bounds and interval counts, got {} and {}",
                bounds.len(),
                intervals.len()
            )));
        }
        let mut lower = [0.0; 2];
        let mut upper = [0.0; 2];
        let mut counts = [1usize; 2];
        for axis in 0..d {
            let (a, b) = bounds[axis];
            let n = intervals[axis];
            if !(a.is_finite() && b.is_finite()) || b <= a {
                return Err(Error::InvalidGrid(format!(
                    "axis {axis}: degenerate bounds [{a}, {b}]"
                )));
            }
            if n < 2 {
                return Err(Error::InvalidGrid(format!(
                    "axis {axis}: need at least 2 intervals, got {n}"
                )));
            }
            lower[axis] = a;
            upper[axis] = b;
            counts[axis] = n;
        }
        Ok(Grid {
            dim,
            lower,
            upper,
            intervals: counts,
            quadrature: Quadrature::Trapezoid,
        })
    }

    pub fn line(a: f64, b: f64, n: usize) -> Result<Self> {
        Grid::new(Dim::One, &[(a, b)], &[n])
    }

    /// Square `[a,b]²` with `n` intervals per axis.
    pub fn square(a: f64, b: f64, n: usize) -> Result<Self> {
        Grid::new(Dim::Two, &[(a, b), (a, b)], &[n, n])
    }

    /// Same grid with a different quadrature rule.
    pub fn with_quadrature(mut self, quadrature: Quadrature) -> Result<Self> {
        if quadrature == Quadrature::Simpson {
            for axis in 0..self.dim.count() {
                if self.intervals[axis] % 2 != 0 {
                    return Err(Error::InvalidGrid(format!(
                        "Simpson quadrature needs an even interval count, axis {axis} has {}",
                        self.intervals[axis]
                    )));
                }
            }
        }
        self.quadrature = quadrature;
        Ok(self)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn quadrature(&self) -> Quadrature {
        self.quadrature
    }

    pub fn intervals(&self, axis: usize) -> usize {
        self.intervals[axis]
    }

    pub fn bounds(&self, axis: usize) -> (f64, f64) {
        (self.lower[axis], self.upper[axis])
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        (self.upper[axis] - self.lower[axis]) / self.intervals[axis] as f64
    }

    /// Interior nodes along one axis.
    pub fn interior(&self, axis: usize) -> usize {
        self.intervals[axis] - 1
    }

    pub fn node_count(&self) -> usize {
        match self.dim {
            Dim::One => self.interior(0),
            Dim::Two => self.interior(0) * self.interior(1),
        }
    }

    /// Largest interval count over the axes.
    pub fn max_intervals(&self) -> usize {
        match self.dim {
            Dim::One => self.intervals[0],
            Dim::Two => self.intervals[0].max(self.intervals[1]),
        }
    }

    /// Coordinate of interior node `i` (1-based node index along the axis).
    pub fn coordinate(&self, axis: usize, i: usize) -> f64 {
        self.lower[axis] + i as f64 * self.spacing(axis)
    }

    /// Flat storage index of interior node `(i, j)`, both 1-based.
    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        match self.dim {
            Dim::One => i - 1,
            Dim::Two => (i - 1) + self.interior(0) * (j - 1),
        }
    }

    /// Coordinates of the node stored at flat index `k`.
    pub fn point(&self, k: usize) -> [f64; 2] {
        match self.dim {
            Dim::One => [self.coordinate(0, k + 1), 0.0],
            Dim::Two => {
                let nx = self.interior(0);
                [self.coordinate(0, k % nx + 1), self.coordinate(1, k / nx + 1)]
            }
        }
    }

    /// Quadrature weights for the interior nodes (boundary nodes carry zero data).
    pub fn weights(&self) -> Vec<f64> {
        let axis_weights = |axis: usize| -> Vec<f64> {
            let h = self.spacing(axis);
            (1..self.intervals[axis])
                .map(|i| match self.quadrature {
                    Quadrature::Trapezoid => h,
                    Quadrature::Simpson => {
                        if i % 2 == 1 {
                            4.0 * h / 3.0
                        } else {
                            2.0 * h / 3.0
                        }
                    }
                })
                .collect()
        };
        match self.dim {
            Dim::One => axis_weights(0),
            Dim::Two => {
                let wx = axis_weights(0);
                let wy = axis_weights(1);
                wy.iter()
                    .flat_map(|&b| wx.iter().map(move |&a| a * b))
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_size_for_thousand_intervals() {
        let g = Grid::line(0.0, 2.0, 1000).unwrap();
        assert!((g.spacing(0) - 0.002).abs() < 1e-15);
        assert_eq!(g.node_count(), 999);
    }

    #[test]
    fn smallest_grid_has_one_midpoint() {
        let g = Grid::line(0.0, 1.0, 2).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.point(0)[0], 0.5);
    }

    #[test]
    fn square_node_count() {
        let g = Grid::square(0.0, 2.0, 60).unwrap();
        assert_eq!(g.node_count(), 59 * 59);
        let k = g.index(3, 5);
        let p = g.point(k);
        assert!((p[0] - 3.0 * 2.0 / 60.0).abs() < 1e-14);
        assert!((p[1] - 5.0 * 2.0 / 60.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::line(0.0, 1.0, 1).is_err());
        assert!(Grid::line(1.0, 1.0, 4).is_err());
        assert!(Grid::line(0.0, f64::NAN, 4).is_err());
        assert!(Grid::new(Dim::Two, &[(0.0, 1.0)], &[4]).is_err());
    }

    #[test]
    fn simpson_needs_even_intervals() {
        assert!(Grid::line(0.0, 1.0, 5)
            .unwrap()
            .with_quadrature(Quadrature::Simpson)
            .is_err());
        let g = Grid::line(0.0, 1.0, 4)
            .unwrap()
            .with_quadrature(Quadrature::Simpson)
            .unwrap();
        let w = g.weights();
        assert_eq!(w.len(), 3);
        assert!((w[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((w[1] - 1.0 / 6.0).abs() < 1e-15);
    }
}
