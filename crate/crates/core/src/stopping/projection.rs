use crate::discrete::{Dim, Field};
use crate::error::{Error, Result};

/// Linear idempotent map on fields.
pub trait Projection {
    fn project(&self, field: &Field) -> Field;
}

impl<F: Fn(&Field) -> Field> Projection for F {
    fn project(&self, field: &Field) -> Field {
        self(field)
    }
}

/// Orthogonal projection onto the discrete sine modes `sin(kπ(x−a)/(b−a))`
/// with `k ≤ modes` (per axis in 2D).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SineModeProjection {
    modes: usize,
}

impl SineModeProjection {
    pub fn new(modes: usize) -> Self {
        SineModeProjection { modes }
    }
}

/// Project each line of `values` (stride `stride`, `count` lines of length
/// `n-1`) onto its first `modes` discrete sine vectors.
fn project_lines(values: &mut [f64], n: usize, modes: usize, line_start: impl Fn(usize) -> usize, stride: usize, count: usize) {
    let m = n - 1;
    let modes = modes.min(m);
    let basis: Vec<Vec<f64>> = (1..=modes)
        .map(|k| {
            (1..=m)
                .map(|i| (std::f64::consts::PI * (k * i) as f64 / n as f64).sin())
                .collect()
        })
        .collect();
    let scale = 2.0 / n as f64;
    let mut line = vec![0.0; m];
    for l in 0..count {
        let start = line_start(l);
        for (i, slot) in line.iter_mut().enumerate() {
            *slot = values[start + i * stride];
        }
        let mut out = vec![0.0; m];
        for b in &basis {
            let c = scale * b.iter().zip(&line).map(|(x, y)| x * y).sum::<f64>();
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        for (i, v) in out.into_iter().enumerate() {
            values[start + i * stride] = v;
        }
    }
}

impl Projection for SineModeProjection {
    fn project(&self, field: &Field) -> Field {
        let g = *field.grid();
        let mut out = field.clone();
        let v = out.values_mut();
        match g.dim() {
            Dim::One => project_lines(v, g.intervals(0), self.modes, |_| 0, 1, 1),
            Dim::Two => {
                let (mx, my) = (g.interior(0), g.interior(1));
                project_lines(v, g.intervals(0), self.modes, |j| j * mx, 1, my);
                project_lines(v, g.intervals(1), self.modes, |i| i, mx, mx);
            }
        }
        out
    }
}

/// `ũ = u_prev + P(u_curr − u_prev)`, after checking `P(P d) = P d` on the
/// update `d` to 1e−10 relative to `‖d‖`.
pub fn projected_update(u_prev: &Field, u_curr: &Field, projection: &(impl Projection + ?Sized)) -> Result<Field> {
    let d = u_curr.axpy(-1.0, u_prev)?;
    let pd = projection.project(&d);
    if pd.grid() != d.grid() {
        return Err(Error::GridMismatch);
    }
    let ppd = projection.project(&pd);
    let defect = (&ppd - &pd).l2_norm();
    if defect > 1e-10 * d.l2_norm() {
        return Err(Error::NotIdempotent { defect });
    }
    u_prev.axpy(1.0, &pd)
}
