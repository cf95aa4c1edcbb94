use std::fmt;
use std::str::FromStr;

use crate::discrete::{Dim, Field, Grid};
use crate::error::{Error, Result};

/// Built-in experiment signals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `sin(πx) + sin(200πx)` on `[0,2]`.
    Stopping1d,
    /// `sin(πx) + 0.1 sin(100πx)` on `[0,2]`.
    Compare1d,
    /// `sin(πx)sin(πy) + sin(20πx)sin(20πy)` on `[0,2]²`.
    Rates2d,
}

impl Preset {
    pub fn dim(self) -> Dim {
        match self {
            Preset::Stopping1d | Preset::Compare1d => Dim::One,
            Preset::Rates2d => Dim::Two,
        }
    }

    pub fn terms(self) -> Vec<SineTerm> {
        match self {
            Preset::Stopping1d => vec![SineTerm::line(1.0, 1.0), SineTerm::line(1.0, 200.0)],
            Preset::Compare1d => vec![SineTerm::line(1.0, 1.0), SineTerm::line(0.1, 100.0)],
            Preset::Rates2d => vec![SineTerm::plane(1.0, 1.0, 1.0), SineTerm::plane(1.0, 20.0, 20.0)],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Stopping1d => "stopping1d",
            Preset::Compare1d => "compare1d",
            Preset::Rates2d => "rates2d",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "stopping1d" => Ok(Preset::Stopping1d),
            "compare1d" => Ok(Preset::Compare1d),
            "rates2d" => Ok(Preset::Rates2d),
            other => Err(Error::Config(format!(
                "unknown preset '{other}' (expected stopping1d, compare1d or rates2d)"
            ))),
        }
    }
}

/// `amplitude · Π_d sin(freq_d · π · x_d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineTerm {
    pub amplitude: f64,
    pub freq: [f64; 2],
    pub dim: Dim,
}

impl SineTerm {
    pub fn line(amplitude: f64, freq: f64) -> Self {
        SineTerm {
            amplitude,
            freq: [freq, 0.0],
            dim: Dim::One,
        }
    }

    pub fn plane(amplitude: f64, fx: f64, fy: f64) -> Self {
        SineTerm {
            amplitude,
            freq: [fx, fy],
            dim: Dim::Two,
        }
    }

    fn eval(&self, p: [f64; 2]) -> f64 {
        let pi = std::f64::consts::PI;
        let mut v = self.amplitude * (self.freq[0] * pi * p[0]).sin();
        if self.dim == Dim::Two {
            v *= (self.freq[1] * pi * p[1]).sin();
        }
        v
    }
}

/// A named preset or a custom sum of sines.
#[derive(Debug, Clone, PartialEq)]
pub enum SignalSpec {
    Preset(Preset),
    Custom(Vec<SineTerm>),
}

impl SignalSpec {
    pub fn terms(&self) -> Vec<SineTerm> {
        match self {
            SignalSpec::Preset(p) => p.terms(),
            SignalSpec::Custom(t) => t.clone(),
        }
    }

    /// Parse `amp:f` (1D) or `amp:fx:fy` (2D) terms separated by `;`.
    pub fn parse_custom(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for chunk in s.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let parts = chunk
                .split(':')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Config(format!("bad number '{x}' in signal term '{chunk}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            terms.push(match parts.as_slice() {
                [a, f] => SineTerm::line(*a, *f),
                [a, fx, fy] => SineTerm::plane(*a, *fx, *fy),
                _ => {
                    return Err(Error::Config(format!(
                        "signal term '{chunk}' must be amp:f or amp:fx:fy"
                    )))
                }
            });
        }
        Ok(SignalSpec::Custom(terms))
    }
}

fn vanishes_at(freq: f64, x: f64) -> bool {
    let t = freq * x;
    (t - t.round()).abs() < 1e-9
}

/// Sample the signal at the interior nodes of `grid`.
pub fn gen_signal(spec: &SignalSpec, grid: &Grid) -> Result<Field> {
    let terms = spec.terms();
    for term in &terms {
        if term.dim != grid.dim() {
            return Err(Error::BoundaryIncompatible(format!(
                "term {term:?} does not match a {}-dimensional grid",
                grid.dim().count()
            )));
        }
        for axis in 0..grid.dim().count() {
            let (a, b) = grid.bounds(axis);
            let f = term.freq[axis];
            if !(vanishes_at(f, a) && vanishes_at(f, b)) {
                return Err(Error::BoundaryIncompatible(format!(
                    "sin({f}πx) does not vanish at both ends of [{a}, {b}]"
                )));
            }
        }
    }
    Ok(Field::sample(grid, |p| terms.iter().map(|t| t.eval(p)).sum()))
}
