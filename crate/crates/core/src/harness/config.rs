//! Experiment configuration: flat `key = value` files with `#` comments.
//!
//! Recognised keys:
//!
//! | key          | value                                                      |
//! |--------------|------------------------------------------------------------|
//! | `preset`     | `stopping1d`, `compare1d`, `rates2d` (resets the defaults) |
//! | `signal`     | custom sines `amp:f;amp:f` (1D) or `amp:fx:fy;…` (2D)      |
//! | `domain`     | `a,b` (applied to every axis)                              |
//! | `n`          | interval count per axis                                    |
//! | `refinements`| strictly doubling list, e.g. `60,120,240,480`              |
//! | `delta`      | `0.01`, `6h`, or `0.1*(2pi/n)^0.25`                        |
//! | `alpha`      | `0.1`, `0.1,0.05`, `sweep:1:0.001:25`, `0.1*(2pi/n)^0.5`   |
//! | `j`          | update counts, e.g. `1,2,3`                                |
//! | `j_max`      | stopping-run budget                                        |
//! | `level`      | relative noise level                                       |
//! | `seed`       | base RNG seed                                              |
//! | `runs`       | Monte Carlo repetitions for `stopping`                     |
//! | `mode`       | `halt` or `record_only`                                    |
//! | `methods`    | subset of `tl,itl,mtl,mitlar`                              |
//! | `quadrature` | `trapezoid` or `simpson`                                   |
//! | `out`        | output directory                                           |

use std::path::{Path, PathBuf};

use super::signal::{Preset, SignalSpec};
use crate::discrete::{Dim, Grid, Quadrature};
use crate::error::{Error, Result};
use crate::regularize::Method;
use crate::stopping::StoppingMode;

pub const KEYS: [&str; 17] = [
    "preset",
    "signal",
    "domain",
    "n",
    "refinements",
    "delta",
    "alpha",
    "j",
    "j_max",
    "level",
    "seed",
    "runs",
    "mode",
    "methods",
    "quadrature",
    "out",
    "dim",
];

/// Filter radius as a function of the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaRule {
    Absolute(f64),
    /// `δ = c·h`.
    MultipleOfH(f64),
    /// `δ = c·(2π/n)^p`.
    PowerLaw { coef: f64, exponent: f64 },
}

impl DeltaRule {
    pub fn resolve(&self, grid: &Grid) -> f64 {
        match *self {
            DeltaRule::Absolute(d) => d,
            DeltaRule::MultipleOfH(c) => c * grid.spacing(0),
            DeltaRule::PowerLaw { coef, exponent } => coef * power_base(grid).powf(exponent),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(pl) = parse_power_law(s)? {
            return Ok(DeltaRule::PowerLaw {
                coef: pl.0,
                exponent: pl.1,
            });
        }
        if let Some(c) = s.strip_suffix('h') {
            let c = if c.trim().is_empty() { 1.0 } else { number(c)? };
            return positive("delta", c).map(DeltaRule::MultipleOfH);
        }
        positive("delta", number(s)?).map(DeltaRule::Absolute)
    }
}

/// Regularization parameter(s) as a function of the grid.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaRule {
    List(Vec<f64>),
    /// `points` log-spaced values from `max` down to `min`.
    LogSweep { max: f64, min: f64, points: usize },
    /// `α = c·(2π/n)^p`.
    PowerLaw { coef: f64, exponent: f64 },
}

impl AlphaRule {
    pub fn resolve(&self, grid: &Grid) -> Vec<f64> {
        match self {
            AlphaRule::List(v) => v.clone(),
            AlphaRule::LogSweep { max, min, points } => log_sweep(*max, *min, *points),
            AlphaRule::PowerLaw { coef, exponent } => vec![coef * power_base(grid).powf(*exponent)],
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((coef, exponent)) = parse_power_law(s)? {
            return Ok(AlphaRule::PowerLaw { coef, exponent });
        }
        if let Some(rest) = s.strip_prefix("sweep:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::Config(format!("alpha sweep '{s}' must be sweep:max:min:points")));
            }
            let max = positive("alpha", number(parts[0])?)?;
            let min = positive("alpha", number(parts[1])?)?;
            let points = parts[2]
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad point count in '{s}'")))?;
            if points < 2 || min >= max {
                return Err(Error::Config(format!("alpha sweep '{s}' needs max > min and ≥ 2 points")));
            }
            return Ok(AlphaRule::LogSweep { max, min, points });
        }
        let list = split_list(s)
            .map(|x| number(x).and_then(|v| positive("alpha", v)))
            .collect::<Result<Vec<_>>>()?;
        if list.is_empty() {
            return Err(Error::Config("empty alpha list".into()));
        }
        Ok(AlphaRule::List(list))
    }
}

/// `points` log-spaced values from `max` to `min` inclusive.
pub fn log_sweep(max: f64, min: f64, points: usize) -> Vec<f64> {
    let (lo, hi) = (min.ln(), max.ln());
    (0..points)
        .map(|i| {
            if i == 0 {
                max
            } else if i + 1 == points {
                min
            } else {
                (hi + (lo - hi) * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

fn power_base(grid: &Grid) -> f64 {
    2.0 * std::f64::consts::PI / grid.intervals(0) as f64
}

/// `C*(2pi/n)^E`
fn parse_power_law(s: &str) -> Result<Option<(f64, f64)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(idx) = compact.find("(2pi/n)^") else {
        return Ok(None);
    };
    let coef_part = compact[..idx].trim_end_matches('*');
    let coef = if coef_part.is_empty() { 1.0 } else { number(coef_part)? };
    let exponent = number(&compact[idx + "(2pi/n)^".len()..])?;
    Ok(Some((positive("coefficient", coef)?, exponent)))
}

fn number(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("'{}' is not a number", s.trim())))
}

fn positive(what: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Config(format!("{what} must be positive, got {v}")))
    }
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

fn usize_list(key: &str, s: &str) -> Result<Vec<usize>> {
    let v = split_list(s)
        .map(|x| x.parse::<usize>().map_err(|_| Error::Config(format!("{key}: '{x}' is not a non-negative integer"))))
        .collect::<Result<Vec<_>>>()?;
    if v.is_empty() {
        return Err(Error::Config(format!("{key}: empty list")));
    }
    Ok(v)
}

fn scalar<T: std::str::FromStr>(key: &str, s: &str) -> Result<T> {
    s.trim()
        .parse::<T>()
        .map_err(|_| Error::Config(format!("{key}: cannot parse '{}'", s.trim())))
}

/// Subcommand an experiment configuration belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Compare,
    Rates,
    Stopping,
    Filter,
}

impl Experiment {
    pub fn default_preset(self) -> Preset {
        match self {
            Experiment::Compare => Preset::Compare1d,
            Experiment::Rates => Preset::Rates2d,
            Experiment::Stopping | Experiment::Filter => Preset::Stopping1d,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub signal: SignalSpec,
    pub dim: Dim,
    pub domain: (f64, f64),
    pub n: usize,
    pub refinements: Vec<usize>,
    pub delta: DeltaRule,
    pub alpha: AlphaRule,
    pub updates: Vec<usize>,
    pub j_max: usize,
    pub level: f64,
    pub seed: u64,
    pub runs: usize,
    pub mode: StoppingMode,
    pub methods: Vec<Method>,
    pub quadrature: Quadrature,
    pub out: PathBuf,
}

impl ExperimentConfig {
    /// Defaults for each preset.
    pub fn preset(experiment: Experiment, preset: Preset) -> Self {
        let base = ExperimentConfig {
            signal: SignalSpec::Preset(preset),
            dim: preset.dim(),
            domain: (0.0, 2.0),
            n: 1000,
            refinements: vec![60, 120, 240, 480],
            delta: DeltaRule::MultipleOfH(6.0),
            alpha: AlphaRule::List(vec![0.1]),
            updates: vec![1, 2, 3],
            j_max: 20,
            level: 0.0,
            seed: 1,
            runs: 1,
            mode: StoppingMode::RecordOnly,
            methods: Method::ALL.to_vec(),
            quadrature: Quadrature::Trapezoid,
            out: PathBuf::from("results"),
        };
        let mut cfg = match preset {
            Preset::Stopping1d => ExperimentConfig {
                level: 0.01,
                methods: vec![Method::Mitlar],
                ..base
            },
            Preset::Compare1d => ExperimentConfig {
                delta: DeltaRule::Absolute(0.01),
                alpha: AlphaRule::LogSweep {
                    max: 1.0,
                    min: 1e-3,
                    points: 25,
                },
                ..base
            },
            Preset::Rates2d => ExperimentConfig {
                n: 60,
                delta: DeltaRule::PowerLaw {
                    coef: 0.1,
                    exponent: 0.25,
                },
                alpha: AlphaRule::PowerLaw {
                    coef: 0.1,
                    exponent: 0.5,
                },
                updates: vec![0, 1],
                methods: vec![Method::Mitlar, Method::Tl, Method::Itl],
                ..base
            },
        };
        // A rates run on a 1D preset still studies J = 0 and J = 1.
        if experiment == Experiment::Rates && preset != Preset::Rates2d {
            cfg.updates = vec![0, 1];
        }
        cfg
    }

    /// Build from ordered `(key, value)` pairs; later pairs override earlier
    /// ones and `preset` is applied before everything else.
    pub fn from_pairs(experiment: Experiment, pairs: &[(String, String)]) -> Result<Self> {
        for (k, _) in pairs {
            if !KEYS.contains(&k.as_str()) {
                return Err(Error::Config(format!("unknown key '{k}'")));
            }
        }
        let preset = match pairs.iter().rev().find(|(k, _)| k == "preset") {
            Some((_, v)) => v.parse::<Preset>()?,
            None => experiment.default_preset(),
        };
        let mut cfg = ExperimentConfig::preset(experiment, preset);
        let mut explicit_dim = None;
        for (key, value) in pairs {
            let v = value.as_str();
            match key.as_str() {
                "preset" => {}
                "signal" => cfg.signal = SignalSpec::parse_custom(v)?,
                "dim" => {
                    explicit_dim = Some(match scalar::<usize>(key, v)? {
                        1 => Dim::One,
                        2 => Dim::Two,
                        d => return Err(Error::Config(format!("dim must be 1 or 2, got {d}"))),
                    })
                }
                "domain" => {
                    let parts = split_list(v).map(number).collect::<Result<Vec<_>>>()?;
                    match parts.as_slice() {
                        [a, b] if b > a => cfg.domain = (*a, *b),
                        _ => return Err(Error::Config(format!("domain '{v}' must be a,b with a < b"))),
                    }
                }
                "n" => cfg.n = scalar(key, v)?,
                "refinements" => cfg.refinements = usize_list(key, v)?,
                "delta" => cfg.delta = DeltaRule::parse(v)?,
                "alpha" => cfg.alpha = AlphaRule::parse(v)?,
                "j" => cfg.updates = usize_list(key, v)?,
                "j_max" => cfg.j_max = scalar(key, v)?,
                "level" => cfg.level = scalar(key, v)?,
                "seed" => cfg.seed = scalar(key, v)?,
                "runs" => cfg.runs = scalar(key, v)?,
                "mode" => cfg.mode = v.parse()?,
                "methods" => {
                    cfg.methods = split_list(v).map(str::parse).collect::<Result<Vec<_>>>()?;
                    if cfg.methods.is_empty() {
                        return Err(Error::Config("methods: empty list".into()));
                    }
                }
                "quadrature" => cfg.quadrature = v.parse()?,
                "out" => cfg.out = PathBuf::from(v.trim()),
                _ => unreachable!("keys validated above"),
            }
        }
        cfg.dim = match (&cfg.signal, explicit_dim) {
            (_, Some(d)) => d,
            (SignalSpec::Custom(terms), None) => terms.first().map_or(cfg.dim, |t| t.dim),
            (SignalSpec::Preset(p), None) => p.dim(),
        };
        cfg.validate(experiment)?;
        Ok(cfg)
    }

    fn validate(&self, experiment: Experiment) -> Result<()> {
        if !(self.level.is_finite() && self.level >= 0.0) {
            return Err(Error::Config(format!("level must be non-negative, got {}", self.level)));
        }
        if self.n < 2 {
            return Err(Error::Config(format!("n must be at least 2, got {}", self.n)));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.j_max == 0 {
            return Err(Error::Config("j_max must be at least 1".into()));
        }
        if experiment == Experiment::Rates {
            if self.refinements.iter().any(|&n| n < 2) {
                return Err(Error::Config("refinements must be at least 2".into()));
            }
            if self.refinements.windows(2).any(|w| w[1] != 2 * w[0]) {
                return Err(Error::Config(format!(
                    "refinements must strictly double, got {:?}",
                    self.refinements
                )));
            }
        }
        for alpha in self.alpha.resolve(&self.grid(self.n.max(2))?) {
            if alpha > 1.0 {
                return Err(Error::Config(format!("alpha must lie in (0, 1], got {alpha}")));
            }
        }
        Ok(())
    }

    /// Grid with `n` intervals per axis on the configured domain.
    pub fn grid(&self, n: usize) -> Result<Grid> {
        let (a, b) = self.domain;
        let grid = match self.dim {
            Dim::One => Grid::line(a, b, n)?,
            Dim::Two => Grid::square(a, b, n)?,
        };
        grid.with_quadrature(self.quadrature)
    }
}

/// Parse a flat `key = value` file into ordered pairs.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
        let key = k.trim().to_ascii_lowercase();
        if key.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", lineno + 1)));
        }
        pairs.push((key, v.trim().to_string()));
    }
    Ok(pairs)
}

pub fn read_config_file(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}
