use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::config::ExperimentConfig;
use super::noise::{gen_noise, relative_error};
use super::signal::gen_signal;
use crate::discrete::{Field, HelmholtzFilter};
use crate::error::{Error, Result};
use crate::stopping::{run_mitlar_with_stopping, RunMetadata, StopReason, StoppedRun, StoppingOptions};

/// One seeded realization of the noisy stopping experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct StoppingSample {
    pub seed: u64,
    pub run: StoppedRun,
    /// `‖u − u_j‖/‖u‖` for every kept iterate.
    pub rel_errors: Vec<f64>,
}

impl StoppingSample {
    pub fn stop_index(&self) -> usize {
        self.run.stop_index
    }

    /// Index of the kept iterate closest to the true signal.
    pub fn best_index(&self) -> usize {
        self.rel_errors
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map_or(0, |(j, _)| j)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StoppingReport {
    pub n: usize,
    pub samples: Vec<StoppingSample>,
}

impl StoppingReport {
    /// `J* → count` over all samples.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for s in &self.samples {
            *h.entry(s.stop_index()).or_insert(0) += 1;
        }
        h
    }
}

/// Noisy Mitlar runs with `ū = Gu − ε`, sample `r` seeded with `seed + r`.
pub fn run_stopping(cfg: &ExperimentConfig) -> Result<StoppingReport> {
    let grid = cfg.grid(cfg.n)?;
    let delta = cfg.delta.resolve(&grid);
    let alpha = *cfg
        .alpha
        .resolve(&grid)
        .first()
        .ok_or_else(|| Error::Config("stopping needs one alpha value".into()))?;
    let filter = HelmholtzFilter::new(&grid, delta)?;
    let u = gen_signal(&cfg.signal, &grid)?;
    let gu = filter.apply(&u)?;

    let mut samples = Vec::with_capacity(cfg.runs);
    for r in 0..cfg.runs {
        let seed = cfg.seed.wrapping_add(r as u64);
        let noise = gen_noise(seed, cfg.level, &gu)?;
        let u_bar = &gu - &noise.epsilon;
        let opts = StoppingOptions {
            alpha,
            eps0: noise.eps0,
            j_max: cfg.j_max,
            mode: cfg.mode,
        };
        let run = run_mitlar_with_stopping(&filter, &u_bar, opts, Some(&noise.epsilon))
            .map_err(|e| e.in_context(format!("stopping run seed={seed}, alpha={alpha:e}, delta={delta:e}")))?;
        let rel_errors = run
            .trace
            .iterates()
            .iter()
            .map(|v| relative_error(&u, v))
            .collect::<Result<Vec<_>>>()?;
        samples.push(StoppingSample { seed, run, rel_errors });
    }
    Ok(StoppingReport { n: cfg.n, samples })
}

/// `stopping.csv` for the first sample; with several samples also
/// `stopping_montecarlo.csv` (one row per seed) and `stopping_histogram.csv`.
pub fn write_stopping(report: &StoppingReport, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    let Some(first) = report.samples.first() else {
        return Ok(paths);
    };
    let path = out_dir.join("stopping.csv");
    let file = std::io::BufWriter::new(std::fs::File::create(&path)?);
    first.run.write_csv(
        file,
        &RunMetadata {
            n: report.n,
            seed: Some(first.seed),
        },
    )?;
    paths.push(path);

    if report.samples.len() > 1 {
        let path = out_dir.join("stopping_montecarlo.csv");
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(["seed", "J*", "reason", "rel_error_at_stop", "best_j", "rel_error_best"])?;
        for s in &report.samples {
            let best = s.best_index();
            w.write_record(&[
                s.seed.to_string(),
                s.stop_index().to_string(),
                s.run.reason.to_string(),
                format!("{:e}", s.rel_errors[s.stop_index()]),
                best.to_string(),
                format!("{:e}", s.rel_errors[best]),
            ])?;
        }
        w.flush()?;
        paths.push(path);

        let path = out_dir.join("stopping_histogram.csv");
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(["J*", "count"])?;
        for (j, c) in report.histogram() {
            w.write_record(&[j.to_string(), c.to_string()])?;
        }
        w.flush()?;
        paths.push(path);
    }
    Ok(paths)
}

pub fn summarize_stopping(report: &StoppingReport) -> String {
    let mut s = String::new();
    if let Some(first) = report.samples.first() {
        let run = &first.run;
        s.push_str(&format!(
            "alpha={:e} delta={:e} eps0={:e} n={} seed={}\n",
            run.alpha, run.delta, run.eps0, report.n, first.seed
        ));
        s.push_str(&format!("{:>3} {:>14} {:>14} {:>14} {:>9}\n", "j", "update_norm", "energy_noisy", "rel_error", "continue"));
        for (j, err) in first.rel_errors.iter().enumerate() {
            let norm = if j == 0 {
                "-".to_string()
            } else {
                run.candidate_update_norms
                    .get(j - 1)
                    .map_or_else(|| "-".to_string(), |v| format!("{v:.6e}"))
            };
            let energy = run
                .energies
                .as_ref()
                .map_or_else(|| "-".to_string(), |e| format!("{:.6e}", e[j]));
            let flag = if j == 0 {
                "-".to_string()
            } else {
                run.continue_flags.get(j - 1).map_or_else(|| "-".to_string(), |f| f.to_string())
            };
            let mark = if j == run.stop_index { "  <- J*" } else { "" };
            s.push_str(&format!("{j:>3} {norm:>14} {energy:>14} {err:>14.6e} {flag:>9}{mark}\n"));
        }
        s.push_str(&format!("J* = {} ({})\n", run.stop_index, run.reason));
    }
    if report.samples.len() > 1 {
        s.push_str(&format!("J* histogram over {} seeds:\n", report.samples.len()));
        for (j, c) in report.histogram() {
            s.push_str(&format!("  J*={j:>3}: {c}\n"));
        }
    }
    s
}

/// True when every sample stopped on the criterion (rather than the budget).
pub fn all_fired(report: &StoppingReport) -> bool {
    report.samples.iter().all(|s| s.run.reason == StopReason::Criterion)
}

/// Convenience for callers that need the noisy data of one sample.
pub fn noisy_data(cfg: &ExperimentConfig, seed: u64) -> Result<(HelmholtzFilter, Field, Field, Field)> {
    let grid = cfg.grid(cfg.n)?;
    let filter = HelmholtzFilter::new(&grid, cfg.delta.resolve(&grid))?;
    let u = gen_signal(&cfg.signal, &grid)?;
    let gu = filter.apply(&u)?;
    let noise = gen_noise(seed, cfg.level, &gu)?;
    let u_bar = &gu - &noise.epsilon;
    Ok((filter, u, u_bar, noise.epsilon))
}
