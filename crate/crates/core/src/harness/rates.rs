use std::path::{Path, PathBuf};

use super::config::ExperimentConfig;
use super::signal::gen_signal;
use crate::discrete::HelmholtzFilter;
use crate::error::{Error, Result};
use crate::regularize::{Method, RegConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRow {
    pub n: usize,
    pub l2_error: f64,
    pub l2_rate: Option<f64>,
    pub h1_error: f64,
    pub h1_rate: Option<f64>,
}

/// Refinement study of one method at one update count.
#[derive(Debug, Clone, PartialEq)]
pub struct RateStudy {
    pub method: Method,
    pub updates: usize,
    pub rows: Vec<RateRow>,
}

impl RateStudy {
    pub fn file_name(&self) -> String {
        format!("rates_{}_J{}.csv", self.method.name().to_ascii_lowercase(), self.updates)
    }
}

/// Observed order between consecutive refinements: `log(e₁/e₂) / log(n₂/n₁)`.
pub fn observed_rates(ns: &[usize], errors: &[f64]) -> Vec<Option<f64>> {
    let mut out = vec![None];
    for k in 1..ns.len().min(errors.len()) {
        let ratio = (ns[k] as f64 / ns[k - 1] as f64).ln();
        out.push(Some((errors[k - 1] / errors[k]).ln() / ratio));
    }
    out.truncate(ns.len().min(errors.len()).max(1));
    out
}

/// (method, J) pairs of a rates run: one-shot methods once, iterative methods
/// once per configured J.
pub fn rate_cases(cfg: &ExperimentConfig) -> Vec<(Method, usize)> {
    let mut cases = Vec::new();
    for &m in &cfg.methods {
        if m.is_iterative() {
            cases.extend(cfg.updates.iter().map(|&j| (m, j)));
        } else {
            cases.push((m, 0));
        }
    }
    cases
}

/// Noise-free refinement study with `δ` and `α` resolved per grid.
pub fn run_rates(cfg: &ExperimentConfig) -> Result<Vec<RateStudy>> {
    let ns = &cfg.refinements;
    if ns.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(Error::Config(format!("refinements must strictly double, got {ns:?}")));
    }
    let cases = rate_cases(cfg);
    let mut l2 = vec![Vec::with_capacity(ns.len()); cases.len()];
    let mut h1 = vec![Vec::with_capacity(ns.len()); cases.len()];

    for &n in ns {
        let grid = cfg.grid(n)?;
        let delta = cfg.delta.resolve(&grid);
        let alphas = cfg.alpha.resolve(&grid);
        let alpha = *alphas
            .first()
            .ok_or_else(|| Error::Config("rates need one alpha value".into()))?;
        let filter = HelmholtzFilter::new(&grid, delta)?;
        let u = gen_signal(&cfg.signal, &grid)?;
        let u_bar = filter.apply(&u).map_err(|e| e.in_context(format!("filter at n={n}")))?;

        for (c, &(method, j)) in cases.iter().enumerate() {
            let approx = RegConfig::new(method, alpha, j)?
                .run(&filter, &u_bar)
                .map_err(|e| e.in_context(format!("{method} J={j} at n={n}, alpha={alpha:e}, delta={delta:e}")))?;
            let err = &u - approx.last();
            l2[c].push(err.l2_norm());
            h1[c].push(err.h1_seminorm());
        }
    }

    Ok(cases
        .iter()
        .enumerate()
        .map(|(c, &(method, updates))| {
            let l2_rates = observed_rates(ns, &l2[c]);
            let h1_rates = observed_rates(ns, &h1[c]);
            let rows = ns
                .iter()
                .enumerate()
                .map(|(k, &n)| RateRow {
                    n,
                    l2_error: l2[c][k],
                    l2_rate: l2_rates[k],
                    h1_error: h1[c][k],
                    h1_rate: h1_rates[k],
                })
                .collect();
            RateStudy { method, updates, rows }
        })
        .collect())
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |r| format!("{r:e}"))
}

pub fn write_rates(studies: &[RateStudy], out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for study in studies {
        let path = out_dir.join(study.file_name());
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(["n", "l2_error", "l2_rate", "h1_error", "h1_rate"])?;
        for r in &study.rows {
            w.write_record(&[
                r.n.to_string(),
                format!("{:e}", r.l2_error),
                opt(r.l2_rate),
                format!("{:e}", r.h1_error),
                opt(r.h1_rate),
            ])?;
        }
        w.flush()?;
        paths.push(path);
    }
    Ok(paths)
}

pub fn summarize_rates(studies: &[RateStudy]) -> String {
    let mut s = format!(
        "{:<8} {:<3} {:>6} {:>14} {:>8} {:>14} {:>8}\n",
        "method", "J", "n", "l2_error", "l2_rate", "h1_error", "h1_rate"
    );
    let rate = |r: Option<f64>| r.map_or_else(|| "-".to_string(), |v| format!("{v:.4}"));
    for study in studies {
        for r in &study.rows {
            s.push_str(&format!(
                "{:<8} {:<3} {:>6} {:>14.6e} {:>8} {:>14.6e} {:>8}\n",
                study.method.name(),
                study.updates,
                r.n,
                r.l2_error,
                rate(r.l2_rate),
                r.h1_error,
                rate(r.h1_rate)
            ));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::Experiment;

    #[test]
    fn synthetic_power_law_recovered() {
        let ns = [10, 20, 40, 80];
        let e: Vec<f64> = ns.iter().map(|&n| 3.0 * (n as f64).powf(-1.5)).collect();
        let r = observed_rates(&ns, &e);
        assert_eq!(r[0], None);
        for v in &r[1..] {
            assert!((v.unwrap() - 1.5).abs() < 1e-12);
        }
        assert_eq!(observed_rates(&[10], &[1.0]), vec![None]);
    }

    #[test]
    fn default_cases() {
        let cfg = ExperimentConfig::from_pairs(Experiment::Rates, &[]).unwrap();
        assert_eq!(
            rate_cases(&cfg),
            vec![(Method::Mitlar, 0), (Method::Mitlar, 1), (Method::Tl, 0), (Method::Itl, 0), (Method::Itl, 1)]
        );
    }

    #[test]
    fn coarse_study_errors_shrink() {
        let pairs = vec![
            ("refinements".to_string(), "16,32,64".to_string()),
            ("signal".to_string(), "1:1:1;0.5:2:3".to_string()),
            ("methods".to_string(), "mitlar".to_string()),
            ("j".to_string(), "1".to_string()),
        ];
        let cfg = ExperimentConfig::from_pairs(Experiment::Rates, &pairs).unwrap();
        let studies = run_rates(&cfg).unwrap();
        assert_eq!(studies.len(), 1);
        let rows = &studies[0].rows;
        assert_eq!(rows.len(), 3);
        assert!(rows[2].l2_error < rows[0].l2_error);
        assert_eq!(studies[0].file_name(), "rates_mitlar_J1.csv");

        let dir = tempfile::tempdir().unwrap();
        let paths = write_rates(&studies, dir.path()).unwrap();
        let text = std::fs::read_to_string(&paths[0]).unwrap();
        assert!(text.lines().nth(1).unwrap().ends_with(','));
    }

    #[test]
    fn non_doubling_rejected() {
        let mut cfg = ExperimentConfig::from_pairs(Experiment::Rates, &[]).unwrap();
        cfg.refinements = vec![60, 100];
        assert!(matches!(run_rates(&cfg), Err(Error::Config(_))));
    }
}
