use std::path::{Path, PathBuf};

use super::config::ExperimentConfig;
use super::noise::relative_error;
use super::signal::gen_signal;
use crate::discrete::HelmholtzFilter;
use crate::error::Result;
use crate::regularize::{deconvolve_itl, deconvolve_mitlar, deconvolve_mtl, deconvolve_tl, Method};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub method: Method,
    pub alpha: f64,
    /// Update count; zero for the one-shot methods.
    pub updates: usize,
    pub rel_l2_error: f64,
}

/// Noise-free comparison of the configured methods over the α list and J list.
///
/// Rows are ordered by method, then α, then J. TL and MTL contribute one row
/// per α with `updates = 0`.
pub fn run_comparison(cfg: &ExperimentConfig) -> Result<Vec<ComparisonRow>> {
    let grid = cfg.grid(cfg.n)?;
    let delta = cfg.delta.resolve(&grid);
    let filter = HelmholtzFilter::new(&grid, delta)?;
    let u = gen_signal(&cfg.signal, &grid)?;
    let u_bar = filter.apply(&u)?;
    let j_max = cfg.updates.iter().copied().max().unwrap_or(0);

    let mut rows = Vec::new();
    for &method in &cfg.methods {
        for alpha in cfg.alpha.resolve(&grid) {
            let context = || format!("{method} with alpha={alpha:e}, delta={delta:e}, n={}", cfg.n);
            let mut push = |updates, approx: &_| -> Result<()> {
                rows.push(ComparisonRow {
                    method,
                    alpha,
                    updates,
                    rel_l2_error: relative_error(&u, approx)?,
                });
                Ok(())
            };
            match method {
                Method::Tl => push(0, &deconvolve_tl(&filter, &u_bar, alpha).map_err(|e| e.in_context(context()))?)?,
                Method::Mtl => push(0, &deconvolve_mtl(&filter, &u_bar, alpha).map_err(|e| e.in_context(context()))?)?,
                Method::Itl | Method::Mitlar => {
                    let trace = if method == Method::Itl {
                        deconvolve_itl(&filter, &u_bar, alpha, j_max)
                    } else {
                        deconvolve_mitlar(&filter, &u_bar, alpha, j_max)
                    }
                    .map_err(|e| e.in_context(context()))?;
                    for &j in &cfg.updates {
                        push(j, &trace.iterates()[j])?;
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// One `compare_J{J}.csv` per configured J. Each file holds the iterative
/// methods at that J plus every one-shot row.
pub fn write_comparison(rows: &[ComparisonRow], updates: &[usize], out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for &j in updates {
        let path = out_dir.join(format!("compare_J{j}.csv"));
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(["method", "alpha", "J", "rel_l2_error"])?;
        for row in rows
            .iter()
            .filter(|r| !r.method.is_iterative() || r.updates == j)
        {
            w.write_record(&[
                row.method.name().to_string(),
                format!("{:e}", row.alpha),
                row.updates.to_string(),
                format!("{:e}", row.rel_l2_error),
            ])?;
        }
        w.flush()?;
        paths.push(path);
    }
    Ok(paths)
}

/// Text table: for each J, the smallest error of each method over the α list.
pub fn summarize_comparison(rows: &[ComparisonRow], updates: &[usize]) -> String {
    let mut methods: Vec<Method> = Vec::new();
    for r in rows {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
    }
    let mut s = format!("{:<4} {:<8} {:>14} {:>14}\n", "J", "method", "best_alpha", "min_rel_err");
    for &j in updates {
        for &m in &methods {
            let best = rows
                .iter()
                .filter(|r| r.method == m && (!m.is_iterative() || r.updates == j))
                .min_by(|a, b| a.rel_l2_error.total_cmp(&b.rel_l2_error));
            if let Some(r) = best {
                s.push_str(&format!(
                    "{:<4} {:<8} {:>14.6e} {:>14.6e}\n",
                    j,
                    m.name(),
                    r.alpha,
                    r.rel_l2_error
                ));
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{AlphaRule, Experiment};

    fn small_config() -> ExperimentConfig {
        let mut cfg = ExperimentConfig::preset(Experiment::Compare, crate::harness::signal::Preset::Compare1d);
        cfg.n = 400;
        cfg.alpha = AlphaRule::List(vec![1.0, 0.1, 0.01]);
        cfg
    }

    #[test]
    fn row_layout_and_alpha_one_identity() {
        let cfg = small_config();
        let rows = run_comparison(&cfg).unwrap();
        // TL, MTL: 3 rows each; ITL, Mitlar: 3 α × 3 J.
        assert_eq!(rows.len(), 3 + 3 + 9 + 9);

        let grid = cfg.grid(cfg.n).unwrap();
        let filter = HelmholtzFilter::new(&grid, 0.01).unwrap();
        let u = gen_signal(&cfg.signal, &grid).unwrap();
        let gu = filter.apply(&u).unwrap();
        let mtl_alpha_one = rows
            .iter()
            .find(|r| r.method == Method::Mtl && r.alpha == 1.0)
            .unwrap();
        let want = relative_error(&u, &gu).unwrap();
        assert!((mtl_alpha_one.rel_l2_error - want).abs() < 1e-12);
    }

    #[test]
    fn mitlar_not_worse_than_itl() {
        let rows = run_comparison(&small_config()).unwrap();
        for r in rows.iter().filter(|r| r.method == Method::Mitlar) {
            let itl = rows
                .iter()
                .find(|o| o.method == Method::Itl && o.alpha == r.alpha && o.updates == r.updates)
                .unwrap();
            assert!(r.rel_l2_error <= itl.rel_l2_error);
        }
    }

    #[test]
    fn csv_files_per_j() {
        let cfg = small_config();
        let rows = run_comparison(&cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let paths = write_comparison(&rows, &cfg.updates, dir.path()).unwrap();
        assert_eq!(paths.len(), 3);
        let text = std::fs::read_to_string(&paths[1]).unwrap();
        assert!(text.starts_with("method,alpha,J,rel_l2_error\n"));
        assert_eq!(text.lines().count(), 1 + 3 + 3 + 3 + 3);
        assert!(summarize_comparison(&rows, &cfg.updates).contains("MITLAR"));
    }
}
