use std::path::{Path, PathBuf};

use super::config::ExperimentConfig;
use super::signal::gen_signal;
use crate::discrete::{Field, HelmholtzFilter};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct FilterReport {
    pub delta: f64,
    pub filtered: Field,
    /// `‖Aū − u‖/‖u‖`.
    pub roundtrip_residual: f64,
}

/// Filter the configured signal and check that `A` undoes it.
pub fn run_filter(cfg: &ExperimentConfig) -> Result<FilterReport> {
    let grid = cfg.grid(cfg.n)?;
    let delta = cfg.delta.resolve(&grid);
    let filter = HelmholtzFilter::new(&grid, delta)?;
    let u = gen_signal(&cfg.signal, &grid)?;
    let filtered = filter.apply(&u).map_err(|e| e.in_context(format!("filter at n={}, delta={delta:e}", cfg.n)))?;
    let back = filter.apply_a(&filtered)?;
    let scale = u.l2_norm();
    let diff = (&back - &u).l2_norm();
    let roundtrip_residual = if scale > 0.0 { diff / scale } else { diff };
    Ok(FilterReport {
        delta,
        filtered,
        roundtrip_residual,
    })
}

pub fn write_filter(report: &FilterReport, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let path = out_dir.join("filtered.csv");
    report
        .filtered
        .write_csv(std::io::BufWriter::new(std::fs::File::create(&path)?))?;
    Ok(vec![path])
}

pub fn summarize_filter(report: &FilterReport) -> String {
    format!(
        "delta={:e} nodes={} |G u|={:e} roundtrip_residual={:e}\n",
        report.delta,
        report.filtered.len(),
        report.filtered.l2_norm(),
        report.roundtrip_residual
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::Experiment;

    #[test]
    fn roundtrip_is_tight() {
        let cfg = ExperimentConfig::from_pairs(Experiment::Filter, &[]).unwrap();
        let report = run_filter(&cfg).unwrap();
        assert_eq!(report.filtered.len(), 999);
        assert!(report.roundtrip_residual < 1e-10);
        let dir = tempfile::tempdir().unwrap();
        let paths = write_filter(&report, dir.path()).unwrap();
        let text = std::fs::read_to_string(&paths[0]).unwrap();
        assert_eq!(text.lines().count(), 1000);
    }
}
