use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use super::compare::{run_comparison, summarize_comparison, write_comparison};
use super::config::{read_config_file, Experiment, ExperimentConfig};
use super::filter_check::{run_filter, summarize_filter, write_filter};
use super::rates::{run_rates, summarize_rates, write_rates};
use super::stopping_demo::{run_stopping, summarize_stopping, write_stopping};
use crate::error::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;

/// Helmholtz-filter deconvolution experiments.
#[derive(Debug, Parser)]
#[command(name = "mitlar", version, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Relative error of TL, ITL, MTL and Mitlar over an α sweep (noise-free).
    Compare(Overrides),
    /// Convergence rates in L² and the H¹ seminorm under grid refinement.
    Rates(Overrides),
    /// Noisy Mitlar run with the stopping rule; Monte Carlo with --runs.
    Stopping(Overrides),
    /// Filter a signal and report the A-roundtrip residual.
    Filter(Overrides),
}

#[derive(Debug, Args)]
struct Overrides {
    /// Flat `key = value` configuration file; flags override its values.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Signal preset: stopping1d, compare1d or rates2d.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Custom signal, e.g. `1:1;0.1:100` or `1:1:1` in 2D.
    #[arg(long)]
    signal: Option<String>,
    /// Domain `a,b`, applied to each axis.
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<String>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// trapezoid or simpson.
    #[arg(long)]
    quadrature: Option<String>,
    /// Value, list, `sweep:max:min:points` or `c*(2pi/n)^p`.
    #[arg(long)]
    alpha: Option<String>,
    /// Value, `c h` as `6h`, or `c*(2pi/n)^p`.
    #[arg(long)]
    delta: Option<String>,
    /// Update counts, comma separated.
    #[arg(long = "j", value_name = "LIST")]
    updates: Option<String>,
    /// Intervals per axis.
    #[arg(long)]
    n: Option<usize>,
    /// Relative noise level.
    #[arg(long)]
    level: Option<f64>,
    /// Monte Carlo repetitions.
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long = "j-max")]
    j_max: Option<usize>,
    /// halt or record_only.
    #[arg(long)]
    mode: Option<String>,
    /// Strictly doubling interval counts, e.g. `60,120,240,480,960`.
    #[arg(long)]
    refinements: Option<String>,
    /// Subset of tl,itl,mtl,mitlar.
    #[arg(long)]
    methods: Option<String>,
}

impl Overrides {
    fn pairs(&self) -> Result<Vec<(String, String)>> {
        let mut pairs = match &self.config {
            Some(path) => read_config_file(path)?,
            None => Vec::new(),
        };
        let mut set = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                pairs.push((key.to_string(), v));
            }
        };
        set("preset", self.preset.clone());
        set("signal", self.signal.clone());
        set("domain", self.domain.clone());
        set("out", self.out.as_ref().map(|p| p.display().to_string()));
        set("seed", self.seed.map(|v| v.to_string()));
        set("quadrature", self.quadrature.clone());
        set("alpha", self.alpha.clone());
        set("delta", self.delta.clone());
        set("j", self.updates.clone());
        set("n", self.n.map(|v| v.to_string()));
        set("level", self.level.map(|v| v.to_string()));
        set("runs", self.runs.map(|v| v.to_string()));
        set("j_max", self.j_max.map(|v| v.to_string()));
        set("mode", self.mode.clone());
        set("refinements", self.refinements.clone());
        set("methods", self.methods.clone());
        Ok(pairs)
    }
}

fn execute(command: &Command) -> Result<String> {
    let (experiment, overrides) = match command {
        Command::Compare(o) => (Experiment::Compare, o),
        Command::Rates(o) => (Experiment::Rates, o),
        Command::Stopping(o) => (Experiment::Stopping, o),
        Command::Filter(o) => (Experiment::Filter, o),
    };
    let pairs = overrides.pairs()?;
    // A preset named on the command line replaces one from the file.
    let cfg = ExperimentConfig::from_pairs(experiment, &pairs)?;
    std::fs::create_dir_all(&cfg.out)?;

    let (title, table, files) = match experiment {
        Experiment::Compare => {
            let rows = run_comparison(&cfg)?;
            let files = write_comparison(&rows, &cfg.updates, &cfg.out)?;
            ("compare", summarize_comparison(&rows, &cfg.updates), files)
        }
        Experiment::Rates => {
            let studies = run_rates(&cfg)?;
            let files = write_rates(&studies, &cfg.out)?;
            ("rates", summarize_rates(&studies), files)
        }
        Experiment::Stopping => {
            if let Some(&alpha) = cfg.alpha.resolve(&cfg.grid(cfg.n)?).first() {
                if alpha > 0.5 {
                    eprintln!("warning: alpha={alpha} > 1/2, accepted steps are not guaranteed to decrease the energy");
                }
            }
            let report = run_stopping(&cfg)?;
            let files = write_stopping(&report, &cfg.out)?;
            ("stopping", summarize_stopping(&report), files)
        }
        Experiment::Filter => {
            let report = run_filter(&cfg)?;
            let files = write_filter(&report, &cfg.out)?;
            ("filter", summarize_filter(&report), files)
        }
    };

    let mut summary = format!("# {title}\n{table}");
    for f in &files {
        summary.push_str(&format!("wrote {}\n", f.display()));
    }
    std::fs::write(cfg.out.join("summary.txt"), &summary)?;
    Ok(summary)
}

/// Parse `argv` (program name first), run the experiment and return the
/// process exit code: 0 on success, 1 on usage or configuration errors,
/// 2 when a linear solve fails.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_CONFIG,
            };
        }
    };
    match execute(&cli.command) {
        Ok(summary) => {
            print!("{summary}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {}", render(&e));
            if e.is_solver_failure() {
                EXIT_SOLVER
            } else {
                EXIT_CONFIG
            }
        }
    }
}

fn render(e: &Error) -> String {
    let mut msg = e.to_string();
    let mut cur: &dyn std::error::Error = e;
    while let Some(src) = cur.source() {
        msg.push_str(&format!(": {src}"));
        cur = src;
    }
    msg
}
