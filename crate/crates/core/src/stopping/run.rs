use std::io::Write;

use super::criterion::{stopping_decision, StepDecision, StopReason};
use super::energy::energy_noisy;
use super::projection::{projected_update, Projection};
use crate::discrete::{solve_shifted, Field, HelmholtzFilter};
use crate::error::{Error, Result};
use crate::regularize::IterateTrace;

/// The realized noise of a synthetic experiment and its known bound.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    pub epsilon: Field,
    /// Known bound `‖ε‖ ≤ ε₀`.
    pub eps0: f64,
    /// Relative level the noise was generated at.
    pub level: f64,
}

impl NoiseModel {
    pub fn zero(grid: &crate::discrete::Grid) -> Self {
        NoiseModel {
            epsilon: Field::zeros(grid),
            eps0: 0.0,
            level: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StoppingMode {
    /// End the trace at the last accepted iterate.
    Halt,
    /// Keep iterating to `j_max` and only annotate the stopping index.
    RecordOnly,
}

impl std::str::FromStr for StoppingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "halt" => Ok(StoppingMode::Halt),
            "record_only" | "record" => Ok(StoppingMode::RecordOnly),
            other => Err(Error::Config(format!(
                "unknown stopping mode '{other}' (expected halt or record_only)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingOptions {
    pub alpha: f64,
    pub eps0: f64,
    pub j_max: usize,
    pub mode: StoppingMode,
}

/// Result of a Mitlar run governed by the noise-aware stopping rule.
#[derive(Debug, Clone, PartialEq)]
pub struct StoppedRun {
    /// Accepted iterates (all computed iterates in record-only mode).
    pub trace: IterateTrace,
    /// Index of the last accepted iterate.
    pub stop_index: usize,
    pub reason: StopReason,
    /// `E_ε(u_j)` for every iterate in `trace`, when requested.
    pub energies: Option<Vec<f64>>,
    /// `‖u_j − u_{j−1}‖` for every computed candidate, `j ≥ 1`. In halt mode
    /// this includes the rejected candidate.
    pub candidate_update_norms: Vec<f64>,
    /// Outcome of the stopping test for each candidate.
    pub continue_flags: Vec<bool>,
    /// `ε₀/‖u_j − u_{j−1}‖` at the first violated step, if any.
    pub violated_ratio: Option<f64>,
    pub alpha: f64,
    pub eps0: f64,
    pub delta: f64,
}

/// Extra metadata written to the CSV header line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunMetadata {
    pub n: usize,
    pub seed: Option<u64>,
}

impl StoppedRun {
    /// `E_ε` at the stopping index.
    pub fn energy_at_stop(&self) -> Option<f64> {
        self.energies.as_ref().map(|e| e[self.stop_index])
    }

    /// Iterate at the stopping index.
    pub fn stopped_iterate(&self) -> &Field {
        &self.trace.iterates()[self.stop_index]
    }

    /// CSV with a `#` metadata line followed by
    /// `j,update_norm,energy_noisy,continue_flag`.
    pub fn write_csv<W: Write>(&self, mut out: W, meta: &RunMetadata) -> Result<()> {
        let seed = meta.seed.map_or_else(|| "none".to_string(), |s| s.to_string());
        writeln!(
            out,
            "# alpha={:e},eps0={:e},delta={:e},n={},seed={},J*={},reason={}",
            self.alpha, self.eps0, self.delta, meta.n, seed, self.stop_index, self.reason
        )?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["j", "update_norm", "energy_noisy", "continue_flag"])?;
        let rows = self.trace.iterates().len().max(self.candidate_update_norms.len() + 1);
        for j in 0..rows {
            let norm = if j == 0 {
                String::new()
            } else {
                format!("{:e}", self.candidate_update_norms[j - 1])
            };
            let energy = self
                .energies
                .as_ref()
                .and_then(|e| e.get(j))
                .map_or_else(String::new, |e| format!("{e:e}"));
            let flag = if j == 0 {
                String::new()
            } else {
                u8::from(self.continue_flags[j - 1]).to_string()
            };
            w.write_record([j.to_string(), norm, energy, flag])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn validate(opts: &StoppingOptions) -> Result<()> {
    if !(opts.alpha.is_finite() && opts.alpha > 0.0 && opts.alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "regularization parameter must lie in (0, 1], got {}",
            opts.alpha
        )));
    }
    if !(opts.eps0.is_finite() && opts.eps0 >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "noise bound must be non-negative, got {}",
            opts.eps0
        )));
    }
    if opts.j_max < 1 {
        return Err(Error::InvalidParameter("j_max must be at least 1".into()));
    }
    Ok(())
}

struct RunState<'a> {
    filter: &'a HelmholtzFilter,
    u_bar: &'a Field,
    noise: Option<&'a Field>,
    opts: StoppingOptions,
    trace: IterateTrace,
    energies: Option<Vec<f64>>,
    norms: Vec<f64>,
    flags: Vec<bool>,
    stop: Option<(usize, StopReason, f64)>,
}

impl RunState<'_> {
    fn energy(&self, v: &Field) -> Result<Option<f64>> {
        self.noise
            .map(|eps| energy_noisy(self.filter, v, self.u_bar, eps))
            .transpose()
    }

    fn accept(&mut self, next: Field) -> Result<()> {
        if let Some(e) = self.energy(&next)? {
            self.energies.as_mut().expect("energies enabled").push(e);
        }
        self.trace.push(next);
        Ok(())
    }

    fn finish(self) -> StoppedRun {
        let (stop_index, reason, ratio) = match self.stop {
            Some((j, reason, ratio)) => (j, reason, Some(ratio).filter(|_| reason == StopReason::Criterion)),
            None => (self.trace.updates(), StopReason::MaxIterations, None),
        };
        StoppedRun {
            trace: self.trace,
            stop_index,
            reason,
            energies: self.energies,
            candidate_update_norms: self.norms,
            continue_flags: self.flags,
            violated_ratio: ratio,
            alpha: self.opts.alpha,
            eps0: self.opts.eps0,
            delta: self.filter.delta(),
        }
    }

    fn abort(self, source: Error) -> Error {
        Error::RunAborted {
            partial: Box::new(self.finish()),
            source: Box::new(source),
        }
    }
}

/// Shared driver; `on_violation` decides what happens to a rejected candidate.
fn drive(
    filter: &HelmholtzFilter,
    u_bar: &Field,
    opts: StoppingOptions,
    noise: Option<&Field>,
    mut on_violation: impl FnMut(&Field, &Field) -> Result<Option<Field>>,
) -> Result<StoppedRun> {
    validate(&opts)?;
    let theta = opts.alpha * filter.delta_sq();
    let a_ubar = filter.apply_a(u_bar)?;
    let u0 = solve_shifted(filter.grid(), theta, &a_ubar)?;

    let mut state = RunState {
        filter,
        u_bar,
        noise,
        opts,
        trace: IterateTrace::start(u0.clone()),
        energies: noise.map(|_| Vec::new()),
        norms: Vec::new(),
        flags: Vec::new(),
        stop: None,
    };
    if let Some(e) = state.energy(&u0)? {
        state.energies.as_mut().expect("energies enabled").push(e);
    }

    for j in 1..=opts.j_max {
        let prev = state.trace.last().clone();
        let step = match solve_shifted(filter.grid(), theta, &(&a_ubar - &prev)) {
            Ok(s) => s,
            Err(e) => return Err(state.abort(e)),
        };
        let candidate = &prev + &step;
        let norm = step.l2_norm();
        let decision = stopping_decision(opts.alpha, opts.eps0, norm);
        state.norms.push(norm);
        state.flags.push(decision == StepDecision::Continue);

        match decision {
            StepDecision::Continue => {
                if let Err(e) = state.accept(candidate) {
                    return Err(state.abort(e));
                }
            }
            StepDecision::Stop(reason) => {
                let ratio = if norm > 0.0 { opts.eps0 / norm } else { f64::INFINITY };
                if state.stop.is_none() {
                    state.stop = Some((j - 1, reason, ratio));
                }
                match opts.mode {
                    StoppingMode::RecordOnly => {
                        if let Err(e) = state.accept(candidate) {
                            return Err(state.abort(e));
                        }
                    }
                    StoppingMode::Halt if reason == StopReason::ZeroUpdate => break,
                    StoppingMode::Halt => {
                        match on_violation(&prev, &candidate) {
                            Ok(Some(replacement)) => {
                                if let Err(e) = state.accept(replacement) {
                                    return Err(state.abort(e));
                                }
                                state.stop = Some((j, reason, ratio));
                            }
                            Ok(None) => {}
                            Err(e) => return Err(state.abort(e)),
                        }
                        break;
                    }
                }
            }
        }
    }
    Ok(state.finish())
}

/// Mitlar with the noise-aware stopping rule: a candidate update `d` is
/// accepted while `ε₀/‖d‖ ≤ α`.
///
/// When `noise` is given, `E_ε` is evaluated at every kept iterate (one extra
/// filter solve each). In halt mode the rejected candidate is discarded and the
/// trace ends at the stopping index; in record-only mode the run continues to
/// `j_max` and the first violation is annotated.
pub fn run_mitlar_with_stopping(
    filter: &HelmholtzFilter,
    u_bar: &Field,
    opts: StoppingOptions,
    noise: Option<&Field>,
) -> Result<StoppedRun> {
    drive(filter, u_bar, opts, noise, |_, _| Ok(None))
}

/// Variant that replaces the first rejected update `d` by `P d`,
/// `ũ_j = u_{j−1} + P(u_j − u_{j−1})`, and stops there.
///
/// Escalating `α` instead is left to the caller; `violated_ratio` reports
/// `ε₀/‖d‖` for that purpose.
pub fn run_mitlar_projected(
    filter: &HelmholtzFilter,
    u_bar: &Field,
    alpha: f64,
    eps0: f64,
    updates: usize,
    projection: &dyn Projection,
    noise: Option<&Field>,
) -> Result<StoppedRun> {
    let opts = StoppingOptions {
        alpha,
        eps0,
        j_max: updates.max(1),
        mode: StoppingMode::Halt,
    };
    if updates == 0 {
        validate(&opts)?;
        let trace = crate::regularize::deconvolve_mitlar(filter, u_bar, alpha, 0)?;
        let energies = noise
            .map(|eps| energy_noisy(filter, trace.last(), u_bar, eps).map(|e| vec![e]))
            .transpose()?;
        return Ok(StoppedRun {
            trace,
            stop_index: 0,
            reason: StopReason::MaxIterations,
            energies,
            candidate_update_norms: Vec::new(),
            continue_flags: Vec::new(),
            violated_ratio: None,
            alpha,
            eps0,
            delta: filter.delta(),
        });
    }
    drive(filter, u_bar, opts, noise, |prev, candidate| {
        projected_update(prev, candidate, projection).map(Some)
    })
}
