//! Energy functionals, the descent gap and the noise-aware stopping rule.

mod criterion;
mod energy;
mod projection;
mod run;

pub use criterion::{stopping_decision, stopping_should_continue, StepDecision, StopReason};
pub use energy::{descent_gap, energy_noise_free, energy_noisy};
pub use projection::{projected_update, Projection, SineModeProjection};
pub use run::{
    run_mitlar_projected, run_mitlar_with_stopping, NoiseModel, RunMetadata, StoppedRun, StoppingMode,
    StoppingOptions,
};
