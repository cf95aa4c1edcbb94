use std::fmt;

/// Why a stopped run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// `ε₀/‖u_{j+1} − u_j‖ > α`.
    Criterion,
    /// The iteration budget was exhausted with the criterion still holding.
    MaxIterations,
    /// An update of exactly zero norm; the iteration has converged.
    ZeroUpdate,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Criterion => "criterion",
            StopReason::MaxIterations => "max_iterations",
            StopReason::ZeroUpdate => "zero_update",
        }
    }
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepDecision {
    Continue,
    Stop(StopReason),
}

/// Noise-aware acceptance test for a candidate update.
pub fn stopping_decision(alpha: f64, eps0: f64, update_norm: f64) -> StepDecision {
    if update_norm == 0.0 {
        return StepDecision::Stop(StopReason::ZeroUpdate);
    }
    if eps0 / update_norm <= alpha {
        StepDecision::Continue
    } else {
        StepDecision::Stop(StopReason::Criterion)
    }
}

/// True iff `ε₀/‖d‖ ≤ α`; a zero update always stops.
pub fn stopping_should_continue(alpha: f64, eps0: f64, update_norm: f64) -> bool {
    stopping_decision(alpha, eps0, update_norm) == StepDecision::Continue
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decisions() {
        assert!(stopping_should_continue(0.1, 0.0, 1e-300));
        assert_eq!(stopping_decision(0.1, 0.01, 0.0), StepDecision::Stop(StopReason::ZeroUpdate));
        assert_eq!(stopping_decision(0.1, 0.01, 0.05), StepDecision::Stop(StopReason::Criterion));
        assert!(stopping_should_continue(0.1, 0.01, 0.2));
        assert!(!stopping_should_continue(0.1, 0.0, 0.0));
    }
}
