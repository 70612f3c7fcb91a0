//! ioco model-based testing.

pub mod adapter;
pub mod offline;
pub mod online;
pub mod protocol;
pub mod suspension;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

pub use adapter::{
    Adapter, AdapterError, LineHandler, LocalAdapter, Observation, StreamAdapter,
    DEFAULT_OBSERVE_TIMEOUT,
};
pub use offline::{gen_tests, run_testcase, TestCase};
pub use online::{run_online, OnlineConfig, OnlineReport};
pub use suspension::{suspension_lts, Spec, StateSet};

use crate::semantics::Label;

/// Why a test failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailEvidence {
    /// Suspension trace executed before the offending observation.
    pub trace: Vec<Label>,
    pub observed: Label,
    /// Observations the specification allows after `trace`.
    pub allowed: BTreeSet<Label>,
    #[serde(skip)]
    pub spec_states: StateSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail(FailEvidence),
    AdapterError { detail: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::AdapterError { .. } => "adapter-error",
        }
    }

    pub(crate) fn adapter(e: AdapterError) -> Self {
        Verdict::AdapterError {
            detail: e.to_string(),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(ev) => {
                let trace: Vec<String> = ev.trace.iter().map(Label::to_string).collect();
                let allowed: Vec<String> = ev.allowed.iter().map(Label::to_string).collect();
                write!(
                    f,
                    "fail: observed {} after [{}], allowed {{{}}}",
                    ev.observed,
                    trace.join(", "),
                    allowed.join(", ")
                )
            }
            Verdict::AdapterError { detail } => write!(f, "adapter error: {detail}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvidenceError {
    #[error("trace is not a suspension trace of the specification")]
    NotATrace,
    #[error("recorded state set differs from the replayed one")]
    StateSetMismatch,
    #[error("recorded allowed set differs from the replayed out-set")]
    AllowedMismatch,
    #[error("observation `{0}` is allowed by the specification")]
    ObservationAllowed(Label),
    #[error("`{0}` is not an observation")]
    NotAnObservation(Label),
}

/// Replays fail evidence through `after`/`out_set`.
pub fn validate_evidence(spec: &Spec, ev: &FailEvidence) -> Result<(), EvidenceError> {
    if !ev.observed.is_observation() {
        return Err(EvidenceError::NotAnObservation(ev.observed.clone()));
    }
    let states = spec.after_trace(&ev.trace);
    if states.is_empty() {
        return Err(EvidenceError::NotATrace);
    }
    if states != ev.spec_states {
        return Err(EvidenceError::StateSetMismatch);
    }
    let out = spec.out_set(&states);
    if out != ev.allowed {
        return Err(EvidenceError::AllowedMismatch);
    }
    if out.contains(&ev.observed) {
        return Err(EvidenceError::ObservationAllowed(ev.observed.clone()));
    }
    Ok(())
}

/// Checks one observation against the current state set. On success the
/// state set and trace advance.
pub(crate) fn check_observation(
    spec: &Spec,
    states: &mut StateSet,
    trace: &mut Vec<Label>,
    observed: Label,
) -> Result<(), FailEvidence> {
    let allowed = spec.out_set(states);
    if allowed.contains(&observed) {
        *states = spec.after(states, &observed);
        trace.push(observed);
        Ok(())
    } else {
        Err(FailEvidence {
            trace: trace.clone(),
            observed,
            allowed,
            spec_states: states.clone(),
        })
    }
}
