use std::fmt;

use super::value::{Plane, XRay};

/// Total valuation of a model's variables plus the two output registers.
///
/// Variables are stored positionally in declaration order; the owning
/// [`Machine`](super::Machine) maps names to positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub bools: Vec<bool>,
    pub planes: Vec<Plane>,
    pub out_type: XRay,
    pub out_plane: Plane,
}

/// Control point of the alternating semantics wrapped around a [`State`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemState {
    AwaitingInput(State),
    AwaitingOutput(State),
    /// Do clause evaluated, internal step not yet taken. Only the tau engine
    /// produces this.
    Evaluating(State),
}

impl SemState {
    pub fn state(&self) -> &State {
        match self {
            SemState::AwaitingInput(s) | SemState::AwaitingOutput(s) | SemState::Evaluating(s) => s,
        }
    }

    pub fn phase(&self) -> &'static str {
        match self {
            SemState::AwaitingInput(_) => "in",
            SemState::AwaitingOutput(_) => "out",
            SemState::Evaluating(_) => "eval",
        }
    }
}

/// Which of the two semantics engines generates transitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Engine {
    /// Input immediately followed by the output action.
    #[default]
    Direct,
    /// One internal step between an input and its output.
    Tau,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Direct => "direct",
            Engine::Tau => "tau",
        })
    }
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct" => Ok(Engine::Direct),
            "tau" => Ok(Engine::Tau),
            other => Err(format!("unknown engine `{other}` (expected direct or tau)")),
        }
    }
}
