//! Transition labels and their canonical text form, shared by every
//! interchange format and protocol in the crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::value::{Plane, XRay};

/// An LTS transition label.
///
/// Canonical text: inputs are their action name, outputs render as
/// `output(Fluo,FR)`, internal steps as `tau` and quiescence as `delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Input(String),
    Output(XRay, Plane),
    Tau,
    Delta,
}

impl Label {
    pub fn input(name: impl Into<String>) -> Self {
        Label::Input(name.into())
    }

    pub fn is_tau(&self) -> bool {
        matches!(self, Label::Tau)
    }

    pub fn is_output(&self) -> bool {
        matches!(self, Label::Output(..))
    }

    /// Outputs and quiescence: what a tester can observe.
    pub fn is_observation(&self) -> bool {
        matches!(self, Label::Output(..) | Label::Delta)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Input(name) => f.write_str(name),
            Label::Output(x, p) => write!(f, "output({x},{p})"),
            Label::Tau => f.write_str("tau"),
            Label::Delta => f.write_str("delta"),
        }
    }
}

fn parse_output(s: &str) -> Option<Label> {
    let args = s.strip_prefix("output(")?.strip_suffix(')')?;
    let (x, p) = args.split_once(',')?;
    Some(Label::Output(
        x.trim().parse().ok()?,
        p.trim().parse().ok()?,
    ))
}

impl FromStr for Label {
    type Err = std::convert::Infallible;

    /// Inverse of `Display`; any text that is not `tau`, `delta` or a
    /// well-formed `output(..)` is an input label.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "tau" => Label::Tau,
            "delta" => Label::Delta,
            _ => parse_output(s).unwrap_or_else(|| Label::Input(s.to_string())),
        })
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ok(s.parse().unwrap_or_else(|e| match e {}))
    }
}
