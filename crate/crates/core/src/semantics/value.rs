//! Closed value domains of the DSL.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// X-ray plane selector. `None` means no plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Plane {
    None,
    FR,
    LT,
    BI,
}

/// Kind of X-ray requested from a plane. `Standby` means no X-ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum XRay {
    Standby,
    Fluo,
    SingleShot,
    Series,
}

impl Plane {
    pub const ALL: [Plane; 4] = [Plane::None, Plane::FR, Plane::LT, Plane::BI];

    pub fn as_str(self) -> &'static str {
        match self {
            Plane::None => "None",
            Plane::FR => "FR",
            Plane::LT => "LT",
            Plane::BI => "BI",
        }
    }
}

impl XRay {
    pub const ALL: [XRay; 4] = [XRay::Standby, XRay::Fluo, XRay::SingleShot, XRay::Series];

    pub fn as_str(self) -> &'static str {
        match self {
            XRay::Standby => "Standby",
            XRay::Fluo => "Fluo",
            XRay::SingleShot => "SingleShot",
            XRay::Series => "Series",
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for XRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown {domain} literal `{text}`")]
pub struct UnknownLiteral {
    pub domain: &'static str,
    pub text: String,
}

impl FromStr for Plane {
    type Err = UnknownLiteral;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Plane::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| UnknownLiteral {
                domain: "plane",
                text: s.to_string(),
            })
    }
}

impl FromStr for XRay {
    type Err = UnknownLiteral;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        XRay::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| UnknownLiteral {
                domain: "xray",
                text: s.to_string(),
            })
    }
}

/// The three value domains a DSL expression can have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Bool,
    Plane,
    XRay,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Bool => "boolean",
            Domain::Plane => "plane",
            Domain::XRay => "xray",
        })
    }
}

/// A literal value of one of the three domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Value {
    Bool(bool),
    Plane(Plane),
    XRay(XRay),
}

impl Value {
    pub fn domain(self) -> Domain {
        match self {
            Value::Bool(_) => Domain::Bool,
            Value::Plane(_) => Domain::Plane,
            Value::XRay(_) => Domain::XRay,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Plane(p) => write!(f, "{p}"),
            Value::XRay(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        for p in Plane::ALL {
            assert_eq!(p.as_str().parse::<Plane>().unwrap(), p);
        }
        for x in XRay::ALL {
            assert_eq!(x.as_str().parse::<XRay>().unwrap(), x);
        }
        assert!("Fluo".parse::<Plane>().is_err());
        assert!("none".parse::<Plane>().is_err());
    }
}
