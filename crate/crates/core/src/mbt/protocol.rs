//! Line protocol between tester and system under test.
//!
//! ```text
//! tester -> SUT:  RESET | IN <action>
//! SUT -> tester:  READY | OUT <XRay> <Plane>
//! ```

use std::fmt;

use crate::semantics::{Plane, XRay};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Reset,
    In(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Response {
    Ready,
    Out(XRay, Plane),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("protocol violation: {0}")]
pub struct ProtocolError(pub String);

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Reset => f.write_str("RESET"),
            Command::In(a) => write!(f, "IN {a}"),
        }
    }
}

impl fmt::Display for Response {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Response::Ready => f.write_str("READY"),
            Response::Out(x, p) => write!(f, "OUT {x} {p}"),
        }
    }
}

fn strip_eol(line: &str) -> &str {
    line.strip_suffix('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .unwrap_or(line)
}

pub fn parse_command(line: &str) -> Result<Command, ProtocolError> {
    let line = strip_eol(line);
    if line == "RESET" {
        return Ok(Command::Reset);
    }
    match line.strip_prefix("IN ") {
        Some(action) if !action.is_empty() && !action.contains(char::is_whitespace) => {
            Ok(Command::In(action.to_string()))
        }
        _ => Err(ProtocolError(format!("unexpected command `{line}`"))),
    }
}

pub fn parse_response(line: &str) -> Result<Response, ProtocolError> {
    let line = strip_eol(line);
    if line == "READY" {
        return Ok(Response::Ready);
    }
    let bad = || ProtocolError(format!("unexpected response `{line}`"));
    let rest = line.strip_prefix("OUT ").ok_or_else(bad)?;
    let (x, p) = rest.split_once(' ').ok_or_else(bad)?;
    Ok(Response::Out(
        x.parse().map_err(|_| bad())?,
        p.parse().map_err(|_| bad())?,
    ))
}
