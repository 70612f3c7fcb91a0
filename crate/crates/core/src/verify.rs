//! Safety properties on explored state spaces.
//!
//! Property files hold one property per line:
//!
//! ```text
//! # comment
//! deadlock-free
//! invariant !(FRFluoReq && FluoPlane == None)
//! no-output-without FRFluoReq == true
//! ```

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::dsl::{parse_guard, validate_guard, Diagnostics, GuardExpr};
use crate::lts::{Lts, LtsError};
use crate::semantics::{Label, Machine, SemState, XRay};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertySpec {
    /// The expression holds in every reachable stable state.
    Invariant(GuardExpr),
    DeadlockFree,
    /// Every reachable state whose `OutputType` is not `Standby` satisfies
    /// the request expression.
    NoOutputWithout(GuardExpr),
}

impl fmt::Display for PropertySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::dsl::pretty::guard;
        match self {
            PropertySpec::Invariant(g) => write!(f, "invariant {}", guard(g)),
            PropertySpec::DeadlockFree => f.write_str("deadlock-free"),
            PropertySpec::NoOutputWithout(g) => write!(f, "no-output-without {}", guard(g)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct PropertyParseError {
    pub line: usize,
    pub message: String,
}

pub fn parse_properties(text: &str) -> Result<Vec<PropertySpec>, PropertyParseError> {
    let mut props = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let expr = |rest: &str| {
            parse_guard(rest).map_err(|d| PropertyParseError {
                line: i + 1,
                message: format!("{}: {}", d.code, d.message),
            })
        };
        let prop = match keyword {
            "deadlock-free" if rest.trim().is_empty() => PropertySpec::DeadlockFree,
            "invariant" => PropertySpec::Invariant(expr(rest)?),
            "no-output-without" => PropertySpec::NoOutputWithout(expr(rest)?),
            _ => {
                return Err(PropertyParseError {
                    line: i + 1,
                    message: format!(
                        "expected `invariant <expr>`, `deadlock-free` or `no-output-without <expr>`, found `{line}`"
                    ),
                })
            }
        };
        props.push(prop);
    }
    Ok(props)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    /// Also check invariants in states between an input and its output.
    pub include_transient: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Shortest label sequence from the initial state to `state`.
    pub trace: Vec<Label>,
    pub state: usize,
    #[serde(skip)]
    pub sem_state: SemState,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Violated(Counterexample),
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Lts(#[from] LtsError),
    #[error("property does not type-check against the model:\n{0}")]
    IllTyped(Diagnostics),
}

/// BFS predecessor tree over the LTS itself.
fn shortest_paths(lts: &Lts) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
    let adj = lts.adjacency();
    let mut dist = vec![usize::MAX; lts.n_states()];
    let mut parent = vec![None; lts.n_states()];
    dist[lts.initial()] = 0;
    let mut queue = VecDeque::from([lts.initial()]);
    while let Some(s) = queue.pop_front() {
        for &(l, t) in &adj[s] {
            if dist[t] == usize::MAX {
                dist[t] = dist[s] + 1;
                parent[t] = Some((s, l));
                queue.push_back(t);
            }
        }
    }
    (dist, parent)
}

fn trace_to(lts: &Lts, parent: &[Option<(usize, usize)>], mut s: usize) -> Vec<Label> {
    let mut rev = Vec::new();
    while let Some((p, l)) = parent[s] {
        rev.push(lts.label(l).clone());
        s = p;
    }
    rev.reverse();
    rev
}

pub fn check(
    machine: &Machine,
    lts: &Lts,
    prop: &PropertySpec,
    options: CheckOptions,
) -> Result<Outcome, VerifyError> {
    lts.require_complete()?;
    let map = lts.state_map().ok_or(LtsError::RequiresStateMap)?;
    let compile = |g: &GuardExpr| {
        let diags = validate_guard(machine.model(), g);
        if !diags.is_empty() {
            return Err(VerifyError::IllTyped(Diagnostics(diags)));
        }
        Ok(machine.compile_guard(g).expect("validated guard"))
    };

    let degrees = lts.out_degrees();
    let violates: Box<dyn Fn(usize) -> bool> = match prop {
        PropertySpec::DeadlockFree => Box::new(|s| degrees[s] == 0),
        PropertySpec::Invariant(g) => {
            let g = compile(g)?;
            let all = options.include_transient;
            Box::new(move |s| {
                let stable = matches!(map[s], SemState::AwaitingInput(_));
                (all || stable) && !g.eval(map[s].state())
            })
        }
        PropertySpec::NoOutputWithout(g) => {
            let g = compile(g)?;
            Box::new(move |s| {
                let st = map[s].state();
                st.out_type != XRay::Standby && !g.eval(st)
            })
        }
    };

    let (dist, parent) = shortest_paths(lts);
    let Some(bad) = (0..lts.n_states())
        .filter(|&s| dist[s] != usize::MAX && violates(s))
        .min_by_key(|&s| (dist[s], s))
    else {
        return Ok(Outcome::Holds);
    };

    let mut trace = trace_to(lts, &parent, bad);
    let mut state = bad;
    // An X-ray is observable once it has been emitted: extend transient
    // violations along their (unique) path to the next stable state.
    if matches!(prop, PropertySpec::NoOutputWithout(_)) {
        let adj = lts.adjacency();
        while !matches!(map[state], SemState::AwaitingInput(_)) {
            let Some(&(l, next)) = adj[state].first() else {
                break;
            };
            trace.push(lts.label(l).clone());
            state = next;
        }
    }
    Ok(Outcome::Violated(Counterexample {
        trace,
        state,
        sem_state: map[state].clone(),
    }))
}

/// Drives the engine along `trace` from the initial state.
pub fn replay(
    machine: &Machine,
    engine: crate::semantics::Engine,
    trace: &[Label],
) -> Option<SemState> {
    let mut q = machine.initial_sem_state();
    for label in trace {
        q = machine
            .successors(engine, &q)
            .into_iter()
            .find(|(l, _)| l == label)
            .map(|(_, next)| next)?;
    }
    Some(q)
}
