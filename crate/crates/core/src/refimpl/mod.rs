//! Reference system under test with optional injected faults.

use std::fmt;
use std::io::{self, BufRead, Write};
use std::net::TcpListener;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dsl::ast::{GuardExpr, Operand, PedalModel, Span, Statement, Target};
use crate::dsl::diag::Diagnostics;
use crate::equiv::{equivalent, Relation};
use crate::lts::explore;
use crate::mbt::protocol::{parse_command, Command, Response};
use crate::mbt::LineHandler;
use crate::semantics::{Engine, Machine, Plane, State, Value, XRay};

/// State bound for the behavior-change filter in [`mutants`].
pub const MUTANT_FILTER_MAX_STATES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Mutation {
    NegateGuard(String),
    /// Removes the top-level statement at the given index.
    DropStatement(String, usize),
    /// Forces the output registers after the rule's body.
    SwapOutput(String, XRay, Plane),
    /// Every rule ends with `Standby`/`None`.
    StuckOutput,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MutationError {
    #[error("invalid mutation `{0}`: expected negate-guard:R, drop:R:I, swap-output:R:X:P or stuck-output")]
    Syntax(String),
    #[error("no rule for action `{0}`")]
    UnknownRule(String),
    #[error("rule `{rule}` has {len} statements, index {index} is out of range")]
    StatementIndex {
        rule: String,
        index: usize,
        len: usize,
    },
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mutation::NegateGuard(r) => write!(f, "negate-guard:{r}"),
            Mutation::DropStatement(r, i) => write!(f, "drop:{r}:{i}"),
            Mutation::SwapOutput(r, x, p) => write!(f, "swap-output:{r}:{x}:{p}"),
            Mutation::StuckOutput => f.write_str("stuck-output"),
        }
    }
}

impl FromStr for Mutation {
    type Err = MutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MutationError::Syntax(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["negate-guard", r] => Ok(Mutation::NegateGuard(r.to_string())),
            ["drop", r, i] => Ok(Mutation::DropStatement(
                r.to_string(),
                i.parse().map_err(|_| bad())?,
            )),
            ["swap-output", r, x, p] => Ok(Mutation::SwapOutput(
                r.to_string(),
                x.parse().map_err(|_| bad())?,
                p.parse().map_err(|_| bad())?,
            )),
            ["stuck-output"] => Ok(Mutation::StuckOutput),
            _ => Err(bad()),
        }
    }
}

fn force_output(x: XRay, p: Plane) -> [Statement; 2] {
    [
        Statement::Assign {
            target: Target::OutputType(Span::default()),
            value: Operand::Lit(Value::XRay(x), Span::default()),
        },
        Statement::Assign {
            target: Target::OutputPlane(Span::default()),
            value: Operand::Lit(Value::Plane(p), Span::default()),
        },
    ]
}

/// Rewrites the rule table. The result is an ordinary model.
pub fn apply_mutations(
    model: &PedalModel,
    mutations: &[Mutation],
) -> Result<PedalModel, MutationError> {
    let mut m = model.clone();
    for mutation in mutations {
        let rule_mut = |m: &mut PedalModel, name: &str| -> Result<usize, MutationError> {
            m.rules
                .iter()
                .position(|r| r.action.as_str() == name)
                .ok_or_else(|| MutationError::UnknownRule(name.to_string()))
        };
        match mutation {
            Mutation::NegateGuard(r) => {
                let i = rule_mut(&mut m, r)?;
                let g =
                    std::mem::replace(&mut m.rules[i].guard, GuardExpr::Lit(true, Span::default()));
                m.rules[i].guard = GuardExpr::negate(g);
            }
            Mutation::DropStatement(r, index) => {
                let i = rule_mut(&mut m, r)?;
                let len = m.rules[i].body.len();
                if *index >= len {
                    return Err(MutationError::StatementIndex {
                        rule: r.clone(),
                        index: *index,
                        len,
                    });
                }
                m.rules[i].body.remove(*index);
            }
            Mutation::SwapOutput(r, x, p) => {
                let i = rule_mut(&mut m, r)?;
                m.rules[i].body.extend(force_output(*x, *p));
            }
            Mutation::StuckOutput => {
                for rule in &mut m.rules {
                    rule.body.extend(force_output(XRay::Standby, Plane::None));
                }
            }
        }
    }
    Ok(m)
}

fn candidates(model: &PedalModel) -> Vec<Mutation> {
    let mut out = Vec::new();
    for rule in &model.rules {
        let r = rule.action.as_str().to_string();
        out.push(Mutation::NegateGuard(r.clone()));
        for i in 0..rule.body.len() {
            out.push(Mutation::DropStatement(r.clone(), i));
        }
        for x in XRay::ALL {
            for p in Plane::ALL {
                out.push(Mutation::SwapOutput(r.clone(), x, p));
            }
        }
    }
    out.push(Mutation::StuckOutput);
    out
}

/// Up to `max` single mutations in seeded order, each of which changes the
/// direct-engine LTS up to strong bisimilarity.
pub fn mutants(model: &PedalModel, max: usize, seed: u64) -> Vec<Mutation> {
    if max == 0 {
        return Vec::new();
    }
    let Ok(machine) = Machine::new(model) else {
        return Vec::new();
    };
    let Ok(original) = explore(&machine, Engine::Direct, MUTANT_FILTER_MAX_STATES) else {
        return Vec::new();
    };
    let mut pool = candidates(model);
    pool.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut kept = Vec::new();
    for mutation in pool {
        if kept.len() == max {
            break;
        }
        let Ok(mutated) = apply_mutations(model, std::slice::from_ref(&mutation)) else {
            continue;
        };
        let Ok(mm) = Machine::new(&mutated) else {
            continue;
        };
        let Ok(lts) = explore(&mm, Engine::Direct, MUTANT_FILTER_MAX_STATES) else {
            continue;
        };
        if !equivalent(&original, &lts, Relation::Strong) {
            kept.push(mutation);
        }
    }
    kept
}

/// Direct-engine implementation of the adapter protocol.
///
/// Inputs whose guard is false are consumed without effect.
#[derive(Debug, Clone)]
pub struct ReferenceServer {
    machine: Machine,
    state: State,
}

impl ReferenceServer {
    pub fn new(model: &PedalModel, mutations: &[Mutation]) -> Result<Self, ServeError> {
        let mutated = apply_mutations(model, mutations)?;
        let machine = Machine::new(&mutated)?;
        let state = machine.initial_state();
        Ok(ReferenceServer { machine, state })
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn machine(&self) -> &Machine {
        &self.machine
    }
}

impl LineHandler for ReferenceServer {
    fn handle_line(&mut self, line: &str) -> Result<Vec<String>, String> {
        match parse_command(line).map_err(|e| e.to_string())? {
            Command::Reset => {
                self.state = self.machine.initial_state();
                Ok(vec![Response::Ready.to_string()])
            }
            Command::In(action) => {
                let rule = self
                    .machine
                    .rule_index(&action)
                    .ok_or_else(|| format!("protocol violation: unknown action `{action}`"))?;
                if !self.machine.is_enabled(rule, &self.state) {
                    return Ok(Vec::new());
                }
                self.state = self.machine.fire(rule, &self.state);
                Ok(vec![Response::Out(
                    self.state.out_type,
                    self.state.out_plane,
                )
                .to_string()])
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ServeError {
    #[error(transparent)]
    Mutation(#[from] MutationError),
    #[error("invalid model:\n{0}")]
    Model(#[from] Diagnostics),
    #[error("{0}")]
    Protocol(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

/// Serves one session until end of input.
pub fn serve_stream<H, R, W>(handler: &mut H, reader: R, mut writer: W) -> Result<(), ServeError>
where
    H: LineHandler,
    R: BufRead,
    W: Write,
{
    for line in reader.lines() {
        let line = line?;
        let replies = handler.handle_line(&line).map_err(ServeError::Protocol)?;
        for reply in replies {
            writeln!(writer, "{reply}")?;
        }
        writer.flush()?;
    }
    Ok(())
}

/// Accepts a single connection and serves it.
pub fn serve_listener<H: LineHandler>(
    handler: &mut H,
    listener: TcpListener,
) -> Result<(), ServeError> {
    let (stream, _) = listener.accept()?;
    stream.set_nodelay(true)?;
    let reader = io::BufReader::new(stream.try_clone()?);
    serve_stream(handler, reader, stream)
}
