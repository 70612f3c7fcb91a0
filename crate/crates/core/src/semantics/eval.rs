//! Guards and do clauses resolved against a model's variable layout.

use super::state::State;
use super::value::Value;
use crate::dsl::ast::{GuardExpr, Operand, Statement, Target};
use crate::dsl::validate::{Scope, VarKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Slot {
    Bool(usize),
    Plane(usize),
    OutType,
    OutPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Read {
    Slot(Slot),
    Const(Value),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Cond {
    Const(bool),
    Bool(usize),
    Eq(Read, Read),
    Not(Box<Cond>),
    And(Box<Cond>, Box<Cond>),
    Or(Box<Cond>, Box<Cond>),
}

/// A guard whose variable references have been resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guard(Cond);

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Op {
    Assign(Slot, Read),
    If(Guard, Vec<Op>, Vec<Op>),
}

/// Raised when an expression mentions a name absent from the scope.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` does not resolve to a variable of the right kind")]
pub struct Unresolved(pub String);

fn slot(scope: &Scope, name: &str) -> Result<Slot, Unresolved> {
    match scope.lookup(name) {
        Some(VarKind::Bool(i)) => Ok(Slot::Bool(i)),
        Some(VarKind::Plane(i)) => Ok(Slot::Plane(i)),
        None => Err(Unresolved(name.to_string())),
    }
}

fn read(scope: &Scope, op: &Operand) -> Result<Read, Unresolved> {
    Ok(match op {
        Operand::Var(n) => Read::Slot(slot(scope, &n.text)?),
        Operand::OutputType(_) => Read::Slot(Slot::OutType),
        Operand::OutputPlane(_) => Read::Slot(Slot::OutPlane),
        Operand::Lit(v, _) => Read::Const(*v),
    })
}

pub(crate) fn compile_guard(scope: &Scope, g: &GuardExpr) -> Result<Guard, Unresolved> {
    cond(scope, g).map(Guard)
}

fn cond(scope: &Scope, g: &GuardExpr) -> Result<Cond, Unresolved> {
    Ok(match g {
        GuardExpr::Lit(b, _) => Cond::Const(*b),
        GuardExpr::Var(n) => match slot(scope, &n.text)? {
            Slot::Bool(i) => Cond::Bool(i),
            _ => return Err(Unresolved(n.text.clone())),
        },
        GuardExpr::Eq(l, r) => Cond::Eq(read(scope, l)?, read(scope, r)?),
        GuardExpr::Not(e) => Cond::Not(Box::new(cond(scope, e)?)),
        GuardExpr::And(a, b) => Cond::And(Box::new(cond(scope, a)?), Box::new(cond(scope, b)?)),
        GuardExpr::Or(a, b) => Cond::Or(Box::new(cond(scope, a)?), Box::new(cond(scope, b)?)),
    })
}

pub(crate) fn compile_body(scope: &Scope, body: &[Statement]) -> Result<Vec<Op>, Unresolved> {
    body.iter()
        .map(|stmt| {
            Ok(match stmt {
                Statement::Assign { target, value } => {
                    let dst = match target {
                        Target::Var(n) => slot(scope, &n.text)?,
                        Target::OutputType(_) => Slot::OutType,
                        Target::OutputPlane(_) => Slot::OutPlane,
                    };
                    Op::Assign(dst, read(scope, value)?)
                }
                Statement::If {
                    cond,
                    then_branch,
                    else_branch,
                } => Op::If(
                    compile_guard(scope, cond)?,
                    compile_body(scope, then_branch)?,
                    compile_body(scope, else_branch)?,
                ),
            })
        })
        .collect()
}

fn load(slot: Slot, s: &State) -> Value {
    match slot {
        Slot::Bool(i) => Value::Bool(s.bools[i]),
        Slot::Plane(i) => Value::Plane(s.planes[i]),
        Slot::OutType => Value::XRay(s.out_type),
        Slot::OutPlane => Value::Plane(s.out_plane),
    }
}

impl Read {
    fn get(self, s: &State) -> Value {
        match self {
            Read::Slot(slot) => load(slot, s),
            Read::Const(v) => v,
        }
    }
}

impl Cond {
    fn eval(&self, s: &State) -> bool {
        match self {
            Cond::Const(b) => *b,
            Cond::Bool(i) => s.bools[*i],
            Cond::Eq(l, r) => l.get(s) == r.get(s),
            Cond::Not(g) => !g.eval(s),
            Cond::And(a, b) => a.eval(s) && b.eval(s),
            Cond::Or(a, b) => a.eval(s) || b.eval(s),
        }
    }
}

impl Guard {
    pub fn eval(&self, s: &State) -> bool {
        self.0.eval(s)
    }
}

/// Applies `ops` left to right; each assignment is visible to the next
/// statement, and conditions read the current intermediate state.
pub(crate) fn run(ops: &[Op], s: &mut State) {
    for op in ops {
        match op {
            Op::Assign(dst, src) => {
                let v = src.get(s);
                match (dst, v) {
                    (Slot::Bool(i), Value::Bool(b)) => s.bools[*i] = b,
                    (Slot::Plane(i), Value::Plane(p)) => s.planes[*i] = p,
                    (Slot::OutType, Value::XRay(x)) => s.out_type = x,
                    (Slot::OutPlane, Value::Plane(p)) => s.out_plane = p,
                    (dst, v) => unreachable!("ill-typed assignment {dst:?} := {v:?}"),
                }
            }
            Op::If(cond, then_ops, else_ops) => {
                if cond.eval(s) {
                    run(then_ops, s);
                } else {
                    run(else_ops, s);
                }
            }
        }
    }
}
