//! Syntax tree of a pedal-handling model.

use std::hash::{Hash, Hasher};

use crate::semantics::value::Value;

/// Source position (1-based line and column).
///
/// Spans are positional metadata only: two spans always compare equal, so
/// structural equality of trees ignores where they came from.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(line: u32, col: u32) -> Self {
        Span { line, col }
    }
}

impl PartialEq for Span {
    fn eq(&self, _other: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

impl Hash for Span {
    fn hash<H: Hasher>(&self, _state: &mut H) {}
}

/// An identifier together with the place it was written.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

impl Name {
    pub fn new(text: impl Into<String>) -> Self {
        Name {
            text: text.into(),
            span: Span::default(),
        }
    }

    pub fn at(text: impl Into<String>, span: Span) -> Self {
        Name {
            text: text.into(),
            span,
        }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

/// A parsed (not necessarily valid) model.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PedalModel {
    pub input_actions: Vec<Name>,
    pub bool_vars: Vec<Name>,
    pub plane_vars: Vec<Name>,
    pub init: Vec<InitEntry>,
    pub rules: Vec<Rule>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitEntry {
    pub target: Target,
    pub value: Value,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub action: Name,
    pub guard: GuardExpr,
    pub body: Vec<Statement>,
}

/// Anything that can stand on either side of `==` or on the right of `:=`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Var(Name),
    OutputType(Span),
    OutputPlane(Span),
    Lit(Value, Span),
}

impl Operand {
    pub fn span(&self) -> Span {
        match self {
            Operand::Var(n) => n.span,
            Operand::OutputType(s) | Operand::OutputPlane(s) | Operand::Lit(_, s) => *s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GuardExpr {
    Lit(bool, Span),
    /// Bare reference to a boolean variable.
    Var(Name),
    Eq(Operand, Operand),
    Not(Box<GuardExpr>),
    And(Box<GuardExpr>, Box<GuardExpr>),
    Or(Box<GuardExpr>, Box<GuardExpr>),
}

impl GuardExpr {
    pub fn negate(inner: GuardExpr) -> Self {
        GuardExpr::Not(Box::new(inner))
    }

    pub fn and(lhs: GuardExpr, rhs: GuardExpr) -> Self {
        GuardExpr::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: GuardExpr, rhs: GuardExpr) -> Self {
        GuardExpr::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn span(&self) -> Span {
        match self {
            GuardExpr::Lit(_, s) => *s,
            GuardExpr::Var(n) => n.span,
            GuardExpr::Eq(lhs, _) => lhs.span(),
            GuardExpr::Not(e) | GuardExpr::And(e, _) | GuardExpr::Or(e, _) => e.span(),
        }
    }
}

/// Left-hand side of an assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Var(Name),
    OutputType(Span),
    OutputPlane(Span),
}

impl Target {
    pub fn span(&self) -> Span {
        match self {
            Target::Var(n) => n.span,
            Target::OutputType(s) | Target::OutputPlane(s) => *s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Assign {
        target: Target,
        value: Operand,
    },
    If {
        cond: GuardExpr,
        then_branch: Vec<Statement>,
        else_branch: Vec<Statement>,
    },
}

impl PedalModel {
    pub fn rule(&self, action: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.action.text == action)
    }
}
