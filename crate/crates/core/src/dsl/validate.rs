//! Static checks turning a parsed tree into a well-formed model.

use std::collections::{HashMap, HashSet};

use super::ast::*;
use super::diag::{DiagCode, Diagnostic};
use crate::semantics::value::Domain;

/// Names that would collide with the canonical label syntax.
pub const RESERVED_NAMES: [&str; 3] = ["tau", "delta", "output"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum VarKind {
    Bool(usize),
    Plane(usize),
}

impl VarKind {
    pub fn domain(self) -> Domain {
        match self {
            VarKind::Bool(_) => Domain::Bool,
            VarKind::Plane(_) => Domain::Plane,
        }
    }
}

/// Variable lookup table of a model. The first declaration wins on duplicates.
#[derive(Debug, Clone, Default)]
pub(crate) struct Scope {
    vars: HashMap<String, VarKind>,
}

impl Scope {
    pub fn of(model: &PedalModel) -> Self {
        let mut vars = HashMap::new();
        for (i, n) in model.bool_vars.iter().enumerate() {
            vars.entry(n.text.clone()).or_insert(VarKind::Bool(i));
        }
        for (i, n) in model.plane_vars.iter().enumerate() {
            vars.entry(n.text.clone()).or_insert(VarKind::Plane(i));
        }
        Scope { vars }
    }

    pub fn lookup(&self, name: &str) -> Option<VarKind> {
        self.vars.get(name).copied()
    }
}

struct Checker<'a> {
    scope: &'a Scope,
    diags: Vec<Diagnostic>,
}

impl Checker<'_> {
    fn operand(&mut self, op: &Operand) -> Option<Domain> {
        match op {
            Operand::Var(name) => self.var(name).map(VarKind::domain),
            Operand::OutputType(_) => Some(Domain::XRay),
            Operand::OutputPlane(_) => Some(Domain::Plane),
            Operand::Lit(v, _) => Some(v.domain()),
        }
    }

    fn var(&mut self, name: &Name) -> Option<VarKind> {
        let kind = self.scope.lookup(&name.text);
        if kind.is_none() {
            self.diags.push(Diagnostic::new(
                DiagCode::UndeclaredVariable,
                name.span,
                format!("variable `{}` is not declared", name.text),
            ));
        }
        kind
    }

    fn guard(&mut self, g: &GuardExpr) {
        match g {
            GuardExpr::Lit(..) => {}
            GuardExpr::Var(name) => {
                if let Some(kind) = self.var(name) {
                    if kind.domain() != Domain::Bool {
                        self.diags.push(Diagnostic::new(
                            DiagCode::TypeMismatch,
                            name.span,
                            format!(
                                "`{}` is a {} variable, expected boolean",
                                name.text,
                                kind.domain()
                            ),
                        ));
                    }
                }
            }
            GuardExpr::Eq(lhs, rhs) => {
                let l = self.operand(lhs);
                let r = self.operand(rhs);
                if let (Some(l), Some(r)) = (l, r) {
                    if l != r {
                        self.diags.push(Diagnostic::new(
                            DiagCode::TypeMismatch,
                            lhs.span(),
                            format!("cannot compare {l} with {r}"),
                        ));
                    }
                }
            }
            GuardExpr::Not(e) => self.guard(e),
            GuardExpr::And(a, b) | GuardExpr::Or(a, b) => {
                self.guard(a);
                self.guard(b);
            }
        }
    }

    fn target(&mut self, t: &Target) -> Option<Domain> {
        match t {
            Target::Var(name) => self.var(name).map(VarKind::domain),
            Target::OutputType(_) => Some(Domain::XRay),
            Target::OutputPlane(_) => Some(Domain::Plane),
        }
    }

    fn statements(&mut self, body: &[Statement]) {
        for stmt in body {
            match stmt {
                Statement::Assign { target, value } => {
                    let t = self.target(target);
                    let v = self.operand(value);
                    if let (Some(t), Some(v)) = (t, v) {
                        if t != v {
                            self.diags.push(Diagnostic::new(
                                DiagCode::TypeMismatch,
                                value.span(),
                                format!("cannot assign {v} value to {t} target"),
                            ));
                        }
                    }
                }
                Statement::If {
                    cond,
                    then_branch,
                    else_branch,
                } => {
                    self.guard(cond);
                    self.statements(then_branch);
                    self.statements(else_branch);
                }
            }
        }
    }
}

/// Checks a guard expression against the variables of `model`.
pub fn validate_guard(model: &PedalModel, guard: &GuardExpr) -> Vec<Diagnostic> {
    let scope = Scope::of(model);
    let mut checker = Checker {
        scope: &scope,
        diags: Vec::new(),
    };
    checker.guard(guard);
    checker.diags
}

/// Returns every violated well-formedness condition; empty means valid.
pub fn validate(model: &PedalModel) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    // Declarations: one shared namespace.
    let mut declared: HashMap<&str, &str> = HashMap::new();
    let sections = [
        ("action", &model.input_actions),
        ("boolean variable", &model.bool_vars),
        ("plane variable", &model.plane_vars),
    ];
    for (what, names) in sections {
        for name in names.iter() {
            if RESERVED_NAMES.contains(&name.text.as_str()) {
                diags.push(Diagnostic::new(
                    DiagCode::ReservedName,
                    name.span,
                    format!("`{}` is reserved and cannot name a {what}", name.text),
                ));
            }
            if let Some(prev) = declared.insert(&name.text, what) {
                diags.push(Diagnostic::new(
                    DiagCode::DuplicateDeclaration,
                    name.span,
                    format!("`{}` already declared as {prev}", name.text),
                ));
            }
        }
    }

    // Rules: bijection with the declared actions.
    let actions: HashSet<&str> = model.input_actions.iter().map(|n| n.as_str()).collect();
    let mut ruled: HashSet<&str> = HashSet::new();
    for rule in &model.rules {
        let a = rule.action.as_str();
        if !actions.contains(a) {
            diags.push(Diagnostic::new(
                DiagCode::UnknownAction,
                rule.action.span,
                format!("rule for undeclared action `{a}`"),
            ));
        } else if !ruled.insert(a) {
            diags.push(Diagnostic::new(
                DiagCode::DuplicateRule,
                rule.action.span,
                format!("second rule for action `{a}`; exactly one rule per action is allowed"),
            ));
        }
    }
    for action in &model.input_actions {
        if !ruled.contains(action.as_str()) {
            diags.push(Diagnostic::new(
                DiagCode::MissingRule,
                action.span,
                format!("action `{}` has no rule", action.text),
            ));
        }
    }

    // Init: total over declared variables, nothing else.
    let scope = Scope::of(model);
    let mut initialized: HashSet<&str> = HashSet::new();
    for entry in &model.init {
        match &entry.target {
            Target::OutputType(span) | Target::OutputPlane(span) => {
                diags.push(Diagnostic::new(
                    DiagCode::OutputRegisterInit,
                    *span,
                    "output registers start as Standby/None and cannot be initialized",
                ));
            }
            Target::Var(name) => match scope.lookup(&name.text) {
                None => diags.push(Diagnostic::new(
                    DiagCode::UndeclaredVariable,
                    name.span,
                    format!("variable `{}` is not declared", name.text),
                )),
                Some(kind) => {
                    if !initialized.insert(&name.text) {
                        diags.push(Diagnostic::new(
                            DiagCode::DuplicateInit,
                            name.span,
                            format!("`{}` initialized twice", name.text),
                        ));
                    }
                    if kind.domain() != entry.value.domain() {
                        diags.push(Diagnostic::new(
                            DiagCode::TypeMismatch,
                            name.span,
                            format!(
                                "`{}` is a {} variable but is initialized with {} value `{}`",
                                name.text,
                                kind.domain(),
                                entry.value.domain(),
                                entry.value
                            ),
                        ));
                    }
                }
            },
        }
    }
    for var in model.bool_vars.iter().chain(&model.plane_vars) {
        if !initialized.contains(var.as_str()) {
            diags.push(Diagnostic::new(
                DiagCode::MissingInit,
                var.span,
                format!("variable `{}` has no initial value", var.text),
            ));
        }
    }

    let mut checker = Checker {
        scope: &scope,
        diags: Vec::new(),
    };
    for rule in &model.rules {
        checker.guard(&rule.guard);
        checker.statements(&rule.body);
    }
    diags.extend(checker.diags);
    diags
}
