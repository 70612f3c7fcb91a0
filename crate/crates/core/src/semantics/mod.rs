//! Labeled-transition-system semantics of validated models.
//!
//! A [`Machine`] alternates between accepting an input whose guard holds
//! (the whole do clause is applied atomically) and emitting a single
//! `output(OutputType, OutputPlane)` action. The tau engine additionally
//! inserts one internal step between the input and the output.

pub mod eval;
pub mod label;
pub mod state;
pub mod value;

use std::collections::HashMap;
use std::fmt::Write;

pub use eval::{Guard, Unresolved};
pub use label::Label;
pub use state::{Engine, SemState, State};
pub use value::{Plane, Value, XRay};

use crate::dsl::ast::{GuardExpr, PedalModel, Statement, Target};
use crate::dsl::diag::Diagnostics;
use crate::dsl::validate::{validate, Scope};
use eval::Op;

/// Engine-level transition label with the input resolved to a rule index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Input(usize),
    Output(XRay, Plane),
    Tau,
}

#[derive(Debug, Clone)]
struct CompiledRule {
    guard: Guard,
    body: Vec<Op>,
}

/// A validated model prepared for execution.
#[derive(Debug, Clone)]
pub struct Machine {
    model: PedalModel,
    scope: Scope,
    rules: Vec<CompiledRule>,
    rule_by_action: HashMap<String, usize>,
    initial: State,
}

impl Machine {
    pub fn new(model: &PedalModel) -> Result<Self, Diagnostics> {
        let diags = validate(model);
        if !diags.is_empty() {
            return Err(Diagnostics(diags));
        }
        let scope = Scope::of(model);
        let rules = model
            .rules
            .iter()
            .map(|r| CompiledRule {
                guard: eval::compile_guard(&scope, &r.guard).expect("validated guard"),
                body: eval::compile_body(&scope, &r.body).expect("validated body"),
            })
            .collect();
        let rule_by_action = model
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.action.text.clone(), i))
            .collect();

        let mut initial = State {
            bools: vec![false; model.bool_vars.len()],
            planes: vec![Plane::None; model.plane_vars.len()],
            out_type: XRay::Standby,
            out_plane: Plane::None,
        };
        for entry in &model.init {
            if let Target::Var(n) = &entry.target {
                match (scope.lookup(&n.text), entry.value) {
                    (Some(crate::dsl::validate::VarKind::Bool(i)), Value::Bool(b)) => {
                        initial.bools[i] = b
                    }
                    (Some(crate::dsl::validate::VarKind::Plane(i)), Value::Plane(p)) => {
                        initial.planes[i] = p
                    }
                    _ => unreachable!("validated init entry"),
                }
            }
        }

        Ok(Machine {
            model: model.clone(),
            scope,
            rules,
            rule_by_action,
            initial,
        })
    }

    pub fn model(&self) -> &PedalModel {
        &self.model
    }

    /// Init values for the declared variables; output registers Standby/None.
    pub fn initial_state(&self) -> State {
        self.initial.clone()
    }

    pub fn initial_sem_state(&self) -> SemState {
        SemState::AwaitingInput(self.initial_state())
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Action name of the rule at `index` (rule declaration order).
    pub fn action_name(&self, index: usize) -> &str {
        &self.model.rules[index].action.text
    }

    pub fn rule_index(&self, action: &str) -> Option<usize> {
        self.rule_by_action.get(action).copied()
    }

    pub fn compile_guard(&self, g: &GuardExpr) -> Result<Guard, Unresolved> {
        eval::compile_guard(&self.scope, g)
    }

    /// Evaluates a guard expression written against this model.
    ///
    /// # Panics
    ///
    /// If `g` mentions names the model does not declare; use
    /// [`Machine::compile_guard`] for untrusted expressions.
    pub fn eval_guard(&self, g: &GuardExpr, s: &State) -> bool {
        self.compile_guard(g)
            .unwrap_or_else(|e| panic!("guard not valid for this model: {e}"))
            .eval(s)
    }

    /// Left-to-right evaluation of a statement list.
    ///
    /// # Panics
    ///
    /// If the statements mention names the model does not declare.
    pub fn eval_statements(&self, body: &[Statement], s: &State) -> State {
        let ops = eval::compile_body(&self.scope, body)
            .unwrap_or_else(|e| panic!("statements not valid for this model: {e}"));
        let mut next = s.clone();
        eval::run(&ops, &mut next);
        next
    }

    pub fn is_enabled(&self, rule: usize, s: &State) -> bool {
        self.rules[rule].guard.eval(s)
    }

    /// Rules whose guard holds in `s`, in declaration order.
    pub fn enabled_rules<'a>(&'a self, s: &'a State) -> impl Iterator<Item = usize> + 'a {
        (0..self.rules.len()).filter(move |&i| self.is_enabled(i, s))
    }

    /// Applies the do clause of `rule` to `s` (the guard is not checked).
    pub fn fire(&self, rule: usize, s: &State) -> State {
        let mut next = s.clone();
        eval::run(&self.rules[rule].body, &mut next);
        next
    }

    /// Engine transitions from `q` with inputs as rule indices, in
    /// deterministic order.
    pub fn steps(&self, engine: Engine, q: &SemState) -> Vec<(Step, SemState)> {
        match q {
            SemState::AwaitingInput(s) => self
                .enabled_rules(s)
                .map(|i| {
                    let next = self.fire(i, s);
                    let q = match engine {
                        Engine::Direct => SemState::AwaitingOutput(next),
                        Engine::Tau => SemState::Evaluating(next),
                    };
                    (Step::Input(i), q)
                })
                .collect(),
            SemState::AwaitingOutput(s) => vec![(
                Step::Output(s.out_type, s.out_plane),
                SemState::AwaitingInput(s.clone()),
            )],
            SemState::Evaluating(s) => match engine {
                Engine::Tau => vec![(Step::Tau, SemState::AwaitingOutput(s.clone()))],
                Engine::Direct => Vec::new(),
            },
        }
    }

    pub fn label_of(&self, step: Step) -> Label {
        match step {
            Step::Input(i) => Label::Input(self.action_name(i).to_string()),
            Step::Output(x, p) => Label::Output(x, p),
            Step::Tau => Label::Tau,
        }
    }

    pub fn successors(&self, engine: Engine, q: &SemState) -> Vec<(Label, SemState)> {
        self.steps(engine, q)
            .into_iter()
            .map(|(step, q)| (self.label_of(step), q))
            .collect()
    }

    pub fn successors_direct(&self, q: &SemState) -> Vec<(Label, SemState)> {
        self.successors(Engine::Direct, q)
    }

    pub fn successors_tau(&self, q: &SemState) -> Vec<(Label, SemState)> {
        self.successors(Engine::Tau, q)
    }

    pub fn bool_value(&self, s: &State, name: &str) -> Option<bool> {
        match self.scope.lookup(name)? {
            crate::dsl::validate::VarKind::Bool(i) => Some(s.bools[i]),
            _ => None,
        }
    }

    pub fn plane_value(&self, s: &State, name: &str) -> Option<Plane> {
        match self.scope.lookup(name)? {
            crate::dsl::validate::VarKind::Plane(i) => Some(s.planes[i]),
            _ => None,
        }
    }

    /// Human-readable valuation, e.g. `{v=true, p=FR, OutputType=Fluo, OutputPlane=FR}`.
    pub fn format_state(&self, s: &State) -> String {
        let mut out = String::from("{");
        for (name, v) in self.model.bool_vars.iter().zip(&s.bools) {
            let _ = write!(out, "{}={v}, ", name.text);
        }
        for (name, p) in self.model.plane_vars.iter().zip(&s.planes) {
            let _ = write!(out, "{}={p}, ", name.text);
        }
        let _ = write!(
            out,
            "OutputType={}, OutputPlane={}}}",
            s.out_type, s.out_plane
        );
        out
    }
}
