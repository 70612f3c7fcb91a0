//! ioco operators over sets of specification states.

use std::collections::BTreeSet;

use crate::lts::{Lts, LtsBuilder};
use crate::semantics::{Engine, Label, Machine, SemState};

pub type StateSet = BTreeSet<SemState>;

/// A specification model seen through one semantics engine.
#[derive(Debug, Clone)]
pub struct Spec {
    machine: Machine,
    engine: Engine,
}

impl Spec {
    pub fn new(machine: Machine, engine: Engine) -> Self {
        Spec { machine, engine }
    }

    pub fn machine(&self) -> &Machine {
        &self.machine
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    /// No output and no internal step enabled.
    pub fn is_quiescent(&self, q: &SemState) -> bool {
        !self
            .machine
            .successors(self.engine, q)
            .iter()
            .any(|(l, _)| l.is_output() || l.is_tau())
    }

    pub fn tau_closure(&self, set: StateSet) -> StateSet {
        let mut closed = set.clone();
        let mut stack: Vec<SemState> = set.into_iter().collect();
        while let Some(q) = stack.pop() {
            for (l, next) in self.machine.successors(self.engine, &q) {
                if l.is_tau() && closed.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        closed
    }

    pub fn initial(&self) -> StateSet {
        self.tau_closure(StateSet::from([self.machine.initial_sem_state()]))
    }

    /// States reachable by `label` (then internal steps) from `set`.
    /// `after(S, delta)` keeps the quiescent members of `S`.
    pub fn after(&self, set: &StateSet, label: &Label) -> StateSet {
        match label {
            Label::Delta => set
                .iter()
                .filter(|q| self.is_quiescent(q))
                .cloned()
                .collect(),
            Label::Tau => self.tau_closure(set.clone()),
            _ => {
                let next = set
                    .iter()
                    .flat_map(|q| self.machine.successors(self.engine, q))
                    .filter(|(l, _)| l == label)
                    .map(|(_, q)| q)
                    .collect();
                self.tau_closure(next)
            }
        }
    }

    pub fn after_trace(&self, trace: &[Label]) -> StateSet {
        trace
            .iter()
            .fold(self.initial(), |set, label| self.after(&set, label))
    }

    /// Outputs enabled in `set`, plus delta if some member is quiescent.
    pub fn out_set(&self, set: &StateSet) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        for q in set {
            let mut quiet = true;
            for (l, _) in self.machine.successors(self.engine, q) {
                if l.is_output() {
                    out.insert(l);
                    quiet = false;
                } else if l.is_tau() {
                    quiet = false;
                }
            }
            if quiet {
                out.insert(Label::Delta);
            }
        }
        out
    }

    /// Action names enabled in some member of `set`, in rule order.
    pub fn enabled_inputs(&self, set: &StateSet) -> Vec<String> {
        let mut rules = BTreeSet::new();
        for q in set {
            if let SemState::AwaitingInput(s) = q {
                rules.extend(self.machine.enabled_rules(s));
            }
        }
        rules
            .into_iter()
            .map(|i| self.machine.action_name(i).to_string())
            .collect()
    }
}

/// Adds a `delta` self-loop to every quiescent state of an explored LTS.
pub fn suspension_lts(lts: &Lts) -> Lts {
    let mut quiet = vec![true; lts.n_states()];
    for t in lts.transitions() {
        let l = lts.label(t.label);
        if l.is_output() || l.is_tau() {
            quiet[t.src] = false;
        }
    }
    let mut b = LtsBuilder::new(lts.n_states(), lts.initial());
    for l in lts.labels() {
        b.intern(l);
    }
    for t in lts.transitions() {
        b.add_transition_id(t.src, t.label, t.dst);
    }
    for (s, &q) in quiet.iter().enumerate() {
        if q {
            b.add_transition(s, &Label::Delta, s);
        }
    }
    b.finish()
}
