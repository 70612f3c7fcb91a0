//! Explicit labeled transition systems.

pub mod aut;
pub mod dot;
pub mod explore;

use std::collections::{HashMap, HashSet};

use crate::semantics::{Label, SemState};

pub use aut::{export_aut, import_aut, AutError};
pub use dot::export_dot;
pub use explore::{explore, ExploreError, DEFAULT_MAX_STATES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub src: usize,
    pub label: usize,
    pub dst: usize,
}

/// States `0..n_states`, an initial state and labeled transitions.
///
/// Labels are interned in order of first use; `label` fields of
/// [`Transition`] index into [`Lts::labels`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lts {
    n_states: usize,
    initial: usize,
    labels: Vec<Label>,
    transitions: Vec<Transition>,
    state_map: Option<Vec<SemState>>,
    complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LtsError {
    #[error("REQUIRES_COMPLETE_LTS: the state space was truncated during exploration")]
    RequiresCompleteLts,
    #[error("REQUIRES_STATE_MAP: the LTS carries no semantic states")]
    RequiresStateMap,
}

impl Lts {
    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, id: usize) -> &Label {
        &self.labels[id]
    }

    pub fn label_id(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn n_transitions(&self) -> usize {
        self.transitions.len()
    }

    /// False if exploration stopped at the state limit.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn state_map(&self) -> Option<&[SemState]> {
        self.state_map.as_deref()
    }

    pub fn without_state_map(mut self) -> Self {
        self.state_map = None;
        self
    }

    pub(crate) fn with_state_map(mut self, map: Vec<SemState>, complete: bool) -> Self {
        debug_assert_eq!(map.len(), self.n_states);
        self.state_map = Some(map);
        self.complete = complete;
        self
    }

    /// Outgoing `(label, dst)` pairs per state, in transition order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n_states];
        for t in &self.transitions {
            adj[t.src].push((t.label, t.dst));
        }
        adj
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_states];
        for t in &self.transitions {
            deg[t.src] += 1;
        }
        deg
    }

    pub fn require_complete(&self) -> Result<(), LtsError> {
        if self.complete {
            Ok(())
        } else {
            Err(LtsError::RequiresCompleteLts)
        }
    }
}

/// States with no outgoing transition.
pub fn deadlocks(lts: &Lts) -> Result<Vec<usize>, LtsError> {
    lts.require_complete()?;
    Ok(lts
        .out_degrees()
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d == 0)
        .map(|(s, _)| s)
        .collect())
}

/// Incremental constructor for [`Lts`]; drops duplicate transitions.
#[derive(Debug, Clone)]
pub struct LtsBuilder {
    n_states: usize,
    initial: usize,
    labels: Vec<Label>,
    label_ids: HashMap<Label, usize>,
    transitions: Vec<Transition>,
    seen: HashSet<Transition>,
}

impl LtsBuilder {
    pub fn new(n_states: usize, initial: usize) -> Self {
        LtsBuilder {
            n_states,
            initial,
            labels: Vec::new(),
            label_ids: HashMap::new(),
            transitions: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn add_state(&mut self) -> usize {
        self.n_states += 1;
        self.n_states - 1
    }

    pub fn intern(&mut self, label: &Label) -> usize {
        if let Some(&id) = self.label_ids.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.clone());
        self.label_ids.insert(label.clone(), id);
        id
    }

    /// Returns false if the transition was already present.
    pub fn add_transition_id(&mut self, src: usize, label: usize, dst: usize) -> bool {
        assert!(
            src < self.n_states && dst < self.n_states,
            "state index out of range"
        );
        let t = Transition { src, label, dst };
        if self.seen.insert(t) {
            self.transitions.push(t);
            true
        } else {
            false
        }
    }

    pub fn add_transition(&mut self, src: usize, label: &Label, dst: usize) -> bool {
        let id = self.intern(label);
        self.add_transition_id(src, id, dst)
    }

    pub fn finish(self) -> Lts {
        assert!(
            self.initial < self.n_states.max(1),
            "initial state out of range"
        );
        Lts {
            n_states: self.n_states.max(1),
            initial: self.initial,
            labels: self.labels,
            transitions: self.transitions,
            state_map: None,
            complete: true,
        }
    }
}
