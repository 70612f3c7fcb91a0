//! Breadth-first state-space generation from a semantics engine.

use std::collections::HashMap;

use super::{Lts, LtsBuilder};
use crate::semantics::{Engine, Machine, SemState, Step};

pub const DEFAULT_MAX_STATES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExploreError {
    /// The partial LTS covers the first `max_states` discovered states and
    /// is flagged incomplete.
    #[error("STATE_LIMIT_EXCEEDED: more than {max_states} reachable states")]
    StateLimitExceeded {
        max_states: usize,
        partial: Box<Lts>,
    },
}

/// Explores the reachable state space of `machine` under `engine`.
///
/// States are numbered in BFS discovery order starting from the initial
/// state 0, and the successors of each state are visited in rule declaration
/// order, so the result is identical across runs.
pub fn explore(machine: &Machine, engine: Engine, max_states: usize) -> Result<Lts, ExploreError> {
    let max_states = max_states.max(1);
    let initial = machine.initial_sem_state();
    let mut index: HashMap<SemState, usize> = HashMap::new();
    let mut states: Vec<SemState> = vec![initial.clone()];
    index.insert(initial, 0);

    let mut builder = LtsBuilder::new(1, 0);
    let mut label_ids: HashMap<Step, usize> = HashMap::new();
    let mut truncated = false;
    let mut head = 0;

    while head < states.len() {
        let succ = machine.steps(engine, &states[head]);
        for (step, next) in succ {
            let dst = match index.get(&next) {
                Some(&i) => i,
                None if states.len() >= max_states => {
                    truncated = true;
                    continue;
                }
                None => {
                    let i = builder.add_state();
                    index.insert(next.clone(), i);
                    states.push(next);
                    i
                }
            };
            let label = *label_ids
                .entry(step)
                .or_insert_with(|| builder.intern(&machine.label_of(step)));
            builder.add_transition_id(head, label, dst);
        }
        head += 1;
    }

    let lts = builder.finish().with_state_map(states, !truncated);
    if truncated {
        Err(ExploreError::StateLimitExceeded {
            max_states,
            partial: Box::new(lts),
        })
    } else {
        Ok(lts)
    }
}
