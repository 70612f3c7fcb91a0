//! On-the-fly testing: choose a move, execute it, check it, repeat.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::adapter::Adapter;
use super::suspension::Spec;
use super::{check_observation, Verdict};
use crate::semantics::Label;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnlineConfig {
    pub max_steps: usize,
    pub seed: u64,
    /// Chance of sending an input when one is enabled.
    pub stimulate_probability: f64,
}

impl Default for OnlineConfig {
    fn default() -> Self {
        OnlineConfig {
            max_steps: 200,
            seed: 0,
            stimulate_probability: 0.6,
        }
    }
}

impl OnlineConfig {
    pub fn new(max_steps: usize, seed: u64) -> Self {
        OnlineConfig {
            max_steps,
            seed,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OnlineReport {
    pub verdict: Verdict,
    pub trace: Vec<Label>,
    pub steps: usize,
}

/// Resets the SUT, then runs up to `max_steps` stimulate/observe steps.
pub fn run_online<A: Adapter + ?Sized>(
    spec: &Spec,
    adapter: &mut A,
    config: OnlineConfig,
) -> OnlineReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut trace = Vec::new();
    let report = |verdict, trace, steps| OnlineReport {
        verdict,
        trace,
        steps,
    };
    if let Err(e) = adapter.reset() {
        return report(Verdict::adapter(e), trace, 0);
    }
    let mut states = spec.initial();
    for step in 0..config.max_steps {
        let inputs = spec.enabled_inputs(&states);
        if !inputs.is_empty() && rng.gen_bool(config.stimulate_probability) {
            let action = inputs.choose(&mut rng).expect("non-empty");
            if let Err(e) = adapter.stimulate(action) {
                return report(Verdict::adapter(e), trace, step);
            }
            let label = Label::input(action.as_str());
            states = spec.after(&states, &label);
            trace.push(label);
            continue;
        }
        let observed = match adapter.observe() {
            Ok(o) => o.label(),
            Err(e) => return report(Verdict::adapter(e), trace, step),
        };
        if let Err(ev) = check_observation(spec, &mut states, &mut trace, observed) {
            return report(Verdict::Fail(ev), trace, step + 1);
        }
    }
    report(Verdict::Pass, trace, config.max_steps)
}
