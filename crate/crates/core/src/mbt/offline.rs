//! Test-case trees derived from the specification ahead of execution.

use std::collections::{BTreeMap, HashSet};
use std::fmt::{self, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::adapter::Adapter;
use super::suspension::{Spec, StateSet};
use super::{FailEvidence, Verdict};
use crate::semantics::Label;

/// Any observation missing from an `Observe` node means fail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestCase {
    Stimulus { input: String, next: Box<TestCase> },
    Observe { expected: BTreeMap<Label, TestCase> },
    Pass,
}

impl TestCase {
    pub fn depth(&self) -> usize {
        match self {
            TestCase::Pass => 0,
            TestCase::Stimulus { next, .. } => 1 + next.depth(),
            TestCase::Observe { expected } => {
                1 + expected.values().map(TestCase::depth).max().unwrap_or(0)
            }
        }
    }

    fn render(&self, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match self {
            TestCase::Pass => {
                let _ = writeln!(out, "{pad}pass");
            }
            TestCase::Stimulus { input, next } => {
                let _ = writeln!(out, "{pad}!{input}");
                next.render(indent + 1, out);
            }
            TestCase::Observe { expected } => {
                for (label, next) in expected {
                    let _ = writeln!(out, "{pad}?{label}");
                    next.render(indent + 1, out);
                }
            }
        }
    }
}

impl fmt::Display for TestCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render(0, &mut s);
        f.write_str(&s)
    }
}

const STIMULATE_PROBABILITY: f64 = 0.6;

fn derive(spec: &Spec, states: &StateSet, depth: usize, rng: &mut ChaCha8Rng) -> TestCase {
    if depth == 0 {
        return TestCase::Pass;
    }
    let inputs = spec.enabled_inputs(states);
    if !inputs.is_empty() && rng.gen_bool(STIMULATE_PROBABILITY) {
        let input = inputs.choose(rng).expect("non-empty").clone();
        let next = spec.after(states, &Label::input(input.as_str()));
        return TestCase::Stimulus {
            input,
            next: Box::new(derive(spec, &next, depth - 1, rng)),
        };
    }
    let expected = spec
        .out_set(states)
        .into_iter()
        .map(|o| {
            let next = spec.after(states, &o);
            let child = derive(spec, &next, depth - 1, rng);
            (o, child)
        })
        .collect();
    TestCase::Observe { expected }
}

/// Up to `count` distinct test cases of depth `depth`.
pub fn gen_tests(spec: &Spec, depth: usize, count: usize, seed: u64) -> Vec<TestCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let init = spec.initial();
    let mut seen = HashSet::new();
    let mut tests = Vec::new();
    let attempts = count.saturating_mul(50);
    for _ in 0..attempts {
        if tests.len() == count {
            break;
        }
        let tc = derive(spec, &init, depth, &mut rng);
        if seen.insert(tc.clone()) {
            tests.push(tc);
        }
        if depth == 0 {
            break;
        }
    }
    tests
}

/// Executes one test case from a freshly reset SUT.
pub fn run_testcase<A: Adapter + ?Sized>(spec: &Spec, tc: &TestCase, adapter: &mut A) -> Verdict {
    if *tc == TestCase::Pass {
        return Verdict::Pass;
    }
    if let Err(e) = adapter.reset() {
        return Verdict::adapter(e);
    }
    let mut states = spec.initial();
    let mut trace = Vec::new();
    let mut node = tc;
    loop {
        match node {
            TestCase::Pass => return Verdict::Pass,
            TestCase::Stimulus { input, next } => {
                if let Err(e) = adapter.stimulate(input) {
                    return Verdict::adapter(e);
                }
                let label = Label::input(input.as_str());
                states = spec.after(&states, &label);
                trace.push(label);
                node = next;
            }
            TestCase::Observe { expected } => {
                let observed = match adapter.observe() {
                    Ok(o) => o.label(),
                    Err(e) => return Verdict::adapter(e),
                };
                match expected.get(&observed) {
                    Some(child) => {
                        states = spec.after(&states, &observed);
                        trace.push(observed);
                        node = child;
                    }
                    None => {
                        return Verdict::Fail(FailEvidence {
                            trace,
                            observed,
                            allowed: expected.keys().cloned().collect(),
                            spec_states: states,
                        })
                    }
                }
            }
        }
    }
}
