//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

pub mod laws;

use std::collections::{HashSet, VecDeque};

use pedal_core::dsl::ast::{GuardExpr, Operand};
use pedal_core::lts::LtsBuilder;
use pedal_core::semantics::Value;
use pedal_core::verify::PropertySpec;
use pedal_core::{Engine, Label, Lts, Machine, SemState, State, XRay};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Disjoint union as plain adjacency lists over label strings.
struct Union {
    n: usize,
    edges: Vec<Vec<(String, usize)>>,
    init: (usize, usize),
}

impl Union {
    fn of(a: &Lts, b: &Lts) -> Self {
        let n = a.n_states() + b.n_states();
        let mut edges = vec![Vec::new(); n];
        for t in a.transitions() {
            edges[t.src].push((a.label(t.label).to_string(), t.dst));
        }
        let off = a.n_states();
        for t in b.transitions() {
            edges[off + t.src].push((b.label(t.label).to_string(), off + t.dst));
        }
        Union {
            n,
            edges,
            init: (a.initial(), off + b.initial()),
        }
    }

    fn tau_reach(&self, p: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![p];
        seen[p] = true;
        let mut out = Vec::new();
        while let Some(s) = stack.pop() {
            out.push(s);
            for (l, t) in &self.edges[s] {
                if l == "tau" && !seen[*t] {
                    seen[*t] = true;
                    stack.push(*t);
                }
            }
        }
        out
    }
}

/// Greatest fixpoint by repeated removal of pairs that violate `ok`.
fn gfp(u: &Union, ok: impl Fn(&[Vec<bool>], usize, usize) -> bool) -> Vec<Vec<bool>> {
    let mut r = vec![vec![true; u.n]; u.n];
    loop {
        let mut changed = false;
        for p in 0..u.n {
            for q in 0..u.n {
                if r[p][q] && !(ok(&r, p, q) && ok(&r, q, p)) {
                    r[p][q] = false;
                    r[q][p] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return r;
        }
    }
}

pub fn strong_oracle(a: &Lts, b: &Lts) -> bool {
    let u = Union::of(a, b);
    let r = gfp(&u, |r, p, q| {
        u.edges[p]
            .iter()
            .all(|(l, p2)| u.edges[q].iter().any(|(m, q2)| l == m && r[*p2][*q2]))
    });
    r[u.init.0][u.init.1]
}

/// Divergence-blind branching bisimilarity.
pub fn branching_oracle(a: &Lts, b: &Lts) -> bool {
    let u = Union::of(a, b);
    let closures: Vec<Vec<usize>> = (0..u.n).map(|s| u.tau_reach(s)).collect();
    let r = gfp(&u, |r, p, q| {
        u.edges[p].iter().all(|(l, p2)| {
            (l == "tau" && r[*p2][q])
                || closures[q]
                    .iter()
                    .any(|&q1| r[p][q1] && u.edges[q1].iter().any(|(m, q2)| l == m && r[*p2][*q2]))
        })
    });
    r[u.init.0][u.init.1]
}

const LABELS: [&str; 3] = ["a", "b", "tau"];

pub fn random_lts(rng: &mut ChaCha8Rng, n: usize) -> Lts {
    let mut b = LtsBuilder::new(n, 0);
    let edges = rng.gen_range(0..=2 * n);
    for _ in 0..edges {
        let l = LABELS[rng.gen_range(0..LABELS.len())];
        b.add_transition(
            rng.gen_range(0..n),
            &l.parse().unwrap(),
            rng.gen_range(0..n),
        );
    }
    b.finish()
}

/// Copy of `lts` with states renumbered and one transition replaced by a
/// detour through a fresh state via `tau`.
fn stutter_copy(rng: &mut ChaCha8Rng, lts: &Lts) -> Lts {
    let n = lts.n_states();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let ts = lts.transitions();
    let split = if ts.is_empty() {
        None
    } else {
        Some(rng.gen_range(0..ts.len()))
    };
    let mut b = LtsBuilder::new(n, perm[lts.initial()]);
    for (i, t) in ts.iter().enumerate() {
        let label = lts.label(t.label);
        if Some(i) == split {
            let mid = b.add_state();
            b.add_transition(perm[t.src], &Label::Tau, mid);
            b.add_transition(mid, label, perm[t.dst]);
        } else {
            b.add_transition(perm[t.src], label, perm[t.dst]);
        }
    }
    b.finish()
}

/// A pair of small LTSs. A third of the pairs are independent, the rest are
/// related copies that are often, but not always, equivalent.
pub fn random_pair(seed: u64) -> (Lts, Lts) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=7);
    let a = random_lts(&mut rng, n);
    let b = match seed % 3 {
        0 => {
            let m = rng.gen_range(1..=8);
            random_lts(&mut rng, m)
        }
        1 => stutter_copy(&mut rng, &a),
        _ => {
            let c = stutter_copy(&mut rng, &a);
            let mut bld = LtsBuilder::new(c.n_states(), c.initial());
            for t in c.transitions() {
                bld.add_transition(t.src, c.label(t.label), t.dst);
            }
            let l = LABELS[rng.gen_range(0..LABELS.len())];
            let s = rng.gen_range(0..c.n_states());
            let d = rng.gen_range(0..c.n_states());
            bld.add_transition(s, &l.parse().unwrap(), d);
            bld.finish()
        }
    };
    (a, b)
}

/// Reachable semantic states by depth-first search over the engine.
pub fn reachable(machine: &Machine, engine: Engine) -> Vec<SemState> {
    let init = machine.initial_sem_state();
    let mut seen = HashSet::from([init.clone()]);
    let mut stack = vec![init];
    let mut out = Vec::new();
    while let Some(q) = stack.pop() {
        for (_, next) in machine.successors(engine, &q) {
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
        out.push(q);
    }
    out
}

fn operand(machine: &Machine, s: &State, op: &Operand) -> Value {
    match op {
        Operand::Var(n) => match machine.bool_value(s, n.as_str()) {
            Some(b) => Value::Bool(b),
            None => Value::Plane(machine.plane_value(s, n.as_str()).expect("declared")),
        },
        Operand::OutputType(_) => Value::XRay(s.out_type),
        Operand::OutputPlane(_) => Value::Plane(s.out_plane),
        Operand::Lit(v, _) => *v,
    }
}

/// Tree-walking guard evaluation by variable name.
pub fn eval_guard(machine: &Machine, s: &State, g: &GuardExpr) -> bool {
    match g {
        GuardExpr::Lit(b, _) => *b,
        GuardExpr::Var(n) => machine.bool_value(s, n.as_str()).expect("bool variable"),
        GuardExpr::Eq(a, b) => operand(machine, s, a) == operand(machine, s, b),
        GuardExpr::Not(a) => !eval_guard(machine, s, a),
        GuardExpr::And(a, b) => eval_guard(machine, s, a) && eval_guard(machine, s, b),
        GuardExpr::Or(a, b) => eval_guard(machine, s, a) || eval_guard(machine, s, b),
    }
}

/// Whether `prop` holds, judged state by state over all reachable states.
pub fn holds_by_enumeration(machine: &Machine, engine: Engine, prop: &PropertySpec) -> bool {
    reachable(machine, engine).iter().all(|q| match prop {
        PropertySpec::DeadlockFree => !machine.successors(engine, q).is_empty(),
        PropertySpec::Invariant(g) => {
            !matches!(q, SemState::AwaitingInput(_)) || eval_guard(machine, q.state(), g)
        }
        PropertySpec::NoOutputWithout(g) => {
            q.state().out_type == XRay::Standby || eval_guard(machine, q.state(), g)
        }
    })
}

/// States at which `prop` fails.
pub fn violating(machine: &Machine, engine: Engine, prop: &PropertySpec, q: &SemState) -> bool {
    match prop {
        PropertySpec::DeadlockFree => machine.successors(engine, q).is_empty(),
        PropertySpec::Invariant(g) => {
            matches!(q, SemState::AwaitingInput(_)) && !eval_guard(machine, q.state(), g)
        }
        PropertySpec::NoOutputWithout(g) => {
            q.state().out_type != XRay::Standby && !eval_guard(machine, q.state(), g)
        }
    }
}

/// Breadth-first distances, used to check counterexample minimality.
pub fn bfs_depth(
    machine: &Machine,
    engine: Engine,
    target: impl Fn(&SemState) -> bool,
) -> Option<usize> {
    let init = machine.initial_sem_state();
    let mut seen = HashSet::from([init.clone()]);
    let mut queue = VecDeque::from([(init, 0)]);
    while let Some((q, d)) = queue.pop_front() {
        if target(&q) {
            return Some(d);
        }
        for (_, next) in machine.successors(engine, &q) {
            if seen.insert(next.clone()) {
                queue.push_back((next, d + 1));
            }
        }
    }
    None
}
