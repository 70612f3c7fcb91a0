//! Reference models and model generators used by tests, benchmarks and the
//! command-line tool.

use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsl::{parse, PedalModel};
use crate::lts::{Lts, LtsBuilder};
use crate::semantics::{Label, Plane, XRay};

pub const FLUORO: &str = include_str!("../models/fluoro.phdsl");
pub const ONE_RULE: &str = include_str!("../models/one_rule.phdsl");
pub const REQUEST_GUARDED: &str = include_str!("../models/request_guarded.phdsl");
pub const REQUEST_UNGUARDED: &str = include_str!("../models/request_unguarded.phdsl");
pub const BIPLANE: &str = include_str!("../models/biplane.phdsl");

/// All bundled sources as `(name, text)`.
pub const BUNDLED: [(&str, &str); 5] = [
    ("fluoro", FLUORO),
    ("one_rule", ONE_RULE),
    ("request_guarded", REQUEST_GUARDED),
    ("request_unguarded", REQUEST_UNGUARDED),
    ("biplane", BIPLANE),
];

pub fn model(src: &str) -> PedalModel {
    parse(src).unwrap_or_else(|d| panic!("bundled model does not parse:\n{d}"))
}

/// Modulo-3 counter: `count(0) count(1) count(2) reset` in a cycle.
pub fn counter_lts() -> Lts {
    let mut b = LtsBuilder::new(4, 0);
    for n in 0..3 {
        b.add_transition(n, &Label::input(format!("count({n})")), n + 1);
    }
    b.add_transition(3, &Label::input("reset"), 0);
    b.finish()
}

/// The counter with its initial state duplicated: `reset` leads to a copy
/// of state 0 instead of back to it.
pub fn unfolded_counter_lts() -> Lts {
    let mut b = LtsBuilder::new(5, 0);
    for n in 0..3 {
        b.add_transition(n, &Label::input(format!("count({n})")), n + 1);
    }
    b.add_transition(3, &Label::input("reset"), 4);
    b.add_transition(4, &Label::input("count(0)"), 1);
    b.finish()
}

/// Shape parameters for [`random_model_source`].
#[derive(Debug, Clone, Copy)]
pub struct RandomModelConfig {
    pub min_rules: usize,
    pub max_rules: usize,
    pub max_bools: usize,
    pub max_planes: usize,
}

impl Default for RandomModelConfig {
    fn default() -> Self {
        RandomModelConfig {
            min_rules: 3,
            max_rules: 8,
            max_bools: 3,
            max_planes: 2,
        }
    }
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    bools: &'a [String],
    planes: &'a [String],
}

impl Gen<'_> {
    fn plane_operand(&mut self, allow_register: bool) -> String {
        let roll = self.rng.gen_range(0..4);
        if roll == 0 && allow_register {
            "OutputPlane".into()
        } else if roll == 1 && !self.planes.is_empty() {
            self.planes.choose(&mut self.rng).unwrap().clone()
        } else {
            Plane::ALL.choose(&mut self.rng).unwrap().to_string()
        }
    }

    fn atom(&mut self) -> String {
        let roll = self.rng.gen_range(0..10);
        if roll < 5 && !self.bools.is_empty() {
            let v = self.bools.choose(&mut self.rng).unwrap().clone();
            match self.rng.gen_range(0..3) {
                0 => v,
                1 => format!("!{v}"),
                _ => format!("{v} == {}", self.rng.gen_bool(0.5)),
            }
        } else if roll < 7 && !self.planes.is_empty() {
            let p = self.planes.choose(&mut self.rng).unwrap().clone();
            format!("{p} == {}", self.plane_operand(false))
        } else if roll < 8 {
            format!("OutputType == {}", XRay::ALL.choose(&mut self.rng).unwrap())
        } else if roll < 9 {
            "true".into()
        } else {
            format!("OutputPlane == {}", self.plane_operand(false))
        }
    }

    fn guard(&mut self, depth: usize) -> String {
        if depth == 0 || self.rng.gen_bool(0.5) {
            return self.atom();
        }
        let a = self.guard(depth - 1);
        let b = self.guard(depth - 1);
        match self.rng.gen_range(0..3) {
            0 => format!("({a}) && ({b})"),
            1 => format!("({a}) || ({b})"),
            _ => format!("!({a})"),
        }
    }

    fn assignment(&mut self) -> String {
        let roll = self.rng.gen_range(0..10);
        if roll < 4 && !self.bools.is_empty() {
            let v = self.bools.choose(&mut self.rng).unwrap().clone();
            let value = if self.rng.gen_bool(0.8) {
                self.rng.gen_bool(0.5).to_string()
            } else {
                self.bools.choose(&mut self.rng).unwrap().clone()
            };
            format!("{v} := {value}")
        } else if roll < 6 && !self.planes.is_empty() {
            let p = self.planes.choose(&mut self.rng).unwrap().clone();
            format!("{p} := {}", self.plane_operand(true))
        } else if roll < 8 {
            format!("OutputType := {}", XRay::ALL.choose(&mut self.rng).unwrap())
        } else {
            format!("OutputPlane := {}", self.plane_operand(false))
        }
    }

    fn body(&mut self, depth: usize, max_len: usize) -> Vec<String> {
        let len = self.rng.gen_range(0..=max_len);
        (0..len)
            .map(|_| {
                if depth > 0 && self.rng.gen_bool(0.25) {
                    let cond = self.guard(1);
                    let then = self.body(depth - 1, 2).join("; ");
                    if self.rng.gen_bool(0.5) {
                        let els = self.body(depth - 1, 2).join("; ");
                        format!("if {cond} then {then} else {els} fi")
                    } else {
                        format!("if {cond} then {then} fi")
                    }
                } else {
                    self.assignment()
                }
            })
            .collect()
    }
}

/// Source text of a random well-formed model, deterministic in `seed`.
pub fn random_model_source(seed: u64, cfg: RandomModelConfig) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_rules = rng.gen_range(cfg.min_rules..=cfg.max_rules);
    let n_bools = rng.gen_range(0..=cfg.max_bools);
    let n_planes = rng.gen_range(0..=cfg.max_planes);
    let actions: Vec<String> = (0..n_rules).map(|i| format!("A{i}")).collect();
    let bools: Vec<String> = (0..n_bools).map(|i| format!("b{i}")).collect();
    let planes: Vec<String> = (0..n_planes).map(|i| format!("p{i}")).collect();

    let mut src = String::new();
    let _ = writeln!(src, "InActions {}", actions.join(", "));
    if !bools.is_empty() {
        let _ = writeln!(src, "BoolVars {}", bools.join(", "));
    }
    if !planes.is_empty() {
        let _ = writeln!(src, "PlaneVars {}", planes.join(", "));
    }
    let mut inits = Vec::new();
    for b in &bools {
        inits.push(format!("{b} = {}", rng.gen_bool(0.5)));
    }
    for p in &planes {
        inits.push(format!("{p} = {}", Plane::ALL.choose(&mut rng).unwrap()));
    }
    if !inits.is_empty() {
        let _ = writeln!(src, "Init {}", inits.join(", "));
    }

    let mut order: Vec<usize> = (0..n_rules).collect();
    order.shuffle(&mut rng);
    let mut gen = Gen {
        rng,
        bools: &bools,
        planes: &planes,
    };
    for i in order {
        let guard = gen.guard(2);
        let body = gen.body(1, 4).join(";\n    ");
        let _ = writeln!(
            src,
            "\nRule {}:\n  guard {guard}\n  do\n    {body}\n  end",
            actions[i]
        );
    }
    src
}

pub fn random_model(seed: u64, cfg: RandomModelConfig) -> PedalModel {
    let src = random_model_source(seed, cfg);
    parse(&src).unwrap_or_else(|d| panic!("generated model does not parse:\n{d}\n{src}"))
}

/// A controller with `n_actions` inputs (at least 3) whose state space grows
/// exponentially: `(n_actions - 1) / 2` independent request flags, each with
/// a set and a clear action, plus one action cycling the selected plane.
pub fn synthetic_model_source(n_actions: usize) -> String {
    let n_actions = n_actions.max(3);
    let n_flags = (n_actions - 1) / 2;
    let mut actions = Vec::new();
    for i in 0..n_flags {
        actions.push(format!("Set{i}"));
        actions.push(format!("Clear{i}"));
    }
    actions.push("Cycle".to_string());
    // Odd leftovers become always-enabled no-ops on the outputs.
    while actions.len() < n_actions {
        actions.push(format!("Idle{}", actions.len()));
    }
    let flags: Vec<String> = (0..n_flags).map(|i| format!("f{i}")).collect();

    let mut src = String::new();
    let _ = writeln!(src, "InActions {}", actions.join(", "));
    let _ = writeln!(src, "BoolVars {}", flags.join(", "));
    let _ = writeln!(src, "PlaneVars Sel");
    let inits: Vec<String> = flags.iter().map(|f| format!("{f} = false")).collect();
    let _ = writeln!(src, "Init {}, Sel = FR", inits.join(", "));
    for (i, f) in flags.iter().enumerate() {
        let _ = writeln!(
            src,
            "\nRule Set{i}:\n  guard !{f}\n  do {f} := true; OutputType := Fluo; OutputPlane := Sel end"
        );
        let _ = writeln!(
            src,
            "\nRule Clear{i}:\n  guard {f}\n  do {f} := false; OutputType := Standby; OutputPlane := None end"
        );
    }
    let _ = writeln!(
        src,
        "\nRule Cycle:\n  guard true\n  do\n    if Sel == FR then Sel := LT else if Sel == LT then Sel := BI else Sel := FR fi fi;\n    \
         OutputType := SingleShot;\n    OutputPlane := Sel\n  end"
    );
    for a in actions.iter().filter(|a| a.starts_with("Idle")) {
        let _ = writeln!(src, "\nRule {a}:\n  guard true\n  do end");
    }
    src
}

pub fn synthetic_model(n_actions: usize) -> PedalModel {
    model(&synthetic_model_source(n_actions))
}
