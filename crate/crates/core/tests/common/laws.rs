//! Strategies and a name-based interpreter for do-clause laws.
#![allow(dead_code)]

use std::collections::HashMap;

use pedal_core::dsl::ast::{GuardExpr, Name, Operand, Span, Statement, Target};
use pedal_core::semantics::Value;
use pedal_core::{parse, Machine, Plane, State, XRay};
use proptest::prelude::*;

pub const LAW_MODEL: &str = "\
InActions A
BoolVars b0, b1, b2
PlaneVars p0, p1
Init b0 = false, b1 = false, b2 = false, p0 = None, p1 = None
Rule A:
  guard true
  do b0 := true
end
";

const BOOLS: [&str; 3] = ["b0", "b1", "b2"];
const PLANES: [&str; 2] = ["p0", "p1"];

pub fn law_machine() -> Machine {
    Machine::new(&parse(LAW_MODEL).expect("law model parses")).expect("law model validates")
}

fn plane() -> impl Strategy<Value = Plane> {
    prop::sample::select(Plane::ALL.to_vec())
}

fn xray() -> impl Strategy<Value = XRay> {
    prop::sample::select(XRay::ALL.to_vec())
}

pub fn state() -> impl Strategy<Value = State> {
    (
        prop::collection::vec(any::<bool>(), 3),
        prop::collection::vec(plane(), 2),
        xray(),
        plane(),
    )
        .prop_map(|(bools, planes, out_type, out_plane)| State {
            bools,
            planes,
            out_type,
            out_plane,
        })
}

fn var(names: &'static [&'static str]) -> impl Strategy<Value = Name> {
    prop::sample::select(names.to_vec()).prop_map(Name::new)
}

fn bool_operand() -> BoxedStrategy<Operand> {
    prop_oneof![
        any::<bool>().prop_map(|b| Operand::Lit(Value::Bool(b), Span::default())),
        var(&BOOLS).prop_map(Operand::Var),
    ]
    .boxed()
}

fn plane_operand() -> BoxedStrategy<Operand> {
    prop_oneof![
        plane().prop_map(|p| Operand::Lit(Value::Plane(p), Span::default())),
        var(&PLANES).prop_map(Operand::Var),
        Just(Operand::OutputPlane(Span::default())),
    ]
    .boxed()
}

fn xray_operand() -> BoxedStrategy<Operand> {
    prop_oneof![
        xray().prop_map(|x| Operand::Lit(Value::XRay(x), Span::default())),
        Just(Operand::OutputType(Span::default())),
    ]
    .boxed()
}

pub fn guard() -> BoxedStrategy<GuardExpr> {
    let leaf = prop_oneof![
        any::<bool>().prop_map(|b| GuardExpr::Lit(b, Span::default())),
        var(&BOOLS).prop_map(GuardExpr::Var),
        (bool_operand(), bool_operand()).prop_map(|(a, b)| GuardExpr::Eq(a, b)),
        (plane_operand(), plane_operand()).prop_map(|(a, b)| GuardExpr::Eq(a, b)),
        (xray_operand(), xray_operand()).prop_map(|(a, b)| GuardExpr::Eq(a, b)),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(GuardExpr::negate),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GuardExpr::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| GuardExpr::or(a, b)),
        ]
    })
    .boxed()
}

pub fn assignment() -> BoxedStrategy<Statement> {
    prop_oneof![
        (var(&BOOLS), bool_operand()).prop_map(|(n, value)| Statement::Assign {
            target: Target::Var(n),
            value
        }),
        (var(&PLANES), plane_operand()).prop_map(|(n, value)| Statement::Assign {
            target: Target::Var(n),
            value
        }),
        xray_operand().prop_map(|value| Statement::Assign {
            target: Target::OutputType(Span::default()),
            value
        }),
        plane_operand().prop_map(|value| Statement::Assign {
            target: Target::OutputPlane(Span::default()),
            value
        }),
    ]
    .boxed()
}

pub fn statement() -> BoxedStrategy<Statement> {
    assignment()
        .prop_recursive(2, 12, 3, |inner| {
            (
                guard(),
                prop::collection::vec(inner.clone(), 0..3),
                prop::collection::vec(inner, 0..3),
            )
                .prop_map(|(cond, then_branch, else_branch)| Statement::If {
                    cond,
                    then_branch,
                    else_branch,
                })
        })
        .boxed()
}

pub fn body() -> impl Strategy<Value = Vec<Statement>> {
    prop::collection::vec(statement(), 0..6)
}

/// Literal assignment to a variable chosen from all assignable slots.
pub fn literal_assignment_pair() -> impl Strategy<Value = (Statement, Statement)> {
    prop_oneof![
        (var(&BOOLS), any::<bool>(), any::<bool>()).prop_map(|(n, a, b)| {
            let mk = |v| Statement::Assign {
                target: Target::Var(n.clone()),
                value: Operand::Lit(Value::Bool(v), Span::default()),
            };
            (mk(a), mk(b))
        }),
        (var(&PLANES), plane(), plane()).prop_map(|(n, a, b)| {
            let mk = |v| Statement::Assign {
                target: Target::Var(n.clone()),
                value: Operand::Lit(Value::Plane(v), Span::default()),
            };
            (mk(a), mk(b))
        }),
        (xray(), xray()).prop_map(|(a, b)| {
            let mk = |v| Statement::Assign {
                target: Target::OutputType(Span::default()),
                value: Operand::Lit(Value::XRay(v), Span::default()),
            };
            (mk(a), mk(b))
        }),
    ]
}

/// Environment keyed by name; output registers use their DSL spelling.
type Env = HashMap<String, Value>;

fn to_env(s: &State) -> Env {
    let mut env = Env::new();
    for (i, n) in BOOLS.iter().enumerate() {
        env.insert(n.to_string(), Value::Bool(s.bools[i]));
    }
    for (i, n) in PLANES.iter().enumerate() {
        env.insert(n.to_string(), Value::Plane(s.planes[i]));
    }
    env.insert("OutputType".into(), Value::XRay(s.out_type));
    env.insert("OutputPlane".into(), Value::Plane(s.out_plane));
    env
}

fn from_env(env: &Env) -> State {
    let b = |n: &str| match env[n] {
        Value::Bool(v) => v,
        _ => unreachable!(),
    };
    let p = |n: &str| match env[n] {
        Value::Plane(v) => v,
        _ => unreachable!(),
    };
    State {
        bools: BOOLS.iter().map(|n| b(n)).collect(),
        planes: PLANES.iter().map(|n| p(n)).collect(),
        out_type: match env["OutputType"] {
            Value::XRay(x) => x,
            _ => unreachable!(),
        },
        out_plane: p("OutputPlane"),
    }
}

fn read(env: &Env, op: &Operand) -> Value {
    match op {
        Operand::Var(n) => env[n.as_str()],
        Operand::OutputType(_) => env["OutputType"],
        Operand::OutputPlane(_) => env["OutputPlane"],
        Operand::Lit(v, _) => *v,
    }
}

fn test(env: &Env, g: &GuardExpr) -> bool {
    match g {
        GuardExpr::Lit(b, _) => *b,
        GuardExpr::Var(n) => env[n.as_str()] == Value::Bool(true),
        GuardExpr::Eq(a, b) => read(env, a) == read(env, b),
        GuardExpr::Not(a) => !test(env, a),
        GuardExpr::And(a, b) => test(env, a) && test(env, b),
        GuardExpr::Or(a, b) => test(env, a) || test(env, b),
    }
}

fn exec(env: &mut Env, body: &[Statement]) {
    for st in body {
        match st {
            Statement::Assign { target, value } => {
                let v = read(env, value);
                let key = match target {
                    Target::Var(n) => n.as_str().to_string(),
                    Target::OutputType(_) => "OutputType".into(),
                    Target::OutputPlane(_) => "OutputPlane".into(),
                };
                env.insert(key, v);
            }
            Statement::If {
                cond,
                then_branch,
                else_branch,
            } => {
                let branch = if test(env, cond) {
                    then_branch
                } else {
                    else_branch
                };
                exec(env, branch);
            }
        }
    }
}

/// Reference interpretation of a do clause.
pub fn interpret(s: &State, body: &[Statement]) -> State {
    let mut env = to_env(s);
    exec(&mut env, body);
    from_env(&env)
}

pub fn interpret_guard(s: &State, g: &GuardExpr) -> bool {
    test(&to_env(s), g)
}
