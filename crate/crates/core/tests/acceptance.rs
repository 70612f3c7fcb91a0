//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::cell::Cell;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::laws;
use pedal_core::dsl::parse_guard;
use pedal_core::equiv::{equivalent, minimize, Relation};
use pedal_core::fixtures::{self, RandomModelConfig};
use pedal_core::lts::aut::{export_aut, import_aut};
use pedal_core::lts::DEFAULT_MAX_STATES;
use pedal_core::mbt::{run_online, validate_evidence, LocalAdapter, OnlineConfig, Spec, Verdict};
use pedal_core::refimpl::{mutants, ReferenceServer};
use pedal_core::verify::{check, replay, CheckOptions, Outcome, PropertySpec};
use pedal_core::{explore, parse, Engine, Label, Machine, Plane, SemState, XRay};
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_fluoro_semantics() -> Result<String, String> {
    let m = Machine::new(&fixtures::model(fixtures::FLUORO)).map_err(|e| e.to_string())?;
    let s0 = m.initial_state();
    ensure(
        m.bool_value(&s0, "FRFluoReq") == Some(false)
            && m.bool_value(&s0, "FRFluoOK") == Some(true)
            && m.plane_value(&s0, "FluoPlane") == Some(Plane::None)
            && s0.out_type == XRay::Standby
            && s0.out_plane == Plane::None,
        || format!("unexpected s0 {}", m.format_state(&s0)),
    )?;
    let after_in: Vec<_> = m
        .successors(Engine::Direct, &SemState::AwaitingInput(s0))
        .into_iter()
        .filter(|(l, _)| *l == Label::input("FRFluoOn"))
        .collect();
    let [(_, SemState::AwaitingOutput(s1))] = after_in.as_slice() else {
        return Err(format!("FRFluoOn successors: {after_in:?}"));
    };
    ensure(
        m.bool_value(s1, "FRFluoReq") == Some(true)
            && m.bool_value(s1, "FRFluoOK") == Some(true)
            && m.plane_value(s1, "FluoPlane") == Some(Plane::FR)
            && s1.out_type == XRay::Fluo
            && s1.out_plane == Plane::FR,
        || format!("post-state {}", m.format_state(s1)),
    )?;
    let out = m.successors(Engine::Direct, &SemState::AwaitingOutput(s1.clone()));
    ensure(
        out == vec![(
            Label::Output(XRay::Fluo, Plane::FR),
            SemState::AwaitingInput(s1.clone()),
        )],
        || format!("output step {out:?}"),
    )?;
    Ok(format!("{} -> output(Fluo,FR)", m.format_state(s1)))
}

fn c2_counter() -> Result<String, String> {
    let counter = fixtures::counter_lts();
    let text = export_aut(&counter);
    let back = import_aut(&text).map_err(|e| e.to_string())?;
    ensure(back == counter, || "aut round trip changed the LTS".into())?;
    ensure(export_aut(&back) == text, || "aut text not stable".into())?;
    let unfolded = fixtures::unfolded_counter_lts();
    ensure(equivalent(&counter, &unfolded, Relation::Strong), || {
        "not strongly bisimilar".into()
    })?;
    let min = minimize(&unfolded, Relation::Strong);
    ensure(min.n_states() == 4, || {
        format!("minimize gave {} states", min.n_states())
    })?;
    Ok(format!(
        "round trip exact, unfolded {} ~ 4 states",
        unfolded.n_states()
    ))
}

fn engine_models() -> Vec<(String, String)> {
    let mut models: Vec<(String, String)> = fixtures::BUNDLED
        .iter()
        .map(|(n, s)| (n.to_string(), s.to_string()))
        .collect();
    for seed in 0..8 {
        let src = fixtures::random_model_source(seed, RandomModelConfig::default());
        models.push((format!("random-{seed}"), src));
    }
    models
}

fn c3_engine_redundancy() -> Result<String, String> {
    let models = engine_models();
    let mut with_input = 0;
    for (name, src) in &models {
        let m = Machine::new(&parse(src).map_err(|e| format!("{name}: {e}"))?)
            .map_err(|e| e.to_string())?;
        let d =
            explore(&m, Engine::Direct, DEFAULT_MAX_STATES).map_err(|e| format!("{name}: {e}"))?;
        let t = explore(&m, Engine::Tau, DEFAULT_MAX_STATES).map_err(|e| format!("{name}: {e}"))?;
        ensure(equivalent(&d, &t, Relation::Branching), || {
            format!("{name}: not branching bisimilar")
        })?;
        if d.labels().iter().any(|l| matches!(l, Label::Input(_))) {
            with_input += 1;
            ensure(!equivalent(&d, &t, Relation::Strong), || {
                format!("{name}: strongly bisimilar")
            })?;
        }
    }
    Ok(format!(
        "{} models, {with_input} with reachable inputs",
        models.len()
    ))
}

fn c4_oracle() -> Result<String, String> {
    let (mut strong, mut branching) = (0, 0);
    for seed in 0..200 {
        let (a, b) = common::random_pair(seed);
        let s = equivalent(&a, &b, Relation::Strong);
        let br = equivalent(&a, &b, Relation::Branching);
        ensure(s == common::strong_oracle(&a, &b), || {
            format!("pair {seed}: strong disagrees")
        })?;
        ensure(br == common::branching_oracle(&a, &b), || {
            format!("pair {seed}: branching disagrees")
        })?;
        strong += s as usize;
        branching += br as usize;
    }
    Ok(format!(
        "200 pairs agree ({strong} strong, {branching} branching equivalent)"
    ))
}

fn properties_for(model: &pedal_core::PedalModel) -> Vec<PropertySpec> {
    let mut props = vec![PropertySpec::DeadlockFree];
    let g = |t: &str| parse_guard(t).expect("property guard parses");
    for b in &model.bool_vars {
        let b = b.as_str();
        props.push(PropertySpec::Invariant(g(b)));
        props.push(PropertySpec::Invariant(g(&format!("!{b}"))));
        props.push(PropertySpec::NoOutputWithout(g(b)));
    }
    for p in &model.plane_vars {
        let p = p.as_str();
        props.push(PropertySpec::Invariant(g(&format!("{p} == None"))));
        props.push(PropertySpec::NoOutputWithout(g(&format!("{p} != None"))));
        props.push(PropertySpec::NoOutputWithout(g(&format!(
            "{p} == OutputPlane"
        ))));
    }
    props
}

fn c5_safety() -> Result<String, String> {
    let (mut held, mut violated) = (0, 0);
    for (name, src) in fixtures::BUNDLED {
        let model = fixtures::model(src);
        let m = Machine::new(&model).map_err(|e| e.to_string())?;
        for engine in [Engine::Direct, Engine::Tau] {
            let lts = explore(&m, engine, DEFAULT_MAX_STATES).map_err(|e| e.to_string())?;
            for prop in properties_for(&model) {
                let outcome =
                    check(&m, &lts, &prop, CheckOptions::default()).map_err(|e| e.to_string())?;
                let expected = common::holds_by_enumeration(&m, engine, &prop);
                ensure(outcome.holds() == expected, || {
                    format!("{name}/{engine}: `{prop}` disagrees")
                })?;
                let Outcome::Violated(cex) = outcome else {
                    held += 1;
                    continue;
                };
                violated += 1;
                let end = replay(&m, engine, &cex.trace);
                ensure(end.as_ref() == Some(&cex.sem_state), || {
                    format!("{name}: `{prop}` trace does not replay")
                })?;
                ensure(common::violating(&m, engine, &prop, &cex.sem_state), || {
                    format!("{name}: `{prop}` counterexample state does not violate")
                })?;
                let shortest =
                    common::bfs_depth(&m, engine, |q| common::violating(&m, engine, &prop, q));
                let minimal = match prop {
                    PropertySpec::NoOutputWithout(_) => {
                        shortest.is_some_and(|d| cex.trace.len() >= d)
                    }
                    _ => shortest == Some(cex.trace.len()),
                };
                ensure(minimal, || {
                    format!("{name}: `{prop}` counterexample not shortest")
                })?;
            }
        }
    }
    Ok(format!(
        "{held} hold, {violated} violated with replayed counterexamples"
    ))
}

fn server(src: &str) -> LocalAdapter<ReferenceServer> {
    LocalAdapter::new(ReferenceServer::new(&fixtures::model(src), &[]).expect("server"))
}

fn c6_self_conformance() -> Result<String, String> {
    let mut runs = 0;
    for (name, src) in fixtures::BUNDLED {
        let m = Machine::new(&fixtures::model(src)).map_err(|e| e.to_string())?;
        for engine in [Engine::Direct, Engine::Tau] {
            let spec = Spec::new(m.clone(), engine);
            for seed in 0..5 {
                let r = run_online(&spec, &mut server(src), OnlineConfig::new(500, seed));
                ensure(r.verdict == Verdict::Pass, || {
                    format!("{name}/{engine}/seed {seed}: {}", r.verdict)
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs of 500 steps pass"))
}

fn c7_mutation_kill() -> Result<String, String> {
    let model = fixtures::model(fixtures::FLUORO);
    let spec = Spec::new(
        Machine::new(&model).map_err(|e| e.to_string())?,
        Engine::Direct,
    );
    let ms = mutants(&model, 12, 2026);
    ensure(ms.len() >= 10, || format!("only {} mutants", ms.len()))?;
    let mut killed = 0;
    let mut survivors = Vec::new();
    for mutation in &ms {
        let mut adapter = LocalAdapter::new(
            ReferenceServer::new(&model, std::slice::from_ref(mutation))
                .map_err(|e| e.to_string())?,
        );
        let mut dead = false;
        for seed in 0..20 {
            match run_online(&spec, &mut adapter, OnlineConfig::new(200, seed)).verdict {
                Verdict::Fail(ev) => {
                    validate_evidence(&spec, &ev).map_err(|e| format!("{mutation}: {e}"))?;
                    dead = true;
                    break;
                }
                Verdict::AdapterError { detail } => return Err(format!("{mutation}: {detail}")),
                Verdict::Pass => {}
            }
        }
        if dead {
            killed += 1;
        } else {
            survivors.push(mutation.to_string());
        }
    }
    let ratio = killed as f64 / ms.len() as f64;
    ensure(ratio >= 0.9, || {
        format!("killed {killed}/{}; survivors {survivors:?}", ms.len())
    })?;
    Ok(format!(
        "killed {killed}/{} ({:.0}%)",
        ms.len(),
        ratio * 100.0
    ))
}

fn c8_scalability() -> Result<String, String> {
    let model = fixtures::synthetic_model(25);
    ensure(model.input_actions.len() == 25, || {
        "wrong action count".into()
    })?;
    let m = Machine::new(&model).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let lts = explore(&m, Engine::Direct, DEFAULT_MAX_STATES).map_err(|e| e.to_string())?;
    let explore_time = t.elapsed();
    ensure(lts.is_complete(), || "exploration truncated".into())?;
    ensure(lts.n_states() > 40_000, || {
        format!("only {} states", lts.n_states())
    })?;
    let outcome = check(
        &m,
        &lts,
        &PropertySpec::DeadlockFree,
        CheckOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    Ok(format!(
        "{} states, {} transitions in {:.2?}, deadlock-free: {}",
        lts.n_states(),
        lts.n_transitions(),
        explore_time,
        outcome.holds()
    ))
}

fn c9_eval_laws() -> Result<String, String> {
    let m = laws::law_machine();
    let cases = 1000;
    let runner = || {
        TestRunner::new(Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        })
    };
    let ran = Cell::new(0u32);
    let tick = || ran.set(ran.get() + 1);
    fn fail<T: std::fmt::Debug>(law: &str, e: proptest::test_runner::TestError<T>) -> String {
        format!("{law}: {e}")
    }

    runner()
        .run(&laws::state(), |s| {
            tick();
            prop_check(
                m.eval_statements(&[], &s) == s,
                "eval of empty clause changed the state",
            )
        })
        .map_err(|e| fail("identity", e))?;
    runner()
        .run(
            &(laws::body(), laws::body(), laws::state()),
            |(b1, b2, s)| {
                tick();
                let joined: Vec<_> = b1.iter().chain(&b2).cloned().collect();
                let folded = m.eval_statements(&b2, &m.eval_statements(&b1, &s));
                prop_check(
                    m.eval_statements(&joined, &s) == folded,
                    "concatenation is not sequential",
                )
            },
        )
        .map_err(|e| fail("fold", e))?;
    runner()
        .run(
            &(laws::literal_assignment_pair(), laws::state()),
            |((first, second), s)| {
                tick();
                let both = m.eval_statements(&[first, second.clone()], &s);
                prop_check(
                    both == m.eval_statements(&[second], &s),
                    "earlier write survived",
                )
            },
        )
        .map_err(|e| fail("last write wins", e))?;
    runner()
        .run(&(laws::body(), laws::state()), |(b, s)| {
            tick();
            prop_check(
                m.eval_statements(&b, &s) == laws::interpret(&s, &b),
                "disagrees with interpreter",
            )
        })
        .map_err(|e| fail("reference interpreter", e))?;
    let ran = ran.get();
    ensure(ran >= 4 * cases, || format!("only {ran} cases ran"))?;
    Ok(format!("4 laws, {ran} cases"))
}

fn prop_check(cond: bool, msg: &'static str) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg))
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, Check); 9] = [
        (
            1,
            "fluoro model semantics",
            Duration::from_secs(1),
            c1_fluoro_semantics,
        ),
        (2, "counter fixture", Duration::from_secs(1), c2_counter),
        (
            3,
            "engine redundancy",
            Duration::from_secs(10),
            c3_engine_redundancy,
        ),
        (
            4,
            "equivalence vs fixpoint oracle",
            Duration::from_secs(30),
            c4_oracle,
        ),
        (5, "safety verification", Duration::from_secs(5), c5_safety),
        (
            6,
            "mbt self-conformance",
            Duration::from_secs(60),
            c6_self_conformance,
        ),
        (
            7,
            "mutation kill",
            Duration::from_secs(120),
            c7_mutation_kill,
        ),
        (8, "scalability", Duration::from_secs(30), c8_scalability),
        (9, "eval laws", Duration::from_secs(60), c9_eval_laws),
    ];
    let default_hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
            r => r,
        };
        match result {
            Ok(detail) => println!("PASS criterion {id} ({name}, {elapsed:.2?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}, {elapsed:.2?}): {detail}");
            }
        }
    }
    panic::set_hook(default_hook);
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
