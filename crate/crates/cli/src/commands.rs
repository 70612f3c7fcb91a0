use std::fs;
use std::io::{self, BufReader};
use std::net::TcpListener;
use std::path::Path;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use pedal_core::equiv::{branching_bisim_equal, strong_bisim_equal, Relation};
use pedal_core::lts::{export_aut, export_dot, import_aut, ExploreError, Lts};
use pedal_core::mbt::{gen_tests, run_online, OnlineConfig, Spec, StreamAdapter, Verdict};
use pedal_core::refimpl::{self, serve_listener, serve_stream, Mutation, ReferenceServer};
use pedal_core::verify::{self, parse_properties, CheckOptions, Outcome};
use pedal_core::{explore as explore_lts, parse, Engine, Label, Machine, PedalModel};
use serde_json::json;

use crate::Status;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<PedalModel> {
    let src = read(path)?;
    parse(&src)
        .map_err(|d| anyhow::anyhow!("invalid model\n{}", d.render(&path.display().to_string())))
}

fn machine(path: &Path) -> Result<Machine> {
    let model = load(path)?;
    Ok(Machine::new(&model).expect("validated model"))
}

fn explore_complete(m: &Machine, engine: Engine, max: usize) -> Result<Lts> {
    match explore_lts(m, engine, max) {
        Ok(lts) => Ok(lts),
        Err(ExploreError::StateLimitExceeded { max_states, .. }) => {
            bail!("state space exceeds {max_states} states")
        }
    }
}

fn trace_text(trace: &[Label]) -> String {
    let parts: Vec<String> = trace.iter().map(Label::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn result(verdict: &str, status: Status) -> Result<Status> {
    println!("RESULT: {verdict}");
    Ok(status)
}

pub fn check(path: &Path) -> Result<Status> {
    let src = read(path)?;
    match parse(&src) {
        Ok(model) => {
            println!(
                "{}: {} input actions, {} boolean and {} plane variables",
                path.display(),
                model.input_actions.len(),
                model.bool_vars.len(),
                model.plane_vars.len()
            );
            result("valid", Status::Success)
        }
        Err(diags) => {
            let text = diags.render(&path.display().to_string());
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            result("invalid", Status::Negative)
        }
    }
}

pub fn explore(
    path: &Path,
    engine: Engine,
    out: &Path,
    dot: Option<&Path>,
    max: usize,
) -> Result<Status> {
    let m = machine(path)?;
    let lts = match explore_lts(&m, engine, max) {
        Ok(lts) => lts,
        Err(ExploreError::StateLimitExceeded {
            max_states,
            partial,
        }) => {
            println!(
                "exploration stopped at {max_states} states ({} transitions discovered); nothing written",
                partial.n_transitions()
            );
            return result("truncated", Status::Negative);
        }
    };
    fs::write(out, export_aut(&lts)).with_context(|| format!("cannot write {}", out.display()))?;
    if let Some(dot) = dot {
        fs::write(dot, export_dot(&lts))
            .with_context(|| format!("cannot write {}", dot.display()))?;
    }
    println!(
        "{} states, {} transitions",
        lts.n_states(),
        lts.n_transitions()
    );
    result("complete", Status::Success)
}

fn load_aut(path: &Path) -> Result<Lts> {
    import_aut(&read(path)?).with_context(|| format!("cannot parse {}", path.display()))
}

pub fn equiv(left: &Path, right: &Path, relation: Relation, json: bool) -> Result<Status> {
    let (l1, l2) = (load_aut(left)?, load_aut(right)?);
    let (equivalent, report) = match relation {
        Relation::Strong => {
            let r = strong_bisim_equal(&l1, &l2);
            if !json {
                if let Some(w) = &r.witness {
                    println!(
                        "after {} the {} side can do {} and the other cannot",
                        trace_text(&w.trace),
                        side_name(w.offending_side),
                        w.offending
                    );
                }
            }
            (r.equivalent, serde_json::to_value(&r)?)
        }
        Relation::Branching => {
            let r = branching_bisim_equal(&l1, &l2);
            if !json {
                if let Some(g) = &r.gap {
                    println!(
                        "the {} initial state can do {} into a class the other cannot reach",
                        side_name(g.side),
                        g.label
                    );
                }
            }
            (r.equivalent, serde_json::to_value(&r)?)
        }
    };
    if json {
        println!(
            "{}",
            json!({ "relation": relation.to_string(), "result": report })
        );
    }
    if equivalent {
        result("equivalent", Status::Success)
    } else {
        result("inequivalent", Status::Negative)
    }
}

fn side_name(side: pedal_core::equiv::Side) -> &'static str {
    match side {
        pedal_core::equiv::Side::Left => "left",
        pedal_core::equiv::Side::Right => "right",
    }
}

pub fn verify(
    path: &Path,
    props: &Path,
    engine: Engine,
    include_transient: bool,
    json: bool,
) -> Result<Status> {
    let m = machine(path)?;
    let props = parse_properties(&read(props)?)
        .with_context(|| format!("cannot parse {}", props.display()))?;
    let lts = explore_complete(&m, engine, pedal_core::lts::DEFAULT_MAX_STATES)?;
    let opts = CheckOptions { include_transient };
    let mut all_hold = true;
    let mut reports = Vec::new();
    for prop in &props {
        let outcome = verify::check(&m, &lts, prop, opts)?;
        match &outcome {
            Outcome::Holds => {
                if !json {
                    println!("holds: {prop}");
                }
            }
            Outcome::Violated(cex) => {
                all_hold = false;
                if !json {
                    println!("violated: {prop}");
                    println!("  trace: {}", trace_text(&cex.trace));
                    println!("  state: {}", m.format_state(cex.sem_state.state()));
                }
            }
        }
        reports.push(json!({ "property": prop.to_string(), "result": outcome }));
    }
    if json {
        println!("{}", serde_json::Value::Array(reports));
    }
    if all_hold {
        result("holds", Status::Success)
    } else {
        result("violated", Status::Negative)
    }
}

pub fn mbt_gen(
    path: &Path,
    depth: usize,
    count: usize,
    seed: u64,
    engine: Engine,
    json: bool,
) -> Result<Status> {
    let spec = Spec::new(machine(path)?, engine);
    let tests = gen_tests(&spec, depth, count, seed);
    if json {
        println!("{}", serde_json::to_string(&tests)?);
    } else {
        for (i, tc) in tests.iter().enumerate() {
            println!("test {}:", i + 1);
            for line in tc.to_string().lines() {
                println!("  {line}");
            }
        }
    }
    result(&format!("generated {}", tests.len()), Status::Success)
}

pub struct RunOptions<'a> {
    pub model: &'a Path,
    pub connect: Option<&'a str>,
    pub spawn: Option<&'a str>,
    pub steps: usize,
    pub seed: u64,
    pub timeout_ms: u64,
    pub engine: Engine,
    pub json: bool,
}

pub fn mbt_run(o: RunOptions<'_>) -> Result<Status> {
    let spec = Spec::new(machine(o.model)?, o.engine);
    let timeout = Duration::from_millis(o.timeout_ms);
    let mut adapter = match (o.connect, o.spawn) {
        (Some(addr), _) => StreamAdapter::connect(addr, timeout)
            .with_context(|| format!("cannot connect to {addr}"))?,
        (None, Some(cmd)) => {
            let mut words = cmd.split_whitespace().map(str::to_string);
            let program = words.next().context("empty --spawn command")?;
            let args: Vec<String> = words.collect();
            StreamAdapter::spawn(&program, &args, timeout)
                .with_context(|| format!("cannot start `{cmd}`"))?
        }
        (None, None) => bail!("one of --connect or --spawn is required"),
    };
    let report = run_online(&spec, &mut adapter, OnlineConfig::new(o.steps, o.seed));
    if o.json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!(
            "{} steps, trace {}",
            report.steps,
            trace_text(&report.trace)
        );
        println!("{}", report.verdict);
    }
    let status = match report.verdict {
        Verdict::Pass => Status::Success,
        Verdict::Fail(_) => Status::Negative,
        Verdict::AdapterError { .. } => Status::Error,
    };
    result(report.verdict.keyword(), status)
}

pub fn serve(path: &Path, specs: &[String], port: Option<u16>) -> Result<Status> {
    let model = load(path)?;
    let mutations = specs
        .iter()
        .map(|s| s.parse::<Mutation>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut server = ReferenceServer::new(&model, &mutations)?;
    let outcome = match port {
        Some(port) => {
            let listener = TcpListener::bind(("127.0.0.1", port))
                .with_context(|| format!("cannot bind port {port}"))?;
            eprintln!("listening on {}", listener.local_addr()?);
            serve_listener(&mut server, listener)
        }
        None => {
            let stdin = io::stdin();
            serve_stream(
                &mut server,
                BufReader::new(stdin.lock()),
                io::stdout().lock(),
            )
        }
    };
    match outcome {
        Ok(()) => result("served", Status::Success),
        Err(refimpl::ServeError::Protocol(msg)) => {
            eprintln!("error: {msg}");
            result("protocol-violation", Status::Error)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn mutants(path: &Path, max: usize, seed: u64) -> Result<Status> {
    let model = load(path)?;
    let ms = refimpl::mutants(&model, max, seed);
    for m in &ms {
        println!("{m}");
    }
    result(&format!("mutants {}", ms.len()), Status::Success)
}

pub fn simulate(path: &Path, engine: Engine) -> Result<Status> {
    let m = machine(path)?;
    let stdin = io::stdin();
    crate::simulate::run(&m, engine, stdin.lock(), io::stdout().lock())?;
    Ok(Status::Success)
}
