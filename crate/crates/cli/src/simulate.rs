//! Terminal step-through of a model.

use std::io::{self, BufRead, Write};

use pedal_core::{Engine, Label, Machine, SemState};

fn show<W: Write>(m: &Machine, q: &SemState, out: &mut W) -> io::Result<Vec<String>> {
    writeln!(out, "state: {}", m.format_state(q.state()))?;
    let SemState::AwaitingInput(s) = q else {
        return Ok(Vec::new());
    };
    let enabled: Vec<String> = m
        .enabled_rules(s)
        .map(|i| m.action_name(i).to_string())
        .collect();
    if enabled.is_empty() {
        writeln!(out, "enabled: none (deadlock)")?;
    } else {
        let items: Vec<String> = enabled
            .iter()
            .enumerate()
            .map(|(i, a)| format!("{}) {a}", i + 1))
            .collect();
        writeln!(out, "enabled: {}", items.join(" "))?;
    }
    Ok(enabled)
}

/// Reads one command per line: an enabled action name or its number,
/// `reset`, or `quit`. End of input behaves like `quit`.
pub fn run<R: BufRead, W: Write>(
    m: &Machine,
    engine: Engine,
    input: R,
    mut out: W,
) -> io::Result<()> {
    let mut q = m.initial_sem_state();
    let mut steps = 0usize;
    let mut enabled = show(m, &q, &mut out)?;
    write!(out, "> ")?;
    out.flush()?;
    for line in input.lines() {
        let line = line?;
        let cmd = line.trim();
        match cmd {
            "" => {}
            "quit" | "exit" => break,
            "reset" => {
                q = m.initial_sem_state();
                enabled = show(m, &q, &mut out)?;
            }
            _ => {
                let action = cmd
                    .parse::<usize>()
                    .ok()
                    .and_then(|n| n.checked_sub(1))
                    .and_then(|i| enabled.get(i).cloned())
                    .unwrap_or_else(|| cmd.to_string());
                if !enabled.contains(&action) {
                    writeln!(out, "not enabled: {cmd}")?;
                } else {
                    let label = Label::input(action.as_str());
                    q = m
                        .successors(engine, &q)
                        .into_iter()
                        .find(|(l, _)| *l == label)
                        .map(|(_, next)| next)
                        .expect("enabled input has a successor");
                    writeln!(out, "input {action}")?;
                    // Run internal and output steps up to the next input.
                    while !matches!(q, SemState::AwaitingInput(_)) {
                        let (l, next) = m
                            .successors(engine, &q)
                            .into_iter()
                            .next()
                            .expect("alternating semantics");
                        writeln!(out, "{l}")?;
                        q = next;
                    }
                    steps += 1;
                    enabled = show(m, &q, &mut out)?;
                }
            }
        }
        write!(out, "> ")?;
        out.flush()?;
    }
    writeln!(out)?;
    writeln!(out, "RESULT: quit after {steps} inputs")?;
    Ok(())
}
