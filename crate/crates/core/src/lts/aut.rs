//! Aldebaran (`.aut`) interchange.
//!
//! ```text
//! des (0,4,4)
//! (0,"count(0)",1)
//! ```

use std::fmt::Write;

use super::{Lts, LtsBuilder};
use crate::semantics::Label;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct AutError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, AutError> {
    Err(AutError {
        line,
        message: message.into(),
    })
}

pub fn export_aut(lts: &Lts) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "des ({},{},{})",
        lts.initial(),
        lts.n_transitions(),
        lts.n_states()
    );
    for t in lts.transitions() {
        let _ = writeln!(out, "({},\"{}\",{})", t.src, lts.label(t.label), t.dst);
    }
    out
}

fn parse_index(text: &str, line: usize, what: &str) -> Result<usize, AutError> {
    text.trim()
        .parse()
        .or_else(|_| err(line, format!("invalid {what} `{}`", text.trim())))
}

fn parse_header(text: &str, line: usize) -> Result<(usize, usize, usize), AutError> {
    let Some(rest) = text.trim().strip_prefix("des") else {
        return err(
            line,
            "expected header `des (<initial>,<transitions>,<states>)`",
        );
    };
    let rest = rest.trim();
    let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) else {
        return err(
            line,
            "malformed header, expected `des (<initial>,<transitions>,<states>)`",
        );
    };
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 3 {
        return err(line, "header needs exactly three numbers");
    }
    Ok((
        parse_index(parts[0], line, "initial state")?,
        parse_index(parts[1], line, "transition count")?,
        parse_index(parts[2], line, "state count")?,
    ))
}

fn parse_transition(text: &str, line: usize) -> Result<(usize, Label, usize), AutError> {
    let text = text.trim();
    let Some(inner) = text.strip_prefix('(').and_then(|r| r.strip_suffix(')')) else {
        return err(
            line,
            format!("malformed transition `{text}`, expected `(<src>,\"<label>\",<dst>)`"),
        );
    };
    let Some((src, rest)) = inner.split_once(',') else {
        return err(line, "missing label");
    };
    let Some((label, dst)) = rest.rsplit_once(',') else {
        return err(line, "missing target state");
    };
    let label = label.trim();
    let label = if let Some(quoted) = label.strip_prefix('"') {
        match quoted.strip_suffix('"') {
            Some(l) if !l.contains('"') => l,
            _ => return err(line, "unterminated label quote"),
        }
    } else {
        label
    };
    if label.is_empty() {
        return err(line, "empty label");
    }
    Ok((
        parse_index(src, line, "source state")?,
        label.parse().unwrap_or_else(|e| match e {}),
        parse_index(dst, line, "target state")?,
    ))
}

pub fn import_aut(text: &str) -> Result<Lts, AutError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (header_line, header) = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some(found) => break found,
            None => return err(1, "empty input, expected `des` header"),
        }
    };
    let (initial, n_trans, n_states) = parse_header(header, header_line)?;
    if n_states == 0 {
        return err(header_line, "an LTS needs at least one state");
    }
    if initial >= n_states {
        return err(header_line, format!("initial state {initial} out of range"));
    }

    let mut builder = LtsBuilder::new(n_states, initial);
    let mut count = 0;
    for (line, l) in lines {
        if l.trim().is_empty() {
            continue;
        }
        let (src, label, dst) = parse_transition(l, line)?;
        for (s, what) in [(src, "source"), (dst, "target")] {
            if s >= n_states {
                return err(
                    line,
                    format!("{what} state {s} out of range (0..{n_states})"),
                );
            }
        }
        builder.add_transition(src, &label, dst);
        count += 1;
    }
    if count != n_trans {
        return err(
            header_line,
            format!("header declares {n_trans} transitions, found {count}"),
        );
    }
    Ok(builder.finish())
}
