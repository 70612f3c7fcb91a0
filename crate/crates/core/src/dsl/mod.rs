//! Front-end for the pedal-handling rule language (`.phdsl`).
//!
//! The concrete grammar is defined by this crate; see [`parser`] for the
//! full production list.

pub mod ast;
pub mod diag;
pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod validate;

pub use ast::{GuardExpr, InitEntry, Name, Operand, PedalModel, Rule, Span, Statement, Target};
pub use diag::{DiagCode, Diagnostic, Diagnostics};
pub use parser::{parse_guard, parse_syntax};
pub use pretty::pretty_print;
pub use validate::{validate, validate_guard};

/// Parses and validates a model. Every failure carries at least one
/// positioned diagnostic.
pub fn parse(src: &str) -> Result<PedalModel, Diagnostics> {
    let model = parse_syntax(src).map_err(|d| Diagnostics(vec![d]))?;
    let mut diags = validate(&model);
    if diags.is_empty() {
        Ok(model)
    } else {
        diags.sort_by_key(|d| (d.span.line, d.span.col));
        Err(Diagnostics(diags))
    }
}
