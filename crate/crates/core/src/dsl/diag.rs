use std::fmt;

use super::ast::Span;

/// Machine-readable diagnostic categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagCode {
    SyntaxError,
    DuplicateRule,
    MissingRule,
    UnknownAction,
    DuplicateDeclaration,
    ReservedName,
    UndeclaredVariable,
    TypeMismatch,
    MissingInit,
    DuplicateInit,
    OutputRegisterInit,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::SyntaxError => "SYNTAX_ERROR",
            DiagCode::DuplicateRule => "DUPLICATE_RULE",
            DiagCode::MissingRule => "MISSING_RULE",
            DiagCode::UnknownAction => "UNKNOWN_ACTION",
            DiagCode::DuplicateDeclaration => "DUPLICATE_DECLARATION",
            DiagCode::ReservedName => "RESERVED_NAME",
            DiagCode::UndeclaredVariable => "UNDECLARED_VARIABLE",
            DiagCode::TypeMismatch => "TYPE_MISMATCH",
            DiagCode::MissingInit => "MISSING_INIT",
            DiagCode::DuplicateInit => "DUPLICATE_INIT",
            DiagCode::OutputRegisterInit => "OUTPUT_REGISTER_INIT",
        }
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagCode,
    pub message: String,
    pub span: Span,
}

impl Diagnostic {
    pub fn new(code: DiagCode, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            message: message.into(),
            span,
        }
    }

    /// Renders as `file:line:col: CODE message`.
    pub fn render(&self, file: &str) -> String {
        format!("{file}:{self}")
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {} {}",
            self.span.line, self.span.col, self.code, self.message
        )
    }
}

/// Non-empty list of diagnostics returned when a model is rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn codes(&self) -> Vec<DiagCode> {
        self.0.iter().map(|d| d.code).collect()
    }

    pub fn render(&self, file: &str) -> String {
        self.0
            .iter()
            .map(|d| d.render(file))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}
