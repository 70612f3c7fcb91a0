//! Tokenizer for `.phdsl` sources.

use std::fmt;

use super::ast::Span;
use super::diag::{DiagCode, Diagnostic};
use crate::semantics::value::{Plane, Value, XRay};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Lit(Value),
    // section keywords
    InActions,
    BoolVars,
    PlaneVars,
    Init,
    Rule,
    // rule keywords
    Guard,
    Do,
    End,
    If,
    Then,
    Else,
    Fi,
    OutputType,
    OutputPlane,
    // punctuation
    Comma,
    Colon,
    Semi,
    Assign,
    EqEq,
    NotEq,
    Eq,
    Bang,
    AndAnd,
    OrOr,
    LParen,
    RParen,
    Eof,
}

impl TokenKind {
    fn keyword(word: &str) -> Option<TokenKind> {
        let kind = match word {
            "InActions" => TokenKind::InActions,
            "BoolVars" => TokenKind::BoolVars,
            "PlaneVars" => TokenKind::PlaneVars,
            "Init" => TokenKind::Init,
            "Rule" => TokenKind::Rule,
            "guard" => TokenKind::Guard,
            "do" => TokenKind::Do,
            "end" => TokenKind::End,
            "if" => TokenKind::If,
            "then" => TokenKind::Then,
            "else" => TokenKind::Else,
            "fi" => TokenKind::Fi,
            "OutputType" => TokenKind::OutputType,
            "OutputPlane" => TokenKind::OutputPlane,
            "true" => TokenKind::Lit(Value::Bool(true)),
            "false" => TokenKind::Lit(Value::Bool(false)),
            _ => {
                if let Ok(p) = word.parse::<Plane>() {
                    TokenKind::Lit(Value::Plane(p))
                } else if let Ok(x) = word.parse::<XRay>() {
                    TokenKind::Lit(Value::XRay(x))
                } else {
                    return None;
                }
            }
        };
        Some(kind)
    }

    /// True for words that cannot be used as identifiers.
    pub fn is_reserved_word(word: &str) -> bool {
        Self::keyword(word).is_some()
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TokenKind::Ident(name) => return write!(f, "identifier `{name}`"),
            TokenKind::Lit(v) => return write!(f, "literal `{v}`"),
            TokenKind::InActions => "`InActions`",
            TokenKind::BoolVars => "`BoolVars`",
            TokenKind::PlaneVars => "`PlaneVars`",
            TokenKind::Init => "`Init`",
            TokenKind::Rule => "`Rule`",
            TokenKind::Guard => "`guard`",
            TokenKind::Do => "`do`",
            TokenKind::End => "`end`",
            TokenKind::If => "`if`",
            TokenKind::Then => "`then`",
            TokenKind::Else => "`else`",
            TokenKind::Fi => "`fi`",
            TokenKind::OutputType => "`OutputType`",
            TokenKind::OutputPlane => "`OutputPlane`",
            TokenKind::Comma => "`,`",
            TokenKind::Colon => "`:`",
            TokenKind::Semi => "`;`",
            TokenKind::Assign => "`:=`",
            TokenKind::EqEq => "`==`",
            TokenKind::NotEq => "`!=`",
            TokenKind::Eq => "`=`",
            TokenKind::Bang => "`!`",
            TokenKind::AndAnd => "`&&`",
            TokenKind::OrOr => "`||`",
            TokenKind::LParen => "`(`",
            TokenKind::RParen => "`)`",
            TokenKind::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut tokens = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1u32, 1u32);

    while let Some(&c) = chars.peek() {
        let span = Span::new(line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    word.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            let kind = TokenKind::keyword(&word).unwrap_or(TokenKind::Ident(word));
            tokens.push(Token { kind, span });
            continue;
        }

        chars.next();
        col += 1;
        if c == '/' && chars.peek() == Some(&'/') {
            for c in chars.by_ref() {
                if c == '\n' {
                    line += 1;
                    col = 1;
                    break;
                }
            }
            continue;
        }
        let pair = match (c, chars.peek().copied()) {
            (':', Some('=')) => Some(TokenKind::Assign),
            ('=', Some('=')) => Some(TokenKind::EqEq),
            ('!', Some('=')) => Some(TokenKind::NotEq),
            ('&', Some('&')) => Some(TokenKind::AndAnd),
            ('|', Some('|')) => Some(TokenKind::OrOr),
            _ => None,
        };
        let kind = if let Some(kind) = pair {
            chars.next();
            col += 1;
            kind
        } else {
            match c {
                ',' => TokenKind::Comma,
                ':' => TokenKind::Colon,
                ';' => TokenKind::Semi,
                '=' => TokenKind::Eq,
                '!' => TokenKind::Bang,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                _ => {
                    return Err(Diagnostic::new(
                        DiagCode::SyntaxError,
                        span,
                        format!("unexpected character `{c}`"),
                    ))
                }
            }
        };
        tokens.push(Token { kind, span });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        span: Span::new(line, col),
    });
    Ok(tokens)
}
