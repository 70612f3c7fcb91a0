//! Recursive-descent parser for `.phdsl` sources.
//!
//! ```text
//! model    := "InActions" names ["BoolVars" names] ["PlaneVars" names]
//!             ["Init" inits] rule*
//! names    := [ident ("," ident)*]
//! inits    := [target "=" literal ("," target "=" literal)*]
//! rule     := "Rule" ident ":" "guard" expr "do" stmts "end"
//! stmts    := [stmt (";" stmt)* [";"]]
//! stmt     := target ":=" operand
//!           | "if" expr "then" stmts ["else" stmts] "fi"
//! expr     := conj ("||" conj)*
//! conj     := unary ("&&" unary)*
//! unary    := "!" unary | "(" expr ")" | operand [("==" | "!=") operand]
//! operand  := ident | "OutputType" | "OutputPlane" | literal
//! ```

use super::ast::*;
use super::diag::{DiagCode, Diagnostic};
use super::lexer::{tokenize, Token, TokenKind};
use crate::semantics::value::Value;

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

/// Parses the concrete syntax only; no semantic checks.
pub fn parse_syntax(src: &str) -> PResult<PedalModel> {
    let mut p = Parser::new(src)?;
    let model = p.model()?;
    p.expect_eof()?;
    Ok(model)
}

/// Parses a standalone guard expression (used by property files).
pub fn parse_guard(src: &str) -> PResult<GuardExpr> {
    let mut p = Parser::new(src)?;
    let expr = p.expr()?;
    p.expect_eof()?;
    Ok(expr)
}

impl Parser {
    fn new(src: &str) -> PResult<Self> {
        Ok(Parser {
            tokens: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn at(&self, kind: &TokenKind) -> bool {
        &self.peek().kind == kind
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.at(kind) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected<T>(&self, expected: &[&str]) -> PResult<T> {
        let tok = self.peek();
        Err(Diagnostic::new(
            DiagCode::SyntaxError,
            tok.span,
            format!("expected {}, found {}", expected.join(" or "), tok.kind),
        ))
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<Token> {
        if self.at(&kind) {
            Ok(self.bump())
        } else {
            self.unexpected(&[&kind.to_string()])
        }
    }

    fn expect_eof(&mut self) -> PResult<()> {
        if self.at(&TokenKind::Eof) {
            Ok(())
        } else {
            self.unexpected(&["end of input"])
        }
    }

    fn ident(&mut self) -> PResult<Name> {
        match &self.peek().kind {
            TokenKind::Ident(text) => {
                let name = Name::at(text.clone(), self.peek().span);
                self.bump();
                Ok(name)
            }
            _ => self.unexpected(&["identifier"]),
        }
    }

    fn model(&mut self) -> PResult<PedalModel> {
        let mut model = PedalModel::default();
        self.expect(TokenKind::InActions)?;
        model.input_actions = self.names()?;
        if self.eat(&TokenKind::BoolVars) {
            model.bool_vars = self.names()?;
        }
        if self.eat(&TokenKind::PlaneVars) {
            model.plane_vars = self.names()?;
        }
        if self.eat(&TokenKind::Init) {
            model.init = self.inits()?;
        }
        while self.at(&TokenKind::Rule) {
            model.rules.push(self.rule()?);
        }
        if !self.at(&TokenKind::Eof) {
            return self.unexpected(&["`Rule`", "end of input"]);
        }
        Ok(model)
    }

    fn names(&mut self) -> PResult<Vec<Name>> {
        let mut names = Vec::new();
        if !matches!(self.peek().kind, TokenKind::Ident(_)) {
            return Ok(names);
        }
        names.push(self.ident()?);
        while self.eat(&TokenKind::Comma) {
            names.push(self.ident()?);
        }
        Ok(names)
    }

    fn inits(&mut self) -> PResult<Vec<InitEntry>> {
        let mut entries = Vec::new();
        if !self.at_target() {
            return Ok(entries);
        }
        loop {
            let span = self.peek().span;
            let target = self.target()?;
            self.expect(TokenKind::Eq)?;
            let value = match self.peek().kind {
                TokenKind::Lit(v) => {
                    self.bump();
                    v
                }
                _ => return self.unexpected(&["literal"]),
            };
            entries.push(InitEntry {
                target,
                value,
                span,
            });
            if !self.eat(&TokenKind::Comma) {
                break;
            }
        }
        Ok(entries)
    }

    fn rule(&mut self) -> PResult<Rule> {
        self.expect(TokenKind::Rule)?;
        let action = self.ident()?;
        self.expect(TokenKind::Colon)?;
        self.expect(TokenKind::Guard)?;
        let guard = self.expr()?;
        self.expect(TokenKind::Do)?;
        let body = self.statements()?;
        self.expect(TokenKind::End)?;
        Ok(Rule {
            action,
            guard,
            body,
        })
    }

    fn at_target(&self) -> bool {
        matches!(
            self.peek().kind,
            TokenKind::Ident(_) | TokenKind::OutputType | TokenKind::OutputPlane
        )
    }

    fn at_statement(&self) -> bool {
        self.at_target() || self.at(&TokenKind::If)
    }

    fn statements(&mut self) -> PResult<Vec<Statement>> {
        let mut body = Vec::new();
        if !self.at_statement() {
            return Ok(body);
        }
        body.push(self.statement()?);
        while self.eat(&TokenKind::Semi) {
            if !self.at_statement() {
                break;
            }
            body.push(self.statement()?);
        }
        Ok(body)
    }

    fn target(&mut self) -> PResult<Target> {
        let tok = self.peek().clone();
        match tok.kind {
            TokenKind::Ident(_) => Ok(Target::Var(self.ident()?)),
            TokenKind::OutputType => {
                self.bump();
                Ok(Target::OutputType(tok.span))
            }
            TokenKind::OutputPlane => {
                self.bump();
                Ok(Target::OutputPlane(tok.span))
            }
            _ => self.unexpected(&["variable", "`OutputType`", "`OutputPlane`"]),
        }
    }

    fn statement(&mut self) -> PResult<Statement> {
        if self.eat(&TokenKind::If) {
            let cond = self.expr()?;
            self.expect(TokenKind::Then)?;
            let then_branch = self.statements()?;
            let else_branch = if self.eat(&TokenKind::Else) {
                self.statements()?
            } else {
                Vec::new()
            };
            if !self.at(&TokenKind::Fi) {
                return self.unexpected(&["`;`", "`else`", "`fi`"]);
            }
            self.bump();
            return Ok(Statement::If {
                cond,
                then_branch,
                else_branch,
            });
        }
        let target = self.target()?;
        self.expect(TokenKind::Assign)?;
        let value = self.operand()?;
        Ok(Statement::Assign { target, value })
    }

    fn operand(&mut self) -> PResult<Operand> {
        let tok = self.peek().clone();
        let operand = match tok.kind {
            TokenKind::Ident(_) => return Ok(Operand::Var(self.ident()?)),
            TokenKind::OutputType => Operand::OutputType(tok.span),
            TokenKind::OutputPlane => Operand::OutputPlane(tok.span),
            TokenKind::Lit(v) => Operand::Lit(v, tok.span),
            _ => return self.unexpected(&["variable", "literal", "`OutputType`", "`OutputPlane`"]),
        };
        self.bump();
        Ok(operand)
    }

    fn expr(&mut self) -> PResult<GuardExpr> {
        let mut lhs = self.conj()?;
        while self.eat(&TokenKind::OrOr) {
            let rhs = self.conj()?;
            lhs = GuardExpr::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> PResult<GuardExpr> {
        let mut lhs = self.unary()?;
        while self.eat(&TokenKind::AndAnd) {
            let rhs = self.unary()?;
            lhs = GuardExpr::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<GuardExpr> {
        if self.eat(&TokenKind::Bang) {
            return Ok(GuardExpr::negate(self.unary()?));
        }
        if self.eat(&TokenKind::LParen) {
            let inner = self.expr()?;
            self.expect(TokenKind::RParen)?;
            return Ok(inner);
        }
        let lhs = self.operand()?;
        let negate = match self.peek().kind {
            TokenKind::EqEq => false,
            TokenKind::NotEq => true,
            _ => {
                return match lhs {
                    Operand::Var(name) => Ok(GuardExpr::Var(name)),
                    Operand::Lit(Value::Bool(b), span) => Ok(GuardExpr::Lit(b, span)),
                    _ => self.unexpected(&["`==`", "`!=`"]),
                }
            }
        };
        self.bump();
        let rhs = self.operand()?;
        let eq = GuardExpr::Eq(lhs, rhs);
        Ok(if negate { GuardExpr::negate(eq) } else { eq })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::value::Plane;

    #[test]
    fn precedence_and_binds_tighter_than_or() {
        let e = parse_guard("a || b && !c").unwrap();
        assert_eq!(
            e,
            GuardExpr::or(
                GuardExpr::Var(Name::new("a")),
                GuardExpr::and(
                    GuardExpr::Var(Name::new("b")),
                    GuardExpr::negate(GuardExpr::Var(Name::new("c")))
                )
            )
        );
    }

    #[test]
    fn not_equal_desugars_to_negated_equality() {
        let e = parse_guard("p != FR").unwrap();
        assert_eq!(
            e,
            GuardExpr::negate(GuardExpr::Eq(
                Operand::Var(Name::new("p")),
                Operand::Lit(Value::Plane(Plane::FR), Span::default())
            ))
        );
    }

    #[test]
    fn register_needs_comparison() {
        let err = parse_guard("OutputType").unwrap_err();
        assert_eq!(err.code, DiagCode::SyntaxError);
        assert!(err.message.contains("`==`"), "{}", err.message);
    }

    #[test]
    fn empty_do_clause_and_trailing_semicolon() {
        let m = parse_syntax(
            "InActions A, B\nBoolVars v\nRule A: guard true do end\nRule B: guard v do v := false; end",
        )
        .unwrap();
        assert!(m.rules[0].body.is_empty());
        assert_eq!(m.rules[1].body.len(), 1);
    }

    #[test]
    fn missing_paren_reports_position() {
        let err = parse_syntax("InActions A\nRule A: guard (true do end").unwrap_err();
        assert_eq!(err.code, DiagCode::SyntaxError);
        assert_eq!((err.span.line, err.span.col), (2, 21));
        assert!(err.message.contains("`)`"));
    }

    #[test]
    fn else_branch() {
        let m = parse_syntax(
            "InActions A\nBoolVars v\nRule A: guard true do if v then v := false else v := true fi end",
        )
        .unwrap();
        match &m.rules[0].body[0] {
            Statement::If {
                then_branch,
                else_branch,
                ..
            } => {
                assert_eq!(then_branch.len(), 1);
                assert_eq!(else_branch.len(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
