//! Recursive-descent parser for expressions and identity files.
//!
//! ```text
//! file     := decl*
//! decl     := "identity" NAME "params" [param ("," param)*] "vars" ("x" | "y")*
//!             "lhs" expr "rhs" expr
//! param    := NAME ">=" ["-"] INT
//! expr     := term (("+" | "-") term)*
//! term     := power (("*" | "/") power)*
//! power    := unary ["^" power]
//! unary    := "-" unary | primary
//! primary  := INT | NAME | "binom" "(" expr "," expr ")"
//!           | "sum" "(" NAME "=" expr ".." expr "," expr ")" | "(" expr ")"
//! ```

use std::collections::HashSet;
use std::fmt;

use super::lexer::{tokenize, LexError, Pos, Token, TokenKind};
use crate::arith::{parse_int, BigInt};
use crate::engine::{Expr, Identity, ParamDecl};
use crate::poly::Var;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub message: String,
    pub pos: Pos,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError {
            message: format!("illegal character `{}`", e.ch),
            pos: e.pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdentityFile {
    pub identities: Vec<Identity>,
}

/// Names that cannot be parameters.
const RESERVED: &[&str] = &["x", "y", "binom"];

/// What an expression may mention; absent for free-standing expressions.
struct Context {
    params: Vec<String>,
    vars: Vec<Var>,
}

struct Parser<'a> {
    tokens: &'a [Token],
    at: usize,
    end: Pos,
    context: Option<Context>,
    /// Sum indices currently in scope.
    bound: Vec<String>,
}

type PResult<T> = Result<T, ParseError>;

fn end_pos(input: &str) -> Pos {
    let mut pos = Pos { line: 1, column: 1 };
    for c in input.chars() {
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    }
    pos
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token], end: Pos) -> Self {
        Parser {
            tokens,
            at: 0,
            end,
            context: None,
            bound: Vec::new(),
        }
    }

    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.at)
    }

    fn pos(&self) -> Pos {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            message: message.into(),
            pos: self.pos(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found `{}`", t.lexeme)),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn check(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.peek().is_some_and(|t| t.is(kind, lexeme))
    }

    fn eat(&mut self, kind: TokenKind, lexeme: &str) -> bool {
        if self.check(kind, lexeme) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind, lexeme: &str) -> PResult<&'a Token> {
        match self.peek() {
            Some(t) if t.is(kind, lexeme) => {
                self.at += 1;
                Ok(t)
            }
            _ => self.unexpected(&format!("`{lexeme}`")),
        }
    }

    fn expect_ident(&mut self, what: &str) -> PResult<&'a Token> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Ident => {
                self.at += 1;
                Ok(t)
            }
            _ => self.unexpected(what),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(TokenKind::Op, "+") {
                lhs = Expr::add(lhs, self.term()?);
            } else if self.eat(TokenKind::Op, "-") {
                lhs = Expr::sub(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.power()?;
        loop {
            if self.eat(TokenKind::Op, "*") {
                lhs = Expr::mul(lhs, self.power()?);
            } else if self.eat(TokenKind::Op, "/") {
                lhs = Expr::div(lhs, self.power()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.unary()?;
        if self.eat(TokenKind::Op, "^") {
            return Ok(Expr::pow(base, self.power()?));
        }
        Ok(base)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat(TokenKind::Op, "-") {
            return Ok(Expr::neg(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<Expr> {
        let Some(tok) = self.peek() else {
            return self.unexpected("an expression");
        };
        match tok.kind {
            TokenKind::Int => {
                self.at += 1;
                let n = parse_int(&tok.lexeme).map_err(|_| ParseError {
                    message: format!("bad integer `{}`", tok.lexeme),
                    pos: tok.pos,
                })?;
                Ok(Expr::Int(n))
            }
            TokenKind::Ident if tok.lexeme == "binom" => {
                self.at += 1;
                self.expect(TokenKind::Punct, "(")?;
                let upper = self.expr()?;
                self.expect(TokenKind::Punct, ",")?;
                let lower = self.expr()?;
                self.expect(TokenKind::Punct, ")")?;
                Ok(Expr::binom(upper, lower))
            }
            TokenKind::Ident => {
                self.at += 1;
                self.name(tok)
            }
            TokenKind::Keyword if tok.lexeme == "sum" => {
                self.at += 1;
                self.sum()
            }
            TokenKind::Punct if tok.lexeme == "(" => {
                self.at += 1;
                let inner = self.expr()?;
                self.expect(TokenKind::Punct, ")")?;
                Ok(inner)
            }
            _ => self.unexpected("an expression"),
        }
    }

    fn name(&self, tok: &Token) -> PResult<Expr> {
        let var = match tok.lexeme.as_str() {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            _ => None,
        };
        let err = |message: String| {
            Err(ParseError {
                message,
                pos: tok.pos,
            })
        };
        if let Some(v) = var {
            if let Some(ctx) = &self.context {
                if !ctx.vars.contains(&v) {
                    return err(format!("indeterminate `{v}` is not listed in `vars`"));
                }
            }
            return Ok(Expr::Var(v));
        }
        if let Some(ctx) = &self.context {
            let known = self.bound.contains(&tok.lexeme) || ctx.params.contains(&tok.lexeme);
            if !known {
                return err(format!("undeclared parameter `{}`", tok.lexeme));
            }
        }
        Ok(Expr::Param(tok.lexeme.clone()))
    }

    fn sum(&mut self) -> PResult<Expr> {
        self.expect(TokenKind::Punct, "(")?;
        let index = self.expect_ident("a sum index name")?;
        if RESERVED.contains(&index.lexeme.as_str()) {
            return Err(ParseError {
                message: format!("`{}` cannot be a sum index", index.lexeme),
                pos: index.pos,
            });
        }
        self.expect(TokenKind::Op, "=")?;
        let lo = self.expr()?;
        self.expect(TokenKind::Punct, "..")?;
        let hi = self.expr()?;
        self.expect(TokenKind::Punct, ",")?;
        self.bound.push(index.lexeme.clone());
        let body = self.expr();
        self.bound.pop();
        let body = body?;
        self.expect(TokenKind::Punct, ")")?;
        Ok(Expr::sum(index.lexeme.clone(), lo, hi, body))
    }

    fn finish(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) if t.lexeme == ")" => self.error("unbalanced `)`"),
            Some(_) => self.unexpected("end of expression"),
        }
    }

    fn identity(&mut self, seen: &mut HashSet<String>) -> PResult<Identity> {
        self.expect(TokenKind::Keyword, "identity")?;
        let name_tok = self.expect_ident("an identity name")?;
        if !seen.insert(name_tok.lexeme.clone()) {
            return Err(ParseError {
                message: format!("duplicate identity name `{}`", name_tok.lexeme),
                pos: name_tok.pos,
            });
        }

        self.expect(TokenKind::Keyword, "params")?;
        let mut params: Vec<ParamDecl> = Vec::new();
        if self.peek().is_some_and(|t| t.kind == TokenKind::Ident) {
            loop {
                let p = self.expect_ident("a parameter name")?;
                if RESERVED.contains(&p.lexeme.as_str()) {
                    return Err(ParseError {
                        message: format!("`{}` cannot be a parameter name", p.lexeme),
                        pos: p.pos,
                    });
                }
                if params.iter().any(|d| d.name == p.lexeme) {
                    return Err(ParseError {
                        message: format!("parameter `{}` declared twice", p.lexeme),
                        pos: p.pos,
                    });
                }
                self.expect(TokenKind::Op, ">=")?;
                let negative = self.eat(TokenKind::Op, "-");
                let bound_tok = match self.peek() {
                    Some(t) if t.kind == TokenKind::Int => {
                        self.at += 1;
                        t
                    }
                    _ => return self.unexpected("an integer lower bound"),
                };
                let mut min: BigInt = parse_int(&bound_tok.lexeme).expect("digits");
                if negative {
                    min = -min;
                }
                params.push(ParamDecl {
                    name: p.lexeme.clone(),
                    min,
                });
                if !self.eat(TokenKind::Punct, ",") {
                    break;
                }
            }
        }

        self.expect(TokenKind::Keyword, "vars")?;
        let mut vars = Vec::new();
        while let Some(t) = self.peek() {
            let v = match (t.kind, t.lexeme.as_str()) {
                (TokenKind::Ident, "x") => Var::X,
                (TokenKind::Ident, "y") => Var::Y,
                _ => break,
            };
            if vars.contains(&v) {
                return self.error(format!("indeterminate `{v}` listed twice"));
            }
            vars.push(v);
            self.at += 1;
        }
        vars.sort();

        self.context = Some(Context {
            params: params.iter().map(|p| p.name.clone()).collect(),
            vars: vars.clone(),
        });
        self.expect(TokenKind::Keyword, "lhs")?;
        let lhs = self.expr()?;
        self.expect(TokenKind::Keyword, "rhs")?;
        let rhs = self.expr()?;
        self.context = None;

        match self.peek() {
            None => {}
            Some(t) if t.is(TokenKind::Keyword, "identity") => {}
            Some(t) if t.lexeme == ")" => return self.error("unbalanced `)`"),
            Some(_) => return self.unexpected("`identity` or end of file"),
        }

        Ok(Identity {
            name: name_tok.lexeme.clone(),
            params,
            free_vars: vars,
            lhs,
            rhs,
        })
    }
}

/// Parses a complete token stream as one expression.
pub fn parse_expr(tokens: &[Token]) -> Result<Expr, ParseError> {
    let end = tokens.last().map_or(Pos { line: 1, column: 1 }, |t| Pos {
        line: t.pos.line,
        column: t.pos.column + t.lexeme.chars().count(),
    });
    let mut p = Parser::new(tokens, end);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_expr_str(input: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(input)?;
    let mut p = Parser::new(&tokens, end_pos(input));
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_identity_file(input: &str) -> Result<IdentityFile, ParseError> {
    let tokens = tokenize(input)?;
    let mut p = Parser::new(&tokens, end_pos(input));
    let mut seen = HashSet::new();
    let mut identities = Vec::new();
    while p.peek().is_some() {
        identities.push(p.identity(&mut seen)?);
    }
    Ok(IdentityFile { identities })
}
