//! Surface syntax for germs.
//!
//! ```text
//! expr := term (('+' | '(+)') term)*
//! term := [coeff '*'] ident '^' int
//! ```
//!
//! `+` always means a Thom-Sebastiani sum over disjoint variables, so a
//! variable may appear only once. `(+)` is an explicit spelling of the
//! same operator.

use std::fmt;

use thiserror::Error;
use tsmult_core::{Germ, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GermExpr {
    Var { name: String, exponent: u32, coefficient: Rat },
    TsSum(Box<GermExpr>, Box<GermExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

impl GermExpr {
    /// Leaves in left-to-right order.
    pub fn vars(&self) -> Vec<(&str, u32, Rat)> {
        match self {
            GermExpr::Var { name, exponent, coefficient } => vec![(name.as_str(), *exponent, *coefficient)],
            GermExpr::TsSum(l, r) => {
                let mut v = l.vars();
                v.extend(r.vars());
                v
            }
        }
    }

    pub fn to_germ(&self) -> tsmult_core::Result<Germ> {
        let vars = self.vars();
        Germ::new(
            vars.iter().map(|v| v.1).collect(),
            vars.iter().map(|v| v.0.to_string()).collect(),
            vars.iter().map(|v| v.2).collect(),
        )
    }
}

impl fmt::Display for GermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermExpr::Var { name, exponent, coefficient } => {
                if *coefficient != Rat::ONE {
                    write!(f, "{coefficient}*")?;
                }
                write!(f, "{name}^{exponent}")
            }
            GermExpr::TsSum(l, r) => write!(f, "{l} + {r}"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos, message: message.into() })
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !pred(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let s = self.take_while(|c| c.is_ascii_digit() || c == '.' || c == '/' || c == '-');
        if s.is_empty() {
            return self.error(start, "expected a number");
        }
        Ok((start, s))
    }

    fn term(&mut self) -> Result<GermExpr, ParseError> {
        if self.peek().is_none() {
            return self.error(self.pos, "expected a term, found end of input");
        }
        let mut coefficient = Rat::ONE;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '-' || c == '.') {
            let (at, text) = self.number()?;
            coefficient = text.parse().or_else(|_| self.error(at, format!("bad coefficient '{text}'")))?;
            if coefficient.is_zero() {
                return self.error(at, "coefficient must be nonzero");
            }
            if !self.eat("*") {
                return self.error(self.pos, "expected '*' after coefficient");
            }
        }
        self.skip_ws();
        let name_at = self.pos;
        match self.src[self.pos..].chars().next() {
            Some(c) if c.is_alphabetic() || c == '_' => {}
            _ => return self.error(name_at, "expected a variable name"),
        }
        let name = self.take_while(|c| c.is_alphanumeric() || c == '_').to_string();
        if !self.eat("^") {
            return self.error(self.pos, format!("expected '^' after '{name}'"));
        }
        self.skip_ws();
        let exp_at = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        let exponent: u32 = digits.parse().or_else(|_| self.error(exp_at, "expected an integer exponent"))?;
        if exponent < 2 {
            return self.error(exp_at, format!("exponent of '{name}' must be at least 2"));
        }
        Ok(GermExpr::Var { name, exponent, coefficient })
    }
}

pub fn parse(input: &str) -> Result<GermExpr, ParseError> {
    let mut lx = Lexer { src: input, pos: 0 };
    let mut expr = lx.term()?;
    let mut seen = vec![first_name(&expr).to_string()];
    loop {
        if lx.peek().is_none() {
            break;
        }
        let op_at = lx.pos;
        if !(lx.eat("(+)") || lx.eat("+")) {
            return lx.error(op_at, "expected '+' or '(+)'");
        }
        lx.skip_ws();
        let term_at = lx.pos;
        let rhs = lx.term()?;
        let name = first_name(&rhs).to_string();
        if seen.contains(&name) {
            return lx.error(term_at, format!("repeated variable '{name}'"));
        }
        seen.push(name);
        expr = GermExpr::TsSum(Box::new(expr), Box::new(rhs));
    }
    Ok(expr)
}

fn first_name(e: &GermExpr) -> &str {
    match e {
        GermExpr::Var { name, .. } => name,
        GermExpr::TsSum(l, _) => first_name(l),
    }
}
