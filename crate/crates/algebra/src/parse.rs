//! A small infix parser for rational-function expressions.
//!
//! Grammar: sums and differences of products and quotients, `^` with an
//! integer (possibly negative) exponent, parentheses, integer literals and
//! variable names from the alphabet. Extra symbols can be bound to values.

use crate::error::{AlgebraError, Result};
use crate::ratfunc::RF;
use crate::var::Var;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = chars[st..i].iter().collect();
            out.push(Tok::Num(t.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '−' {
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(AlgebraError::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    env: &'a HashMap<String, RF>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RF> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RF> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.div(&self.unary()?)?;
            } else if matches!(self.peek(), Some(Tok::Op('(')) | Some(Tok::Ident(_))) {
                // juxtaposition binds like `*`
                acc = acc.mul(&self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RF> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RF> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => {
                    let n: i32 = n.to_string().parse().map_err(|_| AlgebraError::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    n
                }
                _ => return Err(AlgebraError::Parse("expected integer exponent".into())),
            };
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RF> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RF::constant(crate::poly::BigRat::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(v) = self.env.get(&name) {
                    return Ok(v.clone());
                }
                Var::from_name(&name).map(RF::var).ok_or(AlgebraError::UnknownVariable(name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(AlgebraError::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            other => Err(AlgebraError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an expression over the alphabet.
pub fn parse(s: &str) -> Result<RF> {
    parse_with(s, &HashMap::new())
}

/// Parses with additional named values.
pub fn parse_with(s: &str, env: &HashMap<String, RF>) -> Result<RF> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, env };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(AlgebraError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(r)
}

/// Parses an exact ratio `p/q` or integer `p`.
pub fn parse_ratio(s: &str) -> Result<crate::poly::BigRat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| AlgebraError::Parse(format!("bad ratio `{s}`")))?;
    let d: BigInt = d.parse().map_err(|_| AlgebraError::Parse(format!("bad ratio `{s}`")))?;
    if d.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    Ok(crate::poly::BigRat::new(n, d))
}
