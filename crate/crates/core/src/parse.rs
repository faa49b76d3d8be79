//! Recursive-descent parser for rational expressions.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (("+" | "-") product)*
//! product := unary (("*" | "/") unary)*
//! unary   := "-" unary | "+" unary | power
//! power   := atom ("^" exponent)?
//! exponent:= "-"? (integer | "(" sum ")") ("^" exponent)?
//! atom    := integer | identifier | "(" sum ")"
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::Q;
use crate::rational::RationalFunction;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^()".contains(c) {
            i += 1;
            Tok::Op(c)
        } else {
            return Err(Error::Syntax { line, column, message: format!("unexpected character `{c}`") });
        };
        column += i - start;
        out.push(Token { tok, line: l0, column: c0 });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(t: &Token, message: impl Into<String>) -> Error {
        Error::Syntax { line: t.line, column: t.column, message: message.into() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Op(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_close(&mut self) -> Result<()> {
        if self.eat(')') {
            Ok(())
        } else {
            Err(Self::error(self.peek(), "expected `)`"))
        }
    }

    fn sum(&mut self) -> Result<RationalFunction> {
        let mut acc = self.product()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.product()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        base.pow(e)
    }

    fn exponent(&mut self) -> Result<i32> {
        let at = self.peek().clone();
        let neg = self.eat('-');
        let value = match self.next().tok {
            Tok::Int(n) => Q::from_integer(n),
            Tok::Op('(') => {
                let v = self.sum()?;
                self.expect_close()?;
                v.constant_value()
                    .filter(|q| q.is_integer())
                    .ok_or_else(|| Self::error(&at, "exponent must be an integer"))?
            }
            _ => return Err(Self::error(&at, "exponent must be an integer")),
        };
        let mut e = value.to_integer().to_i64().ok_or_else(|| Self::error(&at, "exponent too large"))?;
        if self.eat('^') {
            let inner = self.exponent()?;
            if inner < 0 {
                return Err(Self::error(&at, "exponent must be an integer"));
            }
            e = e.checked_pow(inner as u32).ok_or_else(|| Self::error(&at, "exponent too large"))?;
        }
        if neg {
            e = -e;
        }
        i32::try_from(e).map_err(|_| Self::error(&at, "exponent too large"))
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let n = self.vars.len();
        let t = self.next();
        match t.tok {
            Tok::Int(k) => Ok(RationalFunction::constant(n, Q::from_integer(k))),
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(RationalFunction::var(n, i)),
                None => Err(Error::UndeclaredIdentifier { name, line: t.line, column: t.column }),
            },
            Tok::Op('(') => {
                let v = self.sum()?;
                self.expect_close()?;
                Ok(v)
            }
            Tok::End => Err(Self::error(&t, "unexpected end of input")),
            Tok::Op(c) => Err(Self::error(&t, format!("unexpected `{c}`"))),
        }
    }
}

/// Parses `text` as a rational function in the ordered variables `vars`.
pub fn parse_expression(text: &str, vars: &[String]) -> Result<RationalFunction> {
    let mut p = Parser { toks: lex(text)?, pos: 0, vars };
    let v = p.sum()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(Parser::error(t, "unexpected trailing input"));
    }
    Ok(v)
}

/// Parses a polynomial; rejects nontrivial denominators.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<crate::poly::Poly> {
    let f = parse_expression(text, vars)?;
    if !f.is_polynomial() {
        return Err(Error::InvalidInput(format!("`{}` is not a polynomial", text.trim())));
    }
    let c = f.denom().constant_value().expect("polynomial");
    Ok(f.numer().scale(&c.recip()))
}
