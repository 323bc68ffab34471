//! Recursive-descent parser for the textual expression syntax.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' int)?          int may be negative, optionally parenthesized
//! atom   := number | name | 'exp' '(' expr ')' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::expr::{DiffExpr, ExprError};
use crate::Chart;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    chart: &'a Chart,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn expr(&mut self) -> Result<DiffExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DiffExpr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    acc = match acc.checked_div(&rhs) {
                        Ok(v) => v,
                        Err(_) => return self.err(at, "division by zero"),
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<DiffExpr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<DiffExpr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(at, "exponent must be an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let e: i32 = match digits.parse() {
            Ok(e) => e,
            Err(_) => return self.err(start, "exponent too large"),
        };
        if paren {
            self.expect(b')')?;
        }
        let e = if neg { -e } else { e };
        match base.pow(e) {
            Ok(v) => Ok(v),
            Err(ExprError::DivisionByZero) => self.err(at, "negative power of zero"),
            Err(err) => self.err(at, err.to_string()),
        }
    }

    fn number(&mut self) -> Result<DiffExpr, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let int_part = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let mut value = BigRational::from_integer(int_part.parse::<BigInt>().unwrap_or_default());
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            let fs = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if fs == self.pos {
                return self.err(fs, "expected digits after decimal point");
            }
            let frac = std::str::from_utf8(&self.src[fs..self.pos]).expect("ascii");
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let f: BigInt = frac.parse().expect("digits");
            value += BigRational::new(f, scale);
        }
        Ok(DiffExpr::from_rational(value))
    }

    fn atom(&mut self) -> Result<DiffExpr, ParseError> {
        let at = match self.peek() {
            Some(_) => self.pos,
            None => return self.err(self.pos, "unexpected end of input"),
        };
        let c = self.src[at];
        if c.is_ascii_digit() || c == b'.' {
            return self.number();
        }
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[at..self.pos]).expect("ascii");
            if name == "exp" {
                self.expect(b'(')?;
                let arg_at = self.pos;
                let arg = self.expr()?;
                self.expect(b')')?;
                return match DiffExpr::exp(&arg) {
                    Ok(v) => Ok(v),
                    Err(_) => self.err(arg_at, "argument of exp must be a polynomial"),
                };
            }
            return match self.chart.index_of(name) {
                Some(k) => Ok(DiffExpr::var(k)),
                None => self.err(at, format!("unknown variable '{}'", name)),
            };
        }
        self.err(at, format!("unexpected character '{}'", c as char))
    }
}

/// Parse `src` in the coordinates of `chart`.
pub fn parse(chart: &Chart, src: &str) -> Result<DiffExpr, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        chart,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err(p.pos, "unexpected trailing input");
    }
    Ok(e)
}

/// Parse a rational literal such as `3`, `-1/2` or `0.25`.
pub fn parse_rational(src: &str) -> Result<BigRational, ParseError> {
    let chart = Chart::new(0);
    let e = parse(&chart, src)?;
    match e.as_constant() {
        Some(c) => Ok(c),
        None => Err(ParseError {
            position: 0,
            message: "expected a rational number".into(),
        }),
    }
}
