//! Parser for the canonical polynomial string format.
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := coef ('*' factor)* | factor ('*' factor)*
//! coef   := int ['/' int]
//! factor := var ['^' int]
//! ```
//!
//! Whitespace is allowed between tokens. Variables are validated against the
//! closed alphabet of [`Var`].

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, PolyError, Polynomial, Rational, Var};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.err("expected an integer"));
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn factor(&mut self) -> Result<(Var, u32), PolyError> {
        let start = self.pos;
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if name.is_empty() {
            return Err(self.err("expected a variable"));
        }
        let var: Var = name.parse().map_err(|e| match e {
            PolyError::UnknownVariable(v) => PolyError::UnknownVariable(v),
            _ => PolyError::Parse {
                pos: start,
                msg: "bad variable".into(),
            },
        })?;
        let exp = if self.eat('^') {
            let e = self.integer()?;
            u32::try_from(e).map_err(|_| self.err("exponent out of range"))?
        } else {
            1
        };
        Ok((var, exp))
    }

    fn term(&mut self) -> Result<(Rational, Monomial), PolyError> {
        let mut factors = Vec::new();
        let coef = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.integer()?;
            let den = if self.eat('/') {
                self.integer()?
            } else {
                BigInt::one()
            };
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Rational::new(num, den)
        } else {
            factors.push(self.factor()?);
            Rational::one()
        };
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok((coef, Monomial::from_factors(factors)))
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor { src: s, pos: 0 };
        let mut out = Polynomial::zero();
        let mut negative = cur.eat('-');
        loop {
            let (c, m) = cur.term()?;
            let c = if negative { -c } else { c };
            out += Polynomial::term(c, m);
            if cur.eat('+') {
                negative = false;
            } else if cur.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        if cur.peek().is_some() {
            return Err(cur.err("unexpected trailing input"));
        }
        Ok(out)
    }
}

/// Parses `int` or `int/int`, optionally signed.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let p: Polynomial = s.parse()?;
    p.as_constant().ok_or(PolyError::Parse {
        pos: 0,
        msg: format!("not a rational constant: {s}"),
    })
}
