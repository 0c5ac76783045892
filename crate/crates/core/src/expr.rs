//! Text expressions over tagged letters.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := [coeff '*'?] factor ('*'? factor)*  |  coeff
//! factor := ident '.' ident ['^' posint]
//! coeff  := ['-'] int ['/' posint]
//! ```
//!
//! Juxtaposed factors multiply in written order. A bare coefficient stands
//! for a multiple of the unit, which only exists in the unital regime. The
//! output of [`FreeProduct::render_polynomial`] parses back to the same
//! polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Monomial;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::word::{FreeProduct, Polynomial};

pub fn parse_expression(space: &FreeProduct, text: &str) -> Result<Polynomial> {
    let mut p = Parser {
        space,
        text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(out)
}

struct Parser<'a> {
    space: &'a FreeProduct,
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        let found = match self.text[self.pos..].chars().next() {
            Some(c) => format!("{message}, found `{c}`"),
            None => format!("{message}, found end of input"),
        };
        Error::Parse {
            offset: self.pos,
            message: found,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut out = self.term()?;
        loop {
            if self.eat(b'+') {
                out = out.plus(&self.term()?);
            } else if self.eat(b'-') {
                out = out.plus(&self.term()?.scaled(&-Rational::one()));
            } else {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let start = self.pos;
        let coeff = match self.peek() {
            Some(c) if c == b'-' || c.is_ascii_digit() => Some(self.coeff()?),
            _ => None,
        };
        let mut raw: Vec<(usize, Monomial)> = Vec::new();
        let has_factor = match coeff {
            Some(_) => self.eat(b'*') || self.peek().is_some_and(is_ident_start),
            None => true,
        };
        if has_factor {
            raw.push(self.factor()?);
            loop {
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        raw.push(self.factor()?);
                    }
                    Some(c) if is_ident_start(c) => raw.push(self.factor()?),
                    _ => break,
                }
            }
        }
        let c = coeff.unwrap_or_else(|| Rational::from_integer(1.into()));
        if raw.is_empty() && !self.space.is_unital() {
            if c.is_zero() {
                return Ok(Polynomial::zero());
            }
            return Err(Error::Parse {
                offset: start,
                message: "a constant term needs a unital algebra".into(),
            });
        }
        let w = self.space.normalize(raw)?;
        Ok(Polynomial::term(w, c))
    }

    fn coeff(&mut self) -> Result<Rational> {
        let negative = self.eat(b'-');
        self.skip_ws();
        let num = self.integer()?;
        let den = if self.eat(b'/') {
            self.skip_ws();
            let d = self.integer()?;
            if d.is_zero() {
                return Err(self.error("denominator must be positive"));
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = Rational::new(num, den);
        Ok(if negative { -r } else { r })
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(self.text[start..self.pos].parse().expect("ascii digits"))
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        if !self.bytes.get(self.pos).copied().is_some_and(is_ident_start) {
            return Err(self.error("expected an identifier"));
        }
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Ok(&self.text[start..self.pos])
    }

    fn factor(&mut self) -> Result<(usize, Monomial)> {
        self.skip_ws();
        let algebra_at = self.pos;
        let algebra = self.ident()?.to_string();
        if !self.eat(b'.') {
            return Err(self.error("expected `.` after the algebra name"));
        }
        let generator = self.ident()?.to_string();
        let index = self.space.factor_index(&algebra).inspect_err(|_| self.pos = algebra_at)?;
        let g = self.space.factors()[index].generator_index(&generator)?;
        let power = if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let n = self.integer()?;
            let n: usize = n.try_into().ok().filter(|&n| n > 0).ok_or(Error::Parse {
                offset: at,
                message: "exponent must be a positive integer".into(),
            })?;
            n
        } else {
            1
        };
        Ok((index, Monomial::from_indices(vec![g; power])))
    }
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}
