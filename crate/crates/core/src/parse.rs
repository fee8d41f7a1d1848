//! Text grammar for polynomials.
//!
//! ```text
//! expr    := sign? term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := primary ('^' integer)?
//! primary := integer | variable | '(' expr ')'
//! ```
//!
//! Whitespace is ignored and integer coefficients are reduced mod p.

use crate::error::{AlgebraError, Result};
use crate::poly::{fp, Polynomial};
use crate::ring::{Monomial, Ring};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

fn syntax(pos: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Syntax { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t)? } else { acc.add(&t)? };
            match self.peek() {
                Some(b'+') => {
                    negate = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    negate = true;
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(syntax(start, "expected exponent"));
            }
            let e: u64 = std::str::from_utf8(digits)
                .unwrap()
                .parse()
                .map_err(|_| AlgebraError::ExponentOverflow)?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn primary(&mut self) -> Result<Polynomial> {
        let p = self.ring.p() as u32;
        match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(syntax(self.pos, format!("unclosed parenthesis opened at {open}")));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut r = 0u32;
                for &d in self.digits() {
                    r = fp::add(fp::mul(r, 10 % p, p), (d - b'0') as u32 % p, p);
                }
                Ok(Polynomial::constant(self.ring, r as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self
                    .ring
                    .var_index(name)
                    .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
                Ok(Polynomial::term(self.ring, Monomial::var(self.ring.arity(), i, 1), 1))
            }
            Some(c) => Err(syntax(self.pos, format!("unexpected `{}`", c as char))),
            None => Err(syntax(self.pos, "unexpected end of input")),
        }
    }
}

/// Parses a polynomial in the given ring.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, ring };
    let f = parser.expr()?;
    if let Some(c) = parser.peek() {
        return Err(syntax(parser.pos, format!("unexpected `{}`", c as char)));
    }
    Ok(f)
}
