//! Recursive-descent parser for the textual polynomial grammar:
//!
//! ```text
//! poly     := sign? term (('+'|'-') sign? term)*
//! term     := factor ('*'? factor)*
//! factor   := atom ('^' nat)?
//! atom     := 'u' | 'v' | '~u' | '~v' | 'i' | rational | '(' poly ')'
//! rational := int ('/' nat)?
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{GaussRat, MixedPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial has a nonzero constant term (f(0) must vanish)")]
    ConstantTerm,
    #[error("polynomial is identically zero")]
    Zero,
}

/// Parse and validate: rejects constant terms and the zero polynomial.
pub fn parse(src: &str) -> Result<MixedPoly, ParseError> {
    let p = parse_any(src)?;
    if p.is_zero() {
        return Err(ParseError::Zero);
    }
    if p.has_constant_term() {
        return Err(ParseError::ConstantTerm);
    }
    Ok(p)
}

/// Parse without the `f(0) = 0` / nonzero checks.
pub fn parse_any(src: &str) -> Result<MixedPoly, ParseError> {
    let mut p = Parser { s: src.as_bytes(), pos: 0 };
    let poly = p.poly()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

const MAX_EXPONENT: u32 = 4096;

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn signs(&mut self) -> bool {
        let mut neg = false;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            neg ^= c == b'-';
            self.pos += 1;
        }
        neg
    }

    fn poly(&mut self) -> Result<MixedPoly, ParseError> {
        let neg = self.signs();
        let mut acc = self.term()?;
        if neg {
            acc = acc.scale(&GaussRat::from_int(-1));
        }
        loop {
            match self.peek() {
                Some(b'+') | Some(b'-') => {
                    let neg = self.signs();
                    let t = self.term()?;
                    acc = if neg { acc.sub(&t) } else { acc.add(&t) };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(b'u' | b'v' | b'~' | b'i' | b'(' | b'0'..=b'9'))
    }

    fn term(&mut self) -> Result<MixedPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(b'*') {
                self.pos += 1;
                acc = acc.mul(&self.factor()?);
            } else if self.starts_atom() {
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MixedPoly, ParseError> {
        let a = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.nat()?;
            let n: u32 = n
                .try_into()
                .ok()
                .filter(|&n| n <= MAX_EXPONENT)
                .ok_or_else(|| self.err("exponent too large"))?;
            return Ok(a.pow(n));
        }
        Ok(a)
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(txt.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<MixedPoly, ParseError> {
        match self.peek() {
            Some(b'u') => {
                self.pos += 1;
                Ok(MixedPoly::var(Var::U))
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(MixedPoly::var(Var::V))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(MixedPoly::constant(GaussRat::i()))
            }
            Some(b'~') => {
                self.pos += 1;
                match self.s.get(self.pos) {
                    Some(b'u') => {
                        self.pos += 1;
                        Ok(MixedPoly::var(Var::UBar))
                    }
                    Some(b'v') => {
                        self.pos += 1;
                        Ok(MixedPoly::var(Var::VBar))
                    }
                    _ => Err(self.err("expected 'u' or 'v' after '~'")),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let p = self.poly()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(b'0'..=b'9') => {
                let num = self.nat()?;
                let den = if self.s.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let d = self.nat()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                debug_assert!(!den.is_negative());
                Ok(MixedPoly::constant(GaussRat::real(BigRational::new(num, den))))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
