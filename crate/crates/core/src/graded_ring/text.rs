//! Text form of polynomials.
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := rational ('*' factor)* | factor ('*' factor)*
//! factor := symbol index ('^' exponent)?
//! ```
//!
//! Terms are emitted in canonical order, rationals as `num/den` or an
//! integer, a unit coefficient is left implicit, and subtraction is written
//! as ` - `. The zero polynomial is `0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{ExponentVector, GradedPoly};
use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn format_monomial(m: &ExponentVector, symbol: &str) -> String {
    m.iter()
        .map(|(i, e)| if e == 1 { format!("{symbol}{i}") } else { format!("{symbol}{i}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl GradedPoly {
    /// Canonical text with variables named `{symbol}{index}`.
    pub fn to_text(&self, symbol: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, q)) in self.terms().enumerate() {
            let negative = q.is_negative();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = q.abs();
            if m.is_one() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&format_monomial(m, symbol));
            } else {
                out.push_str(&format_rational(&mag));
                out.push('*');
                out.push_str(&format_monomial(m, symbol));
            }
        }
        out
    }

    /// Parses text over the variable symbol `c`.
    pub fn parse(s: &str, truncation: u32) -> Result<GradedPoly, ParseError> {
        Self::parse_with_symbol(s, truncation, "c")
    }

    pub fn parse_with_symbol(s: &str, truncation: u32, symbol: &str) -> Result<GradedPoly, ParseError> {
        Parser { src: s, pos: 0, symbol }.poly(truncation)
    }
}

/// Parses a single monomial such as `c12^2` or `c1*c3`.
pub fn parse_monomial(s: &str, symbol: &str) -> Result<ExponentVector, ParseError> {
    let mut p = Parser { src: s, pos: 0, symbol };
    p.skip_ws();
    let mut pairs = vec![p.factor()?];
    while p.eat('*') {
        pairs.push(p.factor()?);
    }
    p.skip_ws();
    if p.pos != s.len() {
        return Err(p.error("trailing input"));
    }
    Ok(ExponentVector::from_pairs(&pairs))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    symbol: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&str, ParseError> {
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected digits"));
        }
        self.pos += len;
        Ok(&self.src[start..self.pos])
    }

    fn small(&mut self) -> Result<u32, ParseError> {
        let d = self.digits()?;
        d.parse().map_err(|_| self.error("number out of range"))
    }

    fn factor(&mut self) -> Result<(u32, u32), ParseError> {
        self.skip_ws();
        if !self.rest().starts_with(self.symbol) {
            return Err(self.error(&format!("expected variable {}<index>", self.symbol)));
        }
        self.pos += self.symbol.len();
        let index = self.small()?;
        if index == 0 {
            return Err(self.error("variable index must be at least 1"));
        }
        let exp = if self.eat('^') {
            self.skip_ws();
            self.small()?
        } else {
            1
        };
        Ok((index, exp))
    }

    fn term(&mut self) -> Result<(ExponentVector, Rational), ParseError> {
        self.skip_ws();
        let mut pairs = Vec::new();
        let coeff = if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            let num: BigInt = self.digits()?.parse().expect("digits");
            let den: BigInt = if self.eat('/') {
                self.skip_ws();
                self.digits()?.parse().expect("digits")
            } else {
                BigInt::one()
            };
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Rational::new(num, den)
        } else {
            pairs.push(self.factor()?);
            Rational::one()
        };
        while self.eat('*') {
            pairs.push(self.factor()?);
        }
        Ok((ExponentVector::from_pairs(&pairs), coeff))
    }

    fn poly(&mut self, truncation: u32) -> Result<GradedPoly, ParseError> {
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        loop {
            let (m, q) = self.term()?;
            terms.push((m, if negative { -q } else { q }));
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.error("trailing input"));
        }
        Ok(GradedPoly::from_terms(truncation, terms))
    }
}
