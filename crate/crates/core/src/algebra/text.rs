//! Canonical text form of [`MPoly`].
//!
//! Terms are written in descending canonical order, variables inside a term in
//! the order `X, E, L, B`, powers with `^` and products with an explicit `*`:
//!
//! ```text
//! E^2 - 2*E*L - 3*L^2 - B
//! 3/16*X^2 - 1
//! ```
//!
//! [`parse_poly`] accepts this form and, more generally, sums, products,
//! integer powers and parentheses, so table entries can be written in their
//! natural factored shape.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::mpoly::{MPoly, Monomial, Var};
use super::rat::{rat_string, Rat};
use crate::error::{Error, Result};

fn write_monomial(m: &Monomial, out: &mut Vec<String>) {
    for v in Var::ALL {
        match m.exp(v) {
            0 => {}
            1 => out.push(v.symbol().to_string()),
            k => out.push(format!("{}^{}", v.symbol(), k)),
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut parts = Vec::new();
            if !mag.is_one() || m.is_one() {
                parts.push(rat_string(&mag));
            }
            write_monomial(m, &mut parts);
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

pub fn render_poly(p: &MPoly) -> String {
    p.to_string()
}

pub fn parse_poly(s: &str) -> Result<MPoly> {
    let mut parser = Parser { src: s.as_bytes(), pos: 0 };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
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

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    let c = d
                        .constant_value()
                        .filter(|c| !c.is_zero())
                        .ok_or_else(|| self.error("division only by nonzero constants"))?;
                    acc = acc.scale(&(Rat::one() / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            let k: u32 = k
                .try_into()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("integer overflow"))
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: num_bigint::BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(MPoly::constant(Rat::from_integer(n)))
            }
            Some(c) => match Var::from_symbol(c as char) {
                Some(v) => {
                    self.pos += 1;
                    Ok(MPoly::var(v))
                }
                None => Err(self.error("unexpected character")),
            },
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn renders_canonical_order() {
        let y0 = parse_poly("E^2 - 2*L*E - B - 3*L^2").unwrap();
        assert_eq!(y0.to_string(), "E^2 - 2*E*L - 3*L^2 - B");
        let q = MPoly::from_terms([
            (Monomial::of(Var::X, 2), rat(3, 16)),
            (Monomial::ONE, rat(-1, 1)),
        ]);
        assert_eq!(q.to_string(), "3/16*X^2 - 1");
        assert_eq!(MPoly::zero().to_string(), "0");
        assert_eq!(MPoly::int(-4).to_string(), "-4");
    }

    #[test]
    fn parses_factored_forms() {
        let a = parse_poly("32*L^2 + 4*(3*B - 8)*L + (B - 1)*(B - 4)").unwrap();
        let b = parse_poly("32*L^2 + 12*B*L - 32*L + B^2 - 5*B + 4").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("-(E+L)^2").unwrap(), parse_poly("-E^2 - 2*E*L - L^2").unwrap());
        assert_eq!(parse_poly("L/4").unwrap(), parse_poly("1/4*L").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("E +").is_err());
        assert!(parse_poly("Q").is_err());
        assert!(parse_poly("(E").is_err());
        assert!(parse_poly("E/X").is_err());
        assert!(parse_poly("E E").is_err());
    }
}
