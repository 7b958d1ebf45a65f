//! Text format for rings, polynomials, and ideals.
//!
//! ```text
//! ring  := "GF(" prime ")[" var ("," var)* "]"
//! poly  := ["+"|"-"] term (("+"|"-") term)*
//! term  := factor (["*"] factor)*
//! factor:= integer | var ["^" integer] | "(" poly ")" ["^" integer]
//! ideal := poly (";" poly)*
//! ```
//!
//! Juxtaposed variables such as `xy` are split by longest match against the
//! ring's variable names.

use std::sync::Arc;

use super::polynomial::{Polynomial, Ring};
use crate::error::{Error, Result};

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pub(crate) pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{c}'")))
        }
    }

    pub(crate) fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            return Err(Error::parse(self.pos, "expected integer"));
        }
        let start = self.pos;
        self.pos += digits.len();
        digits
            .parse()
            .map_err(|_| Error::parse(start, "integer out of range"))
    }

    pub(crate) fn identifier(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(i, c)| {
                !(c.is_ascii_alphanumeric() || c == '_') || (i == 0 && c.is_ascii_digit())
            })
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        if len == 0 {
            None
        } else {
            Some(&rest[..len])
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses `GF(p)[x,y,...]`.
pub fn parse_ring(src: &str) -> Result<Arc<Ring>> {
    let mut c = Cursor::new(src);
    for ch in ['G', 'F', '('] {
        c.expect(ch)?;
    }
    let p = c.integer()?;
    c.expect(')')?;
    c.expect('[')?;
    let mut vars = Vec::new();
    if !c.eat(']') {
        loop {
            let id = c
                .identifier()
                .ok_or_else(|| Error::parse(c.pos, "expected variable name"))?;
            c.pos += id.len();
            vars.push(id.to_string());
            if c.eat(']') {
                break;
            }
            c.expect(',')?;
        }
    }
    if !c.at_end() {
        return Err(Error::parse(c.pos, "trailing input after ring"));
    }
    Ring::new(p, vars)
}

struct PolyParser<'a, 'r> {
    cur: Cursor<'a>,
    ring: &'r Arc<Ring>,
}

impl PolyParser<'_, '_> {
    fn poly(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negate = false;
        if self.cur.eat('-') {
            negate = true;
        } else {
            self.cur.eat('+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.cur.eat('+') {
                negate = false;
            } else if self.cur.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.cur.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '(')
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            // Explicit `*` or juxtaposition.
            if self.cur.eat('*') || self.starts_factor() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn exponent(&mut self) -> Result<u64> {
        if self.cur.eat('^') {
            self.cur.integer()
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let pos = self.cur.pos;
        match self.cur.peek() {
            Some('(') => {
                self.cur.pos += 1;
                let inner = self.poly()?;
                self.cur.expect(')')?;
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.cur.integer()?;
                let p = self.ring.p() as u64;
                Ok(Polynomial::constant(self.ring, (n % p) as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let id = self.cur.identifier().unwrap_or("");
                // Longest prefix of the identifier that names a variable.
                let (idx, len) = (1..=id.len())
                    .rev()
                    .find_map(|l| self.ring.var_index(&id[..l]).map(|i| (i, l)))
                    .ok_or_else(|| Error::parse(pos, format!("unknown variable in {id:?}")))?;
                self.cur.pos += len;
                let e = self.exponent()?;
                let e = u32::try_from(e).map_err(|_| Error::parse(pos, "exponent too large"))?;
                Ok(Polynomial::monomial(
                    self.ring,
                    super::monomial::Monomial::var(self.ring.nvars(), idx, e),
                    1,
                ))
            }
            _ => Err(Error::parse(pos, "expected a term")),
        }
    }
}

pub fn parse_polynomial(ring: &Arc<Ring>, src: &str) -> Result<Polynomial> {
    let mut parser = PolyParser {
        cur: Cursor::new(src),
        ring,
    };
    let f = parser.poly()?;
    if !parser.cur.at_end() {
        return Err(Error::parse(parser.cur.pos, "unexpected trailing input"));
    }
    Ok(f)
}

/// Parses a semicolon-separated generator list. Empty input is the zero ideal.
pub fn parse_generators(ring: &Arc<Ring>, src: &str) -> Result<Vec<Polynomial>> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut offset = 0;
    let mut out = Vec::new();
    for piece in src.split(';') {
        let f = parse_polynomial(ring, piece).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos: pos + offset,
                msg,
            },
            other => other,
        })?;
        out.push(f);
        offset += piece.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_header() {
        let r = parse_ring("GF(5)[x,y,z]").unwrap();
        assert_eq!(r.p(), 5);
        assert_eq!(r.vars(), ["x", "y", "z"]);
        assert!(parse_ring("GF(6)[x]").is_err());
        assert!(matches!(parse_ring("GF5[x]"), Err(Error::Parse { .. })));
    }

    #[test]
    fn juxtaposition_and_signs() {
        let r = parse_ring("GF(5)[x,y]").unwrap();
        let a = parse_polynomial(&r, "-2xy^2 + 3 - x").unwrap();
        let b = parse_polynomial(&r, "3*x*y*y + 3 + 4*x").unwrap();
        assert_eq!(a, b);
        let c = parse_polynomial(&r, "(x+y)^2 - x^2 - 2xy").unwrap();
        assert_eq!(c, parse_polynomial(&r, "y^2").unwrap());
    }

    #[test]
    fn indexed_and_named_variables() {
        let r = parse_ring("GF(2)[x1,x2,x10]").unwrap();
        let f = parse_polynomial(&r, "x10*x1 + x2^3").unwrap();
        assert_eq!(f.len(), 2);
        assert!(parse_polynomial(&r, "x3").is_err());
    }

    #[test]
    fn malformed_inputs() {
        let r = parse_ring("GF(3)[x,y]").unwrap();
        for bad in ["x +", "x^", "(x", "x $ y", "", "x y)"] {
            assert!(
                matches!(parse_polynomial(&r, bad), Err(Error::Parse { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn display_round_trip() {
        let r = parse_ring("GF(7)[x,y,z]").unwrap();
        let f = parse_polynomial(&r, "3x^2y - z + 5 + y^4").unwrap();
        assert_eq!(parse_polynomial(&r, &f.to_text()).unwrap(), f);
    }

    #[test]
    fn generator_lists() {
        let r = parse_ring("GF(2)[x,y]").unwrap();
        assert_eq!(parse_generators(&r, "x; y^2+x").unwrap().len(), 2);
        assert!(parse_generators(&r, "  ").unwrap().is_empty());
    }
}
