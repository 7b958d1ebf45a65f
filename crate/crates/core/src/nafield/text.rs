//! Text format shared by Laurent elements and restricted series.
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)* [("+") order]
//! term   := factor (["*"] factor)*
//! factor := integer | "t" ["^" texp] | "X" index ["^" integer] | "(" expr ")" ["^" integer]
//! texp   := integer | "-" integer | "(" ["-"] integer ["/" integer] ")"
//! order  := "O(" [ "deg" integer ";" ] ("t^" texp | "1") ")" | "O(deg" integer ")"
//! ```

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;

use super::LaurentElement;
use crate::error::{Error, Result};
use crate::polyring::field;
use crate::polyring::parse::Cursor;

type Key = (Vec<u32>, Ratio<i64>);

/// A finite sum `sum c * X^a * t^r` plus an optional order term.
#[derive(Debug, Clone, Default)]
pub(crate) struct ParsedExpr {
    pub terms: BTreeMap<Key, u32>,
    pub deg_cap: Option<u32>,
    pub t_prec: Option<Ratio<i64>>,
    pub nvars: usize,
}

impl ParsedExpr {
    /// Smallest `d` such that every `t` exponent (and the precision) lies in
    /// `(1/d)Z`.
    pub fn ramification(&self) -> u32 {
        let mut d = 1i64;
        for (_, r) in self.terms.keys() {
            d = d.lcm(r.denom());
        }
        if let Some(r) = self.t_prec {
            d = d.lcm(r.denom());
        }
        d as u32
    }
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mul_exprs(a: &BTreeMap<Key, u32>, b: &BTreeMap<Key, u32>, p: u32) -> BTreeMap<Key, u32> {
    let mut out: BTreeMap<Key, u32> = BTreeMap::new();
    for ((xa, ra), &ca) in a {
        for ((xb, rb), &cb) in b {
            let n = xa.len().max(xb.len());
            let x: Vec<u32> = (0..n)
                .map(|i| xa.get(i).copied().unwrap_or(0) + xb.get(i).copied().unwrap_or(0))
                .collect();
            let c = field::mul(ca, cb, p);
            let slot = out.entry((trim(x), ra + rb)).or_insert(0);
            *slot = field::add(*slot, c, p);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn add_into(acc: &mut BTreeMap<Key, u32>, other: BTreeMap<Key, u32>, negate: bool, p: u32) {
    for (k, c) in other {
        let c = if negate { field::neg(c, p) } else { c };
        let slot = acc.entry(k).or_insert(0);
        *slot = field::add(*slot, c, p);
    }
    acc.retain(|_, c| *c != 0);
}

fn constant(c: u32) -> BTreeMap<Key, u32> {
    let mut m = BTreeMap::new();
    if c != 0 {
        m.insert((Vec::new(), Ratio::from_integer(0)), c);
    }
    m
}

struct ExprParser<'a> {
    cur: Cursor<'a>,
    p: u32,
    allow_x: bool,
    nvars: usize,
}

impl<'a> ExprParser<'a> {
    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.cur.eat('-');
        let n = self.cur.integer()? as i64;
        Ok(if neg { -n } else { n })
    }

    fn t_exponent(&mut self) -> Result<Ratio<i64>> {
        if !self.cur.eat('^') {
            return Ok(Ratio::from_integer(1));
        }
        if self.cur.eat('(') {
            let num = self.signed_int()?;
            let den = if self.cur.eat('/') {
                let pos = self.cur.pos;
                let den = self.cur.integer()? as i64;
                if den == 0 {
                    return Err(Error::parse(pos, "zero denominator"));
                }
                den
            } else {
                1
            };
            self.cur.expect(')')?;
            Ok(Ratio::new(num, den))
        } else {
            Ok(Ratio::from_integer(self.signed_int()?))
        }
    }

    fn small_exponent(&mut self) -> Result<u32> {
        if !self.cur.eat('^') {
            return Ok(1);
        }
        let pos = self.cur.pos;
        let e = self.cur.integer()?;
        u32::try_from(e).map_err(|_| Error::parse(pos, "exponent too large"))
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.cur.peek(), Some(c) if c.is_ascii_digit() || c == '(' || c == 't' || c == 'X')
    }

    fn at_order_term(&mut self) -> bool {
        self.cur.peek() == Some('O') && self.cur.rest()[1..].trim_start().starts_with('(')
    }

    fn factor(&mut self) -> Result<BTreeMap<Key, u32>> {
        let pos = self.cur.pos;
        match self.cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.cur.integer()?;
                Ok(constant((n % self.p as u64) as u32))
            }
            Some('(') => {
                self.cur.expect('(')?;
                let inner = self.sum(false)?;
                self.cur.expect(')')?;
                let e = self.small_exponent()?;
                let mut acc = constant(1);
                for _ in 0..e {
                    acc = mul_exprs(&acc, &inner, self.p);
                }
                Ok(acc)
            }
            _ => {
                let id = self
                    .cur
                    .identifier()
                    .ok_or_else(|| Error::parse(pos, "expected factor"))?;
                self.cur.pos += id.len();
                if id == "t" {
                    let r = self.t_exponent()?;
                    let mut m = BTreeMap::new();
                    m.insert((Vec::new(), r), 1);
                    return Ok(m);
                }
                let index = id
                    .strip_prefix('X')
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&i| i >= 1 && self.allow_x);
                let Some(i) = index else {
                    return Err(Error::parse(pos, format!("unknown symbol '{id}'")));
                };
                self.nvars = self.nvars.max(i);
                let e = self.small_exponent()?;
                let mut x = vec![0u32; i];
                x[i - 1] = e;
                let mut m = BTreeMap::new();
                m.insert((trim(x), Ratio::from_integer(0)), 1);
                Ok(m)
            }
        }
    }

    fn term(&mut self) -> Result<BTreeMap<Key, u32>> {
        let mut acc = self.factor()?;
        loop {
            // Explicit `*` or juxtaposition.
            if self.cur.eat('*') || self.starts_factor() {
                acc = mul_exprs(&acc, &self.factor()?, self.p);
            } else {
                return Ok(acc);
            }
        }
    }

    fn order(&mut self, out: &mut ParsedExpr) -> Result<()> {
        self.cur.expect('O')?;
        self.cur.expect('(')?;
        if self.cur.peek() == Some('d') {
            let pos = self.cur.pos;
            if self.cur.identifier() != Some("deg") {
                return Err(Error::parse(pos, "expected 'deg'"));
            }
            self.cur.pos += 3;
            let pos = self.cur.pos;
            let cap = self.cur.integer()?;
            out.deg_cap = Some(u32::try_from(cap).map_err(|_| Error::parse(pos, "cap too large"))?);
            if !self.cur.eat(';') {
                return self.cur.expect(')');
            }
        }
        self.cur.skip_ws();
        let pos = self.cur.pos;
        if self.cur.rest().starts_with('1') {
            // `O(1)` is `O(t^0)`.
            if self.cur.integer()? != 1 {
                return Err(Error::parse(pos, "expected t^N in order term"));
            }
            out.t_prec = Some(Ratio::from_integer(0));
            return self.cur.expect(')');
        }
        if self.cur.identifier() != Some("t") {
            return Err(Error::parse(pos, "expected t^N in order term"));
        }
        self.cur.pos += 1;
        out.t_prec = Some(self.t_exponent()?);
        self.cur.expect(')')
    }

    fn sum(&mut self, top: bool) -> Result<BTreeMap<Key, u32>> {
        let mut acc = BTreeMap::new();
        let mut negate = self.cur.eat('-');
        if !negate {
            self.cur.eat('+');
        }
        if top && self.at_order_term() {
            return Ok(acc);
        }
        loop {
            let t = self.term()?;
            add_into(&mut acc, t, negate, self.p);
            if self.cur.eat('+') {
                negate = false;
            } else if self.cur.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
            if top && !negate && self.at_order_term() {
                return Ok(acc);
            }
        }
    }
}

pub(crate) fn parse_expr(src: &str, p: u32, allow_x: bool) -> Result<ParsedExpr> {
    let p = field::check_modulus(p as u64)?;
    let mut parser = ExprParser {
        cur: Cursor::new(src),
        p,
        allow_x,
        nvars: 0,
    };
    let mut out = ParsedExpr {
        terms: parser.sum(true)?,
        ..ParsedExpr::default()
    };
    if parser.at_order_term() {
        parser.order(&mut out)?;
    }
    if !parser.cur.at_end() {
        return Err(Error::parse(parser.cur.pos, "unexpected trailing input"));
    }
    out.nvars = parser.nvars;
    Ok(out)
}

/// Parses `t^(-2) + 3*t^(1/2) + O(t^5)` over `F_p`. Without an `O(...)`
/// term the element is exact. The ramification is the least common
/// multiple of `d` (if given) and every denominator in the text.
pub fn parse_laurent(src: &str, p: u32, d: Option<u32>) -> Result<LaurentElement> {
    let expr = parse_expr(src, p, false)?;
    if expr.deg_cap.is_some() {
        return Err(Error::parse(
            0,
            "degree cap is not allowed in a field element",
        ));
    }
    let d = expr.ramification().lcm(&d.unwrap_or(1).max(1));
    let units = |r: Ratio<i64>| (r * d as i64).to_integer();
    let terms = expr.terms.iter().map(|((_, r), &c)| (units(*r), c as i64));
    LaurentElement::from_terms(p, d, terms, expr.t_prec.map(units))
}

/// `t^{e/d}` in the text format.
pub(crate) fn render_t_power(e: i64, d: u32) -> String {
    let r = Ratio::new(e, d as i64);
    if r.is_integer() {
        match r.to_integer() {
            0 => "1".to_string(),
            1 => "t".to_string(),
            n if n > 0 => format!("t^{n}"),
            n => format!("t^({n})"),
        }
    } else {
        format!("t^({}/{})", r.numer(), r.denom())
    }
}

pub(crate) fn render_term(c: u32, e: i64, d: u32) -> String {
    if e == 0 {
        c.to_string()
    } else if c == 1 {
        render_t_power(e, d)
    } else {
        format!("{c}*{}", render_t_power(e, d))
    }
}
