use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{default_precision, Valuation};
use crate::error::{Error, Result};
use crate::polyring::field;

/// Precision marker for elements known exactly.
const EXACT: i64 = i64::MAX;

/// An element of `F_p((t^{1/d}))` known modulo `t^{prec/d}`.
///
/// Exponents and the precision are stored in units of `1/d`. The digit
/// vector is dense from `start`, with `digits[0] != 0` and no trailing
/// zeros; an element with no digits is zero to its precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentElement {
    p: u32,
    d: u32,
    start: i64,
    digits: Vec<u32>,
    prec: i64,
}

impl LaurentElement {
    /// Builds `sum c * t^{e/d}` from `(e, c)` pairs; `prec` is an absolute
    /// precision in units of `1/d`, `None` meaning exact.
    pub fn from_terms<I>(p: u32, d: u32, terms: I, prec: Option<i64>) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let p = field::check_modulus(p as u64)?;
        if d == 0 {
            return Err(Error::Domain("ramification must be positive".into()));
        }
        let prec = prec.unwrap_or(EXACT);
        let terms: Vec<(i64, u32)> = terms
            .into_iter()
            .filter(|&(e, _)| e < prec)
            .map(|(e, c)| (e, field::reduce_i64(c, p)))
            .collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Ok(Self::zero_to(p, d, prec));
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut digits = vec![0u32; (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut digits[(e - lo) as usize];
            *slot = field::add(*slot, c, p);
        }
        Ok(Self::normalized(p, d, lo, digits, prec))
    }

    fn normalized(p: u32, d: u32, mut start: i64, mut digits: Vec<u32>, prec: i64) -> Self {
        if prec != EXACT {
            let keep = (prec - start).clamp(0, digits.len() as i64) as usize;
            digits.truncate(keep);
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        let lead = digits.iter().position(|&c| c != 0).unwrap_or(digits.len());
        digits.drain(..lead);
        start += lead as i64;
        if digits.is_empty() {
            start = 0;
        }
        LaurentElement {
            p,
            d,
            start,
            digits,
            prec,
        }
    }

    /// Exact zero.
    pub fn zero(p: u32, d: u32) -> Self {
        Self::zero_to(p, d, EXACT)
    }

    /// `O(t^{prec/d})`.
    pub fn zero_to(p: u32, d: u32, prec: i64) -> Self {
        LaurentElement {
            p,
            d,
            start: 0,
            digits: Vec::new(),
            prec,
        }
    }

    pub fn one(p: u32, d: u32) -> Self {
        Self::monomial(p, d, 0, 1)
    }

    /// Exact `c * t^{e/d}`.
    pub fn monomial(p: u32, d: u32, e: i64, c: u32) -> Self {
        Self::normalized(p, d, e, vec![c % p], EXACT)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ramification(&self) -> u32 {
        self.d
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    /// Absolute precision in units of `1/d`, `None` if exact.
    pub fn precision_units(&self) -> Option<i64> {
        (!self.is_exact()).then_some(self.prec)
    }

    pub fn precision(&self) -> Option<Ratio<i64>> {
        self.precision_units().map(|n| Ratio::new(n, self.d as i64))
    }

    /// Zero to the known precision.
    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinity
        } else {
            Valuation::from_units(self.start, self.d)
        }
    }

    /// `v(x)` in units of `1/d`, `None` for zero.
    pub fn valuation_units(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.start)
    }

    /// Valuation used for precision bookkeeping: zero counts as its precision.
    fn working_valuation(&self) -> i64 {
        if self.is_zero() {
            self.prec
        } else {
            self.start
        }
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.digits.first().copied()
    }

    /// Coefficient of `t^{e/d}`, or `None` if beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<u32> {
        if e >= self.prec {
            return None;
        }
        let i = e - self.start;
        if self.is_zero() || i < 0 || i as usize >= self.digits.len() {
            Some(0)
        } else {
            Some(self.digits[i as usize])
        }
    }

    /// Nonzero `(e, c)` pairs, exponents in units of `1/d`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.digits
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.start + i as i64, c))
    }

    /// The same element viewed in `F_p((t^{1/d2}))`; `d` must divide `d2`.
    pub fn refine(&self, d2: u32) -> Result<Self> {
        if d2 == 0 || !d2.is_multiple_of(self.d) {
            return Err(Error::Domain(format!(
                "cannot refine ramification {} to {d2}",
                self.d
            )));
        }
        let m = (d2 / self.d) as i64;
        if m == 1 {
            return Ok(self.clone());
        }
        let mut digits = vec![0u32; self.digits.len().saturating_sub(1) * m as usize + 1];
        for (i, &c) in self.digits.iter().enumerate() {
            digits[i * m as usize] = c;
        }
        if self.is_zero() {
            digits.clear();
        }
        let prec = if self.is_exact() {
            EXACT
        } else {
            self.prec.saturating_mul(m)
        };
        Ok(Self::normalized(self.p, d2, self.start * m, digits, prec))
    }

    /// Truncates to precision `prec` (units of `1/d`) if that is lower.
    pub fn with_precision(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        Self::normalized(self.p, self.d, self.start, self.digits.clone(), prec)
    }

    /// Multiplication by `t^{e/d}`.
    pub fn shift(&self, e: i64) -> Self {
        let prec = if self.is_exact() {
            EXACT
        } else {
            self.prec + e
        };
        if self.is_zero() {
            return Self::zero_to(self.p, self.d, prec);
        }
        LaurentElement {
            start: self.start + e,
            prec,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let digits = self
            .digits
            .iter()
            .map(|&a| field::mul(a, c % self.p, self.p))
            .collect();
        Self::normalized(self.p, self.d, self.start, digits, self.prec)
    }

    /// Component `c_j ∈ F_p((t))` in `x = sum_j c_j t^{j/d}`, `0 <= j < d`.
    pub fn component(&self, j: u32) -> LaurentElement {
        let d = self.d as i64;
        let j = j as i64;
        let prec = if self.is_exact() {
            EXACT
        } else {
            Integer::div_ceil(&(self.prec - j), &d)
        };
        let terms = self
            .terms()
            .filter(|&(e, _)| (e - j).mod_floor(&d) == 0)
            .map(|(e, c)| (Integer::div_floor(&(e - j), &d), c as i64));
        Self::from_terms(self.p, 1, terms, (prec != EXACT).then_some(prec))
            .expect("modulus already validated")
    }

    /// Whether every known term lies in `F_p((t))`.
    pub fn is_in_base_field(&self) -> bool {
        self.terms().all(|(e, _)| e % self.d as i64 == 0)
    }

    fn common(&self, other: &Self) -> Result<(Self, Self)> {
        if self.p != other.p {
            return Err(Error::Domain(format!(
                "characteristic mismatch: {} vs {}",
                self.p, other.p
            )));
        }
        let d = self.d.lcm(&other.d);
        Ok((self.refine(d)?, other.refine(d)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other)?;
        let prec = a.prec.min(b.prec);
        if a.is_zero() {
            return Ok(b.with_precision(prec));
        }
        if b.is_zero() {
            return Ok(a.with_precision(prec));
        }
        let lo = a.start.min(b.start);
        let hi = (a.start + a.digits.len() as i64).max(b.start + b.digits.len() as i64);
        let mut digits = vec![0u32; (hi - lo) as usize];
        for x in [&a, &b] {
            for (i, &c) in x.digits.iter().enumerate() {
                let slot = &mut digits[(x.start - lo) as usize + i];
                *slot = field::add(*slot, c, a.p);
            }
        }
        Ok(Self::normalized(a.p, a.d, lo, digits, prec))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other)?;
        let prec = plus(a.prec, b.working_valuation()).min(plus(b.prec, a.working_valuation()));
        if a.is_zero() || b.is_zero() {
            return Ok(Self::zero_to(a.p, a.d, prec));
        }
        let start = a.start + b.start;
        let full = a.digits.len() + b.digits.len() - 1;
        let len = if prec == EXACT {
            full
        } else {
            (prec - start).clamp(0, full as i64) as usize
        };
        let digits = mul_trunc(&a.digits, &b.digits, len, a.p);
        Ok(Self::normalized(a.p, a.d, start, digits, prec))
    }

    /// Inverse to the relative precision carried by `self`; exact inputs
    /// are inverted exactly when they are monomials and otherwise to
    /// [`default_precision`] significant powers of `t`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(if self.is_exact() {
                Error::DivisionByZero
            } else {
                Error::Precision(format!("cannot invert {self}: zero to precision"))
            });
        }
        let p = self.p;
        let v = self.start;
        if self.is_exact() && self.digits.len() == 1 {
            return Ok(Self::monomial(p, self.d, -v, field::inv(self.digits[0], p)));
        }
        let rel = if self.is_exact() {
            default_precision() * self.d as i64
        } else {
            self.prec - v
        };
        let n = rel as usize;
        let u = &self.digits[..self.digits.len().min(n)];
        // Newton iteration w <- w (2 - u w), doubling the correct digits.
        let mut w = vec![field::inv(u[0], p)];
        let mut k = 1usize;
        while k < n {
            let k2 = (2 * k).min(n);
            let uw = mul_trunc(u, &w, k2, p);
            let mut two_minus: Vec<u32> = uw.iter().map(|&c| field::neg(c, p)).collect();
            two_minus.resize(k2, 0);
            two_minus[0] = field::add(two_minus[0], 2 % p, p);
            w = mul_trunc(&w, &two_minus, k2, p);
            k = k2;
        }
        Ok(Self::normalized(p, self.d, -v, w, -v + rel))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.p, self.d);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_json(&self) -> LaurentJson {
        LaurentJson {
            p: self.p,
            d: self.d,
            terms: self.terms().map(|(e, c)| (e, self.d, c)).collect(),
            precision: self.precision_units().map(|n| (n, self.d)),
        }
    }

    pub fn from_json(j: &LaurentJson) -> Result<Self> {
        let d = j.d;
        let mut terms = Vec::with_capacity(j.terms.len());
        for &(num, den, c) in &j.terms {
            if den == 0 || !d.is_multiple_of(den) {
                return Err(Error::Domain(format!(
                    "denominator {den} does not divide d = {d}"
                )));
            }
            terms.push((num * (d / den) as i64, c as i64));
        }
        let prec = match j.precision {
            None => None,
            Some((num, den)) => {
                if den == 0 || !d.is_multiple_of(den) {
                    return Err(Error::Domain(format!(
                        "precision denominator {den} does not divide d = {d}"
                    )));
                }
                Some(num * (d / den) as i64)
            }
        };
        Self::from_terms(j.p, d, terms, prec)
    }
}

/// JSON mirror: `terms` are `(numerator, d, coefficient)` triples for
/// `coefficient * t^{numerator/d}`; `precision` is `(numerator, d)` or
/// absent for exact elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub p: u32,
    pub d: u32,
    pub terms: Vec<(i64, u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<(i64, u32)>,
}

/// Precision arithmetic with `EXACT` absorbing.
fn plus(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a + b
    }
}

/// First `len` coefficients of `a * b`.
pub(crate) fn mul_trunc(a: &[u32], b: &[u32], len: usize, p: u32) -> Vec<u32> {
    let mut out = vec![0u64; len];
    let p64 = p as u64;
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            let slot = &mut out[i + j];
            *slot = (*slot + x as u64 * y as u64) % p64;
        }
    }
    out.into_iter().map(|c| c as u32).collect()
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms()
            .map(|(e, c)| super::text::render_term(c, e, self.d))
            .collect();
        if let Some(n) = self.precision_units() {
            parts.push(format!("O({})", super::text::render_t_power(n, self.d)));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $via:ident) => {
        impl $tr<&LaurentElement> for &LaurentElement {
            type Output = LaurentElement;

            /// Panics if the characteristics differ.
            fn $m(self, rhs: &LaurentElement) -> LaurentElement {
                self.$via(rhs).expect("characteristic mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &LaurentElement {
    type Output = LaurentElement;

    fn neg(self) -> LaurentElement {
        LaurentElement {
            digits: self.digits.iter().map(|&c| field::neg(c, self.p)).collect(),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(p: u32, d: u32, terms: &[(i64, i64)], prec: Option<i64>) -> LaurentElement {
        LaurentElement::from_terms(p, d, terms.iter().copied(), prec).unwrap()
    }

    #[test]
    fn add_and_valuation() {
        let a = el(5, 1, &[(1, 1)], None);
        let b = el(5, 1, &[(2, 1)], None);
        let s = &a + &b;
        assert_eq!(s, el(5, 1, &[(1, 1), (2, 1)], None));
        assert_eq!(s.valuation(), Valuation::int(1));
        let two_t = &a + &a;
        assert_eq!(two_t.valuation(), Valuation::int(1));
        let f2 = el(2, 1, &[(1, 1)], None);
        assert_eq!((&f2 + &f2).valuation(), Valuation::Infinity);
        assert_eq!(
            el(3, 1, &[(-2, 1), (1, 1)], None).valuation(),
            Valuation::int(-2)
        );
    }

    #[test]
    fn char_two_square() {
        let a = el(2, 1, &[(0, 1), (1, 1)], None);
        let b = el(2, 1, &[(0, 1), (1, -1)], None);
        assert_eq!(&a * &b, el(2, 1, &[(0, 1), (2, 1)], None));
    }

    #[test]
    fn inverse_geometric_series() {
        let a = el(2, 1, &[(0, 1), (1, 1)], Some(4));
        let inv = a.inverse().unwrap();
        assert_eq!(inv, el(2, 1, &[(0, 1), (1, 1), (2, 1), (3, 1)], Some(4)));
        let prod = &a * &inv;
        assert_eq!(prod, el(2, 1, &[(0, 1)], Some(4)));
    }

    #[test]
    fn inverse_shifts_precision() {
        // v = 2, precision 10: relative precision 8, result known to t^{-2+8}.
        let a = el(3, 1, &[(2, 1), (3, 2)], Some(10));
        let inv = a.inverse().unwrap();
        assert_eq!(inv.precision_units(), Some(6));
        assert_eq!(inv.valuation(), Valuation::int(-2));
        let one = &a * &inv;
        assert_eq!(one, el(3, 1, &[(0, 1)], Some(8)));
    }

    #[test]
    fn exact_monomial_inverse_is_exact() {
        let a = LaurentElement::monomial(5, 2, 3, 2);
        let inv = a.inverse().unwrap();
        assert!(inv.is_exact());
        assert_eq!(&a * &inv, LaurentElement::one(5, 2));
    }

    #[test]
    fn zero_inverse_errors() {
        assert_eq!(
            LaurentElement::zero(3, 1).inverse().unwrap_err(),
            Error::DivisionByZero
        );
        assert!(matches!(
            LaurentElement::zero_to(3, 1, 5).inverse(),
            Err(Error::Precision(_))
        ));
    }

    #[test]
    fn mixed_ramification_refines() {
        let a = el(3, 2, &[(1, 1)], None); // t^{1/2}
        let b = el(3, 3, &[(1, 1)], None); // t^{1/3}
        let prod = &a * &b;
        assert_eq!(prod.ramification(), 6);
        assert_eq!(prod.valuation(), Valuation::from_units(5, 6));
    }

    #[test]
    fn precision_propagation() {
        let a = el(5, 1, &[(0, 1)], Some(10));
        let b = el(5, 1, &[(3, 1)], Some(5));
        assert_eq!((&a + &b).precision_units(), Some(5));
        // min(10 + 3, 5 + 0)
        assert_eq!((&a * &b).precision_units(), Some(5));
        let z = LaurentElement::zero_to(5, 1, 4);
        assert_eq!((&a * &z).precision_units(), Some(4));
        assert_eq!((&b * &z).precision_units(), Some(7));
    }

    #[test]
    fn components() {
        // 1 + t^{1/2} + 2 t^{3/2} + O(t^{7/2}) over d = 2
        let x = el(3, 2, &[(0, 1), (1, 1), (3, 2)], Some(7));
        let c0 = x.component(0);
        let c1 = x.component(1);
        assert_eq!(c0, el(3, 1, &[(0, 1)], Some(4)));
        assert_eq!(c1, el(3, 1, &[(0, 1), (1, 2)], Some(3)));
        let back = &c0.refine(2).unwrap() + &(&c1.refine(2).unwrap() * &el(3, 2, &[(1, 1)], None));
        assert_eq!(back, x);
    }

    #[test]
    fn json_round_trip() {
        let x = el(3, 2, &[(-1, 2), (1, 1)], Some(9));
        let j = x.to_json();
        assert_eq!(j.precision, Some((9, 2)));
        assert_eq!(LaurentElement::from_json(&j).unwrap(), x);
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(
            s,
            r#"{"p":3,"d":2,"terms":[[-1,2,2],[1,2,1]],"precision":[9,2]}"#
        );
    }
}
