use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{self, Fp};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// The polynomial ring `F_p[x_1, ..., x_n]` with named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    p: u32,
    vars: Vec<String>,
}

impl Ring {
    pub fn new(p: u64, vars: Vec<String>) -> Result<Arc<Ring>> {
        let p = field::check_modulus(p)?;
        for (i, v) in vars.iter().enumerate() {
            let ok = v
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Domain(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Domain(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Arc::new(Ring { p, vars }))
    }

    /// Ring with variables `x1..xn`.
    pub fn with_indexed_vars(p: u64, n: usize) -> Result<Arc<Ring>> {
        Ring::new(p, (1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn element(&self, value: i64) -> Fp {
        Fp::from_raw(field::reduce_i64(value, self.p), self.p)
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self != other {
            return Err(Error::RingMismatch(self.to_string(), other.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.p, self.vars.join(","))
    }
}

/// A term list sorted by a monomial order, leading term first.
pub(crate) type SortedTerms = Vec<(Monomial, u32)>;

/// Sparse polynomial over a prime field. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, u32>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Self {
        let c = field::reduce_i64(c, ring.p);
        Polynomial::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var(ring.nvars(), i, 1), 1)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: u32) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
        let mut terms = BTreeMap::new();
        let c = c % ring.p;
        if c != 0 {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, i64)>,
    {
        let mut out = Polynomial::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.nvars() {
                return Err(Error::LengthMismatch {
                    expected: ring.nvars(),
                    got: e.len(),
                });
            }
            out.add_term(Monomial::new(e), field::reduce_i64(c, ring.p));
        }
        Ok(out)
    }

    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: SortedTerms) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: terms.into_iter().collect(),
        }
    }

    pub(crate) fn to_sorted(&self, order: &MonomialOrder) -> SortedTerms {
        let mut v: SortedTerms = self.terms.iter().map(|(m, &c)| (m.clone(), c)).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.ring.p;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field::add(*o.get(), c, p);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn p(&self) -> u32 {
        self.ring.p
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is a constant (including zero).
    pub fn constant_value(&self) -> Option<u32> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (m, &c) = self.terms.iter().next().unwrap();
                m.is_one().then_some(c)
            }
            _ => None,
        }
    }

    pub fn is_nonzero_constant(&self) -> bool {
        matches!(self.constant_value(), Some(c) if c != 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Fp)> + '_ {
        let p = self.ring.p;
        self.terms
            .iter()
            .map(move |(m, &c)| (m, Fp::from_raw(c, p)))
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Fp {
        Fp::from_raw(self.terms.get(m).copied().unwrap_or(0), self.ring.p)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, u32)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, &c)| (m, c))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let p = self.ring.p;
        let c = c % p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, &a)| (m.clone(), field::mul(a, c, p)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, &c)| (k.mul(m), c)).collect(),
        }
    }

    /// Multiplies by the monic version of itself, i.e. divides by the leading
    /// coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(field::inv(c, self.ring.p)),
        }
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The Frobenius image `f^q` for `q` a power of the characteristic.
    /// Coefficients in the prime field are fixed, so only exponents scale.
    pub fn frobenius_power(&self, q: u64) -> Result<Polynomial> {
        let q32 = u32::try_from(q).map_err(|_| Error::Overflow(format!("q = {q}")))?;
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            let mut e = Vec::with_capacity(m.nvars());
            for &a in m.exponents() {
                e.push(
                    a.checked_mul(q32)
                        .ok_or_else(|| Error::Overflow(format!("exponent {a} * {q}")))?,
                );
            }
            terms.insert(Monomial::new(e), c);
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn evaluate(&self, point: &[Fp]) -> Result<Fp> {
        let p = self.ring.p;
        if point.len() != self.nvars() {
            return Err(Error::LengthMismatch {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        if let Some(bad) = point.iter().find(|a| a.modulus() != p) {
            return Err(Error::RingMismatch(
                format!("GF({p})"),
                format!("GF({})", bad.modulus()),
            ));
        }
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (a, &e) in point.iter().zip(m.exponents()) {
                t = field::mul(t, field::pow(a.value(), e as u64, p), p);
            }
            acc = field::add(acc, t, p);
        }
        Ok(Fp::from_raw(acc, p))
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.ring, g.ring, "ring mismatch");
        if g.is_zero() {
            return if self.is_zero() {
                Some(self.clone())
            } else {
                None
            };
        }
        let order = MonomialOrder::grevlex();
        let p = self.ring.p;
        let (glm, glc) = g.leading_term(&order).map(|(m, c)| (m.clone(), c))?;
        let ginv = field::inv(glc, p);
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((lm, lc)) = rem.leading_term(&order).map(|(m, c)| (m.clone(), c)) {
            if !glm.divides(&lm) {
                return None;
            }
            let m = glm.quotient_of(&lm);
            let c = field::mul(lc, ginv, p);
            quot.add_term(m.clone(), c);
            rem = &rem - &g.mul_monomial(&m).scale(c);
        }
        Some(quot)
    }

    pub fn map_to_ring(&self, ring: &Arc<Ring>, var_map: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(ring);
        for (m, &c) in &self.terms {
            let mut e = vec![0; ring.nvars()];
            for (i, &a) in m.exponents().iter().enumerate() {
                e[var_map[i]] += a;
            }
            out.add_term(Monomial::new(e), c);
        }
        out
    }

    /// Renders the polynomial with terms in descending grevlex order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let order = MonomialOrder::grevlex();
        let mut parts = Vec::new();
        for (m, c) in self.to_sorted(&order) {
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ring.vars[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[i], e)
                    }
                })
                .collect();
            let s = match (c, mono.is_empty()) {
                (c, true) => c.to_string(),
                (1, false) => mono.join("*"),
                (c, false) => format!("{c}*{}", mono.join("*")),
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> std::ops::Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let p = self.ring.p;
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), field::neg(c, p));
        }
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.p - 1)
    }
}

impl<'a> std::ops::Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let p = self.ring.p;
        let mut out = Polynomial::zero(&self.ring);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &rhs.terms {
                out.add_term(ma.mul(mb), field::mul(ca, cb, p));
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TermDto {
    exp: Vec<u32>,
    coeff: u32,
}

#[derive(Serialize, Deserialize)]
struct PolynomialDto {
    ring: Ring,
    terms: Vec<TermDto>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialDto {
            ring: (*self.ring).clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| TermDto {
                    exp: m.exponents().to_vec(),
                    coeff: c,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dto = PolynomialDto::deserialize(d)?;
        let ring = Ring::new(dto.ring.p as u64, dto.ring.vars).map_err(serde::de::Error::custom)?;
        Polynomial::from_terms(
            &ring,
            dto.terms.into_iter().map(|t| (t.exp, t.coeff as i64)),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> Arc<Ring> {
        Ring::new(p, vec!["x".into(), "y".into()]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let r2 = ring(2);
        let f = &Polynomial::var(&r2, 0) + &Polynomial::var(&r2, 1);
        let one = r2.element(1);
        assert_eq!(f.evaluate(&[one, one]).unwrap().value(), 0);

        let r5 = ring(5);
        let x = Polynomial::var(&r5, 0);
        let y = Polynomial::var(&r5, 1);
        let g = &y.pow(2) + &x.pow(3);
        let one = r5.element(1);
        assert_eq!(g.evaluate(&[one, one]).unwrap().value(), 2);

        let c = Polynomial::constant(&r5, 3);
        assert_eq!(
            c.evaluate(&[r5.element(4), r5.element(2)]).unwrap().value(),
            3
        );
        assert!(matches!(
            c.evaluate(&[one]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn characteristic_two_square() {
        let r = ring(2);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let s = &x + &y;
        assert_eq!(s.pow(2), &x.pow(2) + &y.pow(2));
        assert_eq!(s.frobenius_power(2).unwrap(), s.pow(2));
    }

    #[test]
    fn exact_division() {
        let r = ring(3);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = &(&x + &y) * &(&x - &y);
        assert_eq!(f.div_exact(&(&x + &y)).unwrap(), &x - &y);
        assert!(x.div_exact(&y).is_none());
    }

    #[test]
    fn json_round_trip() {
        let r = ring(5);
        let f = Polynomial::from_terms(&r, [(vec![2, 0], 3), (vec![0, 1], -1)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let g: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
