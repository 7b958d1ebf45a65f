use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial `x_1^{a_1} ... x_n^{a_n}`.
///
/// The derived `Ord` is plain lexicographic on the exponent vector; it is
/// only used for canonical storage. Term orders live in [`MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// Block order: the first `k` variables (after permutation) are compared
    /// by degree and then grevlex, and dominate the remaining block, which is
    /// compared by grevlex. Any monomial involving the first block is larger
    /// than every monomial free of it.
    Elimination(usize),
}

/// A multiplicative total order on monomials with `1` minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    /// Variable indices from most to least significant; empty means identity.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub permutation: Vec<usize>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::grevlex()
    }
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::Grevlex,
            permutation: Vec::new(),
        }
    }

    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            permutation: Vec::new(),
        }
    }

    pub fn elimination(k: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Elimination(k),
            permutation: Vec::new(),
        }
    }

    pub fn with_permutation(mut self, perm: Vec<usize>) -> Self {
        self.permutation = perm;
        self
    }

    #[inline]
    fn exp(&self, m: &Monomial, i: usize) -> u32 {
        if self.permutation.is_empty() {
            m.0[i]
        } else {
            m.0[self.permutation[i]]
        }
    }

    fn grevlex_range(&self, a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
        let da: u64 = (lo..hi).map(|i| self.exp(a, i) as u64).sum();
        let db: u64 = (lo..hi).map(|i| self.exp(b, i) as u64).sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (lo..hi).rev() {
            match self.exp(a, i).cmp(&self.exp(b, i)) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.0.len();
        match self.kind {
            OrderKind::Lex => {
                for i in 0..n {
                    match self.exp(a, i).cmp(&self.exp(b, i)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => self.grevlex_range(a, b, 0, n),
            OrderKind::Elimination(k) => {
                let k = k.min(n);
                match self.grevlex_range(a, b, 0, k) {
                    Ordering::Equal => self.grevlex_range(a, b, k, n),
                    o => o,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::grevlex();
        // x^2 > xy > y^2 > xz in grevlex with x > y > z? xz vs y^2: last var z,
        // xz has larger z exponent so it is smaller.
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_permutation() {
        let o = MonomialOrder::lex();
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        let o = MonomialOrder::lex().with_permutation(vec![1, 0]);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn one_is_minimal() {
        let one = m(&[0, 0]);
        for ord in [
            MonomialOrder::lex(),
            MonomialOrder::grevlex(),
            MonomialOrder::elimination(1),
        ] {
            for e in [[1, 0], [0, 1], [3, 2]] {
                assert_eq!(ord.cmp(&m(&e), &one), Ordering::Greater);
            }
        }
    }
}
