//! Seeded random generators shared by the integration tests and the
//! acceptance harness.
#![allow(dead_code)]

use std::sync::Arc;

use frobcalc_core::nafield::LaurentElement;
use frobcalc_core::polyring::{Ideal, Monomial, Polynomial, Ring};
use frobcalc_core::tate::RestrictedSeries;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All exponent vectors in `n` variables of total degree `<= deg`.
pub fn monomials_up_to(n: usize, deg: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=deg {
            prefix.push(k);
            go(n, deg - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, deg, &mut Vec::new(), &mut out);
    out
}

pub fn random_poly(
    rng: &mut impl Rng,
    ring: &Arc<Ring>,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let monos = monomials_up_to(ring.nvars(), max_deg);
    let k = rng.gen_range(1..=max_terms);
    let terms: Vec<(Vec<u32>, i64)> = (0..k)
        .map(|_| {
            let m = monos[rng.gen_range(0..monos.len())].clone();
            (m, rng.gen_range(1..ring.p() as i64))
        })
        .collect();
    Polynomial::from_terms(ring, terms).unwrap()
}

/// Random polynomial with no constant term, so `(f)` is proper and
/// vanishes at the origin; may still be zero after cancellation.
pub fn random_nonconstant(
    rng: &mut impl Rng,
    ring: &Arc<Ring>,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    loop {
        let f = random_poly(rng, ring, max_deg, max_terms);
        let f = &f - &Polynomial::constant(ring, f.constant_value().unwrap_or(0) as i64);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_ideal(
    rng: &mut impl Rng,
    ring: &Arc<Ring>,
    ngens: usize,
    max_deg: u32,
    max_terms: usize,
) -> Ideal {
    let k = rng.gen_range(1..=ngens);
    let gens = (0..k)
        .map(|_| random_nonconstant(rng, ring, max_deg, max_terms))
        .collect();
    Ideal::new(ring, gens).unwrap()
}

pub fn random_point(rng: &mut impl Rng, ring: &Arc<Ring>) -> Vec<i64> {
    (0..ring.nvars())
        .map(|_| rng.gen_range(0..ring.p() as i64))
        .collect()
}

pub fn random_monomial(rng: &mut impl Rng, n: usize, max_deg: u32) -> Monomial {
    let monos = monomials_up_to(n, max_deg);
    Monomial::new(monos[rng.gen_range(0..monos.len())].clone())
}

/// `sum c_e t^{e/d}` with up to `max_terms` terms, exponents (in units of
/// `1/d`) in `lo..hi`; `prec` in units of `1/d`, `None` for exact.
pub fn random_laurent(
    rng: &mut impl Rng,
    p: u32,
    d: u32,
    lo: i64,
    hi: i64,
    max_terms: usize,
    prec: Option<i64>,
) -> LaurentElement {
    let k = rng.gen_range(0..=max_terms);
    let terms: Vec<(i64, i64)> = (0..k)
        .map(|_| (rng.gen_range(lo..hi), rng.gen_range(1..p as i64)))
        .collect();
    LaurentElement::from_terms(p, d, terms, prec).unwrap()
}

pub fn nonzero_laurent(
    rng: &mut impl Rng,
    p: u32,
    d: u32,
    lo: i64,
    hi: i64,
    max_terms: usize,
    prec: Option<i64>,
) -> LaurentElement {
    loop {
        let x = random_laurent(rng, p, d, lo, hi, max_terms.max(1), prec);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random element of `T_n` truncated at `cap`, with coefficient
/// exponents in `lo..hi` (units of `1/d`) and common precision `prec`.
#[allow(clippy::too_many_arguments)]
pub fn random_series(
    rng: &mut impl Rng,
    p: u32,
    nvars: usize,
    d: u32,
    cap: u32,
    lo: i64,
    hi: i64,
    max_terms: usize,
    prec: Option<i64>,
) -> RestrictedSeries {
    let monos = monomials_up_to(nvars, cap);
    let k = rng.gen_range(1..=max_terms);
    let coeffs: Vec<(Monomial, LaurentElement)> = (0..k)
        .map(|_| {
            let m = Monomial::new(monos[rng.gen_range(0..monos.len())].clone());
            (m, random_laurent(rng, p, d, lo, hi, 3, prec))
        })
        .collect();
    RestrictedSeries::new(p, nvars, d, cap, prec, coeffs).unwrap()
}
