//! Seeded randomized self-checks over the whole library.

use frobcalc_core::frobenius::{
    bracket_power, frobenius_decompose, frobenius_root, BracketExponent,
};
use frobcalc_core::nafield::LaurentElement;
use frobcalc_core::polyring::{Ideal, Monomial, Polynomial, Ring};
use frobcalc_core::tate::{coefficientwise_split, euclid_div_t1, RestrictedSeries};
use frobcalc_core::Result;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::commands::Failure;

fn random_poly(
    rng: &mut ChaCha8Rng,
    ring: &std::sync::Arc<Ring>,
    deg: u32,
    terms: usize,
) -> Polynomial {
    let n = ring.nvars();
    let terms: Vec<(Vec<u32>, i64)> = (0..rng.gen_range(1..=terms))
        .map(|_| {
            let e = (0..n).map(|_| rng.gen_range(0..=deg)).collect();
            (e, rng.gen_range(1..ring.p() as i64))
        })
        .collect();
    Polynomial::from_terms(ring, terms).expect("exponent vectors match the ring")
}

fn random_ideal(rng: &mut ChaCha8Rng, ring: &std::sync::Arc<Ring>) -> Result<Ideal> {
    let gens = (0..rng.gen_range(1..=3))
        .map(|_| random_poly(rng, ring, 3, 3))
        .collect();
    Ideal::new(ring, gens)
}

fn random_laurent(
    rng: &mut ChaCha8Rng,
    p: u32,
    d: u32,
    prec: Option<i64>,
) -> Result<LaurentElement> {
    let terms: Vec<(i64, i64)> = (0..rng.gen_range(0..=4))
        .map(|_| (rng.gen_range(-6..10), rng.gen_range(1..p as i64)))
        .collect();
    LaurentElement::from_terms(p, d, terms, prec)
}

fn random_series(
    rng: &mut ChaCha8Rng,
    p: u32,
    d: u32,
    cap: u32,
    prec: Option<i64>,
) -> Result<RestrictedSeries> {
    let coeffs = (0..rng.gen_range(1..=5))
        .map(|_| {
            let m = Monomial::new(vec![rng.gen_range(0..=cap)]);
            Ok((m, random_laurent(rng, p, d, prec)?))
        })
        .collect::<Result<Vec<_>>>()?;
    RestrictedSeries::new(p, 1, d, cap, prec, coeffs)
}

type Check = fn(&mut ChaCha8Rng) -> Result<bool>;

fn reassembly(rng: &mut ChaCha8Rng) -> Result<bool> {
    let p = [2u64, 3, 5][rng.gen_range(0..3)];
    let ring = Ring::with_indexed_vars(p, 2)?;
    let f = random_poly(rng, &ring, 8, 6);
    let e = BracketExponent::new(rng.gen_range(1..=2))?;
    Ok(frobenius_decompose(&f, e).reassemble(&ring)? == f)
}

fn adjunction(rng: &mut ChaCha8Rng) -> Result<bool> {
    let p = [2u64, 3][rng.gen_range(0..2)];
    let ring = Ring::with_indexed_vars(p, 2)?;
    let e = BracketExponent::new(1)?;
    let j = random_ideal(rng, &ring)?;
    let i = random_ideal(rng, &ring)?;
    let root = frobenius_root(&j, e)?;
    Ok(bracket_power(&i, e)?.contains_ideal(&j)? == i.contains_ideal(&root)?)
}

fn root_of_power(rng: &mut ChaCha8Rng) -> Result<bool> {
    let p = [2u64, 3][rng.gen_range(0..2)];
    let ring = Ring::with_indexed_vars(p, 2)?;
    let e = BracketExponent::new(rng.gen_range(1..=2))?;
    let i = random_ideal(rng, &ring)?;
    frobenius_root(&bracket_power(&i, e)?, e)?.equals(&i)
}

fn ultrametric(rng: &mut ChaCha8Rng) -> Result<bool> {
    let p = [2u32, 3, 5][rng.gen_range(0..3)];
    let d = rng.gen_range(1..=3);
    let x = random_laurent(rng, p, d, None)?;
    let y = random_laurent(rng, p, d, None)?;
    let (vx, vy) = (x.valuation(), y.valuation());
    let vs = x.try_add(&y)?.valuation();
    let product_ok = x.is_zero() || y.is_zero() || x.try_mul(&y)?.valuation() == vx + vy;
    Ok(vs >= vx.min(vy) && (vx == vy || vs == vx.min(vy)) && product_ok)
}

fn division(rng: &mut ChaCha8Rng) -> Result<bool> {
    let p = [2u32, 3, 5][rng.gen_range(0..3)];
    let f = random_series(rng, p, 1, 6, Some(64))?;
    let g = random_series(rng, p, 1, 6, None)?;
    if g.is_zero() {
        return Ok(true);
    }
    let div = euclid_div_t1(&f, &g)?;
    Ok(div.defect(&f, &g)?.is_zero() && div.r.coeffs().keys().all(|m| m.degree() < div.n_g as u64))
}

fn left_inverse(rng: &mut ChaCha8Rng) -> Result<bool> {
    let p = [2u32, 3][rng.gen_range(0..2)];
    let f = random_series(rng, p, 1, 5, Some(32))?;
    Ok(coefficientwise_split(&f.refine(p)?)? == f)
}

pub fn run(seed: u64, count: usize) -> Result<Value, Failure> {
    let checks: [(&str, Check); 6] = [
        ("frobenius_reassembly", reassembly),
        ("root_adjunction", adjunction),
        ("root_of_bracket_power", root_of_power),
        ("ultrametric", ultrametric),
        ("t1_division", division),
        ("split_left_inverse", left_inverse),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut all_pass = true;
    for (name, check) in checks {
        let mut passed = 0;
        let mut first_failure = None;
        for case in 0..count {
            match check(&mut rng) {
                Ok(true) => passed += 1,
                Ok(false) => {
                    first_failure.get_or_insert(format!("case {case}: property violated"));
                }
                Err(e) => {
                    first_failure.get_or_insert(format!("case {case}: {e}"));
                }
            }
        }
        all_pass &= passed == count;
        rows.push(json!({
            "check": name,
            "cases": count,
            "passed": passed,
            "first_failure": first_failure,
        }));
    }
    Ok(json!({ "checks": rows, "all_pass": all_pass }))
}
