mod common;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use common::*;
use frobcalc_core::polyring::{
    parse_generators, parse_polynomial, parse_ring, Fp, Ideal, Polynomial, Ring,
};
use proptest::prelude::*;

// Naive Buchberger: every S-pair, no criteria, then full interreduction.
// Polynomials are maps from exponent vectors to coefficients mod p.

type Naive = BTreeMap<Vec<u32>, u64>;

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

fn lead(f: &Naive) -> Option<(&Vec<u32>, u64)> {
    f.iter()
        .max_by(|x, y| grevlex(x.0, y.0))
        .map(|(m, c)| (m, *c))
}

fn inv(a: u64, p: u64) -> u64 {
    (1..p).find(|b| a * b % p == 1).unwrap()
}

fn axpy(f: &mut Naive, c: u64, shift: &[u32], g: &Naive, p: u64) {
    for (m, gc) in g {
        let e: Vec<u32> = m.iter().zip(shift).map(|(a, b)| a + b).collect();
        let slot = f.entry(e.clone()).or_insert(0);
        *slot = (*slot + p - c * gc % p) % p;
        if *slot == 0 {
            f.remove(&e);
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn normal_form(mut f: Naive, basis: &[Naive], p: u64) -> Naive {
    let mut rem = Naive::new();
    while let Some((m, c)) = lead(&f).map(|(m, c)| (m.clone(), c)) {
        let divisor = basis.iter().find(|g| divides(lead(g).unwrap().0, &m));
        match divisor {
            Some(g) => {
                let (gm, gc) = lead(g).unwrap();
                let shift: Vec<u32> = m.iter().zip(gm).map(|(a, b)| a - b).collect();
                axpy(&mut f, c * inv(gc, p) % p, &shift, g, p);
            }
            None => {
                f.remove(&m);
                rem.insert(m, c);
            }
        }
    }
    rem
}

fn naive_reduced_basis(gens: Vec<Naive>, p: u64) -> Vec<Naive> {
    let mut g: Vec<Naive> = gens.into_iter().filter(|f| !f.is_empty()).collect();
    loop {
        let mut added = false;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let (mi, ci) = lead(&g[i]).unwrap();
                let (mj, cj) = lead(&g[j]).unwrap();
                let l: Vec<u32> = mi.iter().zip(mj).map(|(a, b)| *a.max(b)).collect();
                let si: Vec<u32> = l.iter().zip(mi).map(|(a, b)| a - b).collect();
                let sj: Vec<u32> = l.iter().zip(mj).map(|(a, b)| a - b).collect();
                let mut s = Naive::new();
                axpy(&mut s, p - inv(ci, p), &si, &g[i], p);
                axpy(&mut s, inv(cj, p), &sj, &g[j], p);
                let r = normal_form(s, &g, p);
                if !r.is_empty() {
                    g.push(r);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    // Minimalize, then reduce each element by the rest and make it monic.
    let mut min: Vec<Naive> = Vec::new();
    for (k, f) in g.iter().enumerate() {
        let lf = lead(f).unwrap().0;
        let redundant = g.iter().enumerate().any(|(j, h)| {
            let lh = lead(h).unwrap().0;
            j != k && divides(lh, lf) && (lh != lf || j < k)
        });
        if !redundant {
            min.push(f.clone());
        }
    }
    let mut out = Vec::new();
    for k in 0..min.len() {
        let others: Vec<Naive> = (0..min.len())
            .filter(|&j| j != k)
            .map(|j| min[j].clone())
            .collect();
        let (m, c) = lead(&min[k]).map(|(m, c)| (m.clone(), c)).unwrap();
        let mut tail = min[k].clone();
        tail.remove(&m);
        let mut r = normal_form(tail, &others, p);
        r.insert(m, c);
        let ic = inv(c, p);
        for v in r.values_mut() {
            *v = *v * ic % p;
        }
        out.push(r);
    }
    out.sort();
    out
}

fn to_naive(f: &Polynomial) -> Naive {
    f.terms()
        .map(|(m, c)| (m.exponents().to_vec(), c.value() as u64))
        .collect()
}

fn library_basis(i: &Ideal) -> Vec<Naive> {
    let mut b: Vec<Naive> = i.groebner_basis().iter().map(to_naive).collect();
    b.sort();
    b
}

fn gens(ring: &Arc<Ring>, s: &str) -> Ideal {
    Ideal::new(ring, parse_generators(ring, s).unwrap()).unwrap()
}

#[test]
fn groebner_matches_naive_buchberger() {
    let r = parse_ring("GF(5)[x,y]").unwrap();
    let i = gens(&r, "y^2 - x^3; x*y");
    let oracle = naive_reduced_basis(i.gens().iter().map(to_naive).collect(), 5);
    assert_eq!(library_basis(&i), oracle);
    assert!(i.basis_satisfies_buchberger());
}

#[test]
fn groebner_edge_cases() {
    let r = parse_ring("GF(2)[x,y]").unwrap();
    assert!(Ideal::new(&r, vec![]).unwrap().groebner_basis().is_empty());
    let r3 = parse_ring("GF(3)[x,y]").unwrap();
    let other = Polynomial::one(&r3);
    assert!(Ideal::new(&r, vec![Polynomial::var(&r, 0), other]).is_err());
}

#[test]
fn membership_examples() {
    let r = parse_ring("GF(2)[x,y]").unwrap();
    let f = parse_polynomial(&r, "y^2 + x^3").unwrap();
    assert!(gens(&r, "x^2; y^2").contains(&f).unwrap());
    assert!(!gens(&r, "x; y").contains(&Polynomial::one(&r)).unwrap());
    // The cofactors: y^2 = 1*y^2 and x^3 = x*x^2.
    let i = gens(&r, "x^2; y^2");
    let lifted = i.lift(&f).unwrap().unwrap();
    let sum = &(&lifted[0] * &i.gens()[0]) + &(&lifted[1] * &i.gens()[1]);
    assert_eq!(sum, f);
}

#[test]
fn principal_colon_in_a_ufd() {
    let r = parse_ring("GF(2)[x,y]").unwrap();
    let f = parse_polynomial(&r, "y^2 - x^3").unwrap();
    let fp = Ideal::new(&r, vec![f.pow(2)]).unwrap();
    let colon = fp.colon(&Ideal::new(&r, vec![f.clone()]).unwrap()).unwrap();
    // (f^p : f) = (f^{p-1}), checked by membership both ways.
    let expected = Ideal::new(&r, vec![f]).unwrap();
    assert!(colon.ideal.contains_ideal(&expected).unwrap());
    assert!(expected.contains_ideal(&colon.ideal).unwrap());
    assert!(!colon.divisor_was_zero);
}

#[test]
fn intersection_double_inclusion() {
    let r = parse_ring("GF(3)[x,y]").unwrap();
    let a = gens(&r, "x; y^2");
    let b = gens(&r, "x^2; y");
    let i = a.intersect(&b).unwrap();
    let expected = gens(&r, "x^2; x*y; y^2");
    for g in expected.gens() {
        assert!(i.contains(g).unwrap());
    }
    for g in i.gens() {
        assert!(expected.contains(g).unwrap());
    }
}

#[test]
fn evaluation_examples() {
    let r = parse_ring("GF(5)[x,y]").unwrap();
    let f = parse_polynomial(&r, "y^2 + x^3").unwrap();
    let one = r.element(1);
    assert_eq!(f.evaluate(&[one, one]).unwrap(), Fp::new(2, 5).unwrap());
    assert!(f.evaluate(&[one]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn groebner_agrees_with_oracle(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut g = rng(seed);
        let r = Ring::with_indexed_vars(p, 2).unwrap();
        let i = random_ideal(&mut g, &r, 3, 3, 3);
        let oracle = naive_reduced_basis(i.gens().iter().map(to_naive).collect(), p);
        prop_assert_eq!(library_basis(&i), oracle);
    }

    #[test]
    fn groebner_idempotent_and_buchberger(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = rng(seed);
        let r = Ring::with_indexed_vars(3, n).unwrap();
        let i = random_ideal(&mut g, &r, 3, 3, 3);
        let once = i.groebner();
        prop_assert!(once.basis_satisfies_buchberger());
        let twice = once.groebner();
        prop_assert_eq!(twice.groebner_basis(), once.groebner_basis());
        prop_assert!(once.equals(&i).unwrap());
    }

    #[test]
    fn colon_adjunction(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = Ring::with_indexed_vars(2, 2).unwrap();
        let i = random_ideal(&mut g, &r, 3, 3, 2);
        let j = random_ideal(&mut g, &r, 2, 2, 2);
        let colon = i.colon(&j).unwrap().ideal;
        for _ in 0..6 {
            let f = random_poly(&mut g, &r, 3, 3);
            let inside = colon.contains(&f).unwrap();
            let adjoint = j.gens().iter().all(|h| i.contains(&(&f * h)).unwrap());
            prop_assert_eq!(inside, adjoint, "f = {}", f);
        }
        for c in colon.gens() {
            prop_assert!(j.gens().iter().all(|h| i.contains(&(c * h)).unwrap()));
        }
    }

    #[test]
    fn intersection_membership(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = Ring::with_indexed_vars(3, 2).unwrap();
        let a = random_ideal(&mut g, &r, 2, 3, 2);
        let b = random_ideal(&mut g, &r, 2, 3, 2);
        let i = a.intersect(&b).unwrap();
        let mut samples: Vec<Polynomial> = Vec::new();
        for _ in 0..4 {
            samples.push(random_poly(&mut g, &r, 3, 3));
            let ga = &a.gens()[0] * &random_poly(&mut g, &r, 2, 2);
            let gb = &b.gens()[0] * &random_poly(&mut g, &r, 2, 2);
            samples.push(&ga * &gb);
            samples.push(ga);
        }
        for h in samples {
            let both = a.contains(&h).unwrap() && b.contains(&h).unwrap();
            prop_assert_eq!(i.contains(&h).unwrap(), both, "h = {}", h);
        }
    }

    #[test]
    fn frobenius_is_a_ring_map(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut g = rng(seed);
        let r = Ring::with_indexed_vars(p, 2).unwrap();
        let f = random_poly(&mut g, &r, 3, 4);
        let h = random_poly(&mut g, &r, 3, 4);
        let q = p;
        prop_assert_eq!((&f + &h).pow(q), &f.pow(q) + &h.pow(q));
        prop_assert_eq!((&f * &h).pow(q), &f.pow(q) * &h.pow(q));
        prop_assert_eq!(f.frobenius_power(q).unwrap(), f.pow(q));
    }

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = Ring::with_indexed_vars(5, 3).unwrap();
        let f = random_poly(&mut g, &r, 4, 5);
        let h = random_poly(&mut g, &r, 4, 5);
        let pt: Vec<Fp> = random_point(&mut g, &r).into_iter().map(|a| r.element(a)).collect();
        let (vf, vh) = (f.evaluate(&pt).unwrap(), h.evaluate(&pt).unwrap());
        prop_assert_eq!((&f * &h).evaluate(&pt).unwrap().value(), vf.value() * vh.value() % 5);
        prop_assert_eq!((&f + &h).evaluate(&pt).unwrap().value(), (vf.value() + vh.value()) % 5);
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = Ring::with_indexed_vars(7, 3).unwrap();
        let f = random_poly(&mut g, &r, 4, 6);
        prop_assert_eq!(parse_polynomial(&r, &f.to_text()).unwrap(), f.clone());
        let json = serde_json::to_string(&f).unwrap();
        let back: Polynomial = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.to_text(), f.to_text());
    }
}
