//! Bracket powers, the monomial basis of `F^e_* S`, Frobenius roots, and
//! trace ideals over `S = F_p[x_1..x_n]`.
//!
//! `F^e_* S` is free over `S` on the monomials `x^a` with `0 <= a_i < q`,
//! `q = p^e`, so every `f` has a unique expansion `f = sum_a g_a^q x^a`.
//! The root `J^{[1/q]}` (the smallest `I` with `J ⊆ I^{[q]}`) is generated
//! by the coefficients `g_a` of the generators of `J`, and each projection
//! `x^a`-coordinate is an `S`-linear functional `F^e_* S -> S`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{Ideal, Monomial, Polynomial, Ring};

/// Upper bound on `q^n` for explicit enumeration of projection functionals.
pub const FUNCTIONAL_ENUMERATION_CAP: u64 = 4096;

/// The exponent `e >= 1` of a bracket power `I^{[p^e]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BracketExponent(u32);

impl BracketExponent {
    pub fn new(e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::Domain("bracket exponent must be at least 1".into()));
        }
        Ok(BracketExponent(e))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `p^e`, saturating at `u64::MAX`.
    pub fn q(self, p: u32) -> u64 {
        (p as u64).checked_pow(self.0).unwrap_or(u64::MAX)
    }

    pub fn plus(self, other: BracketExponent) -> BracketExponent {
        BracketExponent(self.0 + other.0)
    }
}

/// The expansion `f = sum_a table[a]^q * x^a` over basis monomials `x^a`
/// with all exponents below `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusDecomposition {
    pub q: u64,
    pub table: BTreeMap<Monomial, Polynomial>,
}

impl FrobeniusDecomposition {
    /// Recomputes `sum_a table[a]^q x^a`.
    pub fn reassemble(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(ring);
        for (a, g) in &self.table {
            acc = &acc + &g.frobenius_power(self.q)?.mul_monomial(a);
        }
        Ok(acc)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.table.values()
    }
}

/// `I^{[q]}`: the ideal generated by the `q`-th powers of the generators.
pub fn bracket_power(ideal: &Ideal, e: BracketExponent) -> Result<Ideal> {
    let q = e.q(ideal.ring().p());
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.frobenius_power(q))
        .collect::<Result<Vec<_>>>()?;
    Ideal::with_order(ideal.ring(), gens, ideal.order().clone())
}

pub fn frobenius_decompose(f: &Polynomial, e: BracketExponent) -> FrobeniusDecomposition {
    let q = e.q(f.p());
    let ring = f.ring();
    let mut table: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, c) in f.terms() {
        let (rem, quot): (Vec<u32>, Vec<u32>) = m
            .exponents()
            .iter()
            .map(|&x| {
                let x = x as u64;
                ((x % q) as u32, (x / q) as u32)
            })
            .unzip();
        table
            .entry(Monomial::new(rem))
            .or_insert_with(|| Polynomial::zero(ring))
            .add_term(Monomial::new(quot), c.value());
    }
    table.retain(|_, g| !g.is_zero());
    FrobeniusDecomposition { q, table }
}

/// Root computed from an arbitrary generating set: the ideal of all table
/// entries of all generators.
pub fn frobenius_root_of_generators(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    e: BracketExponent,
) -> Result<Ideal> {
    let mut entries = Vec::new();
    for g in gens {
        ring_check(ring, g)?;
        entries.extend(frobenius_decompose(g, e).table.into_values());
    }
    Ideal::new(ring, entries)
}

fn ring_check(ring: &Arc<Ring>, f: &Polynomial) -> Result<()> {
    if **ring != **f.ring() {
        return Err(Error::RingMismatch(ring.to_string(), f.ring().to_string()));
    }
    Ok(())
}

/// `J^{[1/q]}`, computed from the reduced Gröbner basis of `J`.
pub fn frobenius_root(ideal: &Ideal, e: BracketExponent) -> Result<Ideal> {
    let root = frobenius_root_of_generators(ideal.ring(), ideal.groebner_basis(), e)?;
    Ok(root.reorder(ideal.order().clone())?.groebner())
}

/// Images of one projection functional `π_a : F^e_* S -> S` on the
/// `S`-module generators `F^e_*(x^c g)` of `F^e_* J`.
#[derive(Debug, Clone, Serialize)]
pub struct FunctionalImage {
    pub basis_monomial: Vec<u32>,
    pub images: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct TraceResult {
    pub ideal: Ideal,
    /// Present when `q^n` is within [`FUNCTIONAL_ENUMERATION_CAP`] and
    /// enumeration was requested.
    pub functionals: Option<Vec<FunctionalImage>>,
    /// Sum of the functional images, when enumerated.
    pub enumerated_ideal: Option<Ideal>,
}

/// Sum of the images of every projection functional on `F^e_* J`, obtained
/// by decomposing `x^c g` for each generator `g` and each `c` in `[0, q)^n`.
/// `None` when `q^n` exceeds the enumeration cap.
pub fn enumerate_projection_images(
    ideal: &Ideal,
    e: BracketExponent,
) -> Result<Option<(Ideal, Vec<FunctionalImage>)>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let q = e.q(ring.p());
    let count = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(q));
    match count {
        Some(c) if c <= FUNCTIONAL_ENUMERATION_CAP => {}
        _ => return Ok(None),
    }
    let shifts = box_monomials(n, q as u32);
    let mut per_basis: BTreeMap<Monomial, Vec<Polynomial>> =
        shifts.iter().map(|a| (a.clone(), Vec::new())).collect();
    for g in ideal.gens() {
        for c in &shifts {
            let dec = frobenius_decompose(&g.mul_monomial(c), e);
            for (a, entry) in dec.table {
                per_basis.get_mut(&a).expect("basis monomial").push(entry);
            }
        }
    }
    let mut all = Vec::new();
    let mut report = Vec::new();
    for (a, images) in per_basis {
        report.push(FunctionalImage {
            basis_monomial: a.exponents().to_vec(),
            images: images.iter().map(|p| p.to_text()).collect(),
        });
        all.extend(images);
    }
    let sum = Ideal::with_order(ring, all, ideal.order().clone())?.groebner();
    Ok(Some((sum, report)))
}

/// All monomials with every exponent in `[0, bound)`.
pub(crate) fn box_monomials(n: usize, bound: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    for i in 0..n {
        let mut next = Vec::with_capacity(out.len() * bound as usize);
        for m in &out {
            for k in 0..bound {
                let mut e = m.exponents().to_vec();
                e[i] = k;
                next.push(Monomial::new(e));
            }
        }
        out = next;
    }
    out
}

/// Trace ideal of `F^e_* a`; over a polynomial ring this equals the
/// Frobenius root. Optionally enumerates the projection functionals as an
/// independent witness.
pub fn trace_ideal(ideal: &Ideal, e: BracketExponent, enumerate: bool) -> Result<TraceResult> {
    let root = frobenius_root(ideal, e)?;
    if !enumerate {
        return Ok(TraceResult {
            ideal: root,
            functionals: None,
            enumerated_ideal: None,
        });
    }
    match enumerate_projection_images(ideal, e)? {
        Some((sum, report)) => {
            if !sum.equals(&root)? {
                return Err(Error::Internal(format!(
                    "functional images {sum} disagree with root {root}"
                )));
            }
            Ok(TraceResult {
                ideal: root,
                functionals: Some(report),
                enumerated_ideal: Some(sum),
            })
        }
        None => Ok(TraceResult {
            ideal: root,
            functionals: None,
            enumerated_ideal: None,
        }),
    }
}

#[derive(Debug, Clone)]
pub struct FlatnessCheck {
    pub holds: bool,
    /// `(∩ I_i)^{[q]}`
    pub bracket_of_intersection: Ideal,
    /// `∩ I_i^{[q]}`
    pub intersection_of_brackets: Ideal,
    /// A generator of one side missing from the other, on failure.
    pub witness: Option<Polynomial>,
    /// The family was empty and both sides were taken to be the unit ideal.
    pub empty_family: bool,
}

/// Checks `(∩ I_i)^{[q]} = ∩ I_i^{[q]}`.
pub fn check_intersection_flatness(
    ring: &Arc<Ring>,
    ideals: &[Ideal],
    e: BracketExponent,
) -> Result<FlatnessCheck> {
    if ideals.is_empty() {
        let unit = Ideal::unit(ring);
        return Ok(FlatnessCheck {
            holds: true,
            bracket_of_intersection: unit.clone(),
            intersection_of_brackets: unit,
            witness: None,
            empty_family: true,
        });
    }
    for i in ideals {
        if **i.ring() != **ring {
            return Err(Error::RingMismatch(ring.to_string(), i.ring().to_string()));
        }
    }
    let mut inter = ideals[0].clone();
    for i in &ideals[1..] {
        inter = inter.intersect(i)?.groebner();
    }
    let lhs = bracket_power(&inter.groebner(), e)?.groebner();
    let mut rhs = bracket_power(&ideals[0], e)?;
    for i in &ideals[1..] {
        rhs = rhs.intersect(&bracket_power(i, e)?)?.groebner();
    }
    let rhs = rhs.groebner();
    let mut witness = None;
    for g in lhs.gens() {
        if !rhs.contains(g)? {
            witness = Some(g.clone());
            break;
        }
    }
    if witness.is_none() {
        for g in rhs.gens() {
            if !lhs.contains(g)? {
                witness = Some(g.clone());
                break;
            }
        }
    }
    Ok(FlatnessCheck {
        holds: witness.is_none(),
        bracket_of_intersection: lhs,
        intersection_of_brackets: rhs,
        witness,
        empty_family: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_generators, parse_polynomial, parse_ring};

    fn ideal(ring: &Arc<Ring>, s: &str) -> Ideal {
        Ideal::new(ring, parse_generators(ring, s).unwrap()).unwrap()
    }

    fn e(k: u32) -> BracketExponent {
        BracketExponent::new(k).unwrap()
    }

    #[test]
    fn exponent_must_be_positive() {
        assert!(BracketExponent::new(0).is_err());
        assert_eq!(e(3).q(2), 8);
        assert_eq!(e(40).q(65521), u64::MAX);
    }

    #[test]
    fn bracket_examples() {
        let r = parse_ring("GF(2)[x,y]").unwrap();
        let b = bracket_power(&ideal(&r, "x; y"), e(1)).unwrap();
        assert!(b.equals(&ideal(&r, "x^2; y^2")).unwrap());
        assert!(bracket_power(&Ideal::zero(&r), e(2)).unwrap().is_zero());
        let r3 = parse_ring("GF(3)[x,y]").unwrap();
        let b = bracket_power(&ideal(&r3, "x+y"), e(1)).unwrap();
        assert!(b.equals(&ideal(&r3, "x^3+y^3")).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        let r = parse_ring("GF(2)[x,y]").unwrap();
        let f = parse_polynomial(&r, "x^3+y^3").unwrap();
        let d = frobenius_decompose(&f, e(1));
        assert_eq!(d.table.len(), 2);
        assert_eq!(d.table[&Monomial::new(vec![1, 0])], Polynomial::var(&r, 0));
        assert_eq!(d.table[&Monomial::new(vec![0, 1])], Polynomial::var(&r, 1));
        assert_eq!(d.reassemble(&r).unwrap(), f);

        let x4 = parse_polynomial(&r, "x^4").unwrap();
        let d = frobenius_decompose(&x4, e(2));
        assert_eq!(d.table[&Monomial::one(2)], Polynomial::var(&r, 0));

        let x3 = parse_polynomial(&r, "x^3").unwrap();
        let d = frobenius_decompose(&x3, e(2));
        assert_eq!(d.table[&Monomial::new(vec![3, 0])], Polynomial::one(&r));
    }

    #[test]
    fn root_examples() {
        let r = parse_ring("GF(2)[x,y]").unwrap();
        let root = frobenius_root(&ideal(&r, "x^2"), e(1)).unwrap();
        assert!(root.equals(&ideal(&r, "x")).unwrap());
        let root = frobenius_root(&ideal(&r, "x^2*y^2"), e(1)).unwrap();
        assert!(root.equals(&ideal(&r, "x*y")).unwrap());
        let root = frobenius_root(&ideal(&r, "x^3+y^3"), e(1)).unwrap();
        assert!(root.equals(&ideal(&r, "x; y")).unwrap());
    }

    #[test]
    fn trace_examples() {
        let r = parse_ring("GF(2)[x,y]").unwrap();
        let t = trace_ideal(&ideal(&r, "x^2"), e(1), true).unwrap();
        assert!(t.ideal.equals(&ideal(&r, "x")).unwrap());
        let t = trace_ideal(&Ideal::unit(&r), e(1), true).unwrap();
        assert!(t.ideal.is_unit());
        let t = trace_ideal(&ideal(&r, "x^3+y^3"), e(1), true).unwrap();
        assert!(t.ideal.equals(&ideal(&r, "x; y")).unwrap());
        let fs = t.functionals.unwrap();
        assert_eq!(fs.len(), 4);
        // On F_*f itself (shift c = 0): π_x gives x and π_y gives y.
        let px = fs.iter().find(|f| f.basis_monomial == [1, 0]).unwrap();
        assert_eq!(px.images[0], "x");
        let py = fs.iter().find(|f| f.basis_monomial == [0, 1]).unwrap();
        assert_eq!(py.images[0], "y");
    }

    #[test]
    fn enumeration_cap() {
        let r = parse_ring("GF(2)[a,b,c,d,e,f,g]").unwrap();
        // 2^7 = 128 fits; 4^7 does not.
        assert!(enumerate_projection_images(&ideal(&r, "a"), e(1))
            .unwrap()
            .is_some());
        assert!(enumerate_projection_images(&ideal(&r, "a"), e(2))
            .unwrap()
            .is_none());
    }

    #[test]
    fn flatness_examples() {
        let r = parse_ring("GF(2)[x,y]").unwrap();
        let c = check_intersection_flatness(&r, &[ideal(&r, "x"), ideal(&r, "y")], e(1)).unwrap();
        assert!(c.holds);
        assert!(c
            .bracket_of_intersection
            .equals(&ideal(&r, "x^2*y^2"))
            .unwrap());
        assert!(c
            .intersection_of_brackets
            .equals(&ideal(&r, "x^2*y^2"))
            .unwrap());

        let c = check_intersection_flatness(&r, &[ideal(&r, "x+y^3")], e(3)).unwrap();
        assert!(c.holds);

        let r3 = parse_ring("GF(3)[x,y]").unwrap();
        let c = check_intersection_flatness(&r3, &[ideal(&r3, "x; y"), ideal(&r3, "x+y")], e(1))
            .unwrap();
        assert!(c.holds);

        let c = check_intersection_flatness(&r3, &[], e(1)).unwrap();
        assert!(c.holds && c.empty_family && c.bracket_of_intersection.is_unit());
    }
}
