//! Buchberger's algorithm over `F_p` with the normal selection strategy and
//! the Gebauer–Möller installation of Buchberger's product and chain criteria.
//!
//! Polynomials are handled as term vectors sorted by the active order,
//! leading term first.

use std::cmp::Ordering;
use std::sync::Arc;

use super::field;
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::{Polynomial, Ring, SortedTerms};

/// `a - c * m * g`, all inputs sorted descending.
pub(crate) fn sub_mul(
    a: &[(Monomial, u32)],
    c: u32,
    m: &Monomial,
    g: &[(Monomial, u32)],
    order: &MonomialOrder,
    p: u32,
) -> SortedTerms {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(gm, gc)| (gm.mul(m), field::mul(*gc, c, p)));
    let mut next_g = gi.next();
    while i < a.len() || next_g.is_some() {
        match (a.get(i), &next_g) {
            (Some(at), Some(gt)) => match order.cmp(&at.0, &gt.0) {
                Ordering::Greater => {
                    out.push(at.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gt.0.clone(), field::neg(gt.1, p)));
                    next_g = gi.next();
                }
                Ordering::Equal => {
                    let v = field::sub(at.1, gt.1, p);
                    if v != 0 {
                        out.push((at.0.clone(), v));
                    }
                    i += 1;
                    next_g = gi.next();
                }
            },
            (Some(at), None) => {
                out.push(at.clone());
                i += 1;
            }
            (None, Some(gt)) => {
                out.push((gt.0.clone(), field::neg(gt.1, p)));
                next_g = gi.next();
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn make_monic(f: &mut SortedTerms, p: u32) {
    if let Some(&(_, lc)) = f.first() {
        if lc != 1 {
            let inv = field::inv(lc, p);
            for t in f.iter_mut() {
                t.1 = field::mul(t.1, inv, p);
            }
        }
    }
}

/// Full normal form of `f` with respect to `basis` (every term reduced).
pub(crate) fn normal_form(
    f: SortedTerms,
    basis: &[&SortedTerms],
    order: &MonomialOrder,
    p: u32,
) -> SortedTerms {
    let mut rest = f;
    let mut start = 0;
    let mut result = Vec::new();
    while start < rest.len() {
        let (lm, lc) = (&rest[start].0, rest[start].1);
        match basis.iter().find(|g| g[0].0.divides(lm)) {
            Some(g) => {
                let m = g[0].0.quotient_of(lm);
                let c = field::mul(lc, field::inv(g[0].1, p), p);
                rest = sub_mul(&rest[start..], c, &m, g, order, p);
                start = 0;
            }
            None => {
                result.push(rest[start].clone());
                start += 1;
            }
        }
    }
    result
}

fn s_polynomial(f: &SortedTerms, g: &SortedTerms, order: &MonomialOrder, p: u32) -> SortedTerms {
    let l = f[0].0.lcm(&g[0].0);
    let mf = f[0].0.quotient_of(&l);
    let mg = g[0].0.quotient_of(&l);
    // Both inputs are monic: S = mf*f - mg*g.
    let fm: SortedTerms = f.iter().map(|(m, c)| (m.mul(&mf), *c)).collect();
    debug_assert_eq!(f[0].1, 1);
    debug_assert_eq!(g[0].1, 1);
    sub_mul(&fm, 1, &mg, g, order, p)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'a> {
    polys: Vec<SortedTerms>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    order: &'a MonomialOrder,
}

impl State<'_> {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    /// Gebauer–Möller update after adding polynomial `h`.
    fn update(&mut self, h_poly: SortedTerms) {
        let h = self.polys.len();
        self.polys.push(h_poly);
        let lh = self.lm(h).clone();

        let mut candidates: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let lg = self.lm(g);
                (g, lh.lcm(lg), lh.is_coprime(lg))
            })
            .collect();

        // Chain criterion among new pairs: drop (h, g1) if some other new
        // pair's lcm properly divides it. Coprime pairs are kept at this
        // stage so that they can shadow others, then discarded.
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g1, l1, coprime1)) = candidates.pop() {
            let shadowed = !coprime1
                && candidates
                    .iter()
                    .chain(kept.iter())
                    .any(|(_, l2, _)| l2.divides(&l1));
            if !shadowed {
                kept.push((g1, l1, coprime1));
            }
        }

        // Remove duplicates with equal lcm among non-coprime pairs: the loop
        // above already keeps only one representative per shadow class when
        // lcms are equal, since equal lcms divide each other.
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(_, _, coprime)| !coprime)
            .map(|(g, l, _)| Pair { i: g, j: h, lcm: l })
            .collect();

        // Old pairs (g1, g2) become redundant when lm(h) divides their lcm
        // and neither lcm(g1, h) nor lcm(g2, h) equals it.
        let polys = &self.polys;
        self.pairs.retain(|pr| {
            if !lh.divides(&pr.lcm) {
                return true;
            }
            let l1 = polys[pr.i][0].0.lcm(&lh);
            let l2 = polys[pr.j][0].0.lcm(&lh);
            l1 == pr.lcm || l2 == pr.lcm
        });
        self.pairs.extend(new_pairs);

        self.active.retain(|&g| !lh.divides(&polys[g][0].0));
        self.active.push(h);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            if order.cmp(&self.pairs[k].lcm, &self.pairs[best].lcm) == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, monic and sorted
/// by ascending leading monomial.
pub(crate) fn reduced_basis(
    gens: Vec<SortedTerms>,
    order: &MonomialOrder,
    p: u32,
) -> Vec<SortedTerms> {
    let mut state = State {
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        order,
    };
    for mut g in gens.into_iter().filter(|g| !g.is_empty()) {
        // Reduce incoming generators against what is already there.
        let basis: Vec<&SortedTerms> = state.active.iter().map(|&i| &state.polys[i]).collect();
        g = normal_form(g, &basis, order, p);
        if g.is_empty() {
            continue;
        }
        make_monic(&mut g, p);
        if g[0].0.is_one() {
            return vec![g];
        }
        state.update(g);
    }
    while let Some(pair) = state.pop_pair() {
        let s = s_polynomial(&state.polys[pair.i], &state.polys[pair.j], order, p);
        let basis: Vec<&SortedTerms> = state.active.iter().map(|&i| &state.polys[i]).collect();
        let mut h = normal_form(s, &basis, order, p);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h, p);
        if h[0].0.is_one() {
            return vec![h];
        }
        state.update(h);
    }
    let mut minimal: Vec<SortedTerms> = state
        .active
        .iter()
        .map(|&i| state.polys[i].clone())
        .collect();
    minimal.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    // Inter-reduce tails; leading terms are already pairwise non-divisible.
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&SortedTerms> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, g)| g)
            .collect();
        let head = minimal[k][0].clone();
        let tail = normal_form(minimal[k][1..].to_vec(), &others, order, p);
        let mut g = Vec::with_capacity(tail.len() + 1);
        g.push(head);
        g.extend(tail);
        reduced.push(g);
    }
    reduced
}

/// Every S-polynomial of `basis` reduces to zero modulo `basis`.
pub(crate) fn satisfies_buchberger_criterion(
    basis: &[SortedTerms],
    order: &MonomialOrder,
    p: u32,
) -> bool {
    let refs: Vec<&SortedTerms> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let mut a = basis[i].clone();
            let mut b = basis[j].clone();
            make_monic(&mut a, p);
            make_monic(&mut b, p);
            let s = s_polynomial(&a, &b, order, p);
            if !normal_form(s, &refs, order, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// A Gröbner-basis element together with its expression in the original
/// generators.
struct Tracked {
    poly: SortedTerms,
    cofactors: Vec<Polynomial>,
}

fn tracked_reduce(
    mut f: SortedTerms,
    mut cof: Vec<Polynomial>,
    basis: &[Tracked],
    ring: &Arc<Ring>,
    order: &MonomialOrder,
    p: u32,
    full: bool,
) -> (SortedTerms, Vec<Polynomial>) {
    // f_original = f + sum cof_k * gen_k is maintained as
    // f_current + sum (quotients) ... we track f_current = f_original - sum q * b,
    // so cof accumulates sum q * cofactors(b) with sign.
    let mut result = Vec::new();
    let mut start = 0;
    while start < f.len() {
        let (lm, lc) = (f[start].0.clone(), f[start].1);
        match basis.iter().find(|b| b.poly[0].0.divides(&lm)) {
            Some(b) => {
                let m = b.poly[0].0.quotient_of(&lm);
                let c = field::mul(lc, field::inv(b.poly[0].1, p), p);
                f = sub_mul(&f[start..], c, &m, &b.poly, order, p);
                start = 0;
                let q = Polynomial::monomial(ring, m, c);
                for (acc, bc) in cof.iter_mut().zip(&b.cofactors) {
                    *acc = &*acc - &(&q * bc);
                }
            }
            None => {
                if !full {
                    result.extend(f.drain(start..));
                    break;
                }
                result.push(f[start].clone());
                start += 1;
            }
        }
    }
    (result, cof)
}

/// Expresses `target` as `sum c_i * gens[i]`, or returns `None` when
/// `target` is not in the ideal. Used for certificates, so it favours a
/// simple pair loop (product criterion only) over speed.
pub(crate) fn lift(
    gens: &[Polynomial],
    target: &Polynomial,
    order: &MonomialOrder,
) -> Option<Vec<Polynomial>> {
    let ring = target.ring().clone();
    let p = ring.p();
    let k = gens.len();
    let zero = Polynomial::zero(&ring);
    let mut basis: Vec<Tracked> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    let push = |basis: &mut Vec<Tracked>, pairs: &mut Vec<(usize, usize)>, t: Tracked| {
        let idx = basis.len();
        for j in 0..idx {
            pairs.push((j, idx));
        }
        basis.push(t);
    };

    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut cof = vec![zero.clone(); k];
        cof[i] = Polynomial::one(&ring);
        let poly = g.to_sorted(order);
        // Normalize to monic, scaling cofactors alike.
        let inv = field::inv(poly[0].1, p);
        let poly: SortedTerms = poly
            .into_iter()
            .map(|(m, c)| (m, field::mul(c, inv, p)))
            .collect();
        let cofactors = cof.into_iter().map(|c| c.scale(inv)).collect();
        push(&mut basis, &mut pairs, Tracked { poly, cofactors });
    }

    while let Some((i, j)) = pairs.pop() {
        if basis[i].poly[0].0.is_coprime(&basis[j].poly[0].0) {
            continue;
        }
        let l = basis[i].poly[0].0.lcm(&basis[j].poly[0].0);
        let mi = basis[i].poly[0].0.quotient_of(&l);
        let mj = basis[j].poly[0].0.quotient_of(&l);
        let fi: SortedTerms = basis[i]
            .poly
            .iter()
            .map(|(m, c)| (m.mul(&mi), *c))
            .collect();
        let s = sub_mul(&fi, 1, &mj, &basis[j].poly, order, p);
        let qi = Polynomial::monomial(&ring, mi, 1);
        let qj = Polynomial::monomial(&ring, mj, 1);
        let cof: Vec<Polynomial> = basis[i]
            .cofactors
            .iter()
            .zip(&basis[j].cofactors)
            .map(|(a, b)| &(&qi * a) - &(&qj * b))
            .collect();
        let (h, hc) = tracked_reduce(s, cof, &basis, &ring, order, p, false);
        if h.is_empty() {
            continue;
        }
        let inv = field::inv(h[0].1, p);
        let poly: SortedTerms = h
            .into_iter()
            .map(|(m, c)| (m, field::mul(c, inv, p)))
            .collect();
        let cofactors = hc.into_iter().map(|c| c.scale(inv)).collect();
        push(&mut basis, &mut pairs, Tracked { poly, cofactors });
    }

    // target - sum q_b * b = remainder; so target = sum q_b * b when remainder is 0.
    let zero_cof = vec![zero.clone(); k];
    let (rem, neg_cof) = tracked_reduce(
        target.to_sorted(order),
        zero_cof,
        &basis,
        &ring,
        order,
        p,
        true,
    );
    if !rem.is_empty() {
        return None;
    }
    Some(neg_cof.iter().map(|c| -c).collect())
}
