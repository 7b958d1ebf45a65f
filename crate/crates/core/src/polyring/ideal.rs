use std::fmt;
use std::sync::{Arc, OnceLock};

use super::groebner;
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::{Polynomial, Ring, SortedTerms};
use crate::error::{Error, Result};

/// An ideal of `F_p[x_1..x_n]` given by generators, with a lazily computed
/// reduced Gröbner basis under a fixed monomial order.
///
/// The basis cache is a `OnceLock`, so concurrent first uses race only on
/// who stores the (identical) result.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    order: MonomialOrder,
    basis: OnceLock<Arc<Vec<Polynomial>>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_text()).collect();
        write!(f, "({})", gens.join("; "))
    }
}

/// Result of a colon computation.
#[derive(Debug, Clone)]
pub struct Colon {
    pub ideal: Ideal,
    /// Set when the divisor ideal was zero, so the unit ideal was returned
    /// by the `(I : 0) = S` convention.
    pub divisor_was_zero: bool,
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        Ideal::with_order(ring, gens, MonomialOrder::grevlex())
    }

    pub fn with_order(
        ring: &Arc<Ring>,
        gens: Vec<Polynomial>,
        order: MonomialOrder,
    ) -> Result<Self> {
        for g in &gens {
            ring.check_same(g.ring())?;
        }
        if !order.permutation.is_empty() {
            let mut seen = order.permutation.clone();
            seen.sort_unstable();
            if seen != (0..ring.nvars()).collect::<Vec<_>>() {
                return Err(Error::Domain(format!(
                    "order permutation {:?} is not a permutation of {} variables",
                    order.permutation,
                    ring.nvars()
                )));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            order,
            basis: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Ideal::new(ring, Vec::new()).expect("empty generator list")
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    /// The ideal `(x_1 - a_1, ..., x_n - a_n)` of a rational point.
    pub fn rational_point(ring: &Arc<Ring>, point: &[i64]) -> Result<Self> {
        if point.len() != ring.nvars() {
            return Err(Error::LengthMismatch {
                expected: ring.nvars(),
                got: point.len(),
            });
        }
        let gens = point
            .iter()
            .enumerate()
            .map(|(i, &a)| &Polynomial::var(ring, i) - &Polynomial::constant(ring, a))
            .collect();
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Same generators, different order (cache dropped).
    pub fn reorder(&self, order: MonomialOrder) -> Result<Ideal> {
        Ideal::with_order(&self.ring, self.gens.clone(), order)
    }

    fn sorted_basis(&self) -> Vec<SortedTerms> {
        self.groebner_basis()
            .iter()
            .map(|g| g.to_sorted(&self.order))
            .collect()
    }

    /// The reduced Gröbner basis, monic and sorted by ascending leading
    /// monomial. Computed once.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.basis.get_or_init(|| {
            let gens = self.gens.iter().map(|g| g.to_sorted(&self.order)).collect();
            let basis = groebner::reduced_basis(gens, &self.order, self.ring.p());
            Arc::new(
                basis
                    .into_iter()
                    .map(|g| Polynomial::from_sorted(&self.ring, g))
                    .collect(),
            )
        })
    }

    /// The ideal presented by its reduced Gröbner basis.
    pub fn groebner(&self) -> Ideal {
        let basis = self.groebner_basis().to_vec();
        let out = Ideal {
            ring: self.ring.clone(),
            gens: basis.clone(),
            order: self.order.clone(),
            basis: OnceLock::new(),
        };
        let _ = out.basis.set(Arc::new(basis));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(Polynomial::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        let b = self.groebner_basis();
        b.len() == 1 && b[0].is_nonzero_constant()
    }

    /// Normal form modulo the reduced basis.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(f.ring())?;
        let basis = self.sorted_basis();
        let refs: Vec<&SortedTerms> = basis.iter().collect();
        let nf = groebner::normal_form(f.to_sorted(&self.order), &refs, &self.order, self.ring.p());
        Ok(Polynomial::from_sorted(&self.ring, nf))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.ring.check_same(&other.ring)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality: reduced-basis equality under a shared order, double
    /// containment otherwise.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.ring.check_same(&other.ring)?;
        if self.order == other.order {
            Ok(self.groebner_basis() == other.groebner_basis())
        } else {
            Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::with_order(&self.ring, gens, self.order.clone())
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::with_order(&self.ring, gens, self.order.clone())
    }

    /// The ideal `f * self`.
    pub fn scale_by(&self, f: &Polynomial) -> Result<Ideal> {
        self.ring.check_same(f.ring())?;
        let gens = self.gens.iter().map(|g| g * f).collect();
        Ideal::with_order(&self.ring, gens, self.order.clone())
    }

    /// `self ∩ other` by eliminating an auxiliary variable `t` from
    /// `t*self + (1 - t)*other` under a block order with `t` first.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ideal::with_order(&self.ring, Vec::new(), self.order.clone());
        }
        let mut name = String::from("_t");
        while self.ring.var_index(&name).is_some() {
            name.push('_');
        }
        let mut vars = vec![name];
        vars.extend(self.ring.vars().iter().cloned());
        let ext = Ring::new(self.ring.p() as u64, vars)?;
        let shift: Vec<usize> = (1..=self.ring.nvars()).collect();
        let t = Polynomial::var(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &g.map_to_ring(&ext, &shift));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.map_to_ring(&ext, &shift));
        }
        let inner = if self.order.permutation.is_empty() {
            MonomialOrder::elimination(1)
        } else {
            let mut perm = vec![0];
            perm.extend(self.order.permutation.iter().map(|i| i + 1));
            MonomialOrder::elimination(1).with_permutation(perm)
        };
        let big = Ideal::with_order(&ext, gens, inner)?;
        let kept: Vec<Polynomial> = big
            .groebner_basis()
            .iter()
            .filter(|g| g.raw_terms().keys().all(|m| m.exponents()[0] == 0))
            .map(|g| {
                let mut out = Polynomial::zero(&self.ring);
                for (m, c) in g.terms() {
                    let e = m.exponents()[1..].to_vec();
                    out.add_term(Monomial::new(e), c.value());
                }
                out
            })
            .collect();
        Ideal::with_order(&self.ring, kept, self.order.clone())
    }

    /// `(self : (g))` computed as `(self ∩ (g)) / g`.
    pub fn colon_poly(&self, g: &Polynomial) -> Result<Ideal> {
        self.ring.check_same(g.ring())?;
        if g.is_zero() {
            return Ideal::unit(&self.ring).reorder(self.order.clone());
        }
        let principal = Ideal::with_order(&self.ring, vec![g.clone()], self.order.clone())?;
        let inter = self.intersect(&principal)?;
        let mut gens = Vec::with_capacity(inter.groebner_basis().len());
        for h in inter.groebner_basis() {
            let q = h.div_exact(g).ok_or_else(|| {
                Error::Internal(format!("intersection generator {h} not divisible by {g}"))
            })?;
            gens.push(q);
        }
        Ideal::with_order(&self.ring, gens, self.order.clone())
    }

    /// `(self : other) = ∩_g (self : g)` over the generators of `other`.
    pub fn colon(&self, other: &Ideal) -> Result<Colon> {
        self.ring.check_same(&other.ring)?;
        let divisors: Vec<&Polynomial> = other.gens.iter().filter(|g| !g.is_zero()).collect();
        if divisors.is_empty() {
            return Ok(Colon {
                ideal: Ideal::unit(&self.ring).reorder(self.order.clone())?,
                divisor_was_zero: true,
            });
        }
        let mut acc: Option<Ideal> = None;
        for g in divisors {
            let q = self.colon_poly(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?.groebner(),
            });
        }
        Ok(Colon {
            ideal: acc.expect("nonempty").groebner(),
            divisor_was_zero: false,
        })
    }

    /// Number of standard monomials, i.e. `dim_k S/I`, when finite.
    pub fn standard_monomial_count(&self) -> Option<u64> {
        let basis = self.groebner_basis();
        let n = self.ring.nvars();
        if basis.is_empty() {
            return if n == 0 { Some(1) } else { None };
        }
        let leads: Vec<Monomial> = basis
            .iter()
            .map(|g| g.leading_term(&self.order).unwrap().0.clone())
            .collect();
        if leads.iter().any(Monomial::is_one) {
            return Some(0);
        }
        // Finite iff every variable has a pure-power leading monomial.
        let mut bounds = vec![u32::MAX; n];
        for m in &leads {
            let nz: Vec<usize> = (0..n).filter(|&i| m.exponents()[i] > 0).collect();
            if nz.len() == 1 {
                bounds[nz[0]] = bounds[nz[0]].min(m.exponents()[nz[0]]);
            }
        }
        if bounds.contains(&u32::MAX) {
            return None;
        }
        let mut count = 0u64;
        let mut e = vec![0u32; n];
        loop {
            let m = Monomial::new(e.clone());
            if !leads.iter().any(|l| l.divides(&m)) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return Some(count);
                }
                e[i] += 1;
                if e[i] < bounds[i] {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }

    /// Generators rendered as `f; g; ...`.
    pub fn to_text(&self) -> String {
        self.gens
            .iter()
            .map(|g| g.to_text())
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Checks every S-polynomial of the cached basis reduces to zero.
    pub fn basis_satisfies_buchberger(&self) -> bool {
        groebner::satisfies_buchberger_criterion(&self.sorted_basis(), &self.order, self.ring.p())
    }

    /// Cofactors `c` with `sum c_i * gens[i] = f`, if `f` lies in the ideal.
    pub fn lift(&self, f: &Polynomial) -> Result<Option<Vec<Polynomial>>> {
        self.ring.check_same(f.ring())?;
        Ok(groebner::lift(&self.gens, f, &self.order))
    }
}
