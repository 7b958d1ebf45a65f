use rayon::prelude::*;
use serde::Serialize;

use super::QuotientPresentation;
use crate::error::{Error, Result};
use crate::frobenius::{bracket_power, frobenius_decompose, frobenius_root, BracketExponent};
use crate::polyring::{Fp, Ideal, Monomial, Polynomial};

/// Largest number of points `p^n` scanned for a rational point table.
pub const POINT_SCAN_CAP: u64 = 1 << 16;

/// Reads off `a` from a maximal ideal whose reduced basis is
/// `{x_1 - a_1, ..., x_n - a_n}`.
pub fn rational_point_of(m: &Ideal) -> Result<Vec<Fp>> {
    let ring = m.ring();
    let n = ring.nvars();
    let basis = m.groebner_basis();
    let not_rational = || Error::Domain(format!("{m} is not a rational maximal ideal"));
    if basis.len() != n {
        return Err(not_rational());
    }
    let mut point = vec![None; n];
    for g in basis {
        let mut var = None;
        let mut constant = 0u32;
        for (mono, c) in g.terms() {
            if mono.is_one() {
                constant = c.value();
                continue;
            }
            let nz: Vec<usize> = (0..n).filter(|&i| mono.exponents()[i] > 0).collect();
            if nz.len() != 1 || mono.exponents()[nz[0]] != 1 || c.value() != 1 || var.is_some() {
                return Err(not_rational());
            }
            var = Some(nz[0]);
        }
        let i = var.ok_or_else(not_rational)?;
        if point[i].is_some() {
            return Err(not_rational());
        }
        point[i] = Some(Fp::new(-(constant as i64), ring.p())?);
    }
    point
        .into_iter()
        .map(|a| a.ok_or_else(not_rational))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct FedderVerdict {
    pub pure: bool,
    pub point: Vec<u32>,
    /// An element of `(I^{[q]} : I) r` outside `m^{[q]}`, when pure.
    pub witness: Option<String>,
}

/// Fedder-type purity test at a rational maximal ideal `m ⊇ I`: decides
/// whether `(I^{[q]} : I) r ⊄ m^{[q]}` by testing each generator of the
/// colon, times `r`, for membership in `m^{[q]}`.
pub fn fedder_pure_at(
    pres: &QuotientPresentation,
    r_lift: &Polynomial,
    m: &Ideal,
    e: BracketExponent,
) -> Result<FedderVerdict> {
    let ring = pres.ring();
    if **ring != **r_lift.ring() || **ring != **m.ring() {
        return Err(Error::RingMismatch(ring.to_string(), m.ring().to_string()));
    }
    let point = rational_point_of(m)?;
    if !m.contains_ideal(pres.ideal())? {
        return Err(Error::Domain(format!(
            "point not on V(I): {:?}",
            point.iter().map(|a| a.value()).collect::<Vec<_>>()
        )));
    }
    let colon = pres.fedder_colon(e)?.ideal;
    let m_bracket = bracket_power(m, e)?;
    let mut witness = None;
    for c in colon.gens() {
        let cr = c * r_lift;
        if !m_bracket.contains(&cr)? {
            witness = Some(cr.to_text());
            break;
        }
    }
    Ok(FedderVerdict {
        pure: witness.is_some(),
        point: point.iter().map(|a| a.value()).collect(),
        witness,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PointVerdict {
    pub point: Vec<u32>,
    pub pure: bool,
}

#[derive(Debug, Clone)]
pub struct LocusReport {
    /// `((I^{[q]} : I) r)^{[1/q]}`; its zero set inside `V(I)` is the
    /// non-pure locus.
    pub locus_ideal: Ideal,
    pub pure_everywhere: bool,
    pub rational_points: Option<Vec<PointVerdict>>,
    /// The colon was taken by the zero ideal (`I = 0`).
    pub colon_by_zero: bool,
}

fn locus_ideal(
    pres: &QuotientPresentation,
    r_lift: &Polynomial,
    e: BracketExponent,
) -> Result<(Ideal, Ideal, bool)> {
    let colon = pres.fedder_colon(e)?;
    let scaled = colon.ideal.scale_by(r_lift)?;
    let locus = frobenius_root(&scaled, e)?;
    Ok((locus, colon.ideal, colon.divisor_was_zero))
}

/// The locus ideal of `R -> F^e_* R`, `1 ↦ F^e_* r`. A prime `q ⊇ I` is in
/// the pure locus iff the locus ideal is not contained in `q`.
pub fn pure_locus(
    pres: &QuotientPresentation,
    r_lift: &Polynomial,
    e: BracketExponent,
) -> Result<LocusReport> {
    let (locus, _, by_zero) = locus_ideal(pres, r_lift, e)?;
    let pure_everywhere = locus.sum(pres.ideal())?.is_unit();
    Ok(LocusReport {
        locus_ideal: locus,
        pure_everywhere,
        rational_points: None,
        colon_by_zero: by_zero,
    })
}

/// [`pure_locus`] plus a verdict at every `F_p`-rational point of `V(I)`.
pub fn pure_locus_with_points(
    pres: &QuotientPresentation,
    r_lift: &Polynomial,
    e: BracketExponent,
) -> Result<LocusReport> {
    let mut report = pure_locus(pres, r_lift, e)?;
    let ring = pres.ring();
    let p = ring.p();
    let n = ring.nvars();
    let total = (p as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > POINT_SCAN_CAP {
        return Err(Error::CapExceeded {
            cap: POINT_SCAN_CAP as u32,
            partial: vec![format!("{total} rational points")],
        });
    }
    let points: Vec<Vec<Fp>> = (0..total)
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let a = (k % p as u64) as u32;
                    k /= p as u64;
                    ring.element(a as i64)
                })
                .collect()
        })
        .collect();
    let gens = pres.ideal().gens();
    let locus_gens = report.locus_ideal.gens();
    let table = points
        .par_iter()
        .map(|pt| -> Result<Option<PointVerdict>> {
            for g in gens {
                if !g.evaluate(pt)?.is_zero() {
                    return Ok(None);
                }
            }
            let mut pure = false;
            for g in locus_gens {
                if !g.evaluate(pt)?.is_zero() {
                    pure = true;
                    break;
                }
            }
            Ok(Some(PointVerdict {
                point: pt.iter().map(|a| a.value()).collect(),
                pure,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    report.rational_points = Some(table.into_iter().flatten().collect());
    Ok(report)
}

/// F-pure locus: `r = 1`, `e = 1`.
pub fn fpure_locus(pres: &QuotientPresentation) -> Result<LocusReport> {
    let one = Polynomial::one(pres.ring());
    pure_locus(pres, &one, BracketExponent::new(1)?)
}

/// One summand `s * π_a(F^e_*(c x))` of a splitting functional.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateTerm {
    /// Element of `(I^{[q]} : I)`; premultiplying by it makes the map
    /// descend to `R`.
    pub multiplier: String,
    /// Basis monomial `x^a` whose coordinate is projected.
    pub basis_monomial: Vec<u32>,
    pub cofactor: String,
}

/// `φ(F^e_* x) = sum_k s_k π_{a_k}(F^e_*(c_k x))` with `φ(F^e_* r) ≡ 1 mod I`.
#[derive(Debug, Clone, Serialize)]
pub struct SplittingCertificate {
    pub terms: Vec<CertificateTerm>,
    /// `φ(F^e_* r)` as computed from the terms.
    pub value: String,
}

#[derive(Debug, Clone)]
pub struct SplitTest {
    pub splits: bool,
    pub locus_ideal: Ideal,
    pub certificate: Option<SplittingCertificate>,
    #[doc(hidden)]
    pub certificate_terms: Vec<(Polynomial, Monomial, Polynomial)>,
}

/// Evaluates `sum s_k π_{a_k}(F^e_*(c_k x))`.
pub fn apply_splitting(
    terms: &[(Polynomial, Monomial, Polynomial)],
    x: &Polynomial,
    e: BracketExponent,
) -> Polynomial {
    let mut acc = Polynomial::zero(x.ring());
    for (c, a, s) in terms {
        let dec = frobenius_decompose(&(c * x), e);
        if let Some(entry) = dec.table.get(a) {
            acc = &acc + &(s * entry);
        }
    }
    acc
}

/// Decides whether `R -> F^e_* R`, `1 ↦ F^e_* r`, splits, and if so builds
/// an explicit splitting functional.
pub fn split_element_test(
    pres: &QuotientPresentation,
    r_lift: &Polynomial,
    e: BracketExponent,
) -> Result<SplitTest> {
    let ring = pres.ring();
    let (locus, colon, _) = locus_ideal(pres, r_lift, e)?;
    let splits = locus.sum(pres.ideal())?.is_unit();
    if !splits {
        return Ok(SplitTest {
            splits,
            locus_ideal: locus,
            certificate: None,
            certificate_terms: Vec::new(),
        });
    }
    // Candidate summands: table entries of F^e_*(c r) for c in the colon basis.
    let mut candidates: Vec<(Polynomial, Monomial, Polynomial)> = Vec::new();
    for c in colon.gens() {
        for (a, entry) in frobenius_decompose(&(c * r_lift), e).table {
            candidates.push((c.clone(), a, entry));
        }
    }
    let terms: Vec<(Polynomial, Monomial, Polynomial)> = if let Some((c, a, entry)) = candidates
        .iter()
        .find(|(_, _, entry)| entry.is_nonzero_constant())
    {
        let inv = ring
            .element(entry.constant_value().unwrap() as i64)
            .inverse()?;
        vec![(
            c.clone(),
            a.clone(),
            Polynomial::constant(ring, inv.value() as i64),
        )]
    } else {
        let mut gens: Vec<Polynomial> = candidates.iter().map(|t| t.2.clone()).collect();
        gens.extend(pres.ideal().gens().iter().cloned());
        let lifted = Ideal::new(ring, gens)?
            .lift(&Polynomial::one(ring))?
            .ok_or_else(|| {
                Error::Internal("locus + I is the unit ideal but 1 could not be lifted".into())
            })?;
        candidates
            .iter()
            .zip(lifted)
            .filter(|(_, s)| !s.is_zero())
            .map(|((c, a, _), s)| (c.clone(), a.clone(), s))
            .collect()
    };
    let value = apply_splitting(&terms, r_lift, e);
    let defect = &value - &Polynomial::one(ring);
    if !pres.ideal().contains(&defect)? {
        return Err(Error::Internal(format!(
            "splitting certificate evaluates to {value}, not 1 mod I"
        )));
    }
    let certificate = SplittingCertificate {
        terms: terms
            .iter()
            .map(|(c, a, s)| CertificateTerm {
                multiplier: c.to_text(),
                basis_monomial: a.exponents().to_vec(),
                cofactor: s.to_text(),
            })
            .collect(),
        value: value.to_text(),
    };
    Ok(SplitTest {
        splits,
        locus_ideal: locus,
        certificate: Some(certificate),
        certificate_terms: terms,
    })
}
