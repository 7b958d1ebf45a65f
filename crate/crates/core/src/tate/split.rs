use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::RestrictedSeries;
use crate::error::{Error, Result};
use crate::nafield::{orthogonalize, DualFunctional, LaurentElement, Valuation};
use crate::polyring::Monomial;

/// Applies the projection `ℓ -> k` onto the `t^0` component of
/// `ℓ = ⊕_j k t^{j/d}` to every coefficient. This is a `T_n(k)`-linear
/// left inverse of the inclusion `T_n(k) ⊆ T_n(ℓ)` sending 1 to 1.
pub fn coefficientwise_split(f: &RestrictedSeries) -> Result<RestrictedSeries> {
    apply_coefficientwise(f, |c| Ok(c.component(0)))
}

fn apply_coefficientwise<F>(f: &RestrictedSeries, phi: F) -> Result<RestrictedSeries>
where
    F: Fn(&LaurentElement) -> Result<LaurentElement> + Sync,
{
    let entries: Vec<(&Monomial, &LaurentElement)> = f.coeffs().iter().collect();
    let images = entries
        .par_iter()
        .map(|(m, c)| Ok(((*m).clone(), phi(c)?)))
        .collect::<Result<Vec<_>>>()?;
    // Absent coefficients are O(t^N); their image fixes the precision.
    let prec = match f.precision_units() {
        Some(n) => phi(&LaurentElement::zero_to(f.p(), f.ramification(), n))?.precision_units(),
        None => None,
    };
    RestrictedSeries::new(f.p(), f.nvars(), 1, f.deg_cap(), prec, images)
}

/// Witness that `g_ε = sum_i φ_i(f) x_i` approximates `f`, where the `x_i`
/// form an orthogonal basis of the coefficient span of the truncation
/// `f_ε` and each `φ_i` is the `T_n(k)`-linear extension of a coordinate
/// functional `ℓ -> k`. Every `φ_i(f)` lies in the trace of `f`, so
/// `g_ε ∈ Tr(f) T_n(ℓ)` by construction.
#[derive(Debug, Clone)]
pub struct SplitCertificate {
    pub epsilon_valuation: Ratio<i64>,
    pub truncation: RestrictedSeries,
    pub basis: Vec<LaurentElement>,
    pub functionals: Vec<DualFunctional>,
    pub values: Vec<RestrictedSeries>,
    pub approximant: RestrictedSeries,
    /// Certified lower bound for `v(f - g_ε)`.
    pub error_valuation: Valuation,
    /// `v(f - g_ε) > w - 1`, the valuation form of `|f - g_ε| < 4Mε`.
    pub bound_holds: bool,
    /// The sharper `v(f - g_ε) > w` available in the discrete case.
    pub sharp_bound_holds: bool,
    /// Every basis vector has valuation in `(-1, 0]`.
    pub basis_in_window: bool,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    epsilon_valuation: String,
    truncation: String,
    basis: Vec<String>,
    functionals: &'a [DualFunctional],
    values: Vec<String>,
    approximant: String,
    error_valuation: Valuation,
    bound_holds: bool,
    sharp_bound_holds: bool,
    basis_in_window: bool,
}

impl SplitCertificate {
    /// `sum_i φ_i(f) x_i` recomputed from the recorded values and basis.
    pub fn reassemble(&self) -> Result<RestrictedSeries> {
        assemble(&self.approximant, &self.values, &self.basis)
    }

    /// Re-applies each recorded functional to `f`.
    pub fn reapply(&self, f: &RestrictedSeries) -> Result<Vec<RestrictedSeries>> {
        self.functionals
            .iter()
            .map(|phi| apply_coefficientwise(f, |c| phi.apply(c)))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CertificateJson {
            epsilon_valuation: self.epsilon_valuation.to_string(),
            truncation: self.truncation.to_string(),
            basis: self.basis.iter().map(|x| x.to_string()).collect(),
            functionals: &self.functionals,
            values: self.values.iter().map(|v| v.to_string()).collect(),
            approximant: self.approximant.to_string(),
            error_valuation: self.error_valuation,
            bound_holds: self.bound_holds,
            sharp_bound_holds: self.sharp_bound_holds,
            basis_in_window: self.basis_in_window,
        })
        .expect("certificate serializes")
    }
}

fn assemble(
    like: &RestrictedSeries,
    values: &[RestrictedSeries],
    basis: &[LaurentElement],
) -> Result<RestrictedSeries> {
    let mut acc = RestrictedSeries::zero(
        like.p(),
        like.nvars(),
        like.ramification(),
        like.deg_cap(),
        None,
    );
    for (v, x) in values.iter().zip(basis) {
        acc = acc.try_add(&v.scale(x)?)?;
    }
    Ok(acc)
}

/// Certified lower bound for the valuation of `e`: its Gauss valuation if
/// nonzero, else its precision.
fn certified_valuation(e: &RestrictedSeries) -> Valuation {
    match e.gauss_valuation() {
        Valuation::Infinity => match e.precision_units() {
            Some(n) => Valuation::from_units(n, e.ramification()),
            None => Valuation::Infinity,
        },
        v => v,
    }
}

/// Builds `g_ε` for threshold `w` (coefficients with `v <= w` count as
/// large) and certifies the error bound.
pub fn frobenius_split_approximant(
    f: &RestrictedSeries,
    w: Ratio<i64>,
) -> Result<SplitCertificate> {
    let w_val = Valuation::Finite(w);
    let kept: Vec<(Monomial, LaurentElement)> = f
        .coeffs()
        .iter()
        .filter(|(_, c)| c.valuation() <= w_val)
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    let truncation = RestrictedSeries::new(
        f.p(),
        f.nvars(),
        f.ramification(),
        f.deg_cap(),
        f.precision_units(),
        kept.iter().cloned(),
    )?;
    let span: Vec<LaurentElement> = kept.into_iter().map(|(_, c)| c).collect();
    let basis = orthogonalize(&span)?.scaled_into_window()?;
    let functionals = basis.dual_functionals()?;
    let values = functionals
        .iter()
        .map(|phi| apply_coefficientwise(f, |c| phi.apply(c)))
        .collect::<Result<Vec<_>>>()?;
    let basis_vectors = basis.vectors().to_vec();
    let approximant = assemble(f, &values, &basis_vectors)?;
    let error = f.try_sub(&approximant)?;
    let error_valuation = certified_valuation(&error);
    let bound_holds = error_valuation > Valuation::Finite(w - 1);
    let sharp_bound_holds = error_valuation > w_val;
    let window = (Valuation::int(-1), Valuation::int(0));
    let basis_in_window = basis_vectors
        .iter()
        .all(|x| x.valuation() > window.0 && x.valuation() <= window.1);
    if basis_vectors.len() != functionals.len() {
        return Err(Error::Internal(
            "basis and dual functionals differ in length".into(),
        ));
    }
    Ok(SplitCertificate {
        epsilon_valuation: w,
        truncation,
        basis: basis_vectors,
        functionals,
        values,
        approximant,
        error_valuation,
        bound_holds,
        sharp_bound_holds,
        basis_in_window,
    })
}
