use super::{tate_mul, RestrictedSeries};
use crate::error::{Error, Result};
use crate::nafield::LaurentElement;
use crate::polyring::Monomial;

/// Hard stop for the leading-part iteration; the residual valuation rises
/// by at least `1/d` per round, so this is only reached at absurd precision.
const MAX_ROUNDS: usize = 1 << 16;

#[derive(Debug, Clone)]
pub struct EuclidDivision {
    pub q: RestrictedSeries,
    pub r: RestrictedSeries,
    /// Largest index whose coefficient attains the Gauss valuation of `g`.
    pub n_g: u32,
    pub rounds: usize,
}

fn dense(f: &RestrictedSeries, cap: u32) -> Vec<LaurentElement> {
    (0..=cap)
        .map(|i| f.coeff(&Monomial::new(vec![i])))
        .collect()
}

fn from_dense(
    template: &RestrictedSeries,
    coeffs: Vec<LaurentElement>,
    cap: u32,
) -> Result<RestrictedSeries> {
    let prec = coeffs
        .iter()
        .filter_map(LaurentElement::precision_units)
        .min();
    RestrictedSeries::new(
        template.p(),
        1,
        template.ramification(),
        cap,
        prec,
        coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| (Monomial::new(vec![i as u32]), c)),
    )
}

/// Largest index attaining the minimal coefficient valuation.
pub(crate) fn dominant_index(g: &RestrictedSeries) -> Result<u32> {
    if g.is_zero() {
        return Err(match g.precision_units() {
            Some(_) => Error::Precision(format!("divisor {g} vanishes to precision")),
            None => Error::DivisionByZero,
        });
    }
    let v = g.gauss_valuation();
    Ok(g.coeffs()
        .iter()
        .filter(|(_, c)| c.valuation() == v)
        .map(|(m, _)| m.exponents()[0])
        .max()
        .expect("nonzero series"))
}

/// Division with remainder in `T_1`: `f = q g + r` with `deg r < N_g`,
/// holding modulo `X^{cap+1}` and the tracked precision.
///
/// With `G` the part of `g` of degree `<= N_g` (whose top coefficient has
/// maximal norm) and `h = g - G`, each round divides the residual by `G`
/// as polynomials and replaces it by `-q_1 h`, whose valuation exceeds the
/// old residual's because `|h| < |g|`.
pub fn euclid_div_t1(f: &RestrictedSeries, g: &RestrictedSeries) -> Result<EuclidDivision> {
    if f.nvars() != 1 || g.nvars() != 1 {
        return Err(Error::Domain(
            "Euclidean division needs one variable".into(),
        ));
    }
    let (f, g) = f.compatible(g)?;
    let cap = f.deg_cap().min(g.deg_cap());
    let n_g = dominant_index(&g)?;
    if n_g > cap {
        return Err(Error::Domain(format!(
            "dominant index {n_g} exceeds the degree cap {cap}"
        )));
    }
    let n = n_g as usize;
    let gd = dense(&g, cap);
    let lead_inv = gd[n].inverse()?;
    let h: Vec<(usize, LaurentElement)> = gd
        .iter()
        .enumerate()
        .skip(n + 1)
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();

    let zero = f.coeff(&Monomial::new(vec![cap + 1]));
    let mut q = vec![zero.clone(); cap as usize + 1];
    let mut r = vec![zero.clone(); n];
    let mut residual = dense(&f, cap);
    let mut last_v = None;
    let mut rounds = 0usize;
    loop {
        let v = residual
            .iter()
            .filter_map(LaurentElement::valuation_units)
            .min();
        let Some(v) = v else { break };
        if let Some(prev) = last_v {
            if v <= prev {
                return Err(Error::Precision(format!(
                    "division stalled: residual valuation {v} did not rise above {prev}"
                )));
            }
        }
        last_v = Some(v);
        rounds += 1;
        if rounds > MAX_ROUNDS {
            return Err(Error::Precision("division did not converge".into()));
        }
        // Polynomial division of the residual by G.
        let mut q1 = vec![zero.clone(); cap as usize + 1 - n];
        for k in (n..=cap as usize).rev() {
            if residual[k].is_zero() {
                continue;
            }
            let c = residual[k].try_mul(&lead_inv)?;
            for i in 0..=n {
                if !gd[i].is_zero() {
                    residual[k - n + i] = residual[k - n + i].try_sub(&c.try_mul(&gd[i])?)?;
                }
            }
            q1[k - n] = c;
        }
        for i in 0..n {
            r[i] = r[i].try_add(&residual[i])?;
        }
        for (i, c) in q1.iter().enumerate() {
            q[i] = q[i].try_add(c)?;
        }
        // New residual -q1 h, truncated at the cap; the top part of the
        // residual is zero up to the precision lost in cancellation, which
        // is folded in through the zero coefficients' precision.
        let mut next: Vec<LaurentElement> = residual
            .iter()
            .enumerate()
            .map(|(k, c)| if k < n { zero.clone() } else { c.clone() })
            .collect();
        for (i, c) in q1.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, hj) in &h {
                if i + j <= cap as usize {
                    next[i + j] = next[i + j].try_sub(&c.try_mul(hj)?)?;
                }
            }
        }
        residual = next;
    }
    // Precision lost along the way shows up in the residual's zero digits.
    let floor = residual
        .iter()
        .filter_map(LaurentElement::precision_units)
        .min();
    let clip = |c: LaurentElement| match floor {
        Some(n) => c.with_precision(n),
        None => c,
    };
    let q = q.into_iter().map(clip).collect();
    let r = r.into_iter().map(clip).collect();
    Ok(EuclidDivision {
        q: from_dense(&f, q, cap)?,
        // r is known to vanish above N_g, so it keeps the full cap.
        r: from_dense(&f, r, cap)?,
        n_g,
        rounds,
    })
}

impl EuclidDivision {
    /// `f - (q g + r)`; zero to its precision when the identity holds.
    pub fn defect(&self, f: &RestrictedSeries, g: &RestrictedSeries) -> Result<RestrictedSeries> {
        f.try_sub(&tate_mul(&self.q, g)?)?.try_sub(&self.r)
    }
}
