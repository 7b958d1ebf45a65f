//! Truncated restricted power series over `F_p((t^{1/d}))`.
//!
//! A [`RestrictedSeries`] stands for an element of the Tate algebra
//! `T_n(ℓ)` modulo monomials of total degree above its cap and modulo
//! `t^N` in every coefficient. Degree and precision truncation never fake
//! exactness: products, quotients, and split approximants all carry the
//! precision they actually achieved.

mod division;
mod split;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nafield::text::{parse_expr, render_t_power, render_term};
use crate::nafield::{LaurentElement, LaurentJson, Valuation};
use crate::polyring::{Monomial, MonomialOrder};

pub use division::{euclid_div_t1, EuclidDivision};
pub use split::{coefficientwise_split, frobenius_split_approximant, SplitCertificate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedSeries {
    p: u32,
    nvars: usize,
    d: u32,
    deg_cap: u32,
    /// Common coefficient precision in units of `1/d`; `None` if exact.
    prec: Option<i64>,
    coeffs: BTreeMap<Monomial, LaurentElement>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl RestrictedSeries {
    /// Coefficients are refined to ramification `d`; monomials beyond the
    /// cap are dropped and all coefficients are truncated to the lowest
    /// precision present (or `prec`, if lower).
    pub fn new<I>(
        p: u32,
        nvars: usize,
        d: u32,
        deg_cap: u32,
        prec: Option<i64>,
        coeffs: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, LaurentElement)>,
    {
        crate::polyring::field::check_modulus(p as u64)?;
        if d == 0 {
            return Err(Error::Domain("ramification must be positive".into()));
        }
        let mut map: BTreeMap<Monomial, LaurentElement> = BTreeMap::new();
        let mut prec = prec;
        for (m, c) in coeffs {
            if m.nvars() != nvars {
                return Err(Error::LengthMismatch {
                    expected: nvars,
                    got: m.nvars(),
                });
            }
            if c.p() != p {
                return Err(Error::Domain(format!(
                    "coefficient over F_{} in a series over F_{p}",
                    c.p()
                )));
            }
            let c = c.refine(d)?;
            prec = min_prec(prec, c.precision_units());
            if m.degree() > deg_cap as u64 {
                continue;
            }
            let slot = map.remove(&m);
            let c = match slot {
                Some(old) => old.try_add(&c)?,
                None => c,
            };
            map.insert(m, c);
        }
        let mut s = RestrictedSeries {
            p,
            nvars,
            d,
            deg_cap,
            prec,
            coeffs: map,
        };
        s.normalize();
        Ok(s)
    }

    fn normalize(&mut self) {
        if let Some(n) = self.prec {
            for c in self.coeffs.values_mut() {
                *c = c.with_precision(n);
            }
        }
        let cap = self.deg_cap as u64;
        self.coeffs.retain(|m, c| !c.is_zero() && m.degree() <= cap);
    }

    pub fn zero(p: u32, nvars: usize, d: u32, deg_cap: u32, prec: Option<i64>) -> Self {
        RestrictedSeries {
            p,
            nvars,
            d,
            deg_cap,
            prec,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ramification(&self) -> u32 {
        self.d
    }

    pub fn deg_cap(&self) -> u32 {
        self.deg_cap
    }

    pub fn precision_units(&self) -> Option<i64> {
        self.prec
    }

    /// Nonzero coefficients in storage order.
    pub fn coeffs(&self) -> &BTreeMap<Monomial, LaurentElement> {
        &self.coeffs
    }

    /// Coefficient of `X^m`; absent monomials are zero to the series precision.
    pub fn coeff(&self, m: &Monomial) -> LaurentElement {
        self.coeffs
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.zero_coeff())
    }

    fn zero_coeff(&self) -> LaurentElement {
        match self.prec {
            Some(n) => LaurentElement::zero_to(self.p, self.d, n),
            None => LaurentElement::zero(self.p, self.d),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The same series over `F_p((t^{1/d2}))`.
    pub fn refine(&self, d2: u32) -> Result<Self> {
        if d2 == self.d {
            return Ok(self.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.refine(d2)?)))
            .collect::<Result<Vec<_>>>()?;
        let prec = self.prec.map(|n| n * (d2 / self.d) as i64);
        Self::new(self.p, self.nvars, d2, self.deg_cap, prec, coeffs)
    }

    pub fn with_deg_cap(&self, cap: u32) -> Self {
        let mut s = self.clone();
        s.deg_cap = s.deg_cap.min(cap);
        s.normalize();
        s
    }

    /// Gauss valuation `min_ν v(a_ν)`, or `+∞` for zero.
    pub fn gauss_valuation(&self) -> Valuation {
        self.coeffs
            .values()
            .map(LaurentElement::valuation)
            .min()
            .unwrap_or(Valuation::Infinity)
    }

    /// Gauss valuation in units of `1/d`, with zero counting as its precision.
    fn working_valuation(&self) -> Option<i64> {
        self.coeffs
            .values()
            .filter_map(LaurentElement::valuation_units)
            .min()
            .or(self.prec)
    }

    /// Lowest total degree among monomials whose coefficients attain the
    /// Gauss valuation, i.e. of the reduction `f̄ ∈ F_p[X]` after scaling.
    pub fn reduction_low_degree(&self) -> Option<u64> {
        let v = self.gauss_valuation();
        self.coeffs
            .iter()
            .filter(|(_, c)| c.valuation() == v)
            .map(|(m, _)| m.degree())
            .min()
    }

    fn compatible(&self, other: &Self) -> Result<(Self, Self)> {
        if self.p != other.p || self.nvars != other.nvars {
            return Err(Error::Domain(format!(
                "incompatible series: F_{} in {} variables vs F_{} in {}",
                self.p, self.nvars, other.p, other.nvars
            )));
        }
        let d = self.d.lcm(&other.d);
        Ok((self.refine(d)?, other.refine(d)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.compatible(other)?;
        let cap = a.deg_cap.min(b.deg_cap);
        let prec = min_prec(a.prec, b.prec);
        let mut out = a.coeffs;
        for (m, c) in b.coeffs {
            let sum = match out.remove(&m) {
                Some(x) => x.try_add(&c)?,
                None => c,
            };
            out.insert(m, sum);
        }
        let mut s = RestrictedSeries {
            p: a.p,
            nvars: a.nvars,
            d: a.d,
            deg_cap: cap,
            prec,
            coeffs: out,
        };
        s.normalize();
        Ok(s)
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c = -&*c;
        }
        s
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// Multiplies every coefficient by `c` (refined as needed).
    pub fn scale(&self, c: &LaurentElement) -> Result<Self> {
        let constant = Self::new(
            self.p,
            self.nvars,
            c.ramification(),
            self.deg_cap,
            c.precision_units(),
            [(Monomial::one(self.nvars), c.clone())],
        )?;
        tate_mul(self, &constant)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            p: self.p,
            d: self.d,
            nvars: self.nvars,
            deg_cap: self.deg_cap,
            precision: self.prec.map(|n| (n, self.d)),
            terms: self
                .coeffs
                .iter()
                .map(|(m, c)| SeriesTermJson {
                    exp: m.exponents().to_vec(),
                    coeff: c.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<Self> {
        let prec = match j.precision {
            None => None,
            Some((n, den)) => {
                if den == 0 || !j.d.is_multiple_of(den) {
                    return Err(Error::Domain(format!(
                        "precision denominator {den} does not divide d = {}",
                        j.d
                    )));
                }
                Some(n * (j.d / den) as i64)
            }
        };
        let coeffs = j
            .terms
            .iter()
            .map(|t| {
                Ok((
                    Monomial::new(t.exp.clone()),
                    LaurentElement::from_json(&t.coeff)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(j.p, j.nvars, j.d, j.deg_cap, prec, coeffs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTermJson {
    pub exp: Vec<u32>,
    pub coeff: LaurentJson,
}

/// JSON mirror of a restricted series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub p: u32,
    pub d: u32,
    pub nvars: usize,
    pub deg_cap: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<(i64, u32)>,
    pub terms: Vec<SeriesTermJson>,
}

/// `gauss_v(f) = min_ν v(a_ν)`.
pub fn gauss_valuation(f: &RestrictedSeries) -> Valuation {
    f.gauss_valuation()
}

/// Product truncated at the smaller degree cap, with precision
/// `min(N_f + v(g), N_g + v(f))`.
pub fn tate_mul(f: &RestrictedSeries, g: &RestrictedSeries) -> Result<RestrictedSeries> {
    let (a, b) = f.compatible(g)?;
    let cap = a.deg_cap.min(b.deg_cap);
    let prec = match (a.prec, b.prec) {
        (None, None) => None,
        (na, nb) => {
            let via_a = na.map(|n| n + b.working_valuation().unwrap_or(0));
            let via_b = nb.map(|n| n + a.working_valuation().unwrap_or(0));
            min_prec(via_a, via_b)
        }
    };
    let mut out: BTreeMap<Monomial, LaurentElement> = BTreeMap::new();
    for (ma, ca) in &a.coeffs {
        for (mb, cb) in &b.coeffs {
            if ma.degree() + mb.degree() > cap as u64 {
                continue;
            }
            let m = ma.mul(mb);
            let prod = ca.try_mul(cb)?;
            let sum = match out.remove(&m) {
                Some(x) => x.try_add(&prod)?,
                None => prod,
            };
            out.insert(m, sum);
        }
    }
    let mut s = RestrictedSeries {
        p: a.p,
        nvars: a.nvars,
        d: a.d,
        deg_cap: cap,
        prec,
        coeffs: out,
    };
    s.normalize();
    Ok(s)
}

/// Whether the truncated product is guaranteed to attain
/// `gauss_v(f) + gauss_v(g)`: the lowest-degree part of `f̄ ḡ` (a product
/// of nonzero forms over the domain `F_p[X]`) must fit under the cap, and
/// the valuation must lie below the product's precision.
pub fn product_norm_certified(f: &RestrictedSeries, g: &RestrictedSeries) -> bool {
    let (Some(lf), Some(lg)) = (f.reduction_low_degree(), g.reduction_low_degree()) else {
        return false;
    };
    if lf + lg > f.deg_cap.min(g.deg_cap) as u64 {
        return false;
    }
    let d = f.d.lcm(&g.d) as i64;
    let to_units = |v: Valuation| v.finite().map(|r| (r * d).to_integer());
    let (Some(vf), Some(vg)) = (to_units(f.gauss_valuation()), to_units(g.gauss_valuation()))
    else {
        return false;
    };
    let nf = f.prec.map(|n| n * d / f.d as i64);
    let ng = g.prec.map(|n| n * d / g.d as i64);
    let bound = min_prec(nf.map(|n| n + vg), ng.map(|n| n + vf));
    bound.is_none_or(|b| vf + vg < b)
}

fn render_monomial(m: &Monomial) -> String {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("X{}", i + 1)
            } else {
                format!("X{}^{e}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for RestrictedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = MonomialOrder::grevlex();
        let mut monos: Vec<&Monomial> = self.coeffs.keys().collect();
        monos.sort_by(|a, b| order.cmp(b, a));
        let mut parts = Vec::new();
        for m in monos {
            let c = &self.coeffs[m];
            let terms: Vec<(i64, u32)> = c.terms().collect();
            let coeff = terms
                .iter()
                .map(|&(e, a)| render_term(a, e, self.d))
                .collect::<Vec<_>>()
                .join(" + ");
            let mono = render_monomial(m);
            parts.push(match (mono.is_empty(), terms.as_slice()) {
                (true, _) => coeff,
                (false, [(0, 1)]) => mono,
                (false, [_]) => format!("{coeff}*{mono}"),
                (false, _) => format!("({coeff})*{mono}"),
            });
        }
        match self.prec {
            Some(n) => parts.push(format!(
                "O(deg {}; {})",
                self.deg_cap,
                render_t_power(n, self.d)
            )),
            None => parts.push(format!("O(deg {})", self.deg_cap)),
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Parses `(1 + t^(1/2))*X1^2*X2 + t*X2 + O(deg 7; t^64)`.
///
/// `nvars` defaults to the largest variable index used; the degree cap
/// defaults to the largest degree present and the precision to exact.
pub fn parse_series(
    src: &str,
    p: u32,
    nvars: Option<usize>,
    d: Option<u32>,
) -> Result<RestrictedSeries> {
    let expr = parse_expr(src, p, true)?;
    let n = nvars.unwrap_or(expr.nvars);
    if expr.nvars > n {
        return Err(Error::parse(
            0,
            format!("variable X{} used in a series in {n} variables", expr.nvars),
        ));
    }
    let d = expr.ramification().lcm(&d.unwrap_or(1).max(1));
    let units = |r: num_rational::Ratio<i64>| (r * d as i64).to_integer();
    let mut grouped: BTreeMap<Vec<u32>, Vec<(i64, i64)>> = BTreeMap::new();
    for ((x, r), &c) in &expr.terms {
        let mut e = x.clone();
        e.resize(n, 0);
        grouped.entry(e).or_default().push((units(*r), c as i64));
    }
    let cap = expr.deg_cap.unwrap_or_else(|| {
        grouped
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    });
    let prec = expr.t_prec.map(units);
    let coeffs = grouped
        .into_iter()
        .map(|(e, terms)| {
            Ok((
                Monomial::new(e),
                LaurentElement::from_terms(p, d, terms, prec)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    RestrictedSeries::new(p, n, d, cap, prec, coeffs)
}
