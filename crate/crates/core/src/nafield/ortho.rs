use num_integer::Integer;
use serde::Serialize;

use super::{LaurentElement, Valuation};
use crate::error::{Error, Result};

/// Returns `(c, c x)` with `c = t^e`, `e` the unique integer putting
/// `v(c x)` in `(-1, 0]`.
pub fn uniform_scale(x: &LaurentElement) -> Result<(LaurentElement, LaurentElement)> {
    let Some(v) = x.valuation_units() else {
        return Err(if x.is_exact() {
            Error::Domain("cannot scale zero".into())
        } else {
            Error::Precision(format!("cannot scale {x}: zero to precision"))
        });
    };
    let d = x.ramification() as i64;
    let e = -Integer::div_ceil(&v, &d);
    let c = LaurentElement::monomial(x.p(), 1, e, 1);
    Ok((c, x.shift(e * d)))
}

/// Index `j` of the dominant coordinate in `x = sum_j c_j t^{j/d}`: the
/// unique minimizer of `v(c_j) + j/d`.
fn lead_index(x: &LaurentElement) -> Option<u32> {
    let d = x.ramification() as i64;
    x.valuation_units().map(|v| v.mod_floor(&d) as u32)
}

/// A basis of a `k`-subspace of `F_p((t^{1/d}))`, `k = F_p((t))`, whose
/// members have pairwise distinct lead indices and vanish in each other's
/// lead coordinates. Such a basis is orthogonal with constant `t = 1`:
/// `v(sum a_i y_i) = min v(a_i y_i)` for all `a_i ∈ k`.
#[derive(Debug, Clone)]
pub struct OrthogonalBasis {
    vectors: Vec<LaurentElement>,
    pivots: Vec<u32>,
    d: u32,
    /// Input positions found to lie in the span of earlier inputs.
    pub dependent_inputs: Vec<usize>,
}

/// Descriptor of the coordinate functional `y_i^*`: `z ↦ c_pivot(z) * scale`.
#[derive(Debug, Clone, Serialize)]
pub struct DualFunctional {
    pub pivot: u32,
    pub d: u32,
    #[serde(serialize_with = "display")]
    pub scale: LaurentElement,
    /// Lower bound `-v(y_i)` for the valuation of the operator norm.
    pub norm_valuation_bound: Valuation,
}

fn display<S: serde::Serializer>(x: &LaurentElement, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl DualFunctional {
    /// `y_i^*(z)`, an element of `k`.
    pub fn apply(&self, z: &LaurentElement) -> Result<LaurentElement> {
        let z = z.refine(self.d.lcm(&z.ramification()))?;
        if z.ramification() != self.d {
            return Err(Error::Domain(format!(
                "functional over ramification {} applied to ramification {}",
                self.d,
                z.ramification()
            )));
        }
        z.component(self.pivot).try_mul(&self.scale)
    }
}

/// `y - λ x` with `λ = c_j(y) / c_j(x)`, eliminating coordinate `j` of `y`.
fn eliminate(y: &LaurentElement, x: &LaurentElement, j: u32) -> Result<LaurentElement> {
    let cy = y.component(j);
    if cy.is_zero() {
        return Ok(y.clone());
    }
    let lambda = cy.try_div(&x.component(j))?;
    y.try_sub(&lambda.refine(y.ramification())?.try_mul(x)?)
}

/// Orthogonal basis of the `k`-span of `vs` (refined to a common
/// ramification). A vector that reduces to zero within its known precision
/// is treated as dependent when that precision lies strictly beyond its
/// original valuation, i.e. at least its leading term was cancelled with
/// certainty. An inexact input that is already zero to its precision
/// carries no such evidence, and independence cannot be decided: that is
/// a precision error naming the pivot being eliminated.
pub fn orthogonalize(vs: &[LaurentElement]) -> Result<OrthogonalBasis> {
    let d = vs.iter().fold(1u32, |acc, v| acc.lcm(&v.ramification()));
    let p = vs.first().map(|v| v.p());
    let mut basis: Vec<LaurentElement> = Vec::new();
    let mut pivots: Vec<u32> = Vec::new();
    let mut dependent = Vec::new();
    for (idx, v) in vs.iter().enumerate() {
        if Some(v.p()) != p {
            return Err(Error::Domain(
                "vectors over different characteristics".into(),
            ));
        }
        let mut z = v.refine(d)?;
        let original = z.valuation_units();
        let mut last_pivot = None;
        for (b, &j) in basis.iter().zip(&pivots) {
            z = eliminate(&z, b, j)?;
            last_pivot = Some(j);
        }
        let Some(j_new) = lead_index(&z) else {
            let decided = z.is_exact()
                || match (original, z.precision_units()) {
                    (None, _) => false,
                    (Some(v0), Some(n)) => n > v0,
                    (Some(_), None) => true,
                };
            if !decided {
                return Err(Error::Precision(format!(
                    "input {idx} vanishes to precision while eliminating pivot {}",
                    last_pivot.map_or("none".to_string(), |j| j.to_string())
                )));
            }
            dependent.push(idx);
            continue;
        };
        // Clear the new pivot column from the existing basis; the lead terms
        // are untouched since v(c_j(b)) + j/d > v(b) there.
        for b in basis.iter_mut() {
            *b = eliminate(b, &z, j_new)?;
        }
        basis.push(z);
        pivots.push(j_new);
    }
    Ok(OrthogonalBasis {
        vectors: basis,
        pivots,
        d,
        dependent_inputs: dependent,
    })
}

impl OrthogonalBasis {
    /// Checks the pivot structure of an externally supplied basis.
    pub fn certify(vectors: Vec<LaurentElement>) -> Result<Self> {
        let d = vectors
            .iter()
            .fold(1u32, |acc, v| acc.lcm(&v.ramification()));
        let vectors: Vec<LaurentElement> =
            vectors.iter().map(|v| v.refine(d)).collect::<Result<_>>()?;
        let mut pivots = Vec::new();
        for v in &vectors {
            let j = lead_index(v).ok_or_else(|| Error::Domain("zero vector in basis".into()))?;
            if pivots.contains(&j) {
                return Err(Error::Domain(format!("repeated lead index {j}")));
            }
            pivots.push(j);
        }
        for (i, v) in vectors.iter().enumerate() {
            for (k, &j) in pivots.iter().enumerate() {
                if i != k && !v.component(j).is_zero() {
                    return Err(Error::Domain(format!(
                        "basis vector {i} is not reduced in pivot column {j}"
                    )));
                }
            }
        }
        Ok(OrthogonalBasis {
            vectors,
            pivots,
            d,
            dependent_inputs: Vec::new(),
        })
    }

    pub fn vectors(&self) -> &[LaurentElement] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    pub fn ramification(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Orthogonality constant; always 1 over a discretely valued field.
    pub fn t_constant(&self) -> u32 {
        1
    }

    /// Every vector rescaled by a power of `t` into `v ∈ (-1, 0]`.
    pub fn scaled_into_window(&self) -> Result<Self> {
        let vectors = self
            .vectors
            .iter()
            .map(|v| uniform_scale(v).map(|(_, s)| s))
            .collect::<Result<_>>()?;
        Ok(OrthogonalBasis {
            vectors,
            ..self.clone()
        })
    }

    pub fn dual_functionals(&self) -> Result<Vec<DualFunctional>> {
        self.vectors
            .iter()
            .zip(&self.pivots)
            .map(|(y, &j)| {
                Ok(DualFunctional {
                    pivot: j,
                    d: self.d,
                    scale: y.component(j).inverse()?,
                    norm_valuation_bound: match y.valuation() {
                        Valuation::Finite(r) => Valuation::Finite(-r),
                        Valuation::Infinity => Valuation::Infinity,
                    },
                })
            })
            .collect()
    }

    /// `sum a_i y_i`.
    pub fn combine(&self, coeffs: &[LaurentElement]) -> Result<LaurentElement> {
        if coeffs.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: coeffs.len(),
            });
        }
        let p = self.vectors.first().map_or(2, |v| v.p());
        let mut acc = LaurentElement::zero(p, self.d);
        for (a, y) in coeffs.iter().zip(&self.vectors) {
            acc = acc.try_add(&a.refine(self.d.lcm(&a.ramification()))?.try_mul(y)?)?;
        }
        Ok(acc)
    }
}
