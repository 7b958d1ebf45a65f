use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{Ideal, Monomial, Polynomial, Ring};

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationStep {
    pub alpha: Vec<u32>,
    /// Lex successor of `alpha` in `{0..b-1}^c`; `None` for the last index.
    pub successor: Option<Vec<u32>>,
    /// `(I_{α'} : x^α) = (x_1, ..., x_c)`.
    pub colon_ok: bool,
    /// `I_α = I_{α'} + (x^α)`.
    pub generation_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationReport {
    pub c: usize,
    pub b: u32,
    pub steps: Vec<FiltrationStep>,
    pub step_count: u64,
    /// `dim_k S/(x_1^b, ..., x_c^b)`, when that quotient is finite-dimensional.
    pub dimension: Option<u64>,
    pub all_pass: bool,
}

/// All of `{0..b-1}^c` in increasing lex order.
fn lex_box(c: usize, b: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut a = vec![0u32; c];
    loop {
        out.push(a.clone());
        let mut i = c;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < b {
                break;
            }
            a[i] = 0;
        }
    }
}

fn monomial(ring: &Arc<Ring>, head: &[u32]) -> Polynomial {
    let mut e = vec![0u32; ring.nvars()];
    e[..head.len()].copy_from_slice(head);
    Polynomial::monomial(ring, Monomial::new(e), 1)
}

/// Verifies the filtration `(x_1^b, ..., x_c^b) = I_∞ ⊂ ... ⊂ I_0 = (1)` with
/// `I_α = (x_i^b) + (x^a : a ≥_lex α)`: each step is cut out by a single
/// monomial whose colon is `(x_1, ..., x_c)`, so every successive quotient is
/// `S/(x_1..x_c)` and there are `b^c` steps.
pub fn filtration_verify(ring: &Arc<Ring>, c: usize, b: u32) -> Result<FiltrationReport> {
    if c == 0 || c > ring.nvars() {
        return Err(Error::Domain(format!(
            "c = {c} must lie in 1..={}",
            ring.nvars()
        )));
    }
    if b == 0 {
        return Err(Error::Domain("b must be positive".into()));
    }
    let size = (b as u64).checked_pow(c as u32).filter(|&s| s <= 1 << 16);
    let Some(size) = size else {
        return Err(Error::CapExceeded {
            cap: 1 << 16,
            partial: vec![format!("b^c = {b}^{c}")],
        });
    };
    let alphas = lex_box(c, b);
    debug_assert_eq!(alphas.len() as u64, size);
    let powers: Vec<Polynomial> = (0..c)
        .map(|i| Polynomial::var(ring, i).pow(b as u64))
        .collect();
    let maximal = Ideal::new(ring, (0..c).map(|i| Polynomial::var(ring, i)).collect())?;
    let tail_ideal = |k: usize| -> Result<Ideal> {
        let mut gens = powers.clone();
        gens.extend(alphas[k..].iter().map(|a| monomial(ring, a)));
        Ideal::new(ring, gens)
    };
    let steps = (0..alphas.len())
        .into_par_iter()
        .map(|k| -> Result<FiltrationStep> {
            let here = tail_ideal(k)?;
            let next = tail_ideal(k + 1)?;
            let xa = monomial(ring, &alphas[k]);
            let colon_ok = next.colon_poly(&xa)?.equals(&maximal)?;
            let generated = next.sum(&Ideal::new(ring, vec![xa])?)?;
            let generation_ok = generated.equals(&here)?;
            Ok(FiltrationStep {
                alpha: alphas[k].clone(),
                successor: alphas.get(k + 1).cloned(),
                colon_ok,
                generation_ok,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let top_is_unit = tail_ideal(0)?.is_unit();
    let dimension = Ideal::new(ring, powers)?.standard_monomial_count();
    let dimension_ok = dimension.is_none_or(|d| d == size);
    let all_pass =
        top_is_unit && dimension_ok && steps.iter().all(|s| s.colon_ok && s.generation_ok);
    Ok(FiltrationReport {
        c,
        b,
        step_count: steps.len() as u64,
        steps,
        dimension,
        all_pass,
    })
}
