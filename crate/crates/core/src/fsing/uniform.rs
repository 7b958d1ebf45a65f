use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{frobenius_root, BracketExponent};
use crate::polyring::{Ideal, Polynomial};

pub const DEFAULT_EXPONENT_CAP: u32 = 20;

#[derive(Debug, Clone, Serialize)]
pub struct UniformExponent {
    pub e: u32,
    /// `(f)^{[1/p^k]}` for `k = 1..=e`, rendered as generator lists.
    pub roots: Vec<String>,
}

/// Smallest `e` with `(f)^{[1/p^e]} = (1)`; this exists for every nonzero
/// non-unit `f` since the roots of `(f)` only ever shrink in degree.
pub fn uniform_exponent(f: &Polynomial, cap: u32) -> Result<UniformExponent> {
    if f.is_zero() {
        return Err(Error::Domain("f = 0 has no uniform exponent".into()));
    }
    if f.is_nonzero_constant() {
        return Err(Error::Domain("f is a unit".into()));
    }
    let principal = Ideal::new(f.ring(), vec![f.clone()])?;
    let mut roots = Vec::new();
    for e in 1..=cap {
        let root = frobenius_root(&principal, BracketExponent::new(e)?)?;
        roots.push(root.to_text());
        if root.is_unit() {
            return Ok(UniformExponent { e, roots });
        }
    }
    Err(Error::CapExceeded {
        cap,
        partial: roots,
    })
}
