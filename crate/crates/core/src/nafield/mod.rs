//! Truncated arithmetic in `F_p((t^{1/d}))` and orthogonal bases of
//! finite-dimensional subspaces over `k = F_p((t))`.
//!
//! Norms are never materialized: `|x| = ρ^{v(x)}` for a symbolic `ρ ∈ (0,1)`,
//! so every norm comparison is a comparison of exact rational valuations.

mod laurent;
mod ortho;
pub(crate) mod text;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

pub use laurent::{LaurentElement, LaurentJson};
pub use ortho::{orthogonalize, uniform_scale, DualFunctional, OrthogonalBasis};
pub use text::parse_laurent;

/// Precision (in whole powers of `t`) used when none is given.
pub const DEFAULT_PRECISION: i64 = 64;

/// [`DEFAULT_PRECISION`], overridable through `FROBCALC_PRECISION`.
pub fn default_precision() -> i64 {
    std::env::var("FROBCALC_PRECISION")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_PRECISION)
}

/// `v(x)`, a rational number, or `+∞` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(Ratio<i64>),
    Infinity,
}

impl Valuation {
    pub fn int(n: i64) -> Self {
        Valuation::Finite(Ratio::from_integer(n))
    }

    pub fn from_units(units: i64, d: u32) -> Self {
        Valuation::Finite(Ratio::new(units, d as i64))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn finite(self) -> Option<Ratio<i64>> {
        match self {
            Valuation::Finite(r) => Some(r),
            Valuation::Infinity => None,
        }
    }

    /// Compares `|x|` with `|y|`: the larger norm has the smaller valuation.
    pub fn cmp_norm(self, other: Valuation) -> Ordering {
        other.cmp(&self)
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(r) => write!(f, "{r}"),
            Valuation::Infinity => f.write_str("+inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `v(a)`; zero (to precision) reports `+∞`.
pub fn norm_valuation(a: &LaurentElement) -> Valuation {
    a.valuation()
}
