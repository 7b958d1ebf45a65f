//! Sparse polynomial arithmetic over prime fields and the Gröbner-basis
//! engine behind ideal membership, colon, and intersection.

pub mod field;
pub(crate) mod groebner;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod polynomial;

pub use field::Fp;
pub use ideal::{Colon, Ideal};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use parse::{parse_generators, parse_polynomial, parse_ring};
pub use polynomial::{Polynomial, Ring};
