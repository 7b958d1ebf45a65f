//! Frobenius ideal calculus over `F_p[x_1..x_n]` and truncated Tate-algebra
//! arithmetic over `F_p((t^{1/d}))`.

pub mod error;
pub mod frobenius;
pub mod fsing;
pub mod nafield;
pub mod polyring;
pub mod tate;

pub use error::{Error, ErrorClass, Result};
