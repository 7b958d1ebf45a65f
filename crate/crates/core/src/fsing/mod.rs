//! Decision procedures for F-singularities of quotients `R = S/I` of
//! `S = F_p[x_1..x_n]`.
//!
//! Everything reduces to ideals of `S`: purity of `R -> F^e_* R`,
//! `1 ↦ F^e_* r`, at a prime `q ⊇ I` is the non-containment
//! `(I^{[q]} : I) r ⊄ q^{[q]}`, and by the root adjunction the non-pure
//! locus is cut out by `((I^{[q]} : I) r)^{[1/q]}`.

mod fedder;
mod filtration;
mod uniform;

use std::sync::Arc;

use crate::error::Result;
use crate::frobenius::{bracket_power, BracketExponent};
use crate::polyring::{Colon, Ideal, Ring};

pub use fedder::{
    apply_splitting, fedder_pure_at, fpure_locus, pure_locus, pure_locus_with_points,
    rational_point_of, split_element_test, CertificateTerm, FedderVerdict, LocusReport,
    PointVerdict, SplitTest, SplittingCertificate, POINT_SCAN_CAP,
};
pub use filtration::{filtration_verify, FiltrationReport, FiltrationStep};
pub use uniform::{uniform_exponent, UniformExponent, DEFAULT_EXPONENT_CAP};

/// `R = S/I`, with elements passed around as lifts to `S`.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    ideal: Ideal,
}

impl QuotientPresentation {
    pub fn new(ideal: Ideal) -> Self {
        QuotientPresentation { ideal }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `(I^{[q]} : I)`.
    pub fn fedder_colon(&self, e: BracketExponent) -> Result<Colon> {
        bracket_power(&self.ideal, e)?.colon(&self.ideal)
    }
}
