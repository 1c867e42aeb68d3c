//! The enveloping action at finite scale: germs of the universal groupoid
//! with their cocycle, the partial action β of the grading group on the
//! character space, its globalization Ω truncated to a ball, and the
//! translated-basis checks feeding the K-theory pipeline.

pub mod germ;
pub mod omega;

pub use germ::{FaithfulVerdict, Germ, GermClasses};
pub use omega::{BallSpec, BasisTranslateReport, OmegaClass, OmegaQuotient, TaggedFamily};

use crate::grading::{maximal_section, Grading, GroupElem, MaximalSection, SectionError};
use crate::semigroup::{Adjoined, InverseSemigroupTable};
use crate::spectrum::{CharId, Spectrum, SpectrumError};

#[derive(Debug, Clone, thiserror::Error)]
pub enum EnvelopeError {
    #[error(transparent)]
    Section(#[from] SectionError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("no element carries the grade {0}")]
    NoSuchGrade(String),
    #[error("germs are not composable: left source differs from right range")]
    NotComposable,
    #[error("translate leaves the radius-{radius} ball")]
    BallTooSmall { radius: usize },
}

/// Everything the envelope constructions need, built once per instance: the
/// table, its character space, the identity-adjoined table with the lifted
/// grading, and (when the hypotheses hold) the maximal section g ↦ s_g.
///
/// Germ operations work on any graded table; the partial action β and the
/// Ω quotient additionally need the section and surface its absence as an
/// error.
#[derive(Debug, Clone)]
pub struct EnvelopeContext {
    table: InverseSemigroupTable,
    spectrum: Spectrum,
    grading: Grading,
    adjoined: Adjoined,
    lifted: Grading,
    section: Result<MaximalSection, SectionError>,
}

impl EnvelopeContext {
    pub fn new(table: InverseSemigroupTable, grading: Grading) -> EnvelopeContext {
        let spectrum = Spectrum::new(&table, &[]);
        let adjoined = table.adjoin_identity();
        let lifted = grading.extend_to_adjoined(&adjoined);
        let section = maximal_section(&adjoined.table, &lifted, &[]);
        EnvelopeContext { table, spectrum, grading, adjoined, lifted, section }
    }

    pub fn table(&self) -> &InverseSemigroupTable {
        &self.table
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn section(&self) -> Result<&MaximalSection, EnvelopeError> {
        match &self.section {
            Ok(section) => Ok(section),
            Err(e) => Err(EnvelopeError::Section(e.clone())),
        }
    }

    pub(crate) fn adjoined(&self) -> &Adjoined {
        &self.adjoined
    }

    pub(crate) fn lifted(&self) -> &Grading {
        &self.lifted
    }

    /// The grades carrying a partial homeomorphism: σ of the maximal
    /// elements of the identity-adjoined table (= σ(S^×) ∪ {1}).
    pub fn beta_grades(&self) -> Result<Vec<GroupElem>, EnvelopeError> {
        Ok(self.section()?.grades().map(|(g, _)| g.clone()).collect())
    }

    /// β_g = θ_{s_g} evaluated at one character.
    pub fn beta(&self, g: &GroupElem, phi: CharId) -> Result<CharId, EnvelopeError> {
        match self.beta_partial(g, phi) {
            Ok(Some(psi)) => Ok(psi),
            Ok(None) => match self.section()?.section_of(g) {
                Some(s_g) => Err(EnvelopeError::Spectrum(SpectrumError::OutOfDomain {
                    s: s_g,
                    phi,
                })),
                None => Err(EnvelopeError::NoSuchGrade(
                    self.grading.group().format_elem(g),
                )),
            },
            Err(e) => Err(e),
        }
    }

    /// β_g at one character, with `None` for "outside the domain" (either
    /// φ ∉ D_{s_g*s_g}, or no element carries the grade at all).  Only a
    /// genuine scale escape is an error.
    pub fn beta_partial(
        &self,
        g: &GroupElem,
        phi: CharId,
    ) -> Result<Option<CharId>, EnvelopeError> {
        let Some(s_g) = self.section()?.section_of(g) else {
            return Ok(None);
        };
        if s_g == self.adjoined.one && !self.adjoined.was_monoid {
            // the freshly adjoined identity acts as the identity map
            return Ok(Some(phi));
        }
        match self.spectrum.theta(s_g, phi) {
            Ok(psi) => Ok(Some(psi)),
            Err(SpectrumError::OutOfDomain { .. }) => Ok(None),
            Err(e) => Err(EnvelopeError::Spectrum(e)),
        }
    }
}


#[cfg(test)]
mod tests {
    use super::test_support::one_edge_context;
    use super::*;

    #[test]
    fn beta_matches_the_edge_action() {
        let ctx = one_edge_context();
        let group = ctx.grading().group().clone();
        let e = group.parse_word("e").unwrap();
        let einv = group.parse_word("e^-1").unwrap();

        let phi_vv = ctx.spectrum().character_of(1).unwrap();
        let phi_ww = ctx.spectrum().character_of(2).unwrap();
        let phi_ee = ctx.spectrum().character_of(3).unwrap();

        // β_e moves the source vertex character to the edge character
        assert_eq!(ctx.beta(&e, phi_vv).unwrap(), phi_ee);
        // and β_{e⁻¹} inverts it
        assert_eq!(ctx.beta(&einv, phi_ee).unwrap(), phi_vv);
        // β_1 is the identity everywhere
        for phi in [phi_vv, phi_ww, phi_ee] {
            assert_eq!(ctx.beta(&group.identity(), phi).unwrap(), phi);
        }
        // the range vertex is outside dom(β_e)
        assert!(matches!(
            ctx.beta(&e, phi_ww),
            Err(EnvelopeError::Spectrum(SpectrumError::OutOfDomain { .. }))
        ));
        // grades never attained by the semigroup have empty domain
        let e2 = group.mul(&e, &e);
        assert!(matches!(ctx.beta(&e2, phi_vv), Err(EnvelopeError::NoSuchGrade(_))));
        assert_eq!(ctx.beta_partial(&e2, phi_vv).unwrap(), None);
    }

    #[test]
    fn beta_inverse_composes_to_identity_on_domains() {
        let ctx = one_edge_context();
        let group = ctx.grading().group().clone();
        for g in ctx.beta_grades().unwrap() {
            let ginv = group.inv(&g);
            for phi in 0..ctx.spectrum().len() {
                if let Some(psi) = ctx.beta_partial(&g, phi).unwrap() {
                    assert_eq!(ctx.beta_partial(&ginv, psi).unwrap(), Some(phi));
                }
            }
        }
    }
}
