use crate::classes::LocalClass;
use crate::logic::QfDefinition;
use crate::structures::{Signature, Structure};
use crate::{Error, Result};

/// Graphs (or τ-structures) presented as Δ-reducts of the members of `base`
/// that avoid every structure in `forbidden`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExpression {
    definition: QfDefinition,
    base: LocalClass,
    forbidden: Vec<Structure>,
    window: usize,
}

impl LocalExpression {
    pub fn new(definition: QfDefinition, base: LocalClass, forbidden: Vec<Structure>) -> Result<Self> {
        definition.carrier().expect_eq(base.signature(), "expression base")?;
        for f in &forbidden {
            definition.carrier().expect_eq(f.signature(), "forbidden structure")?;
        }
        let window = forbidden
            .iter()
            .map(Structure::n)
            .chain([base.window(), definition.max_arity()])
            .max()
            .unwrap_or(0);
        Ok(LocalExpression { definition, base, forbidden, window })
    }

    /// τ, the signature of the expressed structures.
    pub fn target(&self) -> &Signature {
        self.definition.source()
    }

    /// σ, the signature of the expansions.
    pub fn carrier(&self) -> &Signature {
        self.definition.carrier()
    }

    pub fn definition(&self) -> &QfDefinition {
        &self.definition
    }

    pub fn base(&self) -> &LocalClass {
        &self.base
    }

    pub fn forbidden(&self) -> &[Structure] {
        &self.forbidden
    }

    /// Largest of the base window, forbidden sizes and target arities.
    pub fn window(&self) -> usize {
        self.window
    }

    pub(crate) fn check_target(&self, g: &Structure) -> Result<()> {
        self.target().expect_eq(g.signature(), "input structure")
    }

    pub(crate) fn check_certificate(&self, g: &Structure, x: &Structure) -> Result<()> {
        self.check_target(g)?;
        self.carrier().expect_eq(x.signature(), "certificate")?;
        if x.n() != g.n() {
            return Err(Error::input(format!(
                "certificate has {} vertices, input has {}",
                x.n(),
                g.n()
            )));
        }
        Ok(())
    }
}
