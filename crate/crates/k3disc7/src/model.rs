//! Assembly of the full pipeline into one shared immutable model.

use std::sync::OnceLock;

use crate::faces::FaceSet;
use crate::fibrations::InversionSet;
use crate::golay::GolayCode;
use crate::ns_embed::NsLattice;
use crate::symmetry::SymmetryGroup;
use crate::Result;

/// Everything the CLI and the verification suite need, built once.
#[derive(Debug)]
pub struct Model {
    golay: GolayCode,
    ns: NsLattice,
    faces: FaceSet,
    symmetry: SymmetryGroup,
    fibrations: InversionSet,
}

static SHARED: OnceLock<Model> = OnceLock::new();

impl Model {
    pub fn build() -> Result<Model> {
        let golay = GolayCode::build();
        let ns = NsLattice::build(&golay)?;
        let faces = FaceSet::enumerate(&golay, &ns)?;
        let symmetry = SymmetryGroup::compute(&ns)?;
        let fibrations = InversionSet::build(&ns, &faces)?;
        Ok(Model {
            golay,
            ns,
            faces,
            symmetry,
            fibrations,
        })
    }

    /// Process-wide instance; construction is validated, so failure here is
    /// a genuine build bug.
    pub fn shared() -> &'static Model {
        SHARED.get_or_init(|| Model::build().expect("model construction is self-validating"))
    }

    pub fn golay(&self) -> &GolayCode {
        &self.golay
    }

    pub fn ns(&self) -> &NsLattice {
        &self.ns
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    pub fn symmetry(&self) -> &SymmetryGroup {
        &self.symmetry
    }

    pub fn fibrations(&self) -> &InversionSet {
        &self.fibrations
    }
}
