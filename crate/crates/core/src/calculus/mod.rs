//! Types as coherent section families of the type space, and the lifting
//! problems that characterize invariance, definability and stability.
//!
//! Type spaces of finite structures are discrete, so invariant and definable
//! types coincide and every report uses the single word "invariant".

mod borel;
mod family;
mod parameters;
mod stability;

pub use borel::{borel, select_borel_convention, BorelConvention, BorelReport, BOREL_CONVENTION};
pub use family::{
    bijection_check, check_invariance, definition_scheme, enumerate_coherent_families,
    enumerate_coherent_families_in, family_problem, invariant_witnesses, section_from_witness,
    BijectionReport, DefinitionScheme, GlobalTypeWitness, SectionFamily,
};
pub use parameters::{diagram_of, extend_type, type_as_lifting, ParameterDiagram, TypeLifting};
pub use stability::{relative_stable_check, stable_check, RelativeStableReport, StableReport};
