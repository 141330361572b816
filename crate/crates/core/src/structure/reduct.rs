use super::automorphism::Limits;
use super::finite::FiniteStructure;
use super::type_space::TypeSpace;
use crate::error::Result;
use crate::simplicial::NaturalTransformation;

/// A reduct together with the forgetful morphism of type spaces.
#[derive(Clone, Debug)]
pub struct Reduct {
    pub structure: FiniteStructure,
    pub space: TypeSpace,
    /// Sends the type of a tuple in the original structure to its type in
    /// the reduct.
    pub morphism: NaturalTransformation,
}

/// Forget every relation and constant not kept and shrink the parameters.
///
/// The reduct's group contains the original one, so the image of an orbit is
/// the reduct orbit of any of its members.
pub fn reduct<S: AsRef<str>>(
    space: &TypeSpace,
    keep_relations: &[S],
    keep_constants: &[S],
    parameters: &[S],
    limits: &Limits,
) -> Result<Reduct> {
    let structure = space
        .structure()
        .reduct(keep_relations, keep_constants, parameters)?;
    let reduced = TypeSpace::build(&structure, space.depth(), limits)?;
    let morphism = NaturalTransformation::from_fn(
        space.functor_view().clone(),
        reduced.functor_view().clone(),
        |n, x| {
            reduced
                .orbit_of(space.representative(n, x))
                .expect("the universe is shared")
        },
    )?;
    morphism.verify_naturality().into_result()?;
    Ok(Reduct {
        structure,
        space: reduced,
        morphism,
    })
}
