use std::collections::BTreeSet;

use super::family::{require_depth, SectionFamily};
use crate::error::Result;
use crate::simplicial::{
    decalage, solve_lifting, IndexClass, LiftingProblem, NaturalTransformation, Outcome, SolveMode,
    TruncatedFunctor,
};
use crate::structure::{Reduct, TypeSpace};

#[derive(Clone, Debug)]
pub struct StableReport {
    pub depth: usize,
    /// The lifting against `pr_head × pr_tail` exists.
    pub stable: bool,
    /// 1-types that occur as the head of some depth-`d` family.
    pub heads_covered: BTreeSet<usize>,
    pub head_count: usize,
    /// The direct lifting and head surjectivity gave the same answer.
    pub formulations_agree: bool,
    /// One family per head, read off the direct lifting.
    pub witness_families: Vec<SectionFamily>,
    /// When no lifting exists, the deepest level the search reached.
    pub deepest_level: Option<usize>,
}

/// `pr_head × pr_tail: Dec(F) -> const(F₁) × F|d` for `F` of depth `d + 1`.
fn head_tail(functor: &TruncatedFunctor) -> Result<NaturalTransformation> {
    let dec = decalage(functor)?;
    dec.head.pair(&dec.tail)
}

/// The constant transformation `X -> const(size)` at `value`.
fn constant_at(
    source: &TruncatedFunctor,
    size: usize,
    value: usize,
) -> Result<NaturalTransformation> {
    let target = TruncatedFunctor::constant(size, source.depth(), source.index_class());
    NaturalTransformation::from_fn(source.clone(), target, |_, _| value)
}

/// Every 1-type is the head of a coherent family of depth `d`.
///
/// Solved twice: once as a single lifting of `pr_head × pr_tail` against the
/// identity of `const(S₁) × S|d`, and once head by head.
pub fn stable_check(space: &TypeSpace, depth: usize) -> Result<StableReport> {
    require_depth(space, depth + 1)?;
    let functor = space.functor(depth + 1)?;
    let over = head_tail(&functor)?;
    let base = over.target().clone();
    let problem = LiftingProblem::new(over.clone(), NaturalTransformation::identity(&base))?;
    let ones = space.orbit_count(1);

    let (stable, witness_families, deepest_level) =
        match solve_lifting(&problem, SolveMode::FindOne)? {
            Outcome::Found(section) => {
                let w = section.transformation();
                let families = (0..ones)
                    .map(|h| {
                        let components = (1..=depth)
                            .map(|n| {
                                let width = space.orbit_count(n);
                                (0..width).map(|r| w.apply(n, h * width + r)).collect()
                            })
                            .collect();
                        SectionFamily::new(space, components)
                    })
                    .collect::<Result<Vec<_>>>()?;
                (true, families, None)
            }
            Outcome::NoSection { deepest_level } => (false, Vec::new(), Some(deepest_level)),
            _ => unreachable!("find-one mode"),
        };

    let truncated = functor.truncate(depth)?;
    let identity = NaturalTransformation::identity(&truncated);
    let mut heads_covered = BTreeSet::new();
    for h in 0..ones {
        let along = constant_at(&truncated, ones, h)?.pair(&identity)?;
        let per_head = LiftingProblem::new(over.clone(), along)?;
        if solve_lifting(&per_head, SolveMode::FindOne)?.exists() {
            heads_covered.insert(h);
        }
    }
    let surjective = heads_covered.len() == ones;
    Ok(StableReport {
        depth,
        stable,
        heads_covered,
        head_count: ones,
        formulations_agree: stable == surjective,
        witness_families,
        deepest_level,
    })
}

#[derive(Clone, Debug)]
pub struct RelativeStableReport {
    pub depth: usize,
    pub exists: bool,
    /// A lifting `const(S₁) × S|d -> Dec(S⁰|d+1)` when one exists.
    pub witness: Option<NaturalTransformation>,
    pub deepest_level: Option<usize>,
}

/// Lift `const(ρ₁) × ρ` through `pr_head × pr_tail` of the reduct's type space:
/// every type of the reduct is definable using the full language.
pub fn relative_stable_check(
    space: &TypeSpace,
    reduct: &Reduct,
    depth: usize,
) -> Result<RelativeStableReport> {
    require_depth(space, depth + 1)?;
    require_depth(&reduct.space, depth + 1)?;
    let over = head_tail(&reduct.space.functor(depth + 1)?)?;
    let rho = reduct.morphism.truncate(depth)?;
    let ones = space.orbit_count(1);
    let reduct_ones = reduct.space.orbit_count(1);
    let rho_one = NaturalTransformation::new(
        TruncatedFunctor::constant(ones, depth, IndexClass::All),
        TruncatedFunctor::constant(reduct_ones, depth, IndexClass::All),
        vec![rho.component(1).to_vec(); depth],
    )?;
    let along = rho_one.product(&rho)?;
    let problem = LiftingProblem::new(over, along)?;
    Ok(match solve_lifting(&problem, SolveMode::FindOne)? {
        Outcome::Found(section) => RelativeStableReport {
            depth,
            exists: true,
            witness: Some(section.into_transformation()),
            deepest_level: None,
        },
        Outcome::NoSection { deepest_level } => RelativeStableReport {
            depth,
            exists: false,
            witness: None,
            deepest_level: Some(deepest_level),
        },
        _ => unreachable!("find-one mode"),
    })
}
