//! Truncated simplicial and symmetric-simplicial objects with finite levels.
//!
//! Levels follow the convention of non-empty finite linear orders
//! `{1 < .. < n}` with `n >= 1`. Internally every index is zero-based, so a
//! map `s: m -> n` is stored as `m` values in `0..n`.

mod functor;
mod index_map;
mod lifting;
mod transformation;

pub use functor::{LevelAction, TruncatedFunctor, TupleAction};
pub use index_map::{IndexClass, IndexMap};
pub use lifting::{solve_lifting, LiftingProblem, Outcome, Section, SolveMode};
pub use transformation::{
    apply_transposition, compose_sections, decalage, shift_nat, verify_naturality, Decalage,
    NaturalTransformation, Naturality,
};
