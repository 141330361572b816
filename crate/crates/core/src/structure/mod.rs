//! Finite structures, their automorphism groups over a parameter set, and the
//! resulting spaces of types `Sₙ(B) = Mⁿ / Aut(M/B)`.

mod automorphism;
pub mod catalog;
mod finite;
mod reduct;
mod type_space;

pub use automorphism::{
    apply, automorphisms, compose, inverse, AutomorphismGroup, Limits, Permutation,
};
pub use finite::{FiniteStructure, Relation};
pub use reduct::{reduct, Reduct};
pub use type_space::{burnside, TypeSpace};
