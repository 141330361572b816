//! Type spaces of finite structures as truncated simplicial objects, with a
//! lifting solver for sections of the decalage.

pub mod algebra;
pub mod calculus;
pub mod error;
pub mod simplicial;
pub mod sset;
pub mod structure;

pub use error::{Error, Result};
