//! Exact GF(2) computations in the homology of `QX = Omega^infinity Sigma^infinity X`
//! for spheres, `RP^infinity`, `Sigma CP^infinity_+` and their suspensions:
//! Dyer-Lashof normal forms, the dual Steenrod action, the Hopf structure
//! and the sieve for spherical classes.

pub mod basis;
pub mod binom;
pub mod cache;
pub mod element;
pub mod error;
pub mod hopf;
pub mod json;
pub mod linalg;
pub mod memo;
pub mod normalize;
pub mod parse;
pub mod sieve;
pub mod space;
pub mod steenrod;
pub mod verify;
pub mod word;

#[cfg(test)]
mod testutil;

pub use element::{Element, Monomial, TensorElement};
pub use error::{Error, Result};
pub use space::{Generator, Space, SpaceKind};
pub use word::{AdmissibleGen, DLWord, Ops};
