//! Finite invariants of the subfactors `R^G ⊂ (R ⊗ L(ℂ^r))^H` built from a
//! finite group `G`, a subgroup `H` and a projective representation `ψ` of
//! `H`.
//!
//! Everything here is finite-dimensional: group tables, induced
//! representations, character tables, the intertwiner towers of the
//! generator `σ = ind(ψ̄ ⊗ ψ)` with their Bratteli data and principal graph,
//! and the imprimitivity decomposition that recovers `(H, ρ, ψ)` from `σ`
//! together with an `Ad σ`-invariant matrix algebra.

pub mod chartab;
pub mod classification;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod imprimitivity;
pub mod induction;
pub mod io;
pub mod linalg;
pub mod rep;
pub mod selftest;
pub mod tower;

pub use chartab::{CharacterTable, ClassFunction};
pub use error::{Error, Result};
pub use group::{CosetSystem, FiniteGroup, Subgroup};
pub use rep::{Cocycle, ProjectiveRep};
