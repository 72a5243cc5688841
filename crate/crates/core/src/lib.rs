//! Finite permutation groups and the invariants of Oliver and gap groups:
//! Laitinen numbers, coset invariants, rank formulas, structural predicates,
//! character tables and explicit real modules.

pub mod catalog;
pub mod chartab;
pub mod error;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod lp;
pub mod perm;
pub mod predicates;
pub mod repmod;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use group::{FiniteGroup, Quotient, Subgroup};
pub use perm::Permutation;
