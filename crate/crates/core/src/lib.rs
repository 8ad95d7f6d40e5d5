//! Permutation groups with normal subgroups whose quotients agree but whose
//! transitivity differs: construction, verification and prime-degree census.

pub mod census;
pub mod error;
pub mod group;
pub mod io;
pub mod numthy;
pub mod perm;
pub mod quotient;
pub mod refute;
pub mod witness;
pub mod wreath;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
