//! Finite simplicial sets, finite categories and profunctors, and the
//! correspondence machinery relating maps into a base to diagrams indexed by
//! the base.

pub mod cat;
pub mod correspondences;
pub mod error;
pub mod fibrations;
pub mod simplicial;

pub use error::{CoreError, Result};
