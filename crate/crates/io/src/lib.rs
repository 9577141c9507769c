//! Interchange formats, seeded instance generators, a content-addressed
//! workspace and the runner for the property suites.

pub mod error;
pub mod gen;
pub mod json;
pub mod runner;
pub mod workspace;

pub use error::{IoError, Result};
pub use gen::GenConfig;
pub use json::Document;
