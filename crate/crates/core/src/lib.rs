//! Pfister-form arithmetic over finitely generated fields at desk scale:
//! exact base arithmetic, places and discrete valuations, local and global
//! isotropy decision procedures, nice-form and test-form construction, and
//! the valuation-ring recipes, all checkable against independent oracles.

pub mod arith;
pub mod local;
pub mod error;
pub mod parse;

pub use error::{Error, Result};
