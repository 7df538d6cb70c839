//! Isogeny decompositions of Jacobians of abelian covers of the projective
//! line, and Albanese varieties of abelian covers of the plane branched over
//! line arrangements.

pub mod arith;
pub mod arrangements;
pub mod blocks;
pub mod charkit;
pub mod cli;
pub mod error;
pub mod mordell;
pub mod oracle;
pub mod p1covers;
pub mod towers;

pub use error::{Error, Result};
