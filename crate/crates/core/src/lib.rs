//! Computer algebra for quadratically presentable fields.
//!
//! The crate builds finite hyperfields and presentable structures, checks
//! every axiom layer with explicit counterexample witnesses, decides
//! isometry and Witt equivalence of forms, computes Witt rings, and compares
//! them with an independent classical computation over small finite fields.

pub mod bitset;
pub mod builtins;
pub mod error;
pub mod finite_field;
pub mod format;
pub mod hyperfield;
pub mod oracle;
pub mod poset;
pub mod presentable;
pub mod quadratic;
pub mod report;
pub mod witt;

pub use error::{Error, Result};
