//! Axiom reports shared by the checkers.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One violated axiom with the first witness found and how many tuples
/// violate it in total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub detail: String,
    pub count: usize,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {}", self.axiom, self.witness, self.detail)?;
        if self.count > 1 {
            write!(f, " ({} violations)", self.count)?;
        }
        Ok(())
    }
}

/// Result of checking a ladder of axiom levels.
///
/// `level_passed` is the highest level whose axioms, and those of every lower
/// level, all hold. `failures` lists the violated axioms of the first failing
/// level (empty iff the top level passed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report<L> {
    pub level_passed: L,
    pub failures: Vec<Failure>,
}

impl<L> Report<L> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failure(&self, axiom: &str) -> Option<&Failure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }
}

/// Accumulates violations for one axiom; keeps the first witness.
#[derive(Default)]
pub(crate) struct Collector {
    failures: Vec<Failure>,
}

impl Collector {
    pub fn new() -> Self {
        Collector::default()
    }

    pub fn record(&mut self, axiom: &str, witness: &[usize], detail: impl FnOnce() -> String) {
        if let Some(f) = self.failures.iter_mut().find(|f| f.axiom == axiom) {
            f.count += 1;
            return;
        }
        self.failures.push(Failure {
            axiom: axiom.to_string(),
            witness: witness.to_vec(),
            detail: detail(),
            count: 1,
        });
    }

    pub fn check(&mut self, ok: bool, axiom: &str, witness: &[usize], detail: impl FnOnce() -> String) {
        if !ok {
            self.record(axiom, witness, detail);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_failures(self) -> Vec<Failure> {
        self.failures
    }
}
