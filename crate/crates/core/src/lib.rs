//! Consequence (closure) operators on sentence universes.
//!
//! Universes are either a finite list of symbols or the naturals, where sets
//! are finite or cofinite. Operators are built from a small set of
//! constructions and combinators, checked against the closure axioms with
//! concrete witnesses, compared in the pointwise order, and, on tiny finite
//! universes, enumerated exhaustively as closure systems.

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod concurrence;
pub mod demo;
pub mod error;
pub mod grammar;
pub mod operators;
mod quotient;
pub mod sets;
pub mod words;

pub use classify::{check_axioms, AxiomReport, Oracle, Verdict};
pub use error::{Error, Result};
pub use operators::{ClosureSystem, OperatorExpr, OperatorTable};
pub use sets::{Element, Mode, SentenceSet, SubsetBound, Universe};
