//! Exact Hilbert-function bound calculus for artinian algebras, certified
//! nonexistence proofs for Gorenstein h-vectors, and the classification
//! of Gorenstein h-vectors of socle degree 4 and 5.
//!
//! * [`macaulay`]: binomial expansions and the Macaulay, Green and
//!   Gotzmann bounds.
//! * [`sequences`]: h-vectors, O-sequences, trivial extensions and the
//!   level decomposition test.
//! * [`factbase`]: statuses with provenance and the closure rules.
//! * [`prover`]: diagram enumeration, case plans, certificates and
//!   classification.

pub mod error;
pub mod factbase;
pub mod macaulay;
pub mod prover;
pub mod sequences;

pub use error::{Error, Result};
pub use factbase::{FactRecord, FactSet, Provenance, Status};
pub use macaulay::BinomialExpansion;
pub use prover::{CasePlan, Certificate, ClassificationTable, Diagram, Refutation};
pub use sequences::{HVector, VarietyKind};
