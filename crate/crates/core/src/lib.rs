//! Reasoning over ground normal hybrid MKNF knowledge bases: unfounded
//! sets, the well-founded operators `W` and `E`, the alternating fixpoint,
//! DPLL model enumeration with either operator as propagator, and
//! knowledge-base simplification by the well-founded partition.
//!
//! The ontology is a set of ground propositional formulas; rules are ground
//! and have at most one head atom.

pub mod atoms;
pub mod bench;
pub mod error;
pub mod fixtures;
pub mod formula;
pub mod gen;
pub mod kb;
pub mod operators;
pub mod oracle;
pub mod parse;
mod reasoner;
pub mod simplify;
pub mod solver;
pub mod unfounded;

pub use atoms::{Atom, AtomSet, Symbols};
pub use error::{Error, Result};
pub use formula::{Formula, Literal};
pub use kb::{katoms, objective_knowledge, KnowledgeBase, Partition, Rule, Theory};
pub use parse::parse_kb;
pub use reasoner::Reasoner;
