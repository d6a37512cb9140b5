//! Finite nonmonotonic consequence operations, checked exhaustively.
//!
//! A consequence operation on a finite language is an explicit table mapping
//! every subset of atoms to a subset. Nothing is assumed about a table:
//! every axiom (Inclusion, Cumulativity and its equivalent axiomatizations,
//! Loop at bounded cycle lengths) is scanned and either confirmed or refuted
//! with a concrete, replayable witness.
//!
//! The model theory lives in [`world`] and [`choice`]: worlds with an
//! arbitrary satisfaction relation, the polarity maps between formula sets
//! and model sets, and choice functions over model sets. Soundness
//! (Contraction plus Local Cumulativity makes the induced operation
//! cumulative) and the exact representation of any cumulative table by a
//! restricted model are both exercised over seeded corpora, not proved.
//!
//! [`connectives`] closes the language under conjunction and negation to a
//! bounded depth and checks the introduction and elimination rules; the
//! derived disjunction fails its second rule and [`builtins`] ships the
//! counterexample. [`klm`] bridges to cumulative relations over a tiny
//! propositional language. [`quantum`] realizes consequence by projecting a
//! state onto intersections of subspaces of a real inner-product space.

pub mod axioms;
pub mod builtins;
pub mod choice;
pub mod connectives;
pub mod corpus;
pub mod error;
pub mod formula;
pub mod klm;
pub mod lang;
mod mask;
pub mod quantum;
pub mod report;
pub mod represent;
pub mod table;
pub mod theory;
pub mod world;

pub use error::{Error, SchemaError};
pub use lang::{AtomLanguage, AtomSet, MAX_ATOMS};
pub use report::{LabeledSet, PropertyReport, Witness};
pub use table::ConsequenceTable;
pub use world::{ModelMask, ModelWorld};
