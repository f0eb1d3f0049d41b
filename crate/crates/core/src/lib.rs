//! A proof kernel and proof-transformation engine for a sequent calculus of
//! weak intuitionistic tense logic.
//!
//! - [`syntax`]: formulas, structures, positions, parsing and printing.
//! - [`kernel`]: rule schemas for three calculus variants and a search-free checker.
//! - [`transform`]: admissible rules and invertibility as derivation transformers.
//! - [`cutelim`]: the cut-elimination engine.
//! - [`search`]: bounded backward proof search and a corpus generator.

pub mod cutelim;
pub mod kernel;
pub mod search;
pub mod syntax;
pub mod transform;
