//! Synchronization and primitivity of finite semiautomata.
//!
//! The crate provides transformations, relations and partitions on a finite
//! state set, automata built from them, and analyses over automata:
//! synchronization with reset words, primitivity with congruence
//! witnesses, connectivity, transition monoids, the orbit and relation
//! machinery for automata whose letters are permutations, unitary or
//! semiconstant maps, and an exhaustive and random search over small
//! automata for primitive non-synchronizing examples.

pub mod analysis;
pub mod aut;
pub mod automaton;
pub mod conjecture;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod monoid;
pub mod partition;
pub mod relation;
pub mod rystsov;
pub mod transformation;

pub use automaton::Automaton;
pub use error::{Error, Result};
pub use partition::{Partition, UnionFind};
pub use relation::Relation;
pub use transformation::{FunctionalComponent, Transformation};
