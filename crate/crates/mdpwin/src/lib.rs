//! Almost-sure winning sets in graphs and MDPs for reachability, safety,
//! Büchi, coBüchi, Streett, and Rabin objectives, in single, conjunctive
//! and disjunctive (objective or query) flavors.
//!
//! Random vertices move uniformly over their successors, so the model is
//! purely graph-theoretic: no probabilities are stored, and every solver
//! boils down to strongly connected components, random attractors, and
//! maximal end-component decompositions. Hard-instance generators reduce
//! triangle detection and orthogonal vectors to these questions, and a
//! brute-force oracle verifies everything at desk scale.

pub mod attractor;
pub mod buchi_cobuchi;
mod error;
pub mod graph;
pub mod mdp;
pub mod mec;
pub mod objective;
pub mod oracle;
pub mod rabin;
pub mod random;
pub mod reach;
pub mod reductions;
pub mod safety;
pub mod solve;
pub mod streett;
mod vertex_set;

#[cfg(test)]
pub(crate) mod testprop;

pub use error::{Error, Result};
pub use mdp::{parse_mdp, serialize_mdp, Mdp, Normalization, Owner, View};
pub use objective::{parse_objective, serialize_objective, Kind, Mode, ObjectiveSpec, Pair};
pub use solve::{solve, SolveOptions, StreettAlgo};
pub use vertex_set::VertexSet;
