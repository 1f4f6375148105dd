//! Exact equivariant localization for gauge origami partition functions.
//!
//! The crate computes the fixed-point sums defining the K-theoretic and
//! cohomological origami partition functions over tuples of partitions, and
//! checks their closed forms, sign rules and reductions with exact rational
//! arithmetic.

pub mod dyson;
pub mod error;
pub mod euler;
pub mod kchar;
pub mod nekrasov;
pub mod partitions;
pub mod qseries;
pub mod ratfun;
pub mod reduction;
pub mod signs;
pub mod suite;
pub mod zfun;

pub use error::{Error, Result};
pub use kchar::{Character, EvalPoint, Monomial, Plane, Slot, Torus};
pub use partitions::{
    all_partitions, enumerate_tuples, k_char, Partition, PartitionTuple, RankVector,
};
