//! Totient-iteration graphs.
//!
//! Every seed set A of naturals generates a tree on A and all of its
//! iterates under Euler's φ, with each v ≠ 1 joined to φ(v). This crate
//! builds those trees, inverts φ exactly, generates the named tree families
//! studied alongside them, and decides by exhaustive search whether a given
//! unlabeled tree arises this way.

pub mod error;
pub mod families;
pub mod graph;
pub mod inverse;
pub mod recognize;
pub mod totient;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use families::{generate, known_seed, FamilySpec, Isomer};
pub use graph::{build, closure, construct_seed_with_leaves, ExportFormat, PhiGraph, SeedSet};
pub use inverse::{inverse_totient, inverse_totient_brute, is_nontotient, PreimageSet};
pub use recognize::{
    certify, recognize, recognize_family, RecognitionResult, Verdict, DEFAULT_BUDGET,
};
pub use totient::{
    chain, divisor_totient_sum, factorize, is_perfect_totient, is_prime, iterate_totient,
    iteration_length, totient, totient_sum, Factorization, TotientChain,
};
pub use tree::UnlabeledTree;
