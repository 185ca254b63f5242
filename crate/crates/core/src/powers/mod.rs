//! Symbolic, differential and mixed powers of primes, and the comparisons
//! between them over generated corpora.

mod corpus;
mod equivalence;
mod membership;
pub mod suites;

pub use corpus::{generator_products, random_sparse, Corpus, CorpusSpec, DEFAULT_DEGREE_BOUND, DEFAULT_RANDOM};
pub use equivalence::{
    delta_independence, diff_symbolic_equivalence, meets_integers, mixed_symbolic_equivalence, Disagreement,
    EquivalenceReport, IndependenceReport, LiftDisagreement,
};
pub use membership::{
    mixed_power_membership, mixed_power_witness, symbolic_membership, symbolic_membership_quotient, Composition,
    MixedWitness, PowerQuery, SymbolicPower,
};
