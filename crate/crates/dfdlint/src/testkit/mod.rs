//! Test support: a seeded generator of rule-conforming projects, a targeted
//! fault injector, and an independent brute-force balancing oracle.
//!
//! Everything here is deterministic given the seed, so failures replay from
//! the seed alone.

mod generate;
mod mutate;
mod oracle;

pub use generate::{generate, GenError, GenParams};
pub use mutate::{mutate, Mutation, MutationError, MutationKind};
pub use oracle::oracle_balance;
