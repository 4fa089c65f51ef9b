//! Permutation-group engine for deciding p-nilpotency and control of
//! fusion, with a harness that checks the fusion-based p-nilpotency
//! criteria on a catalog of small groups.
//!
//! Conventions: permutations compose left to right (`a` then `b`),
//! conjugation is `a^g = g⁻¹ a g` and commutators are `[a, b] = a⁻¹ b⁻¹ a b`.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod fusion;
pub mod group;
pub mod harness;
pub mod lattice;
pub mod nilpotency;
pub mod perm;
pub mod subgroup;

pub use catalog::{standard_catalog, CatalogEntry, GroupSpec};
pub use error::{GroupError, Result};
pub use fusion::{controls_fusion, controls_p_fusion, enumerate_class, FusionClass, FusionReport};
pub use group::FiniteGroup;
pub use harness::{run_suite, ClaimId, SuiteOptions, SuiteReport, Verdict, VerificationResult};
pub use nilpotency::{frobenius_criterion, is_p_nilpotent, normal_complement_oracle, NilpotencyVerdict};
pub use perm::Permutation;
pub use subgroup::Subgroup;
