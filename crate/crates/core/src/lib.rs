//! Reduced power monoids `P₀(G)` of finite abelian groups and their
//! automorphism groups.
//!
//! The crate builds `P₀(G)` (all subsets of `G` containing `0`, under
//! setwise addition), enumerates `Aut(P₀(G))` by an exhaustive pruned search
//! over maps fixing the 2-element sets, and checks the structural statements
//! relating `Aut(P₀(G))` to `Aut(G)` on every automorphism it finds.

pub mod abelian_group;
pub mod automorphisms;
mod error;
pub mod lemma_harness;
pub mod power_monoid;

pub use abelian_group::{AbelianTable, GroupAutMap, GroupSpec, QuotientGroup, Subgroup};
pub use automorphisms::{MonoidMap, PullbackResult};
pub use error::{Error, Result};
pub use power_monoid::{PowerMonoidContext, SubsetId};

/// Default cap on `|G|` for enumeration work.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 12;
/// Default node budget for the automorphism search.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Runtime bounds for the expensive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_group_order: usize,
    pub budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            budget: DEFAULT_BUDGET,
        }
    }
}
