//! Finite-group engine: permutation arithmetic, stabilizer chains, pair and
//! tuple groups, subgroups, cosets, and set products.
//!
//! Conventions, used everywhere downstream: permutations act on the right
//! (`p^g`), products compose left-to-right, geometry elements are left cosets
//! `g G_i`, and the canonical representative of a coset is its minimum in the
//! global element order.

mod autom;
mod chain;
mod element;
mod group;
mod perm;
mod subgroup;

pub use autom::{automorphism_from_images, extend_by_words, Automorphism, InnerStatus};
pub use chain::StabilizerChain;
pub use element::GroupElement;
pub use group::{closure, ElementSet, FiniteGroup, GroupAction, GroupKind};
pub use perm::{gcd, lcm, Permutation};
pub use subgroup::Subgroup;

use crate::error::Result;

/// Parse a permutation in cycle notation (see [`Permutation::parse`]).
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation> {
    Permutation::parse(text, degree)
}
