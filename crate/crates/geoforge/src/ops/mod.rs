//! Constructions on coset systems: direct products, semidirect products,
//! admissibility and the orbit intersection property, generalized twisting,
//! wreath products, and self-dual twisting.

mod action;
mod product;
mod selfdual;
mod twist;
mod wreath;

pub use action::{
    check_admissible, orbit_table, ActionSpec, ActionSpecKind, Admissibility, OrbitChoices,
    OrbitTable, TypeAction, ValidatedAction,
};
pub use product::{direct_product, semidirect, tuple_power_system};
pub use selfdual::{
    duality_automorphism, enumerate_self_dual_choices, self_dual_twist, SelfDualTwist,
};
pub use twist::{trivial_twist_matches_direct_product, twist, Twist};
pub use wreath::{realize_c2_wreath, wreath, OmegaAction};
