//! Coset incidence systems and the operations that combine them: direct
//! products, joins, generalized twisting, wreath products, halving-style
//! generator replacement, and self-dual twisting, together with algebraic
//! checkers (flag-transitivity, residual connectedness, firm/thin) and an
//! independent brute-force geometric oracle.

pub mod caps;
pub mod error;
pub mod fixtures;
pub mod cgroups;
pub mod cosetgeom;
pub mod groupcore;
pub mod materialize;
pub mod ops;
pub mod pipeline;
pub mod streetlight;
pub mod suite;

pub use caps::Caps;
pub use error::{Error, Result};
