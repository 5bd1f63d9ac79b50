use crate::groupcore::perm::Permutation;
use serde::{Deserialize, Serialize};
use std::fmt;

/// An element of one of the three group shapes the crate works with.
///
/// All elements of one group share a variant shape; mixing shapes in an
/// operation is a `MixedGroupOperands` error at the group level. The derived
/// `Ord` gives the global total order used to pick canonical coset
/// representatives (minimum of the coset).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupElement {
    Perm(Permutation),
    Pair(Box<GroupElement>, Box<GroupElement>),
    Tuple(Vec<GroupElement>),
}

impl GroupElement {
    pub fn perm(p: Permutation) -> GroupElement {
        GroupElement::Perm(p)
    }

    pub fn pair(a: GroupElement, b: GroupElement) -> GroupElement {
        GroupElement::Pair(Box::new(a), Box::new(b))
    }

    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            GroupElement::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&GroupElement, &GroupElement)> {
        match self {
            GroupElement::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[GroupElement]> {
        match self {
            GroupElement::Tuple(xs) => Some(xs),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => write!(f, "{p}"),
            GroupElement::Pair(a, b) => write!(f, "[{a} | {b}]"),
            GroupElement::Tuple(xs) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
