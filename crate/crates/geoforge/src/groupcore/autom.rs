use crate::error::{Error, Result};
use crate::groupcore::element::GroupElement;
use crate::groupcore::group::FiniteGroup;
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

/// Whether an automorphism was recognized as inner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InnerStatus {
    NotSearched,
    Inner(GroupElement),
    Outer,
}

/// A validated automorphism of a finite group, stored as a full element map.
#[derive(Debug, Clone)]
pub struct Automorphism {
    group: Arc<FiniteGroup>,
    map: Arc<HashMap<GroupElement, GroupElement>>,
    pub inner: InnerStatus,
}

impl Automorphism {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        self.map.get(g).cloned().ok_or(Error::MixedGroupOperands)
    }

    pub fn map(&self) -> &Arc<HashMap<GroupElement, GroupElement>> {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(k, v)| k == v)
    }
}

/// Extend values given on the generators of `group` to all elements by
/// breadth-first closure over words, verifying word-independence.
///
/// `compose(value(g), value(s))` must compute `value(g * s)`. Whenever a
/// product lands on an already-assigned element the two values are compared;
/// a mismatch is a `NotAHomomorphism` witness.
pub fn extend_by_words<T, F>(
    group: &Arc<FiniteGroup>,
    identity_value: T,
    generator_values: &[(GroupElement, T)],
    compose: F,
) -> Result<HashMap<GroupElement, T>>
where
    T: Clone + Eq,
    F: Fn(&T, &T) -> Result<T>,
{
    let order = group.order()?;
    let cap = group.caps().closure;
    if order > cap as u128 {
        return Err(Error::CapExceeded {
            cap,
            reached: cap.saturating_add(1),
        });
    }
    let identity = group.identity();
    let mut table: HashMap<GroupElement, T> = HashMap::new();
    table.insert(identity.clone(), identity_value);
    let mut queue = VecDeque::new();
    queue.push_back(identity);
    while let Some(g) = queue.pop_front() {
        let value_g = table[&g].clone();
        for (s, value_s) in generator_values {
            let gs = group.mul(&g, s)?;
            let value_gs = compose(&value_g, value_s)?;
            match table.get(&gs) {
                Some(existing) => {
                    if *existing != value_gs {
                        return Err(Error::NotAHomomorphism {
                            left: format!("{g}"),
                            right: format!("{s}"),
                        });
                    }
                }
                None => {
                    table.insert(gs.clone(), value_gs);
                    queue.push_back(gs);
                }
            }
        }
    }
    if table.len() as u128 != order {
        return Err(Error::invalid(
            "generator values given for a non-generating set",
        ));
    }
    Ok(table)
}

/// Validate a map `generator label -> image` as an automorphism of `G` by
/// breadth-first construction of the full multiplication graph; optionally
/// search for an inner witness (an element conjugating each generator to its
/// image).
pub fn automorphism_from_images(
    group: &Arc<FiniteGroup>,
    images: &[(String, GroupElement)],
    search_inner: bool,
) -> Result<Automorphism> {
    let mut generator_values = Vec::with_capacity(images.len());
    for (label, image) in images {
        let gen = group.generator(label)?.clone();
        if !group.contains(image)? {
            return Err(Error::invalid(format!(
                "image of {label} lies outside the group"
            )));
        }
        generator_values.push((gen, image.clone()));
    }
    if generator_values.len() != group.generators().len() {
        return Err(Error::invalid("images must cover every generator"));
    }
    let table = extend_by_words(group, group.identity(), &generator_values, |a, b| {
        group.mul(a, b)
    })?;
    // bijectivity: the image set must exhaust the group
    let mut seen = std::collections::HashSet::with_capacity(table.len());
    for v in table.values() {
        if !seen.insert(v) {
            return Err(Error::NotBijective);
        }
    }
    let inner = if search_inner {
        match inner_witness(group, &generator_values)? {
            Some(w) => InnerStatus::Inner(w),
            None => InnerStatus::Outer,
        }
    } else {
        InnerStatus::NotSearched
    };
    Ok(Automorphism {
        group: group.clone(),
        map: Arc::new(table),
        inner,
    })
}

/// First element `w` (in the global order) with `w^-1 s w = image(s)` for
/// every generator `s`, if one exists.
fn inner_witness(
    group: &Arc<FiniteGroup>,
    generator_values: &[(GroupElement, GroupElement)],
) -> Result<Option<GroupElement>> {
    for w in group.elements()?.iter() {
        let w_inv = group.inv(w)?;
        let mut all = true;
        for (s, image) in generator_values {
            let conj = group.mul(&group.mul(&w_inv, s)?, w)?;
            if conj != *image {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(w.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcore::group::tests::sym;
    use crate::groupcore::perm::Permutation;

    fn perm(text: &str, degree: usize) -> GroupElement {
        GroupElement::Perm(Permutation::parse(text, degree).unwrap())
    }

    fn tetra_group() -> Arc<FiniteGroup> {
        FiniteGroup::permutation(
            "Sym(4)",
            4,
            vec![
                ("r0".into(), Permutation::parse("(1,2)", 4).unwrap()),
                ("r1".into(), Permutation::parse("(2,3)", 4).unwrap()),
                ("r2".into(), Permutation::parse("(3,4)", 4).unwrap()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn identity_images() {
        let g = tetra_group();
        let images = vec![
            ("r0".to_string(), perm("(1,2)", 4)),
            ("r1".to_string(), perm("(2,3)", 4)),
            ("r2".to_string(), perm("(3,4)", 4)),
        ];
        let auto = automorphism_from_images(&g, &images, true).unwrap();
        assert!(auto.is_identity());
        assert_eq!(auto.inner, InnerStatus::Inner(g.identity()));
    }

    #[test]
    fn reversal_is_inner_with_tau_witness() {
        let g = tetra_group();
        let images = vec![
            ("r0".to_string(), perm("(3,4)", 4)),
            ("r1".to_string(), perm("(2,3)", 4)),
            ("r2".to_string(), perm("(1,2)", 4)),
        ];
        let auto = automorphism_from_images(&g, &images, true).unwrap();
        assert_eq!(auto.inner, InnerStatus::Inner(perm("(1,4)(2,3)", 4)));
        // composite element x = r0 r1 maps to r2 r1
        let x = g.mul(&perm("(1,2)", 4), &perm("(2,3)", 4)).unwrap();
        let r2r1 = g.mul(&perm("(3,4)", 4), &perm("(2,3)", 4)).unwrap();
        assert_eq!(auto.apply(&x).unwrap(), r2r1);
    }

    #[test]
    fn non_homomorphism_detected() {
        let g = tetra_group();
        let images = vec![
            ("r0".to_string(), perm("(2,3)", 4)),
            ("r1".to_string(), perm("(1,2)", 4)),
            ("r2".to_string(), perm("(3,4)", 4)),
        ];
        let err = automorphism_from_images(&g, &images, false).unwrap_err();
        assert!(matches!(err, Error::NotAHomomorphism { .. }));
    }

    #[test]
    fn extend_by_words_covers_group() {
        let g = sym(3);
        let values: Vec<(GroupElement, i8)> = g
            .generators()
            .iter()
            .map(|(_, e)| (e.clone(), -1i8))
            .collect();
        // sign homomorphism: compose multiplies signs
        let table = extend_by_words(&g, 1i8, &values, |a, b| Ok(a * b)).unwrap();
        assert_eq!(table.len(), 6);
        assert_eq!(table[&g.identity()], 1);
        let odd = table.values().filter(|&&v| v == -1).count();
        assert_eq!(odd, 3);
    }
}
