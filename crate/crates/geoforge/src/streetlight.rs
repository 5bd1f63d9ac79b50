//! The Schrodinger street geometry of the lamplighter group: exact
//! arithmetic on finitely supported elements of `C2 wr Z`, the rank-two
//! geometry whose type-0 elements are street states (cosets of the shift
//! subgroup) and whose type-1 elements are states with exactly one uncertain
//! lamp (cosets of the toggle subgroup), incidence tests, resolution, and
//! path search.
//!
//! Only the restricted wreath product (finite lamp supports) is computable
//! here. Over the unrestricted product the same twisting produces a
//! disconnected geometry, because that group is not finitely generated; see
//! `support_is_bounded_by_word_content` for the finitary shadow of that
//! fact.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

/// Positions of the lamps that are on; always finite, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct LampConfig(BTreeSet<i64>);

impl LampConfig {
    pub fn new(positions: impl IntoIterator<Item = i64>) -> LampConfig {
        LampConfig(positions.into_iter().collect())
    }

    pub fn empty() -> LampConfig {
        LampConfig(BTreeSet::new())
    }

    pub fn contains(&self, p: i64) -> bool {
        self.0.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    pub fn toggled(&self, p: i64) -> LampConfig {
        let mut out = self.0.clone();
        if !out.remove(&p) {
            out.insert(p);
        }
        LampConfig(out)
    }

    pub fn without(&self, p: i64) -> LampConfig {
        let mut out = self.0.clone();
        out.remove(&p);
        LampConfig(out)
    }

    /// Symmetric difference.
    pub fn delta(&self, other: &LampConfig) -> LampConfig {
        LampConfig(self.0.symmetric_difference(&other.0).copied().collect())
    }

    /// Every position shifted by `s`.
    pub fn shifted(&self, s: i64) -> LampConfig {
        LampConfig(self.0.iter().map(|p| p + s).collect())
    }
}

impl fmt::Display for LampConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// An element `(config, shift)` of the restricted lamplighter group
/// `C2 wr Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LamplighterElement {
    pub config: LampConfig,
    pub shift: i64,
}

impl LamplighterElement {
    pub fn identity() -> LamplighterElement {
        LamplighterElement {
            config: LampConfig::empty(),
            shift: 0,
        }
    }

    /// The lamp toggle at position zero.
    pub fn toggle() -> LamplighterElement {
        LamplighterElement {
            config: LampConfig::new([0]),
            shift: 0,
        }
    }

    /// The unit shift.
    pub fn shift_one() -> LamplighterElement {
        LamplighterElement {
            config: LampConfig::empty(),
            shift: 1,
        }
    }

    pub fn new(config: LampConfig, shift: i64) -> LamplighterElement {
        LamplighterElement { config, shift }
    }
}

/// `(c1, s1)(c2, s2) = (c1 delta (c2 + s1), s1 + s2)`.
pub fn ll_mul(x: &LamplighterElement, y: &LamplighterElement) -> LamplighterElement {
    LamplighterElement {
        config: x.config.delta(&y.config.shifted(x.shift)),
        shift: x.shift + y.shift,
    }
}

pub fn ll_inv(x: &LamplighterElement) -> LamplighterElement {
    LamplighterElement {
        config: x.config.shifted(-x.shift),
        shift: -x.shift,
    }
}

/// An element of the street geometry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StreetElement {
    /// A fully known street state (type 0): the coset `g <t>`.
    State(LampConfig),
    /// A state known everywhere except at `position` (type 1): the coset
    /// `g <a>`. `known` never contains `position`.
    Uncertain { known: LampConfig, position: i64 },
}

impl StreetElement {
    pub fn uncertain(known: LampConfig, position: i64) -> StreetElement {
        StreetElement::Uncertain {
            known: known.without(position),
            position,
        }
    }
}

impl fmt::Display for StreetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreetElement::State(c) => write!(f, "on={c}"),
            StreetElement::Uncertain { known, position } => {
                write!(f, "on={known} ?={position}")
            }
        }
    }
}

/// Which street type to canonicalize a group element into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreetType {
    State,
    Uncertain,
}

/// Canonicalize the coset of `g`: states are cosets of the shift subgroup
/// `<t>` and forget the shift; uncertain states are cosets of the toggle
/// subgroup `<a>` and forget the lamp at the current position.
pub fn canonical_street(g: &LamplighterElement, which: StreetType) -> StreetElement {
    match which {
        StreetType::State => StreetElement::State(g.config.clone()),
        StreetType::Uncertain => StreetElement::uncertain(g.config.clone(), g.shift),
    }
}

/// A state is incident to an uncertain state iff they agree away from the
/// uncertain position, i.e. the two cosets intersect.
pub fn incident(state: &LampConfig, uncertain: &StreetElement) -> bool {
    match uncertain {
        StreetElement::Uncertain { known, position } => {
            state.delta(known).iter().all(|p| p == *position)
        }
        StreetElement::State(_) => false,
    }
}

/// The two states resolving an uncertainty: lamp off, lamp on.
pub fn resolve(uncertain: &StreetElement) -> Option<(StreetElement, StreetElement)> {
    match uncertain {
        StreetElement::Uncertain { known, position } => Some((
            StreetElement::State(known.clone()),
            StreetElement::State(known.toggled(*position)),
        )),
        StreetElement::State(_) => None,
    }
}

/// All uncertain states incident to `state` with positions in the window.
pub fn uncertainties_in_window(
    state: &LampConfig,
    window: std::ops::RangeInclusive<i64>,
) -> Vec<StreetElement> {
    window
        .map(|p| StreetElement::uncertain(state.clone(), p))
        .collect()
}

/// Left multiplication on the underlying coset, re-canonicalized.
pub fn street_act(g: &LamplighterElement, e: &StreetElement) -> StreetElement {
    match e {
        StreetElement::State(c) => {
            let rep = LamplighterElement::new(c.clone(), 0);
            canonical_street(&ll_mul(g, &rep), StreetType::State)
        }
        StreetElement::Uncertain { known, position } => {
            let rep = LamplighterElement::new(known.clone(), *position);
            canonical_street(&ll_mul(g, &rep), StreetType::Uncertain)
        }
    }
}

/// Alternating state/uncertain path from `from` to `to`, toggling the
/// differing lamps one at a time (ascending position) through their
/// uncertain midpoints. The path lists every visited element, `from` first;
/// its edge count is twice the symmetric-difference size.
pub fn street_path(from: &LampConfig, to: &LampConfig) -> Vec<StreetElement> {
    let mut path = Vec::new();
    if from == to {
        return path;
    }
    path.push(StreetElement::State(from.clone()));
    let mut current = from.clone();
    for p in from.delta(to).iter() {
        path.push(StreetElement::uncertain(current.clone(), p));
        current = current.toggled(p);
        path.push(StreetElement::State(current.clone()));
    }
    path
}

/// Breadth-first shortest-path length between two states, exploring only
/// configurations inside the window; the oracle for `street_path`
/// minimality.
pub fn bfs_distance(
    from: &LampConfig,
    to: &LampConfig,
    window: std::ops::RangeInclusive<i64>,
) -> Option<usize> {
    let start = StreetElement::State(from.clone());
    let goal = StreetElement::State(to.clone());
    let mut distance: HashMap<StreetElement, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    distance.insert(start.clone(), 0);
    queue.push_back(start);
    while let Some(e) = queue.pop_front() {
        let d = distance[&e];
        if e == goal {
            return Some(d);
        }
        let neighbors: Vec<StreetElement> = match &e {
            StreetElement::State(c) => uncertainties_in_window(c, window.clone()),
            StreetElement::Uncertain { .. } => {
                let (off, on) = resolve(&e).expect("uncertain");
                vec![off, on]
            }
        };
        for n in neighbors {
            if let StreetElement::State(c) = &n {
                if c.iter().any(|p| !window.contains(&p)) {
                    continue;
                }
            }
            if !distance.contains_key(&n) {
                distance.insert(n.clone(), d + 1);
                queue.push_back(n);
            }
        }
    }
    None
}

/// Parse a state literal `on=3,5` (empty list allowed: `on=`).
pub fn parse_state(text: &str) -> crate::Result<LampConfig> {
    let body = text
        .trim()
        .strip_prefix("on=")
        .ok_or_else(|| crate::Error::invalid(format!("expected on=<positions>, got {text:?}")))?;
    let mut out = BTreeSet::new();
    for part in body.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let p: i64 = part
            .parse()
            .map_err(|e| crate::Error::invalid(format!("bad position {part:?}: {e}")))?;
        out.insert(p);
    }
    Ok(LampConfig(out))
}

/// Minimal deterministic generator for property sampling (splitmix64).
#[derive(Debug, Clone)]
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    pub fn config(&mut self, span: i64, max_lamps: usize) -> LampConfig {
        let count = self.below(max_lamps as u64 + 1) as usize;
        let mut out = BTreeSet::new();
        for _ in 0..count {
            out.insert(self.below(2 * span as u64 + 1) as i64 - span);
        }
        LampConfig(out)
    }

    pub fn element(&mut self, span: i64, max_lamps: usize) -> LamplighterElement {
        LamplighterElement {
            config: self.config(span, max_lamps),
            shift: self.below(2 * span as u64 + 1) as i64 - span,
        }
    }
}
