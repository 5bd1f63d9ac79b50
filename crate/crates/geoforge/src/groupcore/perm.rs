use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A permutation of `{1..degree}`, acting on the right: `p^g = images[p-1]`.
///
/// Right action matches the convention `a rho_i = b` used for permutation
/// representation graphs, and products compose left-to-right:
/// `p^(gh) = (p^g)^h`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (1..=degree as u32).collect(),
        }
    }

    /// Build from an image table (`images[p-1] = p^g`), checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Permutation> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &q in &images {
            if q == 0 || q as usize > degree {
                return Err(Error::PointOutOfRange {
                    point: q as u64,
                    degree,
                });
            }
            if seen[q as usize - 1] {
                return Err(Error::invalid(format!("image {q} repeated: not a bijection")));
            }
            seen[q as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Product of the given cycles, applied left-to-right.
    ///
    /// Cycles need not be disjoint; points within one cycle must be distinct.
    pub fn from_cycles(cycles: &[Vec<u32>], degree: usize) -> Result<Permutation> {
        let mut result = Permutation::identity(degree);
        for cycle in cycles {
            let mut seen = std::collections::HashSet::new();
            for &p in cycle {
                if p == 0 || p as usize > degree {
                    return Err(Error::PointOutOfRange {
                        point: p as u64,
                        degree,
                    });
                }
                if !seen.insert(p) {
                    return Err(Error::RepeatedPointWithinCycle(p));
                }
            }
            let mut one = Permutation::identity(degree);
            for i in 0..cycle.len() {
                let next = cycle[(i + 1) % cycle.len()];
                one.images[cycle[i] as usize - 1] = next;
            }
            result = result.compose(&one);
        }
        Ok(result)
    }

    /// Parse cycle notation: `perm := "e" | cycle+`,
    /// `cycle := "(" int ("," int)+ ")"`. Whitespace between tokens is ignored.
    pub fn parse(text: &str, degree: usize) -> Result<Permutation> {
        let trimmed = text.trim();
        if trimmed == "e" {
            return Ok(Permutation::identity(degree));
        }
        let bytes = trimmed.as_bytes();
        let mut at = 0usize;
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let malformed = |at: usize, reason: &str| Error::MalformedCycle {
            at,
            reason: reason.to_string(),
        };
        while at < bytes.len() {
            while at < bytes.len() && bytes[at].is_ascii_whitespace() {
                at += 1;
            }
            if at >= bytes.len() {
                break;
            }
            if bytes[at] != b'(' {
                return Err(malformed(at, "expected '('"));
            }
            at += 1;
            let mut cycle = Vec::new();
            loop {
                while at < bytes.len() && bytes[at].is_ascii_whitespace() {
                    at += 1;
                }
                let start = at;
                while at < bytes.len() && bytes[at].is_ascii_digit() {
                    at += 1;
                }
                if at == start {
                    return Err(malformed(at, "expected a point"));
                }
                let point: u64 = trimmed[start..at]
                    .parse()
                    .map_err(|_| malformed(start, "point does not fit"))?;
                if point == 0 || point > degree as u64 {
                    return Err(Error::PointOutOfRange { point, degree });
                }
                cycle.push(point as u32);
                while at < bytes.len() && bytes[at].is_ascii_whitespace() {
                    at += 1;
                }
                match bytes.get(at) {
                    Some(b',') => at += 1,
                    Some(b')') => {
                        at += 1;
                        break;
                    }
                    _ => return Err(malformed(at, "expected ',' or ')'")),
                }
            }
            if cycle.len() < 2 {
                return Err(malformed(at, "cycle needs at least two points"));
            }
            cycles.push(cycle);
        }
        if cycles.is_empty() {
            return Err(malformed(0, "expected \"e\" or at least one cycle"));
        }
        Permutation::from_cycles(&cycles, degree)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point under the right action.
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &q)| q == i as u32 + 1)
    }

    /// `self * other`, acting left-to-right: `p^(self*other) = (p^self)^other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&q| other.images[q as usize - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &q) in self.images.iter().enumerate() {
            images[q as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// `g^h = h^-1 g h` (relabels the points of `g` by `h`).
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        h.inverse().compose(self).compose(h)
    }

    /// Least `k >= 1` with `g^k = e`, via cycle lengths.
    pub fn order(&self) -> u128 {
        let mut order: u128 = 1;
        for cycle in self.cycles_including_moved_only() {
            order = lcm(order, cycle.len() as u128);
        }
        order
    }

    /// Nontrivial cycles in canonical form: each starts at its minimum point,
    /// cycles sorted by first point.
    pub fn cycles_including_moved_only(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 1..=n as u32 {
            if seen[start as usize - 1] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize - 1] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p as usize - 1] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// All 2-cycles of an involution (empty unless every cycle is a 2-cycle).
    pub fn transpositions(&self) -> Option<Vec<(u32, u32)>> {
        let cycles = self.cycles_including_moved_only();
        let mut out = Vec::with_capacity(cycles.len());
        for c in cycles {
            if c.len() != 2 {
                return None;
            }
            out.push((c[0], c[1]));
        }
        Some(out)
    }

    /// Pad with fixed points up to `degree`.
    pub fn extended_to(&self, degree: usize) -> Result<Permutation> {
        if degree < self.degree() {
            return Err(Error::DegreeMismatch(self.degree(), degree));
        }
        let mut images = self.images.clone();
        images.extend(self.degree() as u32 + 1..=degree as u32);
        Ok(Permutation { images })
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles_including_moved_only();
        if cycles.is_empty() {
            return "e".to_string();
        }
        let mut s = String::new();
        for cycle in cycles {
            s.push('(');
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&p.to_string());
            }
            s.push(')');
        }
        s
    }

    /// First point moved by the permutation, if any.
    pub fn first_moved_point(&self) -> Option<u32> {
        (1..=self.degree() as u32).find(|&p| self.apply(p) != p)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_identity() {
        let p = Permutation::parse("e", 4).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.degree(), 4);
    }

    #[test]
    fn parse_tetrahedron_duality() {
        // tau = (1,4)(2,3) has image table [4,3,2,1]
        let p = Permutation::parse("(1,4)(2,3)", 4).unwrap();
        assert_eq!(p.images, vec![4, 3, 2, 1]);
    }

    #[test]
    fn parse_family_generator() {
        let p = Permutation::parse("(1,2)(3,4)(5,6)", 6).unwrap();
        assert_eq!(p.images, vec![2, 1, 4, 3, 6, 5]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Permutation::parse("(1,7)", 4),
            Err(Error::PointOutOfRange { point: 7, .. })
        ));
        assert!(matches!(
            Permutation::parse("(1,2,2)", 4),
            Err(Error::RepeatedPointWithinCycle(2))
        ));
        assert!(matches!(Permutation::parse("(1)", 4), Err(Error::MalformedCycle { .. })));
        assert!(matches!(Permutation::parse("1,2", 4), Err(Error::MalformedCycle { .. })));
        assert!(matches!(Permutation::parse("", 4), Err(Error::MalformedCycle { .. })));
        assert!(matches!(Permutation::parse("(1,2", 4), Err(Error::MalformedCycle { .. })));
    }

    #[test]
    fn nondisjoint_cycles_compose_left_to_right() {
        // (1,2) then (2,3): 1->2->3, 2->1, 3->2
        let p = Permutation::parse("(1,2)(2,3)", 3).unwrap();
        assert_eq!(p.apply(1), 3);
        assert_eq!(p.apply(3), 2);
        assert_eq!(p.apply(2), 1);
        assert_eq!(p.order(), 3);
    }

    #[test]
    fn compose_and_inverse() {
        let a = Permutation::parse("(1,2,3,4)", 4).unwrap();
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.order(), 4);
        assert_eq!(a.compose(&a).order(), 2);
    }

    #[test]
    fn cycle_string_round_trip() {
        for text in ["e", "(1,2)", "(1,2)(3,4)", "(1,3,2)", "(2,4)(3,5)"] {
            let p = Permutation::parse(text, 5).unwrap();
            let emitted = p.to_cycle_string();
            let q = Permutation::parse(&emitted, 5).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn conjugation_relabels() {
        let g = Permutation::parse("(2,3)", 4).unwrap();
        let tau = Permutation::parse("(1,4)(2,3)", 4).unwrap();
        // (2,3)^tau = (2^tau, 3^tau) = (3,2) = (2,3)
        assert_eq!(g.conjugate_by(&tau), g);
        let h = Permutation::parse("(3,4)", 4).unwrap();
        // (3,4)^tau = (2,1)
        assert_eq!(h.conjugate_by(&tau), Permutation::parse("(1,2)", 4).unwrap());
    }
}
