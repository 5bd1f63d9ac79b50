//! (String) C-groups: ordered involution generator systems, the intersection
//! property, Coxeter diagrams, permutation representation graphs, the built-in
//! permutation-representation-graph families, halving-style generator
//! replacement, and the rank-3 polytope search.

use crate::cosetgeom::{CheckReport, CosetSystem, TypeLabel};
use crate::error::{Error, Result};
use crate::groupcore::{ElementSet, FiniteGroup, GroupElement, Permutation, Subgroup};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

/// An ordered set of labeled involutions generating a group.
#[derive(Debug, Clone)]
pub struct GeneratorSystem {
    group: Arc<FiniteGroup>,
    gens: Vec<(String, GroupElement)>,
}

impl GeneratorSystem {
    /// Build from permutations; the group is the one they generate.
    pub fn permutations(
        name: impl Into<String>,
        degree: usize,
        gens: Vec<(String, Permutation)>,
    ) -> Result<GeneratorSystem> {
        let group = FiniteGroup::permutation(name, degree, gens)?;
        let gens = group.generators().to_vec();
        Self::validated(group, gens)
    }

    /// Build from elements of an ambient group; the system's group is the
    /// subgroup they generate, promoted to a standalone group.
    pub fn in_group(
        ambient: &Arc<FiniteGroup>,
        name: impl Into<String>,
        gens: Vec<(String, GroupElement)>,
    ) -> Result<GeneratorSystem> {
        let group = FiniteGroup::generated(
            name,
            ambient,
            gens.clone(),
        )?;
        Self::validated(group, gens)
    }

    fn validated(
        group: Arc<FiniteGroup>,
        gens: Vec<(String, GroupElement)>,
    ) -> Result<GeneratorSystem> {
        for (label, g) in &gens {
            if group.element_order(g)? != 2 {
                return Err(Error::invalid(format!("generator {label} is not an involution")));
            }
        }
        Ok(GeneratorSystem { group, gens })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[(String, GroupElement)] {
        &self.gens
    }

    pub fn labels(&self) -> Vec<String> {
        self.gens.iter().map(|(l, _)| l.clone()).collect()
    }

    /// `< S \ {rho_i} >` as a subgroup.
    fn parabolic_subgroup(&self, skip: usize) -> Result<Subgroup> {
        let gens: Vec<GroupElement> = self
            .gens
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, (_, g))| g.clone())
            .collect();
        Subgroup::generated_unchecked(self.group.clone(), gens)
    }

    /// The coset system with maximal parabolics `G_i = < S \ {rho_i} >` over
    /// types `0..rank`.
    pub fn coset_system(&self) -> Result<CosetSystem> {
        let mut parabolics = Vec::new();
        for i in 0..self.rank() {
            parabolics.push((TypeLabel::num(i), self.parabolic_subgroup(i)?));
        }
        CosetSystem::new(self.group.clone(), parabolics)
    }
}

/// Build the standard coset system of a generator system.
pub fn cgroup_system(s: &GeneratorSystem) -> Result<CosetSystem> {
    s.coset_system()
}

/// String (commuting) property: non-consecutive generators commute.
pub fn check_string_property(s: &GeneratorSystem) -> Result<CheckReport> {
    let started = Instant::now();
    let mut witness = None;
    'outer: for i in 0..s.rank() {
        for j in i + 2..s.rank() {
            let product = s.group.mul(&s.gens[i].1, &s.gens[j].1)?;
            let order = s.group.element_order(&product)?;
            if order != 2 {
                witness = Some(crate::cosetgeom::Witness::NonCommutingGenerators {
                    i,
                    j,
                    order,
                });
                break 'outer;
            }
        }
    }
    Ok(CheckReport {
        property: "string".into(),
        method: "pairwise".into(),
        pass: witness.is_none(),
        conditional: false,
        witness,
        detail: None,
        millis: started.elapsed().as_millis(),
    })
}

/// Mode for [`check_intersection_property`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionMode {
    /// `<M> /\ <N> = <M /\ N>` for all subset pairs.
    Full,
    /// Rank >= 3 reduction: the two end parabolics are C-groups and
    /// `G_0 /\ G_{r-1} = <rho_1, ..., rho_{r-2}>`.
    Reduced2E16,
}

/// The C-group intersection property of the generator system.
pub fn check_intersection_property(
    s: &GeneratorSystem,
    mode: IntersectionMode,
) -> Result<CheckReport> {
    let started = Instant::now();
    let (witness, method) = match mode {
        IntersectionMode::Full => (full_intersection_property(s)?, "full"),
        IntersectionMode::Reduced2E16 => {
            let pass = reduced_2e16(s)?;
            let witness = if pass {
                None
            } else {
                full_intersection_property(s)?
            };
            (witness, "reduced2E16")
        }
    };
    Ok(CheckReport {
        property: "intersection-property".into(),
        method: method.into(),
        pass: witness.is_none(),
        conditional: false,
        witness,
        detail: None,
        millis: started.elapsed().as_millis(),
    })
}

/// First violation of the full intersection property as a witness, or
/// `None`. Pairs are swept in increasing `|M| + |N|`; closures are cached per
/// subset; comparable pairs hold trivially and are skipped.
fn full_intersection_property(
    s: &GeneratorSystem,
) -> Result<Option<crate::cosetgeom::Witness>> {
    let r = s.rank();
    let masks: Vec<u32> = (0..(1u32 << r)).collect();
    let mut closures: HashMap<u32, Arc<ElementSet>> = HashMap::new();
    let mut closure_of = |mask: u32| -> Result<Arc<ElementSet>> {
        if let Some(found) = closures.get(&mask) {
            return Ok(found.clone());
        }
        let gens: Vec<GroupElement> = (0..r)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| s.gens[i].1.clone())
            .collect();
        let sub = Subgroup::generated_unchecked(s.group.clone(), gens)?;
        let set = sub.elements()?;
        closures.insert(mask, set.clone());
        Ok(set)
    };
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for &m in &masks {
        for &n in &masks {
            // comparable pairs give <M> /\ <N> = <smaller> = <M /\ N> for free
            if m & n == m || m & n == n {
                continue;
            }
            pairs.push((m, n));
        }
    }
    pairs.sort_by_key(|&(m, n)| (m.count_ones() + n.count_ones(), m, n));
    for (m, n) in pairs {
        let left = closure_of(m)?;
        let right = closure_of(n)?;
        let meet_closure = closure_of(m & n)?;
        let intersection = left.intersection(&right);
        if let Some(g) = intersection.difference_witness(&meet_closure) {
            let labels_of = |mask: u32| -> Vec<String> {
                (0..r)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| s.gens[i].0.clone())
                    .collect()
            };
            return Ok(Some(crate::cosetgeom::Witness::IntersectionProperty {
                m: labels_of(m),
                n: labels_of(n),
                g: g.clone(),
            }));
        }
    }
    Ok(None)
}

fn reduced_2e16(s: &GeneratorSystem) -> Result<bool> {
    let r = s.rank();
    if r < 3 {
        return Err(Error::invalid("reduced mode needs rank >= 3"));
    }
    // end parabolics as standalone generator systems, checked recursively
    let ends = [(0usize, "G_0"), (r - 1, "G_last")];
    for (skip, name) in ends {
        let gens: Vec<(String, GroupElement)> = s
            .gens
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, (l, g))| (l.clone(), g.clone()))
            .collect();
        let sub = GeneratorSystem::in_group(&s.group, name, gens)?;
        let mode = if sub.rank() >= 3 {
            IntersectionMode::Reduced2E16
        } else {
            IntersectionMode::Full
        };
        if !check_intersection_property(&sub, mode)?.pass {
            return Ok(false);
        }
    }
    let g0 = s.parabolic_subgroup(0)?;
    let glast = s.parabolic_subgroup(r - 1)?;
    let middle_gens: Vec<GroupElement> =
        s.gens[1..r - 1].iter().map(|(_, g)| g.clone()).collect();
    let middle = Subgroup::generated_unchecked(s.group.clone(), middle_gens)?;
    g0.intersect(&glast)?.equal_elements(&middle)
}

/// Coxeter diagram: nodes are the generators, edges carry
/// `p_ij = o(rho_i rho_j)` when at least 3; label-2 edges are absent.
#[derive(Debug, Clone, Serialize)]
pub struct CoxeterDiagram {
    pub nodes: Vec<String>,
    pub edges: BTreeMap<(usize, usize), u128>,
}

impl CoxeterDiagram {
    /// A diagram is linear when its edges form a disjoint union of simple
    /// paths: every node has degree at most 2 and no cycle closes.
    pub fn is_linear(&self) -> bool {
        let n = self.nodes.len();
        let mut degree = vec![0usize; n];
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for &(a, b) in self.edges.keys() {
            degree[a] += 1;
            degree[b] += 1;
            if degree[a] > 2 || degree[b] > 2 {
                return false;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// Edge labels along a maximal path when the diagram is one connected
    /// string covering all nodes (the Schlafli symbol of a string diagram in
    /// the given generator order, if consecutive).
    pub fn schlafli_if_string(&self) -> Option<Vec<u128>> {
        let n = self.nodes.len();
        let mut out = Vec::new();
        for i in 0..n.saturating_sub(1) {
            match self.edges.get(&(i, i + 1)) {
                Some(&p) => out.push(p),
                None => out.push(2),
            }
        }
        let consecutive = self
            .edges
            .keys()
            .all(|&(a, b)| b == a + 1);
        if consecutive {
            Some(out)
        } else {
            None
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{node}");
        }
        for ((a, b), p) in &self.edges {
            let _ = write!(s, "; {}-{}:{}", self.nodes[*a], self.nodes[*b], p);
        }
        s
    }
}

/// Compute the Coxeter diagram of a generator system.
pub fn coxeter_diagram(s: &GeneratorSystem) -> Result<CoxeterDiagram> {
    let mut edges = BTreeMap::new();
    for i in 0..s.rank() {
        for j in i + 1..s.rank() {
            let p = s
                .group()
                .element_order(&s.group().mul(&s.gens[i].1, &s.gens[j].1)?)?;
            if p >= 3 {
                edges.insert((i, j), p);
            }
        }
    }
    Ok(CoxeterDiagram {
        nodes: s.labels(),
        edges,
    })
}

/// Permutation representation graph: an edge-labelled multigraph with an
/// `i`-edge `{a, b}` whenever `a^rho_i = b`, the `i`-edges forming a partial
/// matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermRepGraph {
    pub vertices: usize,
    /// label -> sorted list of edges (a < b).
    pub edges: BTreeMap<String, Vec<(u32, u32)>>,
}

/// Graph of a permutation generator system.
pub fn permrep_graph_of(s: &GeneratorSystem) -> Result<PermRepGraph> {
    let degree = s
        .group()
        .degree()
        .ok_or_else(|| Error::invalid("permutation representation graphs need permutations"))?;
    let mut edges = BTreeMap::new();
    for (label, g) in s.generators() {
        let p = g.as_perm().ok_or(Error::MixedGroupOperands)?;
        let matching = p
            .transpositions()
            .ok_or_else(|| Error::NotAMatching(label.clone()))?;
        let mut list: Vec<(u32, u32)> = matching
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        list.sort_unstable();
        edges.insert(label.clone(), list);
    }
    Ok(PermRepGraph {
        vertices: degree,
        edges,
    })
}

impl PermRepGraph {
    /// Text format: first line `n=<vertices>`, then one line per label,
    /// `<label>: a-b a-b ...`, labels and edges sorted. Round-trips exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.vertices);
        for (label, edges) in &self.edges {
            let _ = write!(out, "{label}:");
            for (a, b) in edges {
                let _ = write!(out, " {a}-{b}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<PermRepGraph> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines
            .next()
            .ok_or_else(|| Error::Parse {
                line: 1,
                col: 1,
                msg: "empty input".into(),
            })?;
        let vertices: usize = first
            .trim()
            .strip_prefix("n=")
            .ok_or_else(|| Error::Parse {
                line: 1,
                col: 1,
                msg: "expected n=<vertices>".into(),
            })?
            .parse()
            .map_err(|e| Error::Parse {
                line: 1,
                col: 3,
                msg: format!("bad vertex count: {e}"),
            })?;
        let mut edges = BTreeMap::new();
        for (lineno, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (label, rest) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: lineno + 1,
                col: 1,
                msg: "expected <label>: a-b ...".into(),
            })?;
            let label = label.trim().to_string();
            let mut list = Vec::new();
            let mut used = vec![false; vertices];
            for token in rest.split_whitespace() {
                let (a, b) = token.split_once('-').ok_or_else(|| Error::Parse {
                    line: lineno + 1,
                    col: 1,
                    msg: format!("expected a-b, got {token:?}"),
                })?;
                let a: u32 = a.parse().map_err(|e| Error::Parse {
                    line: lineno + 1,
                    col: 1,
                    msg: format!("bad vertex: {e}"),
                })?;
                let b: u32 = b.parse().map_err(|e| Error::Parse {
                    line: lineno + 1,
                    col: 1,
                    msg: format!("bad vertex: {e}"),
                })?;
                for p in [a, b] {
                    if p == 0 || p as usize > vertices {
                        return Err(Error::PointOutOfRange {
                            point: p as u64,
                            degree: vertices,
                        });
                    }
                }
                if a == b || used[a as usize - 1] || used[b as usize - 1] {
                    return Err(Error::NotAMatching(label.clone()));
                }
                used[a as usize - 1] = true;
                used[b as usize - 1] = true;
                list.push((a.min(b), a.max(b)));
            }
            list.sort_unstable();
            if edges.insert(label.clone(), list).is_some() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    col: 1,
                    msg: format!("label {label} repeated"),
                });
            }
        }
        Ok(PermRepGraph { vertices, edges })
    }

    /// Reconstruct the generator system: each label's matching becomes the
    /// product of its transpositions.
    pub fn to_generator_system(&self, name: impl Into<String>) -> Result<GeneratorSystem> {
        let mut gens = Vec::new();
        for (label, edges) in &self.edges {
            let cycles: Vec<Vec<u32>> = edges.iter().map(|&(a, b)| vec![a, b]).collect();
            gens.push((label.clone(), Permutation::from_cycles(&cycles, self.vertices)?));
        }
        GeneratorSystem::permutations(name, self.vertices, gens)
    }
}

/// Parse the text format and rebuild the generator system in one step.
pub fn parse_permrep_graph(text: &str, name: impl Into<String>) -> Result<GeneratorSystem> {
    PermRepGraph::parse(text)?.to_generator_system(name)
}

/// The built-in permutation-representation-graph families, degree `2r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    /// Two disjoint rows joined by 0-edges everywhere: rho_0 central,
    /// `G = C2 x Sym(r)`.
    T9_1,
    /// rho_0 central as in T9-1, with the top group in its transitive
    /// degree-2r sign representation.
    T9_2,
    /// Single 0-edge: `G = C2 wr Sym(r)`.
    T5_13,
    /// 0-edges on all but the first block: full wreath for even rank, its
    /// even-part index-2 subgroup for odd rank.
    T5_14,
    /// As T5-13 with the sign representation on top.
    T5_15,
    /// As T5-14 with the sign representation on top.
    T5_16,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "T9-1" => Ok(Family::T9_1),
            "T9-2" => Ok(Family::T9_2),
            "T5-13" => Ok(Family::T5_13),
            "T5-14" => Ok(Family::T5_14),
            "T5-15" => Ok(Family::T5_15),
            "T5-16" => Ok(Family::T5_16),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

impl Family {
    pub fn id(&self) -> &'static str {
        match self {
            Family::T9_1 => "T9-1",
            Family::T9_2 => "T9-2",
            Family::T5_13 => "T5-13",
            Family::T5_14 => "T5-14",
            Family::T5_15 => "T5-15",
            Family::T5_16 => "T5-16",
        }
    }
}

/// Build a family member of the given rank (`r >= 3`), on `2r` points.
///
/// The diagonal representation uses `rho_i = (2i-1, 2i+1)(2i, 2i+2)`; the
/// sign representation swaps the rows everywhere except across the moved
/// blocks, `rho_i = (2i-1, 2i+2)(2i, 2i+1) * prod_{j not in {i, i+1}}
/// (2j-1, 2j)`, which is Sym(r) acting transitively on the 2r points.
pub fn builtin_family(family: Family, r: usize) -> Result<GeneratorSystem> {
    if r < 3 {
        return Err(Error::RankTooSmall {
            family: family.id().to_string(),
            rank: r,
            min: 3,
        });
    }
    let degree = 2 * r;
    let rho0_cycles: Vec<Vec<u32>> = match family {
        Family::T9_1 | Family::T9_2 => (1..=r as u32).map(|j| vec![2 * j - 1, 2 * j]).collect(),
        Family::T5_13 | Family::T5_15 => vec![vec![1, 2]],
        Family::T5_14 | Family::T5_16 => (2..=r as u32).map(|j| vec![2 * j - 1, 2 * j]).collect(),
    };
    let diagonal_top = matches!(family, Family::T9_1 | Family::T5_13 | Family::T5_14);
    let mut gens = vec![(
        "r0".to_string(),
        Permutation::from_cycles(&rho0_cycles, degree)?,
    )];
    for i in 1..r as u32 {
        let cycles: Vec<Vec<u32>> = if diagonal_top {
            vec![vec![2 * i - 1, 2 * i + 1], vec![2 * i, 2 * i + 2]]
        } else {
            let mut cs = vec![vec![2 * i - 1, 2 * i + 2], vec![2 * i, 2 * i + 1]];
            for j in 1..=r as u32 {
                if j != i && j != i + 1 {
                    cs.push(vec![2 * j - 1, 2 * j]);
                }
            }
            cs
        };
        gens.push((format!("r{i}"), Permutation::from_cycles(&cycles, degree)?));
    }
    GeneratorSystem::permutations(format!("{}(r={r})", family.id()), degree, gens)
}

/// Replace `rho_a` by `rho_a rho_b rho_a` and report the generated group's
/// order and its index in the original (1 or 2).
pub fn halve(s: &GeneratorSystem, a: usize, b: usize) -> Result<(GeneratorSystem, u128, u128)> {
    if a == b || a >= s.rank() || b >= s.rank() {
        return Err(Error::invalid("halve needs two distinct generator indices"));
    }
    let group = s.group();
    let rho_a = &s.gens[a].1;
    let rho_b = &s.gens[b].1;
    let replaced = group.mul(&group.mul(rho_a, rho_b)?, rho_a)?;
    let mut gens = s.gens.clone();
    gens[a] = (format!("{}^{}", s.gens[b].0, s.gens[a].0), replaced);
    let halved = GeneratorSystem::in_group(group, format!("{}_halved", group.name()), gens)?;
    let order = halved.group().order()?;
    let index = group.order()? / order;
    if index != 1 && index != 2 {
        return Err(Error::invalid(format!(
            "halved set generates a subgroup of index {index}"
        )));
    }
    Ok((halved, order, index))
}

/// Replicates the involution-pair search: find `inv_1` commuting with `t`,
/// then `inv_0` with `o(inv_0 t) >= 3` and `o(inv_0 inv_1)` odd, such that
/// `<t, inv_0, inv_1> = G` and the rank-3 intersection property holds for
/// the generator order `(t, inv_0, inv_1)`. Deterministic iteration order,
/// first hit returned.
pub fn search_rank3_polytope(
    group: &Arc<FiniteGroup>,
    t: &GroupElement,
    seeds: Option<&[GroupElement]>,
) -> Result<GeneratorSystem> {
    if group.element_order(t)? != 2 {
        return Err(Error::invalid("t must be an involution"));
    }
    let involutions: Vec<GroupElement> = match seeds {
        Some(list) => {
            let mut out = Vec::new();
            for g in list {
                if group.element_order(g)? == 2 {
                    out.push(g.clone());
                }
            }
            out
        }
        None => {
            let order = group.order()?;
            let cap = group.caps().enumeration;
            if order > cap as u128 {
                return Err(Error::CapExceeded {
                    cap,
                    reached: cap.saturating_add(1),
                });
            }
            group
                .elements()?
                .iter()
                .filter(|g| {
                    group
                        .element_order(g)
                        .map(|k| k == 2)
                        .unwrap_or(false)
                })
                .cloned()
                .collect()
        }
    };
    let group_order = group.order()?;
    for inv_1 in &involutions {
        if group.element_order(&group.mul(inv_1, t)?)? != 2 {
            continue;
        }
        for inv_0 in &involutions {
            if group.element_order(&group.mul(inv_0, t)?)? < 3 {
                continue;
            }
            if group.element_order(&group.mul(inv_0, inv_1)?)? % 2 == 0 {
                continue;
            }
            let candidate = Subgroup::generated_unchecked(
                group.clone(),
                vec![t.clone(), inv_0.clone(), inv_1.clone()],
            )?;
            if candidate.order()? != group_order {
                continue;
            }
            let system = GeneratorSystem::in_group(
                group,
                format!("{}_rank3", group.name()),
                vec![
                    ("t".into(), t.clone()),
                    ("inv0".into(), inv_0.clone()),
                    ("inv1".into(), inv_1.clone()),
                ],
            )?;
            if check_intersection_property(&system, IntersectionMode::Full)?.pass {
                return Ok(system);
            }
        }
    }
    Err(Error::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn tetra_system() -> GeneratorSystem {
        GeneratorSystem::permutations(
            "tetra",
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
    fn string_property_examples() {
        let tetra = tetra_system();
        assert!(check_string_property(&tetra).unwrap().pass);
        // rank 2 passes vacuously
        let rank2 = GeneratorSystem::permutations(
            "digon",
            4,
            vec![
                ("a".into(), Permutation::parse("(1,2)", 4).unwrap()),
                ("b".into(), Permutation::parse("(1,3)", 4).unwrap()),
            ],
        )
        .unwrap();
        assert!(check_string_property(&rank2).unwrap().pass);
        // a non-string triple: (1,2), (3,4), (1,3) has o(r0 r2) = 3
        let bad = GeneratorSystem::permutations(
            "bad",
            4,
            vec![
                ("a".into(), Permutation::parse("(1,2)", 4).unwrap()),
                ("b".into(), Permutation::parse("(3,4)", 4).unwrap()),
                ("c".into(), Permutation::parse("(1,3)", 4).unwrap()),
            ],
        )
        .unwrap();
        assert!(!check_string_property(&bad).unwrap().pass);
    }

    #[test]
    fn intersection_property_tetrahedron() {
        let tetra = tetra_system();
        assert!(check_intersection_property(&tetra, IntersectionMode::Full)
            .unwrap()
            .pass);
        assert!(
            check_intersection_property(&tetra, IntersectionMode::Reduced2E16)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn coxeter_diagram_tetrahedron_is_linear_3_3() {
        let tetra = tetra_system();
        let diagram = coxeter_diagram(&tetra).unwrap();
        assert!(diagram.is_linear());
        assert_eq!(diagram.schlafli_if_string(), Some(vec![3, 3]));
    }

    #[test]
    fn permrep_graph_round_trip() {
        let tetra = tetra_system();
        let graph = permrep_graph_of(&tetra).unwrap();
        let text = graph.to_text();
        let back = parse_permrep_graph(&text, "back").unwrap();
        assert_eq!(
            back.generators()
                .iter()
                .map(|(l, g)| (l.clone(), g.clone()))
                .collect::<Vec<_>>(),
            tetra
                .generators()
                .iter()
                .map(|(l, g)| (l.clone(), g.clone()))
                .collect::<Vec<_>>()
        );
        assert_eq!(permrep_graph_of(&back).unwrap().to_text(), text);
    }

    #[test]
    fn permrep_graph_single_edge_and_errors() {
        let single = parse_permrep_graph("n=2\n0: 1-2\n", "edge").unwrap();
        assert_eq!(single.rank(), 1);
        assert_eq!(
            single.generators()[0].1,
            GroupElement::Perm(Permutation::parse("(1,2)", 2).unwrap())
        );
        assert!(matches!(
            PermRepGraph::parse("n=4\n0: 1-2 2-3\n"),
            Err(Error::NotAMatching(_))
        ));
        assert!(matches!(
            PermRepGraph::parse("n=2\n0: 1-5\n"),
            Err(Error::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn family_t9_1_splits_as_direct_product() {
        let s = builtin_family(Family::T9_1, 3).unwrap();
        assert_eq!(s.group().order().unwrap(), 12);
        assert_eq!(
            s.generators()[0].1,
            GroupElement::Perm(Permutation::parse("(1,2)(3,4)(5,6)", 6).unwrap())
        );
        assert_eq!(
            s.generators()[1].1,
            GroupElement::Perm(Permutation::parse("(1,3)(2,4)", 6).unwrap())
        );
    }

    #[test]
    fn family_t5_13_is_wreath_order() {
        let s = builtin_family(Family::T5_13, 3).unwrap();
        assert_eq!(s.group().order().unwrap(), 48);
        assert_eq!(
            s.generators()[0].1,
            GroupElement::Perm(Permutation::parse("(1,2)", 6).unwrap())
        );
        let s4 = builtin_family(Family::T5_13, 4).unwrap();
        assert_eq!(s4.group().order().unwrap(), 384);
    }

    #[test]
    fn family_t5_14_orders() {
        // odd rank: index-2 subgroup of the wreath; even rank: full wreath
        let s3 = builtin_family(Family::T5_14, 3).unwrap();
        assert_eq!(s3.group().order().unwrap(), 24);
        let s4 = builtin_family(Family::T5_14, 4).unwrap();
        assert_eq!(s4.group().order().unwrap(), 384);
    }

    #[test]
    fn family_rank_guard() {
        assert!(matches!(
            builtin_family(Family::T9_1, 2),
            Err(Error::RankTooSmall { .. })
        ));
        assert!(matches!("T7-9".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn sign_representation_families() {
        // T9-2: top group transitive on 2r points, rho_0 central, order 2 r!
        let s = builtin_family(Family::T9_2, 3).unwrap();
        assert_eq!(s.group().order().unwrap(), 12);
        assert!(check_string_property(&s).unwrap().pass);
        let top = Subgroup::generated_unchecked(
            s.group().clone(),
            s.generators()[1..].iter().map(|(_, g)| g.clone()).collect(),
        )
        .unwrap();
        assert_eq!(top.order().unwrap(), 6);
        // transitivity of the top group on the 6 points
        let chain = crate::groupcore::StabilizerChain::new(
            6,
            &s.generators()[1..]
                .iter()
                .map(|(_, g)| g.as_perm().unwrap().clone())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(chain.basic_orbit_lengths()[0], 6);
        // T5-15: full wreath with the sign top
        let s = builtin_family(Family::T5_15, 3).unwrap();
        assert_eq!(s.group().order().unwrap(), 48);
        assert!(check_string_property(&s).unwrap().pass);
        // T5-16 keeps the string property; order recorded by direct closure
        let s = builtin_family(Family::T5_16, 4).unwrap();
        assert!(check_string_property(&s).unwrap().pass);
        assert_eq!(s.group().order().unwrap(), 384);
        let s3 = builtin_family(Family::T5_16, 3).unwrap();
        assert_eq!(s3.group().order().unwrap(), 24);
    }

    #[test]
    fn cgroup_system_of_tetrahedron() {
        let sys = cgroup_system(&tetra_system()).unwrap();
        assert_eq!(sys.rank(), 3);
        assert_eq!(
            sys.maximal_parabolic(&TypeLabel::num(0)).unwrap().order().unwrap(),
            6
        );
        assert_eq!(sys.borel_index().unwrap(), 24);
    }

    #[test]
    fn halve_tetrahedron() {
        let tetra = tetra_system();
        let (halved, order, index) = halve(&tetra, 2, 1).unwrap();
        // rho_2 rho_1 rho_2 = (3,4)(2,3)(3,4) = (2,4)
        assert_eq!(
            halved.generators()[2].1,
            GroupElement::Perm(Permutation::parse("(2,4)", 4).unwrap())
        );
        assert_eq!(order * index, 24);
        assert_eq!(order, 24);
        // o(rho_2 rho_1) = 3 here, so halving twice restores the system
        let (back, _, _) = halve(&halved, 2, 1).unwrap();
        assert_eq!(back.generators()[2].1, tetra.generators()[2].1);
    }

    #[test]
    fn search_on_sym4_finds_generating_triple() {
        let g = FiniteGroup::permutation(
            "Sym(4)",
            4,
            vec![
                ("a".into(), Permutation::parse("(1,2)", 4).unwrap()),
                ("b".into(), Permutation::parse("(2,3)", 4).unwrap()),
                ("c".into(), Permutation::parse("(3,4)", 4).unwrap()),
            ],
        )
        .unwrap();
        let t = GroupElement::Perm(Permutation::parse("(1,2)", 4).unwrap());
        let found = search_rank3_polytope(&g, &t, None).unwrap();
        assert_eq!(found.group().order().unwrap(), 24);
        assert!(check_intersection_property(&found, IntersectionMode::Full)
            .unwrap()
            .pass);
        assert!(check_string_property(&found).unwrap().pass);
    }

    #[test]
    fn search_with_no_candidates_reports_not_found() {
        // C2 x C2: every involution commutes with t and no pair has odd
        // product order >= 3
        let g = FiniteGroup::permutation(
            "V4",
            4,
            vec![
                ("x".into(), Permutation::parse("(1,2)", 4).unwrap()),
                ("y".into(), Permutation::parse("(3,4)", 4).unwrap()),
            ],
        )
        .unwrap();
        let t = GroupElement::Perm(Permutation::parse("(1,2)", 4).unwrap());
        assert!(matches!(
            search_rank3_polytope(&g, &t, None),
            Err(Error::NotFound)
        ));
    }
}
