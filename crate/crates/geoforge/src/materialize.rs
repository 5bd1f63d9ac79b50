//! Brute-force realization of coset systems as incidence geometries, direct
//! geometric checks, joins, colored isomorphism, and reference geometries.
//!
//! Everything here is deliberately exhaustive: this module is the independent
//! oracle against which the algebraic checkers are tested.

use crate::cosetgeom::{CosetSystem, TypeLabel};
use crate::error::{Error, Result};
use crate::groupcore::GroupElement;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

/// One element of a materialized geometry.
#[derive(Debug, Clone)]
pub struct GeoElement {
    pub type_index: usize,
    pub id: String,
    /// Canonical coset representative, when the geometry came from a group.
    pub rep: Option<GroupElement>,
}

/// A finite incidence geometry: typed elements with a symmetric incidence
/// relation holding only across distinct types.
#[derive(Debug, Clone)]
pub struct Geometry {
    types: Vec<TypeLabel>,
    elements: Vec<GeoElement>,
    /// Sorted neighbor lists.
    neighbors: Vec<Vec<usize>>,
}

/// A flag: pairwise incident elements, at most one per type.
pub type Flag = Vec<usize>;

#[derive(Debug, Clone, Serialize)]
pub struct GeometryReport {
    pub is_geometry: bool,
    pub connected: bool,
    pub residually_connected: bool,
    pub firm: bool,
    pub thin: bool,
    pub chamber_count: usize,
}

impl Geometry {
    pub fn new(types: Vec<TypeLabel>, elements: Vec<GeoElement>) -> Geometry {
        let n = elements.len();
        Geometry {
            types,
            elements,
            neighbors: vec![Vec::new(); n],
        }
    }

    pub fn add_incidence(&mut self, a: usize, b: usize) {
        assert_ne!(
            self.elements[a].type_index, self.elements[b].type_index,
            "incidence across one type"
        );
        if let Err(pos) = self.neighbors[a].binary_search(&b) {
            self.neighbors[a].insert(pos, b);
        }
        if let Err(pos) = self.neighbors[b].binary_search(&a) {
            self.neighbors[b].insert(pos, a);
        }
    }

    pub fn types(&self) -> &[TypeLabel] {
        &self.types
    }

    pub fn rank(&self) -> usize {
        self.types.len()
    }

    pub fn elements(&self) -> &[GeoElement] {
        &self.elements
    }

    pub fn incident(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    pub fn neighbors(&self, a: usize) -> &[usize] {
        &self.neighbors[a]
    }

    pub fn count_of_type(&self, type_index: usize) -> usize {
        self.elements
            .iter()
            .filter(|e| e.type_index == type_index)
            .count()
    }

    pub fn counts_by_type(&self) -> Vec<usize> {
        (0..self.types.len()).map(|t| self.count_of_type(t)).collect()
    }

    /// Incidence-edge count (unordered pairs).
    pub fn incidence_count(&self) -> usize {
        self.neighbors.iter().map(|n| n.len()).sum::<usize>() / 2
    }

    fn of_type(&self, type_index: usize) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.elements[i].type_index == type_index)
            .collect()
    }

    /// All flags (cliques of the incidence graph), the empty flag included.
    pub fn all_flags(&self) -> Vec<Flag> {
        let mut out = vec![Vec::new()];
        let mut stack: Vec<Flag> = (0..self.elements.len()).map(|i| vec![i]).collect();
        stack.reverse();
        while let Some(flag) = stack.pop() {
            let last = *flag.last().expect("nonempty");
            out.push(flag.clone());
            for next in last + 1..self.elements.len() {
                if flag.iter().all(|&e| self.incident(e, next)) {
                    let mut extended = flag.clone();
                    extended.push(next);
                    stack.push(extended);
                }
            }
        }
        out
    }

    /// Chambers: flags meeting every type, enumerated by backtracking over
    /// types in order with incidence pruning.
    pub fn chambers(&self) -> Vec<Flag> {
        let by_type: Vec<Vec<usize>> = (0..self.types.len()).map(|t| self.of_type(t)).collect();
        let mut out = Vec::new();
        let mut current: Flag = Vec::new();
        self.chambers_rec(&by_type, 0, &mut current, &mut out);
        out
    }

    fn chambers_rec(
        &self,
        by_type: &[Vec<usize>],
        t: usize,
        current: &mut Flag,
        out: &mut Vec<Flag>,
    ) {
        if t == by_type.len() {
            out.push(current.clone());
            return;
        }
        for &candidate in &by_type[t] {
            if current.iter().all(|&e| self.incident(e, candidate)) {
                current.push(candidate);
                self.chambers_rec(by_type, t + 1, current, out);
                current.pop();
            }
        }
    }

    /// Elements incident to every element of the flag, excluding the flag.
    pub fn residue_elements(&self, flag: &Flag) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&x| !flag.contains(&x) && flag.iter().all(|&e| self.incident(e, x)))
            .collect()
    }

    /// The residue as a standalone geometry over the missing types.
    pub fn residue(&self, flag: &Flag) -> Geometry {
        let flag_types: BTreeSet<usize> =
            flag.iter().map(|&e| self.elements[e].type_index).collect();
        let kept_types: Vec<usize> =
            (0..self.types.len()).filter(|t| !flag_types.contains(t)).collect();
        let type_renumber: HashMap<usize, usize> = kept_types
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let members = self.residue_elements(flag);
        let renumber: HashMap<usize, usize> = members
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let elements = members
            .iter()
            .map(|&old| GeoElement {
                type_index: type_renumber[&self.elements[old].type_index],
                id: self.elements[old].id.clone(),
                rep: self.elements[old].rep.clone(),
            })
            .collect();
        let mut geometry = Geometry::new(
            kept_types.iter().map(|&t| self.types[t].clone()).collect(),
            elements,
        );
        for (a_pos, &a) in members.iter().enumerate() {
            for &b in members.iter().skip(a_pos + 1) {
                if self.incident(a, b) {
                    geometry.add_incidence(renumber[&a], renumber[&b]);
                }
            }
        }
        geometry
    }

    fn connected_on(&self, members: &[usize]) -> bool {
        if members.is_empty() {
            return false;
        }
        let member_set: HashSet<usize> = members.iter().copied().collect();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(members[0]);
        queue.push_back(members[0]);
        while let Some(x) = queue.pop_front() {
            for &y in self.neighbors(x) {
                if member_set.contains(&y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.len() == members.len()
    }

    /// Direct checks on the materialized structure: geometry property
    /// (maximal flags are chambers), connectedness, residual connectedness,
    /// firm/thin via corank-one residue counts, chamber count.
    pub fn check_direct(&self) -> GeometryReport {
        let rank = self.rank();
        let flags = self.all_flags();
        let mut is_geometry = true;
        let mut residually_connected = true;
        let mut firm = true;
        let mut thin = true;
        for flag in &flags {
            let corank = rank - flag.len();
            if corank == 0 {
                continue;
            }
            let residue = self.residue_elements(flag);
            if residue.is_empty() {
                is_geometry = false;
            }
            if corank >= 2 && !self.connected_on(&residue) {
                residually_connected = false;
            }
            if corank == 1 {
                if residue.len() < 2 {
                    firm = false;
                }
                if residue.len() != 2 {
                    thin = false;
                }
            }
        }
        let all: Vec<usize> = (0..self.elements.len()).collect();
        GeometryReport {
            is_geometry,
            connected: self.connected_on(&all),
            residually_connected,
            firm,
            thin,
            chamber_count: self.chambers().len(),
        }
    }
}

/// Materialize a coset system: elements are canonical left-coset
/// representatives, `x G_i` incident to `y G_j` iff the cosets intersect,
/// tested by enumerating the smaller parabolic.
pub fn materialize(sys: &CosetSystem) -> Result<Geometry> {
    let caps = sys.group().caps();
    let group = sys.group();
    let mut elements = Vec::new();
    let mut reps_by_type: Vec<Vec<GroupElement>> = Vec::new();
    for (t, label) in sys.types().iter().enumerate() {
        let parabolic = sys.maximal_parabolic(label)?;
        let reps = parabolic.left_transversal()?;
        if elements.len() + reps.len() > caps.geometry {
            return Err(Error::CapExceeded {
                cap: caps.geometry,
                reached: elements.len() + reps.len(),
            });
        }
        for (k, rep) in reps.iter().enumerate() {
            elements.push(GeoElement {
                type_index: t,
                id: format!("{label}:{k}"),
                rep: Some(rep.clone()),
            });
        }
        reps_by_type.push(reps);
    }
    let mut geometry = Geometry::new(sys.types().to_vec(), elements);
    // offsets of each type block in the element list
    let mut offset = vec![0usize; sys.types().len()];
    for t in 1..sys.types().len() {
        offset[t] = offset[t - 1] + reps_by_type[t - 1].len();
    }
    for ti in 0..sys.types().len() {
        let gi = sys.maximal_parabolic(&sys.types()[ti])?;
        for tj in ti + 1..sys.types().len() {
            let gj = sys.maximal_parabolic(&sys.types()[tj])?;
            let (small, small_first) = if gi.order()? <= gj.order()? {
                (&gi, true)
            } else {
                (&gj, false)
            };
            let small_elements = small.elements()?;
            for (a, x) in reps_by_type[ti].iter().enumerate() {
                for (b, y) in reps_by_type[tj].iter().enumerate() {
                    // x G_i meets y G_j iff some x h lands in y G_j
                    // (equivalently some y h in x G_i)
                    let hit = if small_first {
                        let y_inv = group.inv(y)?;
                        small_elements.iter().any(|h| {
                            let xh = group.mul(x, h).expect("same group");
                            gj.contains(&group.mul(&y_inv, &xh).expect("same group"))
                                .expect("membership")
                        })
                    } else {
                        let x_inv = group.inv(x)?;
                        small_elements.iter().any(|h| {
                            let yh = group.mul(y, h).expect("same group");
                            gi.contains(&group.mul(&x_inv, &yh).expect("same group"))
                                .expect("membership")
                        })
                    };
                    if hit {
                        geometry.add_incidence(offset[ti] + a, offset[tj] + b);
                    }
                }
            }
        }
    }
    Ok(geometry)
}

/// Number of orbits of the group on chambers under left multiplication.
pub fn chamber_orbits(geometry: &Geometry, sys: &CosetSystem) -> Result<usize> {
    let group = sys.group();
    let chambers = geometry.chambers();
    if chambers.is_empty() {
        return Ok(0);
    }
    // index lookup per (type, canonical representative)
    let mut index_of: HashMap<(usize, GroupElement), usize> = HashMap::new();
    for (i, e) in geometry.elements().iter().enumerate() {
        let rep = e
            .rep
            .clone()
            .ok_or_else(|| Error::invalid("chamber orbits need coset representatives"))?;
        index_of.insert((e.type_index, rep), i);
    }
    // per-generator permutation of the element list: x G_i -> g x G_i
    let mut tables: Vec<Vec<usize>> = Vec::new();
    for (_, g) in group.generators() {
        let mut table = vec![0usize; geometry.elements().len()];
        for (i, e) in geometry.elements().iter().enumerate() {
            let parabolic = sys.maximal_parabolic(&geometry.types()[e.type_index])?;
            let moved = group.mul(g, e.rep.as_ref().expect("checked above"))?;
            let canonical = parabolic.canonical_coset_rep(&moved)?;
            table[i] = *index_of
                .get(&(e.type_index, canonical))
                .ok_or_else(|| Error::invalid("left action left the transversal"))?;
        }
        tables.push(table);
    }
    let chamber_ids: HashMap<Flag, usize> = chambers
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let mut seen = vec![false; chambers.len()];
    let mut orbits = 0;
    for start in 0..chambers.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(c) = queue.pop_front() {
            for table in &tables {
                let image: Flag = chambers[c].iter().map(|&e| table[e]).collect();
                let id = *chamber_ids
                    .get(&image)
                    .ok_or_else(|| Error::invalid("group action broke a chamber"))?;
                if !seen[id] {
                    seen[id] = true;
                    queue.push_back(id);
                }
            }
        }
    }
    Ok(orbits)
}

/// Materialize and count chamber orbits (the geometry route to
/// flag-transitivity).
pub fn chamber_orbit_count(sys: &CosetSystem) -> Result<usize> {
    let geometry = materialize(sys)?;
    chamber_orbits(&geometry, sys)
}

/// The 3-cube: 8 vertices, 12 edges, 6 faces with standard incidences.
pub fn cube_reference() -> Geometry {
    let types = vec![TypeLabel::num(0), TypeLabel::num(1), TypeLabel::num(2)];
    let mut elements = Vec::new();
    // vertices: bit-coordinates 0..8
    for v in 0..8u32 {
        elements.push(GeoElement {
            type_index: 0,
            id: format!("v{v}"),
            rep: None,
        });
    }
    // edges: pairs of vertices differing in one bit
    let mut edges = Vec::new();
    for v in 0..8u32 {
        for axis in 0..3 {
            let w = v ^ (1 << axis);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    for (v, w) in &edges {
        elements.push(GeoElement {
            type_index: 1,
            id: format!("e{v}{w}"),
            rep: None,
        });
    }
    // faces: fixed axis and bit value
    let mut faces = Vec::new();
    for axis in 0..3u32 {
        for value in 0..2u32 {
            faces.push((axis, value));
        }
    }
    for (axis, value) in &faces {
        elements.push(GeoElement {
            type_index: 2,
            id: format!("f{axis}{value}"),
            rep: None,
        });
    }
    let mut geometry = Geometry::new(types, elements);
    let edge_index = |k: usize| 8 + k;
    let face_index = |k: usize| 8 + edges.len() + k;
    for (k, (v, w)) in edges.iter().enumerate() {
        geometry.add_incidence(*v as usize, edge_index(k));
        geometry.add_incidence(*w as usize, edge_index(k));
    }
    for (k, (axis, value)) in faces.iter().enumerate() {
        for v in 0..8u32 {
            if (v >> axis) & 1 == *value {
                geometry.add_incidence(v as usize, face_index(k));
            }
        }
        for (j, (v, w)) in edges.iter().enumerate() {
            let on_face = |x: u32| (x >> axis) & 1 == *value;
            if on_face(*v) && on_face(*w) {
                geometry.add_incidence(edge_index(j), face_index(k));
            }
        }
    }
    geometry
}

/// Join of geometries: disjoint union with all cross-component pairs
/// incident. Type labels must be disjoint.
pub fn join(geometries: &[&Geometry]) -> Result<Geometry> {
    let mut types = Vec::new();
    let mut seen = BTreeSet::new();
    for g in geometries {
        for t in g.types() {
            if !seen.insert(t.clone()) {
                return Err(Error::TypeLabelCollision(t.clone()));
            }
            types.push(t.clone());
        }
    }
    let mut elements = Vec::new();
    let mut type_offset = Vec::new();
    let mut element_offset = Vec::new();
    {
        let mut t_acc = 0;
        let mut e_acc = 0;
        for g in geometries {
            type_offset.push(t_acc);
            element_offset.push(e_acc);
            t_acc += g.types().len();
            e_acc += g.elements().len();
        }
    }
    for (k, g) in geometries.iter().enumerate() {
        for e in g.elements() {
            elements.push(GeoElement {
                type_index: e.type_index + type_offset[k],
                id: format!("j{k}.{}", e.id),
                rep: e.rep.clone(),
            });
        }
    }
    let mut out = Geometry::new(types, elements);
    for (k, g) in geometries.iter().enumerate() {
        for a in 0..g.elements().len() {
            for &b in g.neighbors(a) {
                if a < b {
                    out.add_incidence(element_offset[k] + a, element_offset[k] + b);
                }
            }
        }
    }
    // cross-component pairs are all incident
    for (k1, g1) in geometries.iter().enumerate() {
        for (k2, g2) in geometries.iter().enumerate().skip(k1 + 1) {
            for a in 0..g1.elements().len() {
                for b in 0..g2.elements().len() {
                    out.add_incidence(element_offset[k1] + a, element_offset[k2] + b);
                }
            }
        }
    }
    Ok(out)
}

/// Colored isomorphism by iterated degree refinement plus backtracking.
///
/// With `type_bijection` given (indices of `g2` types per `g1` type), only
/// that coloring is tried; otherwise all count-preserving type bijections are
/// searched in order. Returns the element mapping `g1 -> g2` if one exists.
pub fn colored_isomorphic(
    g1: &Geometry,
    g2: &Geometry,
    type_bijection: Option<&[usize]>,
) -> Option<Vec<usize>> {
    if g1.elements().len() != g2.elements().len() || g1.rank() != g2.rank() {
        return None;
    }
    let candidates: Vec<Vec<usize>> = match type_bijection {
        Some(fixed) => vec![fixed.to_vec()],
        None => type_bijections(g1, g2),
    };
    for bijection in candidates {
        if let Some(mapping) = isomorphism_with_types(g1, g2, &bijection) {
            return Some(mapping);
        }
    }
    None
}

fn type_bijections(g1: &Geometry, g2: &Geometry) -> Vec<Vec<usize>> {
    let counts1 = g1.counts_by_type();
    let counts2 = g2.counts_by_type();
    let rank = g1.rank();
    let mut out = Vec::new();
    let mut current = vec![usize::MAX; rank];
    let mut used = vec![false; rank];
    fn rec(
        t: usize,
        rank: usize,
        counts1: &[usize],
        counts2: &[usize],
        used: &mut Vec<bool>,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if t == rank {
            out.push(current.clone());
            return;
        }
        for image in 0..rank {
            if !used[image] && counts1[t] == counts2[image] {
                used[image] = true;
                current[t] = image;
                rec(t + 1, rank, counts1, counts2, used, current, out);
                used[image] = false;
            }
        }
    }
    rec(0, rank, &counts1, &counts2, &mut used, &mut current, &mut out);
    out
}

fn isomorphism_with_types(g1: &Geometry, g2: &Geometry, bijection: &[usize]) -> Option<Vec<usize>> {
    let n = g1.elements().len();
    // iterated refinement: label = (label, sorted neighbor labels), computed
    // jointly so labels are comparable across the two geometries
    let mut labels1: Vec<u64> = g1.elements().iter().map(|e| bijection[e.type_index] as u64).collect();
    let mut labels2: Vec<u64> = g2.elements().iter().map(|e| e.type_index as u64).collect();
    loop {
        let mut keys: BTreeMap<(u64, Vec<u64>), u64> = BTreeMap::new();
        let key_of = |g: &Geometry, labels: &[u64], i: usize| {
            let mut ns: Vec<u64> = g.neighbors(i).iter().map(|&j| labels[j]).collect();
            ns.sort_unstable();
            (labels[i], ns)
        };
        for i in 0..n {
            let k1 = key_of(g1, &labels1, i);
            let k2 = key_of(g2, &labels2, i);
            let next = keys.len() as u64;
            keys.entry(k1).or_insert(next);
            let next = keys.len() as u64;
            keys.entry(k2).or_insert(next);
        }
        let new1: Vec<u64> = (0..n).map(|i| keys[&key_of(g1, &labels1, i)]).collect();
        let new2: Vec<u64> = (0..n).map(|i| keys[&key_of(g2, &labels2, i)]).collect();
        let stable = new1 == labels1 && new2 == labels2;
        labels1 = new1;
        labels2 = new2;
        if stable {
            break;
        }
    }
    let mut count1: BTreeMap<u64, usize> = BTreeMap::new();
    let mut count2: BTreeMap<u64, usize> = BTreeMap::new();
    for i in 0..n {
        *count1.entry(labels1[i]).or_default() += 1;
        *count2.entry(labels2[i]).or_default() += 1;
    }
    if count1 != count2 {
        return None;
    }
    // backtracking in order of rarest label first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (count1[&labels1[i]], labels1[i], i));
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if backtrack(g1, g2, &labels1, &labels2, &order, 0, &mut mapping, &mut used) {
        Some(mapping)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    g1: &Geometry,
    g2: &Geometry,
    labels1: &[u64],
    labels2: &[u64],
    order: &[usize],
    at: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if at == order.len() {
        return true;
    }
    let x = order[at];
    for y in 0..g2.elements().len() {
        if used[y] || labels2[y] != labels1[x] {
            continue;
        }
        // adjacency with already-mapped vertices must match exactly
        let ok = order[..at].iter().all(|&prev| {
            g1.incident(x, prev) == g2.incident(y, mapping[prev])
        });
        if !ok {
            continue;
        }
        mapping[x] = y;
        used[y] = true;
        if backtrack(g1, g2, labels1, labels2, order, at + 1, mapping, used) {
            return true;
        }
        mapping[x] = usize::MAX;
        used[y] = false;
    }
    false
}

#[derive(Debug, Serialize, Deserialize)]
struct GeometryJson {
    types: Vec<TypeLabel>,
    elements: Vec<ElementJson>,
    incidences: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ElementJson {
    id: String,
    #[serde(rename = "type")]
    type_index: usize,
}

/// Export to the JSON geometry format; ids are stable under re-export.
pub fn export_json(geometry: &Geometry) -> String {
    let doc = GeometryJson {
        types: geometry.types().to_vec(),
        elements: geometry
            .elements()
            .iter()
            .map(|e| ElementJson {
                id: e.id.clone(),
                type_index: e.type_index,
            })
            .collect(),
        incidences: {
            let mut pairs = Vec::new();
            for a in 0..geometry.elements().len() {
                for &b in geometry.neighbors(a) {
                    if a < b {
                        pairs.push((
                            geometry.elements()[a].id.clone(),
                            geometry.elements()[b].id.clone(),
                        ));
                    }
                }
            }
            pairs
        },
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn import_json(text: &str) -> Result<Geometry> {
    let doc: GeometryJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    let mut index_of = HashMap::new();
    let mut elements = Vec::new();
    for (i, e) in doc.elements.iter().enumerate() {
        if e.type_index >= doc.types.len() {
            return Err(Error::invalid(format!("element {} has unknown type", e.id)));
        }
        if index_of.insert(e.id.clone(), i).is_some() {
            return Err(Error::invalid(format!("duplicate element id {}", e.id)));
        }
        elements.push(GeoElement {
            type_index: e.type_index,
            id: e.id.clone(),
            rep: None,
        });
    }
    let mut geometry = Geometry::new(doc.types, elements);
    for (a, b) in &doc.incidences {
        let ia = *index_of
            .get(a)
            .ok_or_else(|| Error::UnresolvedReference(a.clone()))?;
        let ib = *index_of
            .get(b)
            .ok_or_else(|| Error::UnresolvedReference(b.clone()))?;
        if geometry.elements()[ia].type_index == geometry.elements()[ib].type_index {
            return Err(Error::invalid(format!(
                "incidence {a} * {b} within one type"
            )));
        }
        geometry.add_incidence(ia, ib);
    }
    Ok(geometry)
}

const DOT_COLORS: [&str; 8] = [
    "steelblue",
    "darkorange",
    "seagreen",
    "orchid",
    "firebrick",
    "goldenrod",
    "turquoise",
    "gray40",
];

/// Export to DOT: one node per element colored by type, one edge per
/// incidence, deterministic ordering.
pub fn export_dot(geometry: &Geometry) -> String {
    let mut out = String::from("graph geometry {\n  node [style=filled];\n");
    for e in geometry.elements() {
        let color = DOT_COLORS[e.type_index % DOT_COLORS.len()];
        let _ = writeln!(
            out,
            "  \"{}\" [fillcolor={}, comment=\"type {}\"];",
            e.id,
            color,
            geometry.types()[e.type_index]
        );
    }
    for a in 0..geometry.elements().len() {
        for &b in geometry.neighbors(a) {
            if a < b {
                let _ = writeln!(
                    out,
                    "  \"{}\" -- \"{}\";",
                    geometry.elements()[a].id,
                    geometry.elements()[b].id
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{klein_failure, tetrahedron};
    use crate::cosetgeom::FlagTransitivityMethod;

    #[test]
    fn tetrahedron_materializes_to_4_6_4() {
        let sys = tetrahedron();
        let geometry = materialize(&sys).unwrap();
        assert_eq!(geometry.counts_by_type(), vec![4, 6, 4]);
        let report = geometry.check_direct();
        assert!(report.is_geometry);
        assert!(report.connected);
        assert!(report.residually_connected);
        assert!(report.firm && report.thin);
        assert_eq!(report.chamber_count, 24);
    }

    #[test]
    fn tetrahedron_incidence_counts() {
        let sys = tetrahedron();
        let geometry = materialize(&sys).unwrap();
        // vertex-edge 12, edge-face 12, vertex-face 12
        assert_eq!(geometry.incidence_count(), 36);
    }

    #[test]
    fn rank_one_system_gives_isolated_elements() {
        let sys = tetrahedron();
        let residue_types: crate::cosetgeom::TypeSet =
            [TypeLabel::num(1), TypeLabel::num(2)].into_iter().collect();
        let rank1 = sys.residue_system(&residue_types).unwrap();
        // edge residue in the vertex direction: the 2 vertices on an edge
        let geometry = materialize(&rank1).unwrap();
        assert_eq!(geometry.elements().len(), 2);
        assert_eq!(geometry.incidence_count(), 0);
    }

    #[test]
    fn chamber_orbits_tetrahedron_is_one() {
        let sys = tetrahedron();
        assert_eq!(chamber_orbit_count(&sys).unwrap(), 1);
    }

    #[test]
    fn chamber_orbits_detects_intransitivity() {
        let sys = klein_failure();
        assert!(chamber_orbit_count(&sys).unwrap() >= 2);
        let report = sys
            .check_flag_transitive(FlagTransitivityMethod::Geometry)
            .unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn incidence_is_representative_independent() {
        let sys = tetrahedron();
        let group = sys.group().clone();
        let g0 = sys.maximal_parabolic(&TypeLabel::num(0)).unwrap();
        let g1 = sys.maximal_parabolic(&TypeLabel::num(1)).unwrap();
        let geometry = materialize(&sys).unwrap();
        // replay every type-0/type-1 incidence decision with skewed reps
        for a in 0..4 {
            for b in 4..10 {
                let x = geometry.elements()[a].rep.clone().unwrap();
                let y = geometry.elements()[b].rep.clone().unwrap();
                for hx in g0.elements().unwrap().iter().take(3) {
                    for hy in g1.elements().unwrap().iter().take(3) {
                        let x2 = group.mul(&x, hx).unwrap();
                        let y2 = group.mul(&y, hy).unwrap();
                        let direct = g0.elements().unwrap().iter().any(|h| {
                            let xh = group.mul(&x2, h).unwrap();
                            g1.contains(&group.mul(&group.inv(&y2).unwrap(), &xh).unwrap())
                                .unwrap()
                        });
                        assert_eq!(direct, geometry.incident(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn cube_reference_shape() {
        let cube = cube_reference();
        assert_eq!(cube.counts_by_type(), vec![8, 12, 6]);
        for e in 8..20 {
            let vertex_neighbors = cube
                .neighbors(e)
                .iter()
                .filter(|&&x| cube.elements()[x].type_index == 0)
                .count();
            let face_neighbors = cube
                .neighbors(e)
                .iter()
                .filter(|&&x| cube.elements()[x].type_index == 2)
                .count();
            assert_eq!(vertex_neighbors, 2);
            assert_eq!(face_neighbors, 2);
        }
        let report = cube.check_direct();
        assert!(report.is_geometry && report.thin && report.residually_connected);
        assert_eq!(report.chamber_count, 48);
    }

    #[test]
    fn self_isomorphism_and_count_mismatch() {
        let cube = cube_reference();
        let mapping = colored_isomorphic(&cube, &cube, Some(&[0, 1, 2])).unwrap();
        assert_eq!(mapping, (0..26).collect::<Vec<_>>().as_slice());
        let tetra = materialize(&tetrahedron()).unwrap();
        assert!(colored_isomorphic(&cube, &tetra, None).is_none());
    }

    #[test]
    fn join_of_rank_ones_is_complete_bipartite() {
        let sys = tetrahedron();
        let g0: crate::cosetgeom::TypeSet =
            [TypeLabel::num(1), TypeLabel::num(2)].into_iter().collect();
        let rank1 = sys.residue_system(&g0).unwrap();
        let geo = materialize(&rank1).unwrap();
        let mut renamed = geo.clone();
        renamed.types = vec![TypeLabel::name("0'")];
        let joined = join(&[&geo, &renamed]).unwrap();
        assert_eq!(joined.incidence_count(), 4);
        assert!(join(&[&geo, &geo]).is_err());
    }

    #[test]
    fn json_round_trip_is_identity() {
        let cube = cube_reference();
        let text = export_json(&cube);
        let back = import_json(&text).unwrap();
        assert_eq!(export_json(&back), text);
        assert!(colored_isomorphic(&cube, &back, Some(&[0, 1, 2])).is_some());
    }

    #[test]
    fn dot_export_mentions_every_element() {
        let cube = cube_reference();
        let dot = export_dot(&cube);
        assert_eq!(dot.matches(" -- ").count(), cube.incidence_count());
        for e in cube.elements() {
            assert!(dot.contains(&format!("\"{}\"", e.id)));
        }
    }

    #[test]
    fn residue_of_base_flag_matches_residue_system() {
        let sys = tetrahedron();
        let geometry = materialize(&sys).unwrap();
        // base flag = the identity-coset element of type 0
        let base = vec![0usize];
        assert_eq!(geometry.elements()[0].rep, Some(sys.group().identity()));
        let flag_residue = geometry.residue(&base);
        let j: crate::cosetgeom::TypeSet = [TypeLabel::num(0)].into_iter().collect();
        let system_residue = materialize(&sys.residue_system(&j).unwrap()).unwrap();
        assert!(colored_isomorphic(&flag_residue, &system_residue, Some(&[0, 1])).is_some());
    }
}
