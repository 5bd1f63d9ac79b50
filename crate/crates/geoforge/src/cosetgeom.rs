//! Coset incidence systems `(G, (G_i))` with the parabolic-subgroup lattice
//! and the algebraic checkers for flag-transitivity, residual connectedness,
//! firmness, thinness, and finiteness.

use crate::error::{Error, Result};
use crate::groupcore::{ElementSet, FiniteGroup, GroupElement, Subgroup};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};
use std::time::Instant;

/// A type label of an incidence system.
///
/// `Indexed` names the copy of a type inside a product over an index set
/// (printed `base@slot`); `Orbit` names an orbit of types under a twisting
/// action, canonically the sorted tuple of its members.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    Name(String),
    Indexed(Box<TypeLabel>, u32),
    Orbit(Vec<TypeLabel>),
}

impl TypeLabel {
    pub fn name(s: impl Into<String>) -> TypeLabel {
        TypeLabel::Name(s.into())
    }

    pub fn num(n: usize) -> TypeLabel {
        TypeLabel::Name(n.to_string())
    }

    pub fn indexed(base: TypeLabel, slot: u32) -> TypeLabel {
        TypeLabel::Indexed(Box::new(base), slot)
    }

    pub fn orbit(mut members: Vec<TypeLabel>) -> TypeLabel {
        members.sort();
        TypeLabel::Orbit(members)
    }

    pub fn orbit_members(&self) -> Option<&[TypeLabel]> {
        match self {
            TypeLabel::Orbit(members) => Some(members),
            _ => None,
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::Name(s) => write!(f, "{s}"),
            TypeLabel::Indexed(base, slot) => write!(f, "{base}@{slot}"),
            TypeLabel::Orbit(members) => {
                write!(f, "{{")?;
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl fmt::Debug for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type TypeSet = BTreeSet<TypeLabel>;

/// All subsets of `types`, ordered by increasing cardinality then
/// lexicographically on the sorted label sequence. First violation in this
/// order wins as witness, making reports deterministic.
pub fn subsets_in_order(types: &[TypeLabel]) -> Vec<TypeSet> {
    let mut sorted: Vec<TypeLabel> = types.to_vec();
    sorted.sort();
    let n = sorted.len();
    let mut subsets: Vec<Vec<TypeLabel>> = vec![Vec::new()];
    for k in 1..=n {
        let mut stack: Vec<(usize, Vec<TypeLabel>)> = vec![(0, Vec::new())];
        let mut level = Vec::new();
        while let Some((start, prefix)) = stack.pop() {
            if prefix.len() == k {
                level.push(prefix);
                continue;
            }
            // push in reverse so the lexicographically first pops first
            for i in (start..n).rev() {
                let mut next = prefix.clone();
                next.push(sorted[i].clone());
                stack.push((i + 1, next));
            }
        }
        level.sort();
        subsets.extend(level);
    }
    subsets.into_iter().map(|v| v.into_iter().collect()).collect()
}

/// Structured evidence that a check failed; every variant re-verifies.
#[derive(Debug, Clone, Serialize)]
pub enum Witness {
    /// `g` lies in every `G_j G_i` for `j in J` but not in `G_J G_i`.
    ProductCondition {
        j_set: Vec<TypeLabel>,
        i: TypeLabel,
        g: GroupElement,
    },
    /// The cosets `G_J`, `x G_H`, `y G_K` intersect pairwise but not jointly.
    TripleCosets {
        j_set: Vec<TypeLabel>,
        h_set: Vec<TypeLabel>,
        k_set: Vec<TypeLabel>,
        x: GroupElement,
        y: GroupElement,
    },
    /// Chamber action splits into this many orbits.
    ChamberOrbits { orbits: usize },
    /// `g` lies in `G_J` but not in the subgroup generated by the parabolics
    /// `G_{J u {i}}`, `i` ranging over `extenders`.
    Generation {
        j_set: Vec<TypeLabel>,
        extenders: Vec<TypeLabel>,
        g: GroupElement,
    },
    /// `g` lies in `G^J /\ G^K` but not in `G^{J /\ K}`.
    MinimalIntersection {
        j_set: Vec<TypeLabel>,
        k_set: Vec<TypeLabel>,
        g: GroupElement,
    },
    /// A corank-one parabolic with the wrong index over the Borel.
    BorelIndex { i: TypeLabel, index: u128 },
    /// `g` lies in `G_{I \ J}` but not in the span `G^J`.
    BottomUpSpan { j_set: Vec<TypeLabel>, g: GroupElement },
    /// Non-consecutive generators whose product has order above two
    /// (string-property failure; indices into the generator list).
    NonCommutingGenerators { i: usize, j: usize, order: u128 },
    /// `g` lies in `<M> /\ <N>` but not in `<M /\ N>` (intersection
    /// property failure; generator labels).
    IntersectionProperty {
        m: Vec<String>,
        n: Vec<String>,
        g: GroupElement,
    },
}

impl Witness {
    /// Re-verify the witness against a system; `true` means it still
    /// demonstrates a violation.
    pub fn reverify(&self, sys: &CosetSystem) -> Result<bool> {
        match self {
            Witness::ProductCondition { j_set, i, g } => {
                let j: TypeSet = j_set.iter().cloned().collect();
                let caps = sys.group().caps();
                let gi = sys.maximal_parabolic(i)?;
                for jj in j_set {
                    let gj = sys.maximal_parabolic(jj)?;
                    if !gj.product_set(&gi, caps.product)?.contains(g) {
                        return Ok(false);
                    }
                }
                let lhs = sys.parabolic(&j)?.product_set(&gi, caps.product)?;
                Ok(!lhs.contains(g))
            }
            Witness::TripleCosets {
                j_set,
                h_set,
                k_set,
                x,
                y,
            } => {
                let group = sys.group().clone();
                let gj = sys.parabolic(&j_set.iter().cloned().collect())?;
                let gh = sys.parabolic(&h_set.iter().cloned().collect())?;
                let gk = sys.parabolic(&k_set.iter().cloned().collect())?;
                // pairwise
                let x_inv = group.inv(x)?;
                let pair_jh = gj.elements()?.iter().any(|z| {
                    gh.contains(&group.mul(&x_inv, z).unwrap_or_else(|_| z.clone()))
                        .unwrap_or(false)
                });
                let y_inv = group.inv(y)?;
                let pair_jk = gj.elements()?.iter().any(|z| {
                    gk.contains(&group.mul(&y_inv, z).unwrap_or_else(|_| z.clone()))
                        .unwrap_or(false)
                });
                let xy = group.mul(&x_inv, y)?;
                let pair_hk = gh.product_set(&gk, sys.group().caps().product)?.contains(&xy);
                if !(pair_jh && pair_jk && pair_hk) {
                    return Ok(false);
                }
                // joint intersection must be empty for the witness to stand
                for z in gj.elements()?.iter() {
                    let in_h = gh.contains(&group.mul(&x_inv, z)?)?;
                    let in_k = gk.contains(&group.mul(&y_inv, z)?)?;
                    if in_h && in_k {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Witness::ChamberOrbits { orbits } => Ok(*orbits >= 2),
            Witness::Generation { j_set, extenders, g } => {
                let j: TypeSet = j_set.iter().cloned().collect();
                if !sys.parabolic(&j)?.contains(g)? {
                    return Ok(false);
                }
                let gen = sys.generated_by_parabolics(&j, extenders)?;
                Ok(!gen.contains(g)?)
            }
            Witness::MinimalIntersection { j_set, k_set, g } => {
                let gj = sys.minimal_parabolic_span(&j_set.iter().cloned().collect())?;
                let gk = sys.minimal_parabolic_span(&k_set.iter().cloned().collect())?;
                let meet: TypeSet = j_set
                    .iter()
                    .filter(|t| k_set.contains(t))
                    .cloned()
                    .collect();
                let gm = sys.minimal_parabolic_span(&meet)?;
                Ok(gj.contains(g)? && gk.contains(g)? && !gm.contains(g)?)
            }
            Witness::BorelIndex { i, index } => {
                let min = sys.minimal_parabolic(i)?;
                let actual = min.order()? / sys.borel()?.order()?;
                Ok(actual == *index && *index != 2)
            }
            Witness::BottomUpSpan { j_set, g } => {
                let j: TypeSet = j_set.iter().cloned().collect();
                let complement: TypeSet = sys
                    .types()
                    .iter()
                    .filter(|t| !j.contains(*t))
                    .cloned()
                    .collect();
                let span = sys.minimal_parabolic_span(&j)?;
                Ok(sys.parabolic(&complement)?.contains(g)? && !span.contains(g)?)
            }
            Witness::NonCommutingGenerators { .. } | Witness::IntersectionProperty { .. } => {
                Err(Error::invalid(
                    "generator-system witnesses are re-verified against their system",
                ))
            }
        }
    }
}

/// Outcome of one checker run.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub property: String,
    pub method: String,
    pub pass: bool,
    /// Set when a precondition (flag-transitivity) was waived by the caller.
    pub conditional: bool,
    pub witness: Option<Witness>,
    /// Extra per-check data, e.g. the corank-one indices for firm/thin.
    pub detail: Option<String>,
    pub millis: u128,
}

impl CheckReport {
    fn finish(
        property: &str,
        method: &str,
        started: Instant,
        witness: Option<Witness>,
    ) -> CheckReport {
        CheckReport {
            property: property.to_string(),
            method: method.to_string(),
            pass: witness.is_none(),
            conditional: false,
            witness,
            detail: None,
            millis: started.elapsed().as_millis(),
        }
    }
}

/// Method selector for [`CosetSystem::check_flag_transitive`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlagTransitivityMethod {
    /// `G_J G_i = /\_{j in J} (G_j G_i)` for all `J`, `i` not in `J`.
    Product,
    /// Pairwise-intersecting coset triples intersect jointly.
    Triple,
    /// Materialize and count chamber orbits.
    Geometry,
}

/// Variant selector for [`CosetSystem::check_residually_connected`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RcVariant {
    /// `G_J = < G_{J u {i}} : i in I \ J >` whenever `|I \ J| >= 2`.
    Rc1,
    /// The two-extension form over pairs `i != k`.
    Rc2,
    /// `G^J /\ G^K = G^{J /\ K}` over spans of minimal parabolics.
    Intersection,
}

/// A coset incidence system: a group together with an indexed family of
/// maximal parabolic subgroups. Parabolics `G_J` are intersections, memoized
/// per subset.
#[derive(Clone)]
pub struct CosetSystem {
    group: Arc<FiniteGroup>,
    types: Vec<TypeLabel>,
    parabolics: BTreeMap<TypeLabel, Subgroup>,
    cache: Arc<RwLock<HashMap<TypeSet, Subgroup>>>,
}

impl fmt::Debug for CosetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CosetSystem({}, rank {})",
            self.group.name(),
            self.types.len()
        )
    }
}

impl CosetSystem {
    pub fn new(
        group: Arc<FiniteGroup>,
        parabolics: Vec<(TypeLabel, Subgroup)>,
    ) -> Result<CosetSystem> {
        let guard = group.caps().rank_guard;
        if parabolics.len() > guard {
            return Err(Error::RankGuard {
                rank: parabolics.len(),
                guard,
            });
        }
        let mut types = Vec::with_capacity(parabolics.len());
        let mut map = BTreeMap::new();
        for (label, subgroup) in parabolics {
            if !Arc::ptr_eq(subgroup.parent(), &group) {
                return Err(Error::MixedGroupOperands);
            }
            if map.insert(label.clone(), subgroup).is_some() {
                return Err(Error::TypeLabelCollision(label));
            }
            types.push(label);
        }
        Ok(CosetSystem {
            group,
            types,
            parabolics: map,
            cache: Arc::new(RwLock::new(HashMap::new())),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.types.len()
    }

    pub fn types(&self) -> &[TypeLabel] {
        &self.types
    }

    pub fn type_set(&self) -> TypeSet {
        self.types.iter().cloned().collect()
    }

    pub fn maximal_parabolic(&self, i: &TypeLabel) -> Result<Subgroup> {
        self.parabolics
            .get(i)
            .cloned()
            .ok_or_else(|| Error::UnresolvedReference(i.to_string()))
    }

    /// `G_J = /\_{j in J} G_j`, with `G_{}` the whole group. Memoized.
    pub fn parabolic(&self, j_set: &TypeSet) -> Result<Subgroup> {
        for t in j_set {
            if !self.parabolics.contains_key(t) {
                return Err(Error::UnresolvedReference(t.to_string()));
            }
        }
        if let Some(found) = self.cache.read().expect("cache lock").get(j_set) {
            return Ok(found.clone());
        }
        let computed = if j_set.is_empty() {
            Subgroup::full(self.group.clone())?
        } else {
            let mut iter = j_set.iter();
            let first = self.maximal_parabolic(iter.next().expect("nonempty"))?;
            let mut acc = first;
            for t in iter {
                acc = acc.intersect(&self.maximal_parabolic(t)?)?;
            }
            acc
        };
        self.cache
            .write()
            .expect("cache lock")
            .insert(j_set.clone(), computed.clone());
        Ok(computed)
    }

    /// `G^i = G_{I \ {i}}`.
    pub fn minimal_parabolic(&self, i: &TypeLabel) -> Result<Subgroup> {
        let j: TypeSet = self.types.iter().filter(|t| *t != i).cloned().collect();
        self.parabolic(&j)
    }

    /// Borel subgroup `G_I`.
    pub fn borel(&self) -> Result<Subgroup> {
        self.parabolic(&self.type_set())
    }

    /// `[G : G_I]`; the geometry is finite iff this is finite, which it
    /// always is here.
    pub fn borel_index(&self) -> Result<u128> {
        Ok(self.group.order()? / self.borel()?.order()?)
    }

    /// Subgroup generated by the parabolics `G_{J u {i}}` for `i` in
    /// `extenders`.
    fn generated_by_parabolics(
        &self,
        j_set: &TypeSet,
        extenders: &[TypeLabel],
    ) -> Result<Subgroup> {
        let mut gens: Vec<GroupElement> = Vec::new();
        for i in extenders {
            let mut extended = j_set.clone();
            extended.insert(i.clone());
            let sub = self.parabolic(&extended)?;
            gens.extend(sub.elements()?.iter().cloned());
        }
        Subgroup::generated_unchecked(self.group.clone(), gens)
    }

    /// `G^J = < G^i : i in J >`; the empty span is anchored at the Borel
    /// subgroup (which every minimal parabolic contains), so that the span
    /// identities of the residual-connectedness lemma are equivalent to the
    /// generation conditions.
    pub fn minimal_parabolic_span(&self, j_set: &TypeSet) -> Result<Subgroup> {
        if j_set.is_empty() {
            return self.borel();
        }
        let mut gens: Vec<GroupElement> = Vec::new();
        for i in j_set {
            gens.extend(self.minimal_parabolic(i)?.elements()?.iter().cloned());
        }
        Subgroup::generated_unchecked(self.group.clone(), gens)
    }

    /// Flag-transitivity of `G` on the system, by the chosen method. All
    /// methods return the same verdict; they differ in what they enumerate.
    pub fn check_flag_transitive(&self, method: FlagTransitivityMethod) -> Result<CheckReport> {
        if self.types.is_empty() {
            return Err(Error::EmptyTypeSet);
        }
        let started = Instant::now();
        let witness = match method {
            FlagTransitivityMethod::Product => self.ft_product_witness()?,
            FlagTransitivityMethod::Triple => self.ft_triple_witness()?,
            FlagTransitivityMethod::Geometry => {
                let orbits = crate::materialize::chamber_orbit_count(self)?;
                if orbits == 1 {
                    None
                } else {
                    Some(Witness::ChamberOrbits { orbits })
                }
            }
        };
        let method_name = match method {
            FlagTransitivityMethod::Product => "product",
            FlagTransitivityMethod::Triple => "triple",
            FlagTransitivityMethod::Geometry => "geometry",
        };
        Ok(CheckReport::finish(
            "flag-transitive",
            method_name,
            started,
            witness,
        ))
    }

    fn ft_product_witness(&self) -> Result<Option<Witness>> {
        let caps = self.group.caps();
        for j_set in subsets_in_order(&self.types) {
            if j_set.len() < 2 {
                // |J| <= 1 makes both sides literally equal
                continue;
            }
            if j_set.len() == self.types.len() {
                break;
            }
            let gj = self.parabolic(&j_set)?;
            for i in self.types.iter().filter(|t| !j_set.contains(*t)) {
                let gi = self.maximal_parabolic(i)?;
                let lhs = gj.product_set(&gi, caps.product)?;
                let mut rhs: Option<ElementSet> = None;
                for jj in &j_set {
                    let set = self.maximal_parabolic(jj)?.product_set(&gi, caps.product)?;
                    rhs = Some(match rhs {
                        None => set,
                        Some(acc) => acc.intersection(&set),
                    });
                }
                let rhs = rhs.expect("|J| >= 2");
                if let Some(g) = rhs.difference_witness(&lhs) {
                    return Ok(Some(Witness::ProductCondition {
                        j_set: j_set.iter().cloned().collect(),
                        i: i.clone(),
                        g: g.clone(),
                    }));
                }
            }
        }
        Ok(None)
    }

    fn ft_triple_witness(&self) -> Result<Option<Witness>> {
        let group = &self.group;
        let caps = group.caps();
        let subsets = subsets_in_order(&self.types);
        // product sets G_X G_Y, memoized per subset pair
        let mut products: HashMap<(Vec<TypeLabel>, Vec<TypeLabel>), Arc<ElementSet>> =
            HashMap::new();
        let mut product = |sys: &CosetSystem,
                           a: &TypeSet,
                           b: &TypeSet|
         -> Result<Arc<ElementSet>> {
            let key = (
                a.iter().cloned().collect::<Vec<_>>(),
                b.iter().cloned().collect::<Vec<_>>(),
            );
            if let Some(found) = products.get(&key) {
                return Ok(found.clone());
            }
            let set = Arc::new(sys.parabolic(a)?.product_set(&sys.parabolic(b)?, caps.product)?);
            products.insert(key, set.clone());
            Ok(set)
        };
        for j_set in &subsets {
            if j_set.is_empty() {
                continue;
            }
            let gj = self.parabolic(j_set)?;
            let gj_elements = gj.elements()?;
            for h_set in &subsets {
                if h_set.is_empty() {
                    continue;
                }
                let gh = self.parabolic(h_set)?;
                let meet_h = gj.intersect(&gh)?.elements()?;
                let reps_h = transversal_within(group, &gj_elements, &meet_h)?;
                for k_set in &subsets {
                    if k_set.is_empty() {
                        continue;
                    }
                    let gk = self.parabolic(k_set)?;
                    let meet_k = gj.intersect(&gk)?.elements()?;
                    let reps_k = transversal_within(group, &gj_elements, &meet_k)?;
                    let hk = product(self, h_set, k_set)?;
                    for x in &reps_h {
                        let x_inv = group.inv(x)?;
                        for y in &reps_k {
                            // premises: G_J meets xG_H and yG_K by construction;
                            // the third premise is xG_H /\ yG_K != {}
                            if !hk.contains(&group.mul(&x_inv, y)?) {
                                continue;
                            }
                            let y_inv = group.inv(y)?;
                            let mut jointly = false;
                            for w in meet_h.iter() {
                                let z = group.mul(x, w)?;
                                if gk.contains(&group.mul(&y_inv, &z)?)? {
                                    jointly = true;
                                    break;
                                }
                            }
                            if !jointly {
                                return Ok(Some(Witness::TripleCosets {
                                    j_set: j_set.iter().cloned().collect(),
                                    h_set: h_set.iter().cloned().collect(),
                                    k_set: k_set.iter().cloned().collect(),
                                    x: x.clone(),
                                    y: y.clone(),
                                }));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Residual connectedness by the chosen variant; when the system is
    /// flag-transitive a passing verdict means the geometry is residually
    /// connected.
    pub fn check_residually_connected(&self, variant: RcVariant) -> Result<CheckReport> {
        let started = Instant::now();
        let witness = match variant {
            RcVariant::Rc1 => self.rc_generation_witness(false)?,
            RcVariant::Rc2 => self.rc_generation_witness(true)?,
            RcVariant::Intersection => self.rc_intersection_witness()?,
        };
        let name = match variant {
            RcVariant::Rc1 => "RC1",
            RcVariant::Rc2 => "RC2",
            RcVariant::Intersection => "intersection",
        };
        Ok(CheckReport::finish(
            "residually-connected",
            name,
            started,
            witness,
        ))
    }

    fn rc_generation_witness(&self, pairs_only: bool) -> Result<Option<Witness>> {
        for j_set in subsets_in_order(&self.types) {
            let rest: Vec<TypeLabel> = self
                .types
                .iter()
                .filter(|t| !j_set.contains(*t))
                .cloned()
                .collect();
            if rest.len() < 2 {
                continue;
            }
            let gj = self.parabolic(&j_set)?;
            if pairs_only {
                for (a, i) in rest.iter().enumerate() {
                    for k in rest.iter().skip(a + 1) {
                        let extenders = vec![i.clone(), k.clone()];
                        let generated = self.generated_by_parabolics(&j_set, &extenders)?;
                        if let Some(g) =
                            gj.elements()?.difference_witness(generated.elements()?.as_ref())
                        {
                            return Ok(Some(Witness::Generation {
                                j_set: j_set.iter().cloned().collect(),
                                extenders,
                                g: g.clone(),
                            }));
                        }
                    }
                }
            } else {
                let generated = self.generated_by_parabolics(&j_set, &rest)?;
                if let Some(g) = gj.elements()?.difference_witness(generated.elements()?.as_ref()) {
                    return Ok(Some(Witness::Generation {
                        j_set: j_set.iter().cloned().collect(),
                        extenders: rest,
                        g: g.clone(),
                    }));
                }
            }
        }
        Ok(None)
    }

    fn rc_intersection_witness(&self) -> Result<Option<Witness>> {
        let subsets = subsets_in_order(&self.types);
        let mut spans: HashMap<Vec<TypeLabel>, Subgroup> = HashMap::new();
        for j_set in &subsets {
            let key: Vec<TypeLabel> = j_set.iter().cloned().collect();
            spans.insert(key, self.minimal_parabolic_span(j_set)?);
        }
        for j_set in &subsets {
            let j_key: Vec<TypeLabel> = j_set.iter().cloned().collect();
            for k_set in &subsets {
                let k_key: Vec<TypeLabel> = k_set.iter().cloned().collect();
                let meet: TypeSet = j_set.intersection(k_set).cloned().collect();
                let meet_key: Vec<TypeLabel> = meet.iter().cloned().collect();
                let lhs = spans[&j_key].intersect(&spans[&k_key])?;
                let rhs = &spans[&meet_key];
                // G^{J/\K} <= G^J /\ G^K always; a witness sits on the left
                if let Some(g) = lhs.elements()?.difference_witness(rhs.elements()?.as_ref()) {
                    return Ok(Some(Witness::MinimalIntersection {
                        j_set: j_key,
                        k_set: k_key,
                        g: g.clone(),
                    }));
                }
            }
        }
        // span identity G^J = G_{I \ J}: the intersection identity alone is
        // vacuous when every minimal parabolic is trivial, this anchors it
        for j_set in &subsets {
            let complement: TypeSet =
                self.types.iter().filter(|t| !j_set.contains(*t)).cloned().collect();
            let span = &spans[&j_set.iter().cloned().collect::<Vec<_>>()];
            let parabolic = self.parabolic(&complement)?;
            if let Some(g) = parabolic.elements()?.difference_witness(span.elements()?.as_ref()) {
                return Ok(Some(Witness::BottomUpSpan {
                    j_set: j_set.iter().cloned().collect(),
                    g: g.clone(),
                }));
            }
        }
        Ok(None)
    }

    /// FIRM and THIN verdicts: every corank-one parabolic strictly contains
    /// the Borel (firm), with index exactly two (thin).
    ///
    /// The underlying theorem assumes flag-transitivity; pass
    /// `ft_verified = false` to mark the reports conditional instead.
    pub fn check_firm_thin(&self, ft_verified: bool) -> Result<(CheckReport, CheckReport)> {
        let started = Instant::now();
        let borel_order = self.borel()?.order()?;
        let mut firm_witness = None;
        let mut thin_witness = None;
        let mut indices = Vec::with_capacity(self.types.len());
        for i in &self.types {
            let index = self.minimal_parabolic(i)?.order()? / borel_order;
            indices.push(format!("[G^{i} : G_I] = {index}"));
            if index == 1 && firm_witness.is_none() {
                firm_witness = Some(Witness::BorelIndex {
                    i: i.clone(),
                    index,
                });
            }
            if index != 2 && thin_witness.is_none() {
                thin_witness = Some(Witness::BorelIndex {
                    i: i.clone(),
                    index,
                });
            }
        }
        let indices = indices.join(", ");
        let mut firm = CheckReport::finish("firm", "borel-index", started, firm_witness);
        let mut thin = CheckReport::finish("thin", "borel-index", started, thin_witness);
        firm.conditional = !ft_verified;
        thin.conditional = !ft_verified;
        firm.detail = Some(indices.clone());
        thin.detail = Some(indices);
        Ok((firm, thin))
    }

    /// The residue system `(G_J, (G_{J u {i}}))` over `I \ J`.
    pub fn residue_system(&self, j_set: &TypeSet) -> Result<CosetSystem> {
        if j_set.is_empty() {
            return Ok(self.clone());
        }
        let gj = self.parabolic(j_set)?;
        let group = gj.to_group(format!("{}_res", self.group.name()))?;
        let mut parabolics = Vec::new();
        for i in self.types.iter().filter(|t| !j_set.contains(*t)) {
            let mut extended = j_set.clone();
            extended.insert(i.clone());
            let sub = self.parabolic(&extended)?;
            let re_parented =
                Subgroup::generated_unchecked(group.clone(), sub.generators().to_vec())?;
            parabolics.push((i.clone(), re_parented));
        }
        CosetSystem::new(group, parabolics)
    }

    /// Explicit normalization step for thin systems: verify the Borel is
    /// normal, then rebuild the system over the quotient by the Borel acting
    /// on its cosets. Constructions themselves never quotient implicitly.
    pub fn quotient_by_borel(&self) -> Result<CosetSystem> {
        let borel = self.borel()?;
        if borel.order()? == 1 {
            return Ok(self.clone());
        }
        let group = &self.group;
        let borel_elements = borel.elements()?;
        for (_, g) in group.generators() {
            let g_inv = group.inv(g)?;
            for b in borel_elements.iter() {
                let conj = group.mul(&group.mul(&g_inv, b)?, g)?;
                if !borel.contains(&conj)? {
                    return Err(Error::invalid("Borel subgroup is not normal"));
                }
            }
        }
        let reps = borel.left_transversal()?;
        let mut index_of: HashMap<GroupElement, usize> = HashMap::new();
        for (i, r) in reps.iter().enumerate() {
            index_of.insert(r.clone(), i);
        }
        let project = |g: &GroupElement| -> Result<crate::groupcore::Permutation> {
            let mut images = Vec::with_capacity(reps.len());
            for r in &reps {
                let moved = borel.canonical_coset_rep(&group.mul(r, g)?)?;
                images.push(index_of[&moved] as u32 + 1);
            }
            crate::groupcore::Permutation::from_images(images)
        };
        let mut quotient_gens = Vec::new();
        for (label, g) in group.generators() {
            quotient_gens.push((label.clone(), project(g)?));
        }
        let quotient =
            FiniteGroup::permutation_with_caps(
                format!("{}/B", group.name()),
                reps.len(),
                quotient_gens,
                group.caps(),
            )?;
        let mut parabolics = Vec::new();
        for (label, sub) in &self.parabolics {
            let mut images = Vec::new();
            for g in sub.generators() {
                images.push(GroupElement::Perm(project(g)?));
            }
            parabolics.push((
                label.clone(),
                Subgroup::generated_unchecked(quotient.clone(), images)?,
            ));
        }
        CosetSystem::new(quotient, parabolics)
    }

    /// Prop-style product-of-intersections identity
    /// `(G_J /\ G_H)(G_J /\ G_K) = G_J /\ (G_H G_K)`, one cell.
    pub fn product_of_intersections_holds(
        &self,
        j_set: &TypeSet,
        h_set: &TypeSet,
        k_set: &TypeSet,
    ) -> Result<bool> {
        let caps = self.group.caps();
        let gj = self.parabolic(j_set)?;
        let gh = self.parabolic(h_set)?;
        let gk = self.parabolic(k_set)?;
        let lhs = gj.intersect(&gh)?.product_set(&gj.intersect(&gk)?, caps.product)?;
        let kh = gh.product_set(&gk, caps.product)?;
        let rhs: ElementSet = gj
            .elements()?
            .iter()
            .filter(|g| kh.contains(g))
            .cloned()
            .collect();
        Ok(lhs == rhs)
    }
}

/// Left transversal of the subgroup with element set `sub` inside the subset
/// `ambient` of a group (ambient must be a union of left cosets of `sub`).
/// Representatives are coset minima, ascending.
fn transversal_within(
    group: &Arc<FiniteGroup>,
    ambient: &ElementSet,
    sub: &ElementSet,
) -> Result<Vec<GroupElement>> {
    let mut covered: std::collections::HashSet<GroupElement> = Default::default();
    let mut reps = Vec::new();
    for g in ambient.iter() {
        if covered.contains(g) {
            continue;
        }
        reps.push(g.clone());
        for h in sub.iter() {
            covered.insert(group.mul(g, h)?);
        }
    }
    Ok(reps)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::groupcore::Permutation;

    fn perm_el(text: &str, degree: usize) -> GroupElement {
        GroupElement::Perm(Permutation::parse(text, degree).unwrap())
    }

    pub use crate::fixtures::{klein_failure, tetrahedron};

    fn ts(labels: &[usize]) -> TypeSet {
        labels.iter().map(|&n| TypeLabel::num(n)).collect()
    }

    #[test]
    fn subset_order_is_cardinality_then_lex() {
        let types = vec![TypeLabel::num(0), TypeLabel::num(1), TypeLabel::num(2)];
        let subsets = subsets_in_order(&types);
        let as_strings: Vec<String> = subsets
            .iter()
            .map(|s| {
                s.iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect();
        assert_eq!(
            as_strings,
            vec!["", "0", "1", "2", "01", "02", "12", "012"]
        );
    }

    #[test]
    fn parabolic_examples() {
        let sys = tetrahedron();
        assert_eq!(sys.parabolic(&ts(&[])).unwrap().order().unwrap(), 24);
        let g01 = sys.parabolic(&ts(&[0, 1])).unwrap();
        assert_eq!(g01.order().unwrap(), 2);
        assert!(g01.contains(&perm_el("(3,4)", 4)).unwrap());
        assert_eq!(sys.borel().unwrap().order().unwrap(), 1);
        assert_eq!(sys.borel_index().unwrap(), 24);
    }

    #[test]
    fn parabolic_of_union_is_intersection_of_parabolics() {
        let sys = tetrahedron();
        for j in subsets_in_order(sys.types()) {
            for k in subsets_in_order(sys.types()) {
                let union: TypeSet = j.union(&k).cloned().collect();
                let lhs = sys.parabolic(&union).unwrap();
                let rhs = sys
                    .parabolic(&j)
                    .unwrap()
                    .intersect(&sys.parabolic(&k).unwrap())
                    .unwrap();
                assert!(lhs.equal_elements(&rhs).unwrap());
            }
        }
    }

    #[test]
    fn tetrahedron_is_flag_transitive_all_methods() {
        let sys = tetrahedron();
        for method in [
            FlagTransitivityMethod::Product,
            FlagTransitivityMethod::Triple,
            FlagTransitivityMethod::Geometry,
        ] {
            let report = sys.check_flag_transitive(method).unwrap();
            assert!(report.pass, "method {:?}", method);
        }
    }

    #[test]
    fn rank_one_system_is_flag_transitive() {
        let g = FiniteGroup::permutation(
            "Sym(3)",
            3,
            vec![
                ("a".into(), Permutation::parse("(1,2)", 3).unwrap()),
                ("b".into(), Permutation::parse("(2,3)", 3).unwrap()),
            ],
        )
        .unwrap();
        let sub = Subgroup::generated(g.clone(), vec![perm_el("(1,2)", 3)]).unwrap();
        let sys = CosetSystem::new(g, vec![(TypeLabel::num(0), sub)]).unwrap();
        for method in [
            FlagTransitivityMethod::Product,
            FlagTransitivityMethod::Triple,
            FlagTransitivityMethod::Geometry,
        ] {
            assert!(sys.check_flag_transitive(method).unwrap().pass);
        }
    }

    #[test]
    fn klein_system_fails_flag_transitivity_with_witness() {
        let sys = klein_failure();
        let report = sys
            .check_flag_transitive(FlagTransitivityMethod::Product)
            .unwrap();
        assert!(!report.pass);
        let witness = report.witness.expect("failing report carries a witness");
        assert!(witness.reverify(&sys).unwrap());
        let triple = sys
            .check_flag_transitive(FlagTransitivityMethod::Triple)
            .unwrap();
        assert!(!triple.pass);
        assert!(triple.witness.unwrap().reverify(&sys).unwrap());
    }

    #[test]
    fn tetrahedron_residual_connectedness() {
        let sys = tetrahedron();
        for variant in [RcVariant::Rc1, RcVariant::Rc2, RcVariant::Intersection] {
            assert!(sys.check_residually_connected(variant).unwrap().pass);
        }
    }

    #[test]
    fn duplicated_parabolic_fails_rc() {
        // G = C2 x C2 with G_0 = G_1 = <x>: G_{} != <G_0, G_1>
        let g = FiniteGroup::permutation(
            "C2xC2",
            4,
            vec![
                ("x".into(), Permutation::parse("(1,2)", 4).unwrap()),
                ("y".into(), Permutation::parse("(3,4)", 4).unwrap()),
            ],
        )
        .unwrap();
        let x_sub = || Subgroup::generated(g.clone(), vec![perm_el("(1,2)", 4)]).unwrap();
        let sys = CosetSystem::new(
            g.clone(),
            vec![(TypeLabel::num(0), x_sub()), (TypeLabel::num(1), x_sub())],
        )
        .unwrap();
        for variant in [RcVariant::Rc1, RcVariant::Rc2, RcVariant::Intersection] {
            let report = sys.check_residually_connected(variant).unwrap();
            assert!(!report.pass, "variant {:?}", variant);
            assert!(report.witness.unwrap().reverify(&sys).unwrap());
        }
    }

    #[test]
    fn tetrahedron_is_thin() {
        let sys = tetrahedron();
        let (firm, thin) = sys.check_firm_thin(true).unwrap();
        assert!(firm.pass && thin.pass);
        assert!(!firm.conditional);
    }

    #[test]
    fn equal_minimal_parabolic_and_borel_is_not_firm() {
        let g = FiniteGroup::permutation(
            "Sym(3)",
            3,
            vec![
                ("a".into(), Permutation::parse("(1,2)", 3).unwrap()),
                ("b".into(), Permutation::parse("(2,3)", 3).unwrap()),
            ],
        )
        .unwrap();
        // rank 2 with G_0 = G_1 = <(1,2)>: G_{0} = G_{01} = Borel
        let sub = || Subgroup::generated(g.clone(), vec![perm_el("(1,2)", 3)]).unwrap();
        let parabolics = vec![(TypeLabel::num(0), sub()), (TypeLabel::num(1), sub())];
        let sys = CosetSystem::new(g, parabolics).unwrap();
        let (firm, _thin) = sys.check_firm_thin(false).unwrap();
        assert!(!firm.pass);
        assert!(firm.conditional);
    }

    #[test]
    fn residue_examples() {
        let sys = tetrahedron();
        // vertex residue: rank-2 triangle with group of order 6, indexes 3 and 3
        let residue = sys.residue_system(&ts(&[0])).unwrap();
        assert_eq!(residue.rank(), 2);
        assert_eq!(residue.group().order().unwrap(), 6);
        for t in residue.types() {
            assert_eq!(residue.maximal_parabolic(t).unwrap().index().unwrap(), 3);
        }
        // edge residue: digon, 2 + 2 elements
        let digon = sys.residue_system(&ts(&[1])).unwrap();
        assert_eq!(digon.group().order().unwrap(), 4);
        for t in digon.types() {
            assert_eq!(digon.maximal_parabolic(t).unwrap().index().unwrap(), 2);
        }
    }

    #[test]
    fn quotient_by_borel_normalizes_thin_systems() {
        // C2 x C2 rank-1 system with Borel = <y>: quotient has trivial Borel
        let g = FiniteGroup::permutation(
            "C2xC2",
            4,
            vec![
                ("x".into(), Permutation::parse("(1,2)", 4).unwrap()),
                ("y".into(), Permutation::parse("(3,4)", 4).unwrap()),
            ],
        )
        .unwrap();
        let sub = Subgroup::generated(g.clone(), vec![perm_el("(3,4)", 4)]).unwrap();
        let sys = CosetSystem::new(g, vec![(TypeLabel::num(0), sub)]).unwrap();
        assert_eq!(sys.borel().unwrap().order().unwrap(), 2);
        let quotient = sys.quotient_by_borel().unwrap();
        assert_eq!(quotient.group().order().unwrap(), 2);
        assert_eq!(quotient.borel().unwrap().order().unwrap(), 1);
        assert_eq!(quotient.borel_index().unwrap(), 2);
    }

    #[test]
    fn product_of_intersections_spot_check() {
        let tetra = tetrahedron();
        let subsets = subsets_in_order(tetra.types());
        for j in &subsets {
            for h in &subsets {
                for k in &subsets {
                    assert!(tetra.product_of_intersections_holds(j, h, k).unwrap());
                }
            }
        }
        let bad = klein_failure();
        let subsets = subsets_in_order(bad.types());
        let mut violated = false;
        'outer: for j in &subsets {
            for h in &subsets {
                for k in &subsets {
                    if !bad.product_of_intersections_holds(j, h, k).unwrap() {
                        violated = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(violated);
    }
}
