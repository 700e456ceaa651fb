//! Regular subgroups of `Hol(E)`: closure, backtracking enumeration,
//! `Aut(E)`-conjugacy classes and isomorphism types of order-8 groups.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::holomorph::{HolElement, HolGroup};

/// A subgroup stored as its canonically sorted member list.
///
/// Equality, ordering and hashing only look at the members; `generators`
/// is an optional witness.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<HolElement>,
    generators: Vec<HolElement>,
}

impl Subgroup {
    /// Wraps a member list that is already known to be a subgroup.
    pub fn from_members(mut members: Vec<HolElement>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup {
            members,
            generators: Vec::new(),
        }
    }

    pub fn with_generators(mut self, generators: Vec<HolElement>) -> Self {
        self.generators = generators;
        self
    }

    pub fn members(&self) -> &[HolElement] {
        &self.members
    }

    pub fn generators(&self) -> &[HolElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: HolElement) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn position(&self, g: HolElement) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }

    /// `Φ_ν(S)`.
    pub fn conj_by_aut(&self, hol: &HolGroup, nu: usize) -> Subgroup {
        Subgroup::from_members(
            self.members
                .iter()
                .map(|&g| hol.conj_by_aut(nu, g))
                .collect(),
        )
    }

    /// `h S h^{-1}` for an arbitrary `h ∈ Hol(E)`.
    pub fn conj(&self, hol: &HolGroup, h: HolElement) -> Subgroup {
        Subgroup::from_members(self.members.iter().map(|&g| hol.conj(h, g)).collect())
    }

    /// One element per line, in the notation of [`HolGroup::render`].
    pub fn dump(&self, hol: &HolGroup) -> String {
        let mut out = String::new();
        for &g in &self.members {
            out.push_str(&hol.render(g));
            out.push('\n');
        }
        out
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

/// The five isomorphism types of groups of order 8, in table column order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IsoType {
    C8,
    C4xC2,
    C2xC2xC2,
    D8,
    Q8,
}

impl IsoType {
    pub const ALL: [IsoType; 5] = [
        IsoType::C8,
        IsoType::C4xC2,
        IsoType::C2xC2xC2,
        IsoType::D8,
        IsoType::Q8,
    ];

    /// Classifies a group of order 8 from commutativity and its element
    /// orders.
    pub fn from_invariants(abelian: bool, element_orders: &[usize]) -> Result<IsoType> {
        if element_orders.len() != 8 {
            return Err(Error::Argument(format!(
                "isomorphism type needs a group of order 8, got {}",
                element_orders.len()
            )));
        }
        let max = element_orders.iter().copied().max().unwrap_or(1);
        let involutions = element_orders.iter().filter(|&&o| o == 2).count();
        Ok(match (max, abelian) {
            (8, _) => IsoType::C8,
            (4, true) => IsoType::C4xC2,
            (2, _) => IsoType::C2xC2xC2,
            (4, false) if involutions == 1 => IsoType::Q8,
            (4, false) => IsoType::D8,
            _ => {
                return Err(Error::Consistency(format!(
                    "element orders {element_orders:?} do not fit a group of order 8"
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            IsoType::C8 => "C8",
            IsoType::C4xC2 => "C4xC2",
            IsoType::C2xC2xC2 => "C2xC2xC2",
            IsoType::D8 => "D8",
            IsoType::Q8 => "Q8",
        }
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for IsoType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IsoType::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Argument(format!("unknown isomorphism type `{s}`")))
    }
}

/// Bound used by [`closure`] when no explicit one is given.
pub const DEFAULT_CLOSURE_BOUND: usize = 1 << 16;

/// Smallest subgroup containing `gens`.
pub fn closure(hol: &HolGroup, gens: &[HolElement]) -> Result<Subgroup> {
    closure_bounded(hol, gens, DEFAULT_CLOSURE_BOUND)
}

pub fn closure_bounded(hol: &HolGroup, gens: &[HolElement], bound: usize) -> Result<Subgroup> {
    if gens.is_empty() {
        return Err(Error::Argument("closure of an empty generator list".into()));
    }
    let members = close(hol, gens, bound, |_| true).ok_or_else(|| Error::Capacity {
        what: "subgroup closure".into(),
        size: bound + 1,
        bound,
    })?;
    Ok(Subgroup::from_members(members).with_generators(gens.to_vec()))
}

/// Orbit closure under right multiplication by the generators. Returns
/// `None` as soon as more than `bound` elements appear or an element fails
/// `admissible`.
fn close(
    hol: &HolGroup,
    gens: &[HolElement],
    bound: usize,
    admissible: impl Fn(HolElement) -> bool,
) -> Option<Vec<HolElement>> {
    let id = hol.identity();
    let mut seen: HashSet<HolElement> = HashSet::from([id]);
    let mut members = vec![id];
    let mut i = 0;
    while i < members.len() {
        let g = members[i];
        for &s in gens {
            let h = hol.mul(g, s);
            if seen.insert(h) {
                if members.len() == bound || !admissible(h) {
                    return None;
                }
                members.push(h);
            }
        }
        i += 1;
    }
    Some(members)
}

/// Regular on `E`: order `|E|` and no non-identity member fixes a point.
pub fn is_regular(hol: &HolGroup, s: &Subgroup) -> bool {
    s.order() == hol.degree()
        && s.members()
            .iter()
            .all(|&g| hol.is_identity(g) || !hol.has_fixed_point(g))
}

/// Fixed-point-free non-identity elements sorted by (order descending, key).
pub fn generator_candidates(hol: &HolGroup) -> Vec<HolElement> {
    let mut cands: Vec<(usize, HolElement)> = hol
        .elements()
        .into_iter()
        .filter(|&g| !hol.has_fixed_point(g))
        .map(|g| (hol.element_order(g), g))
        .collect();
    cands.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    cands.into_iter().map(|(_, g)| g).collect()
}

/// All regular subgroups of `Hol(E)`, canonically sorted.
///
/// Backtracking over generator candidates: each branch adds the next
/// candidate not yet in the partial subgroup and closes, abandoning the
/// branch once the closure exceeds `|E|` elements or picks up a
/// non-identity element with a fixed point.
pub fn enumerate_regular_subgroups(hol: &HolGroup) -> Vec<Subgroup> {
    let cands = generator_candidates(hol);
    let found: BTreeSet<Subgroup> = (0..cands.len())
        .into_par_iter()
        .map(|root| {
            let mut local = HashSet::new();
            let mut gens = vec![cands[root]];
            extend(hol, &cands, &mut gens, root, &mut local);
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
        .into_iter()
        .collect();
    found.into_iter().collect()
}

fn extend(
    hol: &HolGroup,
    cands: &[HolElement],
    gens: &mut Vec<HolElement>,
    last: usize,
    out: &mut HashSet<Subgroup>,
) {
    let n = hol.degree();
    let Some(members) = close(hol, gens, n, |g| !hol.has_fixed_point(g)) else {
        return;
    };
    if !n.is_multiple_of(members.len()) {
        return;
    }
    if members.len() == n {
        out.insert(Subgroup::from_members(members).with_generators(gens.clone()));
        return;
    }
    let current: HashSet<HolElement> = members.into_iter().collect();
    for next in last + 1..cands.len() {
        if current.contains(&cands[next]) {
            continue;
        }
        gens.push(cands[next]);
        extend(hol, cands, gens, next, out);
        gens.pop();
    }
}

/// An `Aut(E)`-orbit of subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: Subgroup,
    pub orbit: Vec<Subgroup>,
}

/// Partitions `subs` into `Aut(E)`-orbits, sorted by representative.
pub fn conjugacy_classes(hol: &HolGroup, subs: &[Subgroup]) -> Result<Vec<ConjClass>> {
    let index: HashMap<&Subgroup, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut order: Vec<usize> = (0..subs.len()).collect();
    order.sort_by(|&i, &j| subs[i].cmp(&subs[j]));
    let mut visited = vec![false; subs.len()];
    let mut classes = Vec::new();
    for i in order {
        if visited[i] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for nu in 0..hol.auts().len() {
            let image = subs[i].conj_by_aut(hol, nu);
            let j = *index.get(&image).ok_or_else(|| {
                Error::Consistency(format!(
                    "conjugate of subgroup {i} by automorphism {nu} is missing from the list"
                ))
            })?;
            visited[j] = true;
            orbit.insert(subs[j].clone());
        }
        let orbit: Vec<Subgroup> = orbit.into_iter().collect();
        classes.push(ConjClass {
            representative: orbit[0].clone(),
            orbit,
        });
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

pub fn is_abelian(hol: &HolGroup, s: &Subgroup) -> bool {
    let m = s.members();
    m.iter()
        .all(|&g| m.iter().all(|&h| hol.mul(g, h) == hol.mul(h, g)))
}

pub fn iso_type(hol: &HolGroup, s: &Subgroup) -> Result<IsoType> {
    let orders: Vec<usize> = s.members().iter().map(|&g| hol.element_order(g)).collect();
    IsoType::from_invariants(is_abelian(hol, s), &orders)
}

/// Conjugacy-class counts per isomorphism type (all five types present).
pub fn class_distribution(hol: &HolGroup) -> Result<BTreeMap<IsoType, usize>> {
    let subs = enumerate_regular_subgroups(hol);
    let classes = conjugacy_classes(hol, &subs)?;
    distribution_of(hol, &classes)
}

pub fn distribution_of(hol: &HolGroup, classes: &[ConjClass]) -> Result<BTreeMap<IsoType, usize>> {
    let mut dist: BTreeMap<IsoType, usize> = IsoType::ALL.iter().map(|&t| (t, 0)).collect();
    for c in classes {
        *dist.entry(iso_type(hol, &c.representative)?).or_default() += 1;
    }
    Ok(dist)
}

/// Regular subgroups and their classes for one `E`.
#[derive(Clone, Debug)]
pub struct HolomorphSurvey {
    pub hol: HolGroup,
    pub subgroups: Vec<Subgroup>,
    pub classes: Vec<ConjClass>,
    pub class_types: Vec<IsoType>,
}

impl HolomorphSurvey {
    pub fn compute(group: &AbelianGroup) -> Result<Self> {
        let hol = HolGroup::new(group)?;
        let subgroups = enumerate_regular_subgroups(&hol);
        let classes = conjugacy_classes(&hol, &subgroups)?;
        let class_types = classes
            .iter()
            .map(|c| iso_type(&hol, &c.representative))
            .collect::<Result<Vec<_>>>()?;
        Ok(HolomorphSurvey {
            hol,
            subgroups,
            classes,
            class_types,
        })
    }

    pub fn distribution(&self) -> BTreeMap<IsoType, usize> {
        let mut dist: BTreeMap<IsoType, usize> = IsoType::ALL.iter().map(|&t| (t, 0)).collect();
        for &t in &self.class_types {
            *dist.entry(t).or_default() += 1;
        }
        dist
    }

    /// Index of the class containing `s`.
    pub fn class_of(&self, s: &Subgroup) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.orbit.binary_search(s).is_ok())
    }
}
