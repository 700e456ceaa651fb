//! Brute-force classifier working directly in `Hol(Z_p x E)`.
//!
//! Regular subgroups of order `8p` are enumerated and grouped under
//! conjugation by `Aut(Z_p x E) = Z_p^* x Aut(E)` without going through
//! characters of regular subgroups of `Hol(E)`. The results are then compared
//! with the pair-orbit counts.
//!
//! Search: for `p` on the allowlist, `p` does not divide `|Hol(E)|`, so the
//! only elements of order `p` are the translations `(m, 1, 0, id)`; this is
//! checked at run time. Every regular `G` therefore contains the translation
//! subgroup `T_p` and is the preimage of an order-8 subgroup of
//! `Hol(Z_p x E) / T_p = Z_p^* x Hol(E)`. Those order-8 subgroups are found
//! by index-2 extension chains, every preimage is materialized, and
//! regularity is tested on the `8p` points.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{lcm, AbelianGroup};
use crate::error::{reject_excluded_prime, Error, Result};
use crate::holn::{pow_mod, HolN, HolNElement};
use crate::holomorph::HolElement;
use crate::subgroups::IsoType;
use crate::tau::{embed_pair_default, Classification, PairClass, ResidueClass};

pub const DEFAULT_ALLOWLIST: [u64; 4] = [5, 11, 13, 17];

/// A subgroup of `Hol(Z_p x E)`, members sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NSubgroup {
    members: Vec<HolNElement>,
}

impl NSubgroup {
    pub fn from_members(mut members: Vec<HolNElement>) -> Self {
        members.sort_unstable();
        members.dedup();
        NSubgroup { members }
    }

    pub fn members(&self) -> &[HolNElement] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: HolNElement) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn conj_by_aut(&self, holn: &HolN, i: u32, nu: usize) -> NSubgroup {
        NSubgroup::from_members(
            self.members
                .iter()
                .map(|&g| holn.conj_by_aut(i, nu, g))
                .collect(),
        )
    }

    /// The elements with `m = 0`: a complement of the translations, hence a
    /// Sylow 2-subgroup whenever the translations are contained.
    pub fn sylow_two(&self) -> Vec<HolNElement> {
        self.members.iter().copied().filter(|g| g.m == 0).collect()
    }
}

fn element_order_n(holn: &HolN, g: HolNElement) -> usize {
    let mut n = 1;
    let mut cur = g;
    while cur != holn.identity() {
        cur = holn.mul(cur, g);
        n += 1;
    }
    n
}

/// Isomorphism type of the Sylow 2-subgroup (the `m = 0` slice).
pub fn sylow_iso_type(holn: &HolN, g: &NSubgroup) -> Result<IsoType> {
    let s = g.sylow_two();
    let abelian = s
        .iter()
        .all(|&x| s.iter().all(|&y| holn.mul(x, y) == holn.mul(y, x)));
    let orders: Vec<usize> = s.iter().map(|&x| element_order_n(holn, x)).collect();
    IsoType::from_invariants(abelian, &orders)
}

/// Every element of order `p`, computed from component orders.
pub fn order_p_elements(holn: &HolN) -> Vec<HolNElement> {
    let p = holn.p();
    let hol = holn.hol();
    let affine_order = |m: u32, k: u32| -> u64 {
        let mut n = 1u64;
        let (mut cm, mut ck) = (m as u64, k as u64);
        while !(cm == 0 && ck == 1) {
            cm = (cm + ck * m as u64) % p as u64;
            ck = ck * k as u64 % p as u64;
            n += 1;
        }
        n
    };
    let hol_orders: Vec<(HolElement, u64)> = hol
        .elements()
        .into_iter()
        .map(|g| (g, hol.element_order(g) as u64))
        .collect();
    let mut out = Vec::new();
    for m in 0..p {
        for k in 1..p {
            let a = affine_order(m, k);
            for &(g, o) in &hol_orders {
                if lcm(a, o) == p as u64 {
                    out.push(HolNElement::new(m, k, g));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

type QElem = (u32, HolElement);

struct Quotient<'a> {
    holn: &'a HolN,
}

impl Quotient<'_> {
    fn mul(&self, x: QElem, y: QElem) -> QElem {
        let p = self.holn.p() as u64;
        (
            (x.0 as u64 * y.0 as u64 % p) as u32,
            self.holn.hol().mul(x.1, y.1),
        )
    }

    fn inv(&self, x: QElem) -> QElem {
        let p = self.holn.p() as u64;
        (
            pow_mod(x.0 as u64, p - 2, p) as u32,
            self.holn.hol().inv(x.1),
        )
    }

    fn identity(&self) -> QElem {
        (1, self.holn.hol().identity())
    }

    /// A non-identity coset `{(m, k, g)}` acts freely on `Z_p x E` iff `g`
    /// has no fixed point on `E`.
    fn free(&self, x: QElem) -> bool {
        x == self.identity() || !self.holn.hol().has_fixed_point(x.1)
    }
}

fn check_allowed(p: u64, allowlist: &[u64]) -> Result<()> {
    reject_excluded_prime(p)?;
    if !allowlist.contains(&p) {
        return Err(Error::NotAllowed(p, allowlist.to_vec()));
    }
    Ok(())
}

/// All regular subgroups of `Hol(Z_p x E)`, sorted.
pub fn enumerate_regular_8p(holn: &HolN, allowlist: &[u64]) -> Result<Vec<NSubgroup>> {
    let p = holn.p();
    check_allowed(p as u64, allowlist)?;
    let hol = holn.hol();

    let expected: Vec<HolNElement> = (1..p)
        .map(|m| HolNElement::new(m, 1, hol.identity()))
        .collect();
    if order_p_elements(holn) != expected {
        return Err(Error::Consistency(format!(
            "elements of order {p} are not exactly the translations of Z_{p}"
        )));
    }

    let q = Quotient { holn };
    let units: Vec<u32> = (1..p)
        .filter(|&k| pow_mod(k as u64, 8, p as u64) == 1)
        .collect();
    let candidates: Vec<QElem> = units
        .iter()
        .flat_map(|&k| hol.elements().into_iter().map(move |g| (k, g)))
        .filter(|&x| x != q.identity() && q.free(x))
        .collect();

    let mut level: BTreeSet<Vec<QElem>> = BTreeSet::from([vec![q.identity()]]);
    for _ in 0..3 {
        level = level
            .par_iter()
            .flat_map_iter(|s| {
                let set: HashSet<QElem> = s.iter().copied().collect();
                candidates
                    .iter()
                    .filter(|&&c| !set.contains(&c) && set.contains(&q.mul(c, c)))
                    .filter(|&&c| {
                        let ci = q.inv(c);
                        s.iter().all(|&x| set.contains(&q.mul(q.mul(c, x), ci)))
                    })
                    .filter_map(|&c| {
                        let coset: Vec<QElem> = s.iter().map(|&x| q.mul(c, x)).collect();
                        if !coset.iter().all(|&x| q.free(x)) {
                            return None;
                        }
                        let mut next: Vec<QElem> = s.iter().copied().chain(coset).collect();
                        next.sort_unstable();
                        Some(next)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }

    let mut out: Vec<NSubgroup> = level
        .into_par_iter()
        .map(|h| {
            NSubgroup::from_members(
                h.iter()
                    .flat_map(|&(k, g)| (0..p).map(move |m| HolNElement::new(m, k, g)))
                    .collect(),
            )
        })
        .filter(|g| is_regular_n(holn, g))
        .collect();
    out.sort();
    Ok(out)
}

/// Free and transitive on the `8p` points: orbit of `(0, 0)` covers every
/// point and `|G| = 8p`.
pub fn is_regular_n(holn: &HolN, g: &NSubgroup) -> bool {
    if g.order() != holn.degree() {
        return false;
    }
    let orbit: HashSet<(u32, usize)> = g.members().iter().map(|&x| holn.act(x, (0, 0))).collect();
    orbit.len() == holn.degree()
}

/// Checks closure under multiplication on every pair.
pub fn is_subgroup_n(holn: &HolN, g: &NSubgroup) -> bool {
    g.contains(holn.identity())
        && g.members()
            .iter()
            .all(|&x| g.members().iter().all(|&y| g.contains(holn.mul(x, y))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NConjClass {
    pub representative: NSubgroup,
    pub orbit_size: usize,
    pub iso_type: IsoType,
}

/// Orbits under `Φ_(i, ν)` for all `(i, ν) ∈ Z_p^* x Aut(E)`.
pub fn conjugacy_classes_n(holn: &HolN, subs: &[NSubgroup]) -> Result<Vec<NConjClass>> {
    let index: HashMap<&NSubgroup, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut order: Vec<usize> = (0..subs.len()).collect();
    order.sort_by(|&a, &b| subs[a].cmp(&subs[b]));
    let mut visited = vec![false; subs.len()];
    let mut classes = Vec::new();
    for i in order {
        if visited[i] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for unit in holn.units() {
            for nu in 0..holn.hol().auts().len() {
                let image = subs[i].conj_by_aut(holn, unit, nu);
                let j = *index.get(&image).ok_or_else(|| {
                    Error::Consistency("conjugate of a regular subgroup was not enumerated".into())
                })?;
                visited[j] = true;
                orbit.insert(j);
            }
        }
        classes.push(NConjClass {
            representative: subs[i].clone(),
            orbit_size: orbit.len(),
            iso_type: sylow_iso_type(holn, &subs[i])?,
        });
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

/// Multiset of `(k, conjugacy class of σ in Aut(E))`, invariant under every
/// `Φ_(i, ν)`.
fn signature(class_ids: &[usize], g: &NSubgroup) -> Vec<(u32, usize)> {
    let mut sig: Vec<(u32, usize)> = g
        .members()
        .iter()
        .map(|x| (x.k, class_ids[x.e.sigma()]))
        .collect();
    sig.sort_unstable();
    sig
}

/// Whether some `Φ_(i, ν)` maps `a` onto `b`.
pub fn are_conjugate_n(holn: &HolN, a: &NSubgroup, b: &NSubgroup) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    let class_ids = holn.hol().auts().conjugacy_class_ids();
    if signature(&class_ids, a) != signature(&class_ids, b) {
        return Ok(false);
    }
    if sylow_iso_type(holn, a)? != sylow_iso_type(holn, b)? {
        return Ok(false);
    }
    for unit in holn.units() {
        for nu in 0..holn.hol().auts().len() {
            if &a.conj_by_aut(holn, unit, nu) == b {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Oracle classes of one `E` at one prime.
#[derive(Clone, Debug)]
pub struct OracleSurvey {
    pub holn: HolN,
    pub subgroups: Vec<NSubgroup>,
    pub classes: Vec<NConjClass>,
}

impl OracleSurvey {
    pub fn compute(p: u64, group: &AbelianGroup, allowlist: &[u64]) -> Result<Self> {
        check_allowed(p, allowlist)?;
        let holn = HolN::new(p, group)?;
        let subgroups = enumerate_regular_8p(&holn, allowlist)?;
        let classes = conjugacy_classes_n(&holn, &subgroups)?;
        Ok(OracleSurvey {
            holn,
            subgroups,
            classes,
        })
    }

    pub fn distribution(&self) -> BTreeMap<IsoType, usize> {
        let mut dist: BTreeMap<IsoType, usize> = IsoType::ALL.iter().map(|&t| (t, 0)).collect();
        for c in &self.classes {
            *dist.entry(c.iso_type).or_default() += 1;
        }
        dist
    }

    /// Index of the oracle class containing `g`.
    pub fn class_of(&self, g: &NSubgroup) -> Option<usize> {
        self.classes.iter().position(|c| {
            self.holn.units().any(|unit| {
                (0..self.holn.hol().auts().len())
                    .any(|nu| &c.representative.conj_by_aut(&self.holn, unit, nu) == g)
            })
        })
    }

    /// Oracle class hit by the embedding of each admitted pair orbit.
    pub fn pair_correspondence(&self, pairs: &[&PairClass]) -> Result<Vec<usize>> {
        pairs
            .iter()
            .map(|pc| {
                let g =
                    NSubgroup::from_members(embed_pair_default(&self.holn, &pc.subgroup, &pc.tau)?);
                if !is_regular_n(&self.holn, &g) {
                    return Err(Error::Consistency("embedded pair is not regular".into()));
                }
                self.class_of(&g).ok_or_else(|| {
                    Error::Consistency("embedded pair lies in no oracle class".into())
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCount {
    pub oracle: usize,
    pub predicted: usize,
}

/// One `(p, E)` comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckEntry {
    pub p: u64,
    #[serde(rename = "E")]
    pub group: String,
    pub oracle_classes: usize,
    pub predicted: usize,
    pub per_iso_type: BTreeMap<IsoType, IsoCount>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub p: u64,
    pub residue: ResidueClass,
    pub entries: Vec<CrossCheckEntry>,
    pub all_match: bool,
}

impl CrossCheckReport {
    /// Cells that disagree, as `E/type` labels.
    pub fn mismatches(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.entries {
            for (t, c) in &e.per_iso_type {
                if c.oracle != c.predicted {
                    out.push(format!(
                        "{}/{t}: oracle {} vs predicted {}",
                        e.group, c.oracle, c.predicted
                    ));
                }
            }
            if e.oracle_classes != e.predicted {
                out.push(format!(
                    "{}/total: oracle {} vs predicted {}",
                    e.group, e.oracle_classes, e.predicted
                ));
            }
        }
        out
    }
}

/// Compares oracle class counts with the pair-orbit table for each `E`.
pub fn cross_check(
    p: u64,
    groups: &[AbelianGroup],
    allowlist: &[u64],
    classification: &Classification,
) -> Result<CrossCheckReport> {
    check_allowed(p, allowlist)?;
    let residue = ResidueClass::from_prime(p)?;
    let table = classification.brace_table(residue);
    let entries = groups
        .par_iter()
        .map(|e| {
            let survey = OracleSurvey::compute(p, e, allowlist)?;
            let dist = survey.distribution();
            let per_iso_type: BTreeMap<IsoType, IsoCount> = IsoType::ALL
                .iter()
                .map(|&t| {
                    let predicted = table.cell(e, t).ok_or_else(|| {
                        Error::Argument(format!("{e} is not an abelian group of order 8"))
                    })?;
                    Ok((
                        t,
                        IsoCount {
                            oracle: dist[&t],
                            predicted,
                        },
                    ))
                })
                .collect::<Result<_>>()?;
            let oracle_classes = survey.classes.len();
            let predicted = table.row_total(e).unwrap_or(0);
            let matches = oracle_classes == predicted
                && per_iso_type.values().all(|c| c.oracle == c.predicted);
            Ok(CrossCheckEntry {
                p,
                group: e.label(),
                oracle_classes,
                predicted,
                per_iso_type,
                matches,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossCheckReport {
        p,
        residue,
        all_match: entries.iter().all(|e| e.matches),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allowlist_is_enforced() {
        let holn = HolN::new(19, &AbelianGroup::cyclic8()).unwrap();
        assert!(matches!(
            enumerate_regular_8p(&holn, &DEFAULT_ALLOWLIST),
            Err(Error::NotAllowed(19, _))
        ));
        assert!(matches!(
            OracleSurvey::compute(7, &AbelianGroup::cyclic8(), &DEFAULT_ALLOWLIST),
            Err(Error::UnsupportedPrime { known: 91, .. })
        ));
    }

    #[test]
    fn order_p_elements_are_translations() {
        let holn = HolN::new(5, &AbelianGroup::z4_z2()).unwrap();
        let els = order_p_elements(&holn);
        assert_eq!(els.len(), 4);
        assert!(els.iter().all(|g| g.k == 1 && g.e == holn.hol().identity()));
        assert_eq!(els[0], HolNElement::new(1, 1, holn.hol().identity()));
    }

    #[test]
    fn z8_at_five() {
        let survey =
            OracleSurvey::compute(5, &AbelianGroup::cyclic8(), &DEFAULT_ALLOWLIST).unwrap();
        for g in &survey.subgroups {
            assert!(is_regular_n(&survey.holn, g));
        }
        for g in survey.subgroups.iter().step_by(5) {
            assert!(is_subgroup_n(&survey.holn, g));
        }
        assert_eq!(survey.classes.len(), 18);
    }
}
