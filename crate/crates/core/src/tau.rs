//! Classification of pairs `(F, τ)`: `F` a regular subgroup of `Hol(E)` and
//! `τ: F → Z_p^*` a character, up to `ν·(F, τ) = (Φ_ν(F), τ ∘ Φ_ν^{-1})`.
//!
//! Characters are stored additively in `Z_8`: every character `F → Z_p^*`
//! factors through the cyclic 2-Sylow of `Z_p^*`, so one enumeration serves
//! all primes and the residue class of `p` only filters by image order.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{gcd, AbelianGroup};
use crate::error::{reject_excluded_prime, Error, Result};
use crate::holn::{is_prime, pow_mod, two_part, unit_order, HolN, HolNElement};
use crate::holomorph::{HolElement, HolGroup};
use crate::subgroups::{closure, HolomorphSurvey, IsoType, Subgroup};

/// A homomorphism `F → Z_8`, values aligned with `F.members()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauMap {
    values: Vec<u8>,
}

impl TauMap {
    pub fn from_values(values: Vec<u8>) -> Self {
        TauMap { values }
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn value(&self, f: &Subgroup, g: HolElement) -> Option<u8> {
        f.position(g).map(|i| self.values[i])
    }

    /// Order of the image `τ(F) ≤ Z_8`.
    pub fn image_order(&self) -> u8 {
        self.values
            .iter()
            .map(|&v| (8 / gcd(v as u64, 8)) as u8)
            .max()
            .unwrap_or(1)
    }

    pub fn kernel_order(&self) -> usize {
        self.values.iter().filter(|&&v| v == 0).count()
    }

    pub fn kernel(&self, f: &Subgroup) -> Vec<HolElement> {
        f.members()
            .iter()
            .zip(&self.values)
            .filter(|(_, &v)| v == 0)
            .map(|(&g, _)| g)
            .collect()
    }

    /// `u·τ` for a unit `u` of `Z_8`.
    pub fn scaled(&self, u: u8) -> TauMap {
        TauMap {
            values: self.values.iter().map(|&v| v * u % 8).collect(),
        }
    }

    /// Checks `τ(gh) = τ(g) + τ(h)` on every pair.
    pub fn is_homomorphism(&self, hol: &HolGroup, f: &Subgroup) -> bool {
        let m = f.members();
        self.values.len() == m.len()
            && m.iter().enumerate().all(|(i, &g)| {
                m.iter().enumerate().all(|(j, &h)| {
                    f.position(hol.mul(g, h))
                        .is_some_and(|k| self.values[k] == (self.values[i] + self.values[j]) % 8)
                })
            })
    }
}

/// Shape of `ker τ` inside a group of order 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KernelKind {
    /// `τ` trivial: direct product.
    Whole,
    Cyclic4,
    Klein4,
    Order2,
    Trivial,
}

impl KernelKind {
    pub fn order(&self) -> usize {
        match self {
            KernelKind::Whole => 8,
            KernelKind::Cyclic4 | KernelKind::Klein4 => 4,
            KernelKind::Order2 => 2,
            KernelKind::Trivial => 1,
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelKind::Whole => "whole",
            KernelKind::Cyclic4 => "cyclic-4",
            KernelKind::Klein4 => "klein",
            KernelKind::Order2 => "order-2",
            KernelKind::Trivial => "trivial",
        })
    }
}

pub fn kernel_kind(hol: &HolGroup, f: &Subgroup, tau: &TauMap) -> KernelKind {
    let kernel = tau.kernel(f);
    match kernel.len() {
        8 => KernelKind::Whole,
        4 if kernel.iter().any(|&g| hol.element_order(g) == 4) => KernelKind::Cyclic4,
        4 => KernelKind::Klein4,
        2 => KernelKind::Order2,
        _ => KernelKind::Trivial,
    }
}

/// Residue class of `p` mod 8 that decides which image orders occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ResidueClass {
    #[serde(rename = "3,7")]
    ThreeSeven,
    #[serde(rename = "5")]
    Five,
    #[serde(rename = "1")]
    One,
}

impl ResidueClass {
    pub const ALL: [ResidueClass; 3] = [
        ResidueClass::ThreeSeven,
        ResidueClass::Five,
        ResidueClass::One,
    ];

    pub fn from_residue(r: u64) -> Result<Self> {
        match r {
            3 | 7 => Ok(ResidueClass::ThreeSeven),
            5 => Ok(ResidueClass::Five),
            1 => Ok(ResidueClass::One),
            _ => Err(Error::Residue(r)),
        }
    }

    /// Residue class of an admissible prime; rejects 2, 3, 7 and composites.
    pub fn from_prime(p: u64) -> Result<Self> {
        reject_excluded_prime(p)?;
        if p == 2 || !is_prime(p) {
            return Err(Error::Argument(format!("{p} is not an odd prime")));
        }
        Self::from_residue(p % 8)
    }

    /// Largest image order `d = gcd(8, p - 1)`.
    pub fn max_image_order(&self) -> u8 {
        match self {
            ResidueClass::ThreeSeven => 2,
            ResidueClass::Five => 4,
            ResidueClass::One => 8,
        }
    }

    pub fn admits(&self, image_order: u8) -> bool {
        image_order <= self.max_image_order()
    }

    pub fn label(&self) -> &'static str {
        match self {
            ResidueClass::ThreeSeven => "p ≡ 3,7 (mod 8)",
            ResidueClass::Five => "p ≡ 5 (mod 8)",
            ResidueClass::One => "p ≡ 1 (mod 8)",
        }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A small generating set: greedily add members outside the running closure.
pub fn generating_set(hol: &HolGroup, f: &Subgroup) -> Result<Vec<HolElement>> {
    if !f.generators().is_empty() {
        return Ok(f.generators().to_vec());
    }
    let mut gens = Vec::new();
    let mut current = closure(hol, &[hol.identity()])?;
    let mut by_order: Vec<HolElement> = f.members().to_vec();
    by_order.sort_by_key(|&g| std::cmp::Reverse(hol.element_order(g)));
    for g in by_order {
        if !current.contains(g) {
            gens.push(g);
            current = closure(hol, &gens)?;
        }
    }
    Ok(gens)
}

/// All homomorphisms `F → Z_8`, sorted by value vector.
///
/// Generator images are chosen freely, propagated along words, and every
/// survivor is validated on all pairs.
pub fn homomorphisms(hol: &HolGroup, f: &Subgroup) -> Result<Vec<TauMap>> {
    let gens = generating_set(hol, f)?;
    let n = f.order();
    let mut out = Vec::new();
    let combos = 8usize.pow(gens.len() as u32);
    'assign: for code in 0..combos {
        let images: Vec<u8> = (0..gens.len())
            .map(|i| ((code >> (3 * i)) & 7) as u8)
            .collect();
        let mut values: Vec<Option<u8>> = vec![None; n];
        let start = f
            .position(hol.identity())
            .ok_or_else(|| Error::Argument("subgroup without identity".into()))?;
        values[start] = Some(0);
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            let g = f.members()[i];
            let v = values[i].unwrap_or(0);
            for (&s, &sv) in gens.iter().zip(&images) {
                let j = f
                    .position(hol.mul(g, s))
                    .ok_or_else(|| Error::Argument("generator set leaves the subgroup".into()))?;
                let w = (v + sv) % 8;
                match values[j] {
                    None => {
                        values[j] = Some(w);
                        queue.push(j);
                    }
                    Some(old) if old != w => continue 'assign,
                    Some(_) => {}
                }
            }
        }
        let Some(values) = values.into_iter().collect::<Option<Vec<u8>>>() else {
            return Err(Error::Argument(
                "generators do not generate the subgroup".into(),
            ));
        };
        let tau = TauMap::from_values(values);
        if tau.is_homomorphism(hol, f) {
            out.push(tau);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// One orbit of pairs under `Aut(E)`.
#[derive(Clone, Debug)]
pub struct PairClass {
    pub subgroup: Subgroup,
    pub tau: TauMap,
    pub image_order: u8,
    pub kernel_kind: KernelKind,
    pub iso_type: IsoType,
    pub orbit_size: usize,
    /// Index of the subgroup's class in the survey.
    pub subgroup_class: usize,
}

impl PairClass {
    pub fn kernel_order(&self) -> usize {
        self.kernel_kind.order()
    }
}

/// `ν·(F, τ)`: the image subgroup and the transported character.
pub fn act_on_pair(hol: &HolGroup, nu: usize, f: &Subgroup, tau: &TauMap) -> (Subgroup, TauMap) {
    let image = f.conj_by_aut(hol, nu);
    let mut values = vec![0u8; image.order()];
    for (&g, &v) in f.members().iter().zip(tau.values()) {
        let pos = image
            .position(hol.conj_by_aut(nu, g))
            .expect("conjugate of a member lies in the conjugate subgroup");
        values[pos] = v;
    }
    (image, TauMap::from_values(values))
}

/// Orbits of all pairs `(F, τ)` with `F` ranging over every regular subgroup.
pub fn pair_orbits(survey: &HolomorphSurvey) -> Result<Vec<PairClass>> {
    let hol = &survey.hol;
    let subs = &survey.subgroups;
    let index: HashMap<&Subgroup, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let homs: Vec<Vec<TauMap>> = subs
        .par_iter()
        .map(|f| homomorphisms(hol, f))
        .collect::<Result<_>>()?;
    let class_of: Vec<usize> = {
        let mut v = vec![usize::MAX; subs.len()];
        for (c, class) in survey.classes.iter().enumerate() {
            for s in &class.orbit {
                v[index[s]] = c;
            }
        }
        v
    };

    let mut visited: HashSet<(usize, TauMap)> = HashSet::new();
    let mut classes = Vec::new();
    // subgroups are sorted, homomorphisms per subgroup are sorted, so the
    // first unvisited pair is the minimum of its orbit
    for (i, f) in subs.iter().enumerate() {
        for tau in &homs[i] {
            if visited.contains(&(i, tau.clone())) {
                continue;
            }
            let mut orbit_size = 0;
            for nu in 0..hol.auts().len() {
                let (image, moved) = act_on_pair(hol, nu, f, tau);
                let j = *index.get(&image).ok_or_else(|| {
                    Error::Consistency(
                        "conjugate of a regular subgroup missing from the survey".into(),
                    )
                })?;
                if visited.insert((j, moved)) {
                    orbit_size += 1;
                }
            }
            classes.push(PairClass {
                subgroup: f.clone(),
                tau: tau.clone(),
                image_order: tau.image_order(),
                kernel_kind: kernel_kind(hol, f, tau),
                iso_type: survey.class_types[class_of[i]],
                orbit_size,
                subgroup_class: class_of[i],
            });
        }
    }
    Ok(classes)
}

/// Counts of pair orbits by image order `d ∈ {1, 2, 4, 8}`.
pub fn image_order_buckets(pairs: &[PairClass]) -> BTreeMap<u8, usize> {
    let mut buckets: BTreeMap<u8, usize> = [1u8, 2, 4, 8].iter().map(|&d| (d, 0)).collect();
    for pc in pairs {
        *buckets.entry(pc.image_order).or_default() += 1;
    }
    buckets
}

/// Survey plus pair orbits for one `E`.
#[derive(Clone, Debug)]
pub struct GroupClassification {
    pub group: AbelianGroup,
    pub survey: HolomorphSurvey,
    pub pairs: Vec<PairClass>,
}

impl GroupClassification {
    pub fn compute(group: &AbelianGroup) -> Result<Self> {
        let survey = HolomorphSurvey::compute(group)?;
        let pairs = pair_orbits(&survey)?;
        Ok(GroupClassification {
            group: group.clone(),
            survey,
            pairs,
        })
    }

    pub fn admitted<'a>(
        &'a self,
        residue: ResidueClass,
    ) -> impl Iterator<Item = &'a PairClass> + 'a {
        self.pairs
            .iter()
            .filter(move |pc| residue.admits(pc.image_order))
    }

    pub fn count(&self, iso: IsoType, residue: ResidueClass) -> usize {
        self.admitted(residue)
            .filter(|pc| pc.iso_type == iso)
            .count()
    }
}

/// Pair orbits for all three abelian groups of order 8.
#[derive(Clone, Debug)]
pub struct Classification {
    pub groups: Vec<GroupClassification>,
}

impl Classification {
    pub fn compute() -> Result<Self> {
        let groups = AbelianGroup::order_eight()
            .par_iter()
            .map(GroupClassification::compute)
            .collect::<Result<Vec<_>>>()?;
        Ok(Classification { groups })
    }

    pub fn group(&self, e: &AbelianGroup) -> Result<&GroupClassification> {
        self.groups
            .iter()
            .find(|g| &g.group == e)
            .ok_or_else(|| Error::Argument(format!("{e} is not an abelian group of order 8")))
    }

    pub fn brace_table(&self, residue: ResidueClass) -> BraceTable {
        let rows: Vec<BraceRow> = self
            .groups
            .iter()
            .map(|g| {
                let cells: BTreeMap<IsoType, usize> = IsoType::ALL
                    .iter()
                    .map(|&t| (t, g.count(t, residue)))
                    .collect();
                BraceRow {
                    group: g.group.label(),
                    total: cells.values().sum(),
                    cells,
                }
            })
            .collect();
        let column_totals = IsoType::ALL
            .iter()
            .map(|&t| (t, rows.iter().map(|r| r.cells[&t]).sum()))
            .collect();
        BraceTable {
            residue,
            total: rows.iter().map(|r| r.total).sum(),
            rows,
            column_totals,
        }
    }

    /// Counts by kernel order inside the `(E, F)` cell.
    pub fn kernel_breakdown(
        &self,
        e: &AbelianGroup,
        iso: IsoType,
        residue: ResidueClass,
    ) -> Result<BTreeMap<usize, usize>> {
        let mut out = BTreeMap::new();
        for pc in self
            .group(e)?
            .admitted(residue)
            .filter(|pc| pc.iso_type == iso)
        {
            *out.entry(pc.kernel_order()).or_default() += 1;
        }
        Ok(out)
    }

    /// Like [`kernel_breakdown`](Self::kernel_breakdown) but separating cyclic
    /// from Klein kernels of order 4.
    pub fn kernel_kind_breakdown(
        &self,
        e: &AbelianGroup,
        iso: IsoType,
        residue: ResidueClass,
    ) -> Result<BTreeMap<KernelKind, usize>> {
        let mut out = BTreeMap::new();
        for pc in self
            .group(e)?
            .admitted(residue)
            .filter(|pc| pc.iso_type == iso)
        {
            *out.entry(pc.kernel_kind).or_default() += 1;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceRow {
    pub group: String,
    pub cells: BTreeMap<IsoType, usize>,
    pub total: usize,
}

/// Number of left braces of size 8p per (additive E, multiplicative F) cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceTable {
    pub residue: ResidueClass,
    pub rows: Vec<BraceRow>,
    pub column_totals: BTreeMap<IsoType, usize>,
    pub total: usize,
}

impl BraceTable {
    pub fn cell(&self, e: &AbelianGroup, iso: IsoType) -> Option<usize> {
        let label = e.label();
        self.rows
            .iter()
            .find(|r| r.group == label)
            .and_then(|r| r.cells.get(&iso).copied())
    }

    pub fn row_total(&self, e: &AbelianGroup) -> Option<usize> {
        let label = e.label();
        self.rows.iter().find(|r| r.group == label).map(|r| r.total)
    }

    pub fn column_totals_vec(&self) -> Vec<usize> {
        IsoType::ALL.iter().map(|t| self.column_totals[t]).collect()
    }
}

pub fn brace_table(residue: ResidueClass) -> Result<BraceTable> {
    Ok(Classification::compute()?.brace_table(residue))
}

/// Smallest positive integer generating the 2-Sylow of `Z_p^*`, raised to
/// the power that leaves an element of order `d`.
pub fn default_zeta(p: u64, d: u8) -> Result<u64> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Argument(format!("{p} is not an odd prime")));
    }
    let t = two_part(p);
    if d == 0 || !t.is_multiple_of(d as u64) {
        return Err(Error::Argument(format!(
            "Z_{p}^* has no element of order {d}"
        )));
    }
    let g = (1..p)
        .find(|&x| unit_order(x, p) == t)
        .ok_or_else(|| Error::Consistency(format!("no 2-Sylow generator mod {p}")))?;
    Ok(pow_mod(g, t / d as u64, p))
}

/// `{(m, ζ^{τ(g)·d/8}, g) : m ∈ Z_p, g ∈ F}`, the subgroup `Z_p ⋊_τ F` of
/// `Hol(Z_p x E)`. `ζ` must have multiplicative order equal to the image
/// order `d` of `τ`.
pub fn embed_pair(holn: &HolN, f: &Subgroup, tau: &TauMap, zeta: u64) -> Result<Vec<HolNElement>> {
    let p = holn.p() as u64;
    let d = tau.image_order() as u64;
    if zeta.is_multiple_of(p) || unit_order(zeta, p) != d {
        return Err(Error::Argument(format!(
            "ζ = {zeta} does not have multiplicative order {d} mod {p}"
        )));
    }
    let step = 8 / d;
    let mut out = Vec::with_capacity(p as usize * f.order());
    for (&g, &v) in f.members().iter().zip(tau.values()) {
        let k = pow_mod(zeta, v as u64 / step, p) as u32;
        for m in 0..p as u32 {
            out.push(HolNElement::new(m, k, g));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// [`embed_pair`] with the default `ζ`.
pub fn embed_pair_default(holn: &HolN, f: &Subgroup, tau: &TauMap) -> Result<Vec<HolNElement>> {
    let zeta = default_zeta(holn.p() as u64, tau.image_order())?;
    embed_pair(holn, f, tau, zeta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroups::iso_type;

    fn hol(desc: &str) -> HolGroup {
        HolGroup::new(&desc.parse().unwrap()).unwrap()
    }

    fn sub(h: &HolGroup, gens: &[&str]) -> Subgroup {
        let g: Vec<HolElement> = gens.iter().map(|t| h.parse_element(t).unwrap()).collect();
        closure(h, &g).unwrap()
    }

    #[test]
    fn hom_counts_by_type() {
        let h = hol("8");
        // a cyclic regular subgroup: translations
        let c8 = sub(&h, &["(1,1)"]);
        assert_eq!(iso_type(&h, &c8).unwrap(), IsoType::C8);
        assert_eq!(homomorphisms(&h, &c8).unwrap().len(), 8);
        let d8 = sub(&h, &["(2,1)", "(1,7)"]);
        assert_eq!(homomorphisms(&h, &d8).unwrap().len(), 4);
        let q8 = sub(&h, &["(2,1)", "(1,3)"]);
        assert_eq!(homomorphisms(&h, &q8).unwrap().len(), 4);
        let f = sub(&h, &["(2,5)", "(1,7)"]);
        // Hom(C4 x C2, C8) = 4 * 2
        assert_eq!(homomorphisms(&h, &f).unwrap().len(), 8);
        for tau in homomorphisms(&h, &f).unwrap() {
            assert!(tau.is_homomorphism(&h, &f));
            assert_eq!(tau.value(&f, h.identity()), Some(0));
            assert_eq!(tau.kernel_order() * tau.image_order() as usize, 8);
        }
    }

    #[test]
    fn residue_classes() {
        assert_eq!(
            ResidueClass::from_residue(7).unwrap(),
            ResidueClass::ThreeSeven
        );
        assert_eq!(
            ResidueClass::from_residue(3).unwrap(),
            ResidueClass::ThreeSeven
        );
        assert!(matches!(
            ResidueClass::from_residue(4),
            Err(Error::Residue(4))
        ));
        assert_eq!(ResidueClass::from_prime(13).unwrap(), ResidueClass::Five);
        assert_eq!(ResidueClass::from_prime(17).unwrap(), ResidueClass::One);
        assert!(matches!(
            ResidueClass::from_prime(7),
            Err(Error::UnsupportedPrime { known: 91, .. })
        ));
        assert!(matches!(
            ResidueClass::from_prime(3),
            Err(Error::UnsupportedPrime { known: 96, .. })
        ));
        assert!(ResidueClass::from_prime(15).is_err());
    }

    #[test]
    fn zeta_defaults() {
        assert_eq!(default_zeta(5, 2).unwrap(), 4);
        assert_eq!(default_zeta(5, 4).unwrap(), 2);
        assert_eq!(default_zeta(5, 1).unwrap(), 1);
        assert_eq!(default_zeta(11, 2).unwrap(), 10);
        assert!(default_zeta(11, 4).is_err());
        assert_eq!(unit_order(default_zeta(17, 8).unwrap(), 17), 8);
    }

    #[test]
    fn embed_rejects_wrong_zeta() {
        let h = hol("8");
        let holn = HolN::from_hol(5, h.clone()).unwrap();
        let f = sub(&h, &["(2,5)", "(1,7)"]);
        let tau = homomorphisms(&h, &f)
            .unwrap()
            .into_iter()
            .find(|t| t.image_order() == 2)
            .unwrap();
        assert!(embed_pair(&holn, &f, &tau, 2).is_err());
        assert!(embed_pair(&holn, &f, &tau, 0).is_err());
        assert_eq!(embed_pair(&holn, &f, &tau, 4).unwrap().len(), 40);
    }

    #[test]
    fn trivial_tau_gives_direct_product() {
        let h = hol("4x2");
        let holn = HolN::from_hol(5, h.clone()).unwrap();
        let f = sub(&h, &["((1,0),id)", "((0,1),id)"]);
        let trivial = TauMap::from_values(vec![0; 8]);
        let g = embed_pair(&holn, &f, &trivial, 1).unwrap();
        assert!(g.iter().all(|x| x.k == 1));
        assert_eq!(g.len(), 40);
    }
}
