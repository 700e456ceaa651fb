//! Finite abelian groups `Z_{n1} x ... x Z_{nk}` and their automorphism groups.
//!
//! Elements are stored as coordinate vectors; the mixed-radix fold of the
//! coordinates (first coordinate most significant) is the canonical key, so
//! key order coincides with lexicographic coordinate order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the order of groups we are willing to enumerate.
pub const DEFAULT_ORDER_BOUND: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub coords: Vec<u32>,
}

impl AbelianGroup {
    /// Builds `Z_{f1} x ... x Z_{fk}`; factors are sorted into decreasing order.
    pub fn new(factors: &[u32]) -> Result<Self> {
        if let Some(&f) = factors.iter().find(|&&f| f < 2) {
            return Err(Error::Argument(format!("cyclic factor order {f} < 2")));
        }
        let mut factors = factors.to_vec();
        factors.sort_unstable_by(|a, b| b.cmp(a));
        Ok(AbelianGroup { factors })
    }

    pub fn cyclic8() -> Self {
        AbelianGroup { factors: vec![8] }
    }

    pub fn z4_z2() -> Self {
        AbelianGroup {
            factors: vec![4, 2],
        }
    }

    pub fn z2_cubed() -> Self {
        AbelianGroup {
            factors: vec![2, 2, 2],
        }
    }

    /// The three abelian groups of order 8, in table order.
    pub fn order_eight() -> [AbelianGroup; 3] {
        [Self::cyclic8(), Self::z4_z2(), Self::z2_cubed()]
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&f| f as usize).product()
    }

    /// Short descriptor, e.g. `4x2`.
    pub fn descriptor(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join("x")
    }

    /// Human label, e.g. `Z4xZ2`.
    pub fn label(&self) -> String {
        if self.factors.is_empty() {
            return "Z1".to_string();
        }
        self.factors
            .iter()
            .map(|f| format!("Z{f}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    fn check_bound(&self, bound: usize) -> Result<()> {
        let order = self.order();
        if order > bound {
            return Err(Error::Capacity {
                what: format!("group {}", self.label()),
                size: order,
                bound,
            });
        }
        Ok(())
    }

    pub fn elements(&self) -> Result<Vec<Element>> {
        self.elements_bounded(DEFAULT_ORDER_BOUND)
    }

    /// All elements in canonical (key) order.
    pub fn elements_bounded(&self, bound: usize) -> Result<Vec<Element>> {
        self.check_bound(bound)?;
        Ok((0..self.order()).map(|k| self.element(k)).collect())
    }

    pub fn zero(&self) -> Element {
        Element {
            coords: vec![0; self.rank()],
        }
    }

    /// Canonical generator `e_i`.
    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.zero();
        e.coords[i] = 1;
        e
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.coords.len() == self.rank() && x.coords.iter().zip(&self.factors).all(|(c, f)| c < f)
    }

    pub fn key(&self, x: &Element) -> usize {
        x.coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &f)| acc * f as usize + c as usize)
    }

    pub fn element(&self, key: usize) -> Element {
        let mut coords = vec![0u32; self.rank()];
        let mut rest = key;
        for (c, &f) in coords.iter_mut().zip(&self.factors).rev() {
            *c = (rest % f as usize) as u32;
            rest /= f as usize;
        }
        Element { coords }
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        Element {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(&self.factors)
                .map(|((a, b), f)| (a + b) % f)
                .collect(),
        }
    }

    pub fn neg(&self, x: &Element) -> Element {
        Element {
            coords: x
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(a, f)| (f - a) % f)
                .collect(),
        }
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, n: u64, x: &Element) -> Element {
        Element {
            coords: x
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&a, &f)| ((n % f as u64) * a as u64 % f as u64) as u32)
                .collect(),
        }
    }

    /// Least `n >= 1` with `n x = 0`.
    pub fn element_order(&self, x: &Element) -> u64 {
        x.coords
            .iter()
            .zip(&self.factors)
            .map(|(&a, &f)| f as u64 / gcd(a as u64, f as u64))
            .fold(1, lcm)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Parses descriptors such as `8`, `4x2`, `2X2X2`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().to_ascii_lowercase();
        let trimmed = trimmed
            .strip_prefix('z')
            .map(|t| t.replace("xz", "x"))
            .unwrap_or(trimmed);
        if trimmed.is_empty() {
            return Err(Error::Descriptor(s.to_string()));
        }
        let factors = trimmed
            .split('x')
            .map(|part| part.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Descriptor(s.to_string()))?;
        AbelianGroup::new(&factors).map_err(|_| Error::Descriptor(s.to_string()))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coords.as_slice() {
            [c] => write!(f, "{c}"),
            coords => {
                let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// An automorphism given by the images of the canonical generators.
///
/// `table[key]` caches the image of every element; equality and ordering are
/// by the image list.
#[derive(Clone, Debug)]
pub struct Automorphism {
    group: AbelianGroup,
    images: Vec<Element>,
    table: Vec<u32>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.images == other.images
    }
}

impl Eq for Automorphism {}

impl PartialOrd for Automorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Automorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.group, self.image_keys()).cmp(&(&other.group, other.image_keys()))
    }
}

impl std::hash::Hash for Automorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        self.images.hash(state);
    }
}

impl Automorphism {
    /// Builds the endomorphism with the given generator images and checks
    /// that it is a well-defined bijection.
    pub fn from_images(group: &AbelianGroup, images: Vec<Element>) -> Result<Self> {
        if images.len() != group.rank() || !images.iter().all(|x| group.contains(x)) {
            return Err(Error::Argument(
                "generator images do not match the group".into(),
            ));
        }
        for (img, &f) in images.iter().zip(group.factors()) {
            if !(f as u64).is_multiple_of(group.element_order(img)) {
                return Err(Error::Argument(format!(
                    "image {img} has order not dividing {f}"
                )));
            }
        }
        let table = linear_table(group, &images);
        if !is_permutation(&table) {
            return Err(Error::Argument(
                "generator images do not define a bijection".into(),
            ));
        }
        Ok(Automorphism {
            group: group.clone(),
            images,
            table,
        })
    }

    pub fn identity(group: &AbelianGroup) -> Self {
        let images = (0..group.rank()).map(|i| group.generator(i)).collect();
        let table = (0..group.order() as u32).collect();
        Automorphism {
            group: group.clone(),
            images,
            table,
        }
    }

    /// Multiplication by a unit `u` (meaningful on every abelian group).
    pub fn scalar(group: &AbelianGroup, u: u64) -> Result<Self> {
        let images = (0..group.rank())
            .map(|i| group.scale(u, &group.generator(i)))
            .collect();
        Self::from_images(group, images)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image_keys(&self) -> Vec<usize> {
        self.images.iter().map(|x| self.group.key(x)).collect()
    }

    /// Linear extension of the generator images.
    pub fn apply(&self, x: &Element) -> Element {
        let mut acc = self.group.zero();
        for (&c, img) in x.coords.iter().zip(&self.images) {
            acc = self.group.add(&acc, &self.group.scale(c as u64, img));
        }
        acc
    }

    /// Image of the element with canonical key `key`.
    pub fn apply_key(&self, key: usize) -> usize {
        self.table[key] as usize
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let images = other.images.iter().map(|x| self.apply(x)).collect();
        let table = other
            .table
            .iter()
            .map(|&k| self.table[k as usize])
            .collect();
        Automorphism {
            group: self.group.clone(),
            images,
            table,
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut table = vec![0u32; self.table.len()];
        for (k, &img) in self.table.iter().enumerate() {
            table[img as usize] = k as u32;
        }
        let images = (0..self.group.rank())
            .map(|i| {
                let gk = self.group.key(&self.group.generator(i));
                self.group.element(table[gk] as usize)
            })
            .collect();
        Automorphism {
            group: self.group.clone(),
            images,
            table,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(k, &v)| k == v as usize)
    }
}

fn linear_table(group: &AbelianGroup, images: &[Element]) -> Vec<u32> {
    (0..group.order())
        .map(|k| {
            let x = group.element(k);
            let mut acc = group.zero();
            for (&c, img) in x.coords.iter().zip(images) {
                acc = group.add(&acc, &group.scale(c as u64, img));
            }
            group.key(&acc) as u32
        })
        .collect()
}

fn is_permutation(table: &[u32]) -> bool {
    let mut seen = vec![false; table.len()];
    table
        .iter()
        .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
}

/// The full automorphism group with a precomputed Cayley table.
#[derive(Clone, Debug)]
pub struct AutGroup {
    group: AbelianGroup,
    members: Vec<Automorphism>,
    identity: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl AutGroup {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn members(&self) -> &[Automorphism] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> &Automorphism {
        &self.members[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Index of `i ∘ j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.members.len() + j] as usize
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    pub fn index_of(&self, sigma: &Automorphism) -> Option<usize> {
        self.members.binary_search(sigma).ok()
    }

    pub fn apply_key(&self, i: usize, key: usize) -> usize {
        self.members[i].apply_key(key)
    }

    /// Order of the automorphism with index `i`.
    pub fn order_of(&self, i: usize) -> usize {
        let mut n = 1;
        let mut cur = i;
        while cur != self.identity {
            cur = self.mul(i, cur);
            n += 1;
        }
        n
    }

    /// Conjugacy class index of every member, classes numbered by smallest member.
    pub fn conjugacy_class_ids(&self) -> Vec<usize> {
        let n = self.len();
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        for i in 0..n {
            if ids[i] != usize::MAX {
                continue;
            }
            for nu in 0..n {
                let c = self.mul(self.mul(nu, i), self.inv(nu));
                ids[c] = next;
            }
            next += 1;
        }
        ids
    }
}

pub fn automorphism_group(group: &AbelianGroup) -> Result<AutGroup> {
    automorphism_group_bounded(group, DEFAULT_ORDER_BOUND)
}

/// Brute force over all generator-image tuples with admissible orders,
/// keeping the bijective ones.
pub fn automorphism_group_bounded(group: &AbelianGroup, bound: usize) -> Result<AutGroup> {
    group.check_bound(bound)?;
    let elements = group.elements_bounded(bound)?;
    let candidates: Vec<Vec<&Element>> = group
        .factors()
        .iter()
        .map(|&f| {
            elements
                .iter()
                .filter(|x| (f as u64).is_multiple_of(group.element_order(x)))
                .collect()
        })
        .collect();
    let tuples: usize = candidates.iter().map(Vec::len).product();
    if tuples > bound * bound {
        return Err(Error::Capacity {
            what: format!("generator-image tuples of {}", group.label()),
            size: tuples,
            bound: bound * bound,
        });
    }

    let mut members = Vec::new();
    let mut choice = vec![0usize; candidates.len()];
    loop {
        let images: Vec<Element> = choice
            .iter()
            .zip(&candidates)
            .map(|(&c, cands)| cands[c].clone())
            .collect();
        let table = linear_table(group, &images);
        if is_permutation(&table) {
            members.push(Automorphism {
                group: group.clone(),
                images,
                table,
            });
        }
        // odometer over the candidate lists
        let mut pos = candidates.len();
        loop {
            if pos == 0 {
                members.sort();
                return finish_aut_group(group, members);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

fn finish_aut_group(group: &AbelianGroup, members: Vec<Automorphism>) -> Result<AutGroup> {
    let n = members.len();
    if n > u16::MAX as usize {
        return Err(Error::Capacity {
            what: format!("automorphism group of {}", group.label()),
            size: n,
            bound: u16::MAX as usize,
        });
    }
    let identity = members
        .iter()
        .position(Automorphism::is_identity)
        .ok_or_else(|| Error::Consistency("identity automorphism missing".into()))?;
    let by_table: std::collections::HashMap<&[u32], usize> = members
        .iter()
        .enumerate()
        .map(|(i, m)| (m.table.as_slice(), i))
        .collect();
    let order = group.order();
    let mut mul = vec![0u16; n * n];
    let mut composed = vec![0u32; order];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in composed.iter_mut().enumerate() {
                *c = members[i].table[members[j].table[k] as usize];
            }
            let idx = by_table.get(composed.as_slice()).ok_or_else(|| {
                Error::Consistency("automorphism group not closed under composition".into())
            })?;
            mul[i * n + j] = *idx as u16;
        }
    }
    let inv = (0..n)
        .map(|i| {
            (0..n)
                .find(|&j| mul[i * n + j] as usize == identity)
                .map(|j| j as u16)
                .ok_or_else(|| Error::Consistency("automorphism without inverse".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AutGroup {
        group: group.clone(),
        members,
        identity,
        mul,
        inv,
    })
}
