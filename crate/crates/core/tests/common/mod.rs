#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use brace8p::tau::act_on_pair;
use brace8p::{
    closure, iso_type, AbelianGroup, HolElement, HolGroup, HolomorphSurvey, IsoType, PairClass,
    Subgroup, TauMap,
};

pub fn holomorphs() -> Vec<HolGroup> {
    AbelianGroup::order_eight()
        .iter()
        .map(|e| HolGroup::new(e).unwrap())
        .collect()
}

/// Associativity, identity and inverses over every triple (or every
/// `step`-th one for the larger holomorph).
pub fn check_group_axioms(hol: &HolGroup, step: usize) -> Result<(), String> {
    let els = hol.elements();
    let id = hol.identity();
    for &g in &els {
        if hol.mul(g, id) != g || hol.mul(id, g) != g {
            return Err(format!("identity fails at {}", hol.render(g)));
        }
        if !hol.is_identity(hol.mul(g, hol.inv(g))) || !hol.is_identity(hol.mul(hol.inv(g), g)) {
            return Err(format!("inverse fails at {}", hol.render(g)));
        }
    }
    let mut n = 0usize;
    for &a in &els {
        for &b in &els {
            let ab = hol.mul(a, b);
            for &c in &els {
                n += 1;
                if !n.is_multiple_of(step) {
                    continue;
                }
                if hol.mul(ab, c) != hol.mul(a, hol.mul(b, c)) {
                    return Err(format!(
                        "associativity fails at {}, {}, {}",
                        hol.render(a),
                        hol.render(b),
                        hol.render(c)
                    ));
                }
            }
        }
    }
    Ok(())
}

/// The action is a faithful homomorphism into the symmetric group.
pub fn check_action(hol: &HolGroup) -> Result<(), String> {
    let els = hol.elements();
    let perm = |g: HolElement| -> Vec<usize> { (0..hol.degree()).map(|x| hol.act(g, x)).collect() };
    let mut seen = BTreeSet::new();
    for &g in &els {
        if !seen.insert(perm(g)) {
            return Err(format!("{} acts like another element", hol.render(g)));
        }
    }
    for (i, &g) in els.iter().enumerate() {
        let h = els[(i * 7 + 3) % els.len()];
        let gh = hol.mul(g, h);
        for x in 0..hol.degree() {
            if hol.act(gh, x) != hol.act(g, hol.act(h, x)) {
                return Err(format!("action is not a homomorphism at {}", hol.render(g)));
            }
        }
    }
    Ok(())
}

pub fn check_fixed_points(hol: &HolGroup) -> Result<(), String> {
    for g in hol.elements() {
        let scan = (0..hol.degree()).any(|x| hol.act(g, x) == x);
        if scan != hol.has_fixed_point(g) {
            return Err(format!("fixed-point test disagrees at {}", hol.render(g)));
        }
    }
    Ok(())
}

/// Conjugating a regular subgroup by any element of the holomorph stays in
/// its `Aut(E)` class.
pub fn check_aut_vs_hol(survey: &HolomorphSurvey, step: usize) -> Result<(), String> {
    let hol = &survey.hol;
    for (i, h) in hol.elements().into_iter().enumerate() {
        if i % step != 0 {
            continue;
        }
        for s in &survey.subgroups {
            let c = s.conj(hol, h);
            if survey.class_of(&c) != survey.class_of(s) {
                return Err(format!("conjugation by {} leaves the class", hol.render(h)));
            }
        }
    }
    Ok(())
}

pub fn check_type_constant_on_classes(survey: &HolomorphSurvey) -> Result<(), String> {
    let hol = &survey.hol;
    for (c, &t) in survey.classes.iter().zip(&survey.class_types) {
        for s in &c.orbit {
            if iso_type(hol, s).map_err(|e| e.to_string())? != t {
                return Err(format!("class of type {t} has a member of another type"));
            }
        }
    }
    Ok(())
}

/// Smallest `(members, values)` in the `Aut(E)` orbit of the pair.
pub fn canonical_pair(hol: &HolGroup, f: &Subgroup, tau: &TauMap) -> (Vec<HolElement>, Vec<u8>) {
    (0..hol.auts().len())
        .map(|nu| {
            let (g, t) = act_on_pair(hol, nu, f, tau);
            (g.members().to_vec(), t.values().to_vec())
        })
        .min()
        .unwrap()
}

pub fn invariants(hol: &HolGroup, f: &Subgroup, tau: &TauMap) -> (IsoType, u8, usize) {
    (
        iso_type(hol, f).unwrap(),
        tau.image_order(),
        tau.kernel_order(),
    )
}

pub fn check_orbit_invariance(hol: &HolGroup, pairs: &[PairClass]) -> Result<(), String> {
    for pc in pairs {
        let want = (pc.iso_type, pc.image_order, pc.kernel_order());
        for nu in 0..hol.auts().len() {
            let (g, t) = act_on_pair(hol, nu, &pc.subgroup, &pc.tau);
            if !t.is_homomorphism(hol, &g) {
                return Err("transported map is not a homomorphism".into());
            }
            if invariants(hol, &g, &t) != want {
                return Err(format!(
                    "invariants change along the orbit of a {} pair",
                    pc.iso_type
                ));
            }
        }
    }
    Ok(())
}

/// `τ ↦ u·τ` permutes orbits and keeps each orbit's invariants.
pub fn check_relabeling(hol: &HolGroup, pairs: &[PairClass]) -> Result<(), String> {
    let index: BTreeMap<_, usize> = pairs
        .iter()
        .enumerate()
        .map(|(i, pc)| (canonical_pair(hol, &pc.subgroup, &pc.tau), i))
        .collect();
    if index.len() != pairs.len() {
        return Err("two pair classes share an orbit".into());
    }
    for u in [1u8, 3, 5, 7] {
        let mut hit = BTreeSet::new();
        for pc in pairs {
            let scaled = pc.tau.scaled(u);
            let j = *index
                .get(&canonical_pair(hol, &pc.subgroup, &scaled))
                .ok_or_else(|| format!("{u}·τ lands outside every orbit"))?;
            let other = &pairs[j];
            if (other.iso_type, other.image_order, other.kernel_order())
                != (pc.iso_type, pc.image_order, pc.kernel_order())
            {
                return Err(format!("{u}·τ changes the invariants"));
            }
            hit.insert(j);
        }
        if hit.len() != pairs.len() {
            return Err(format!("{u}·τ is not a permutation of orbits"));
        }
    }
    Ok(())
}

/// Closure of `gens` if it has at most 8 elements.
fn small_closure(hol: &HolGroup, gens: &[HolElement]) -> Option<Vec<HolElement>> {
    let mut members = vec![hol.identity()];
    let mut frontier = vec![hol.identity()];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = hol.mul(x, g);
            if !members.contains(&y) {
                if members.len() == 8 {
                    return None;
                }
                members.push(y);
                frontier.push(y);
            }
        }
    }
    members.sort();
    Some(members)
}

/// Regular subgroups found by closing sets of at most three
/// fixed-point-free elements. Triples are only formed over pairs that
/// already close to a fixed-point-free group of order 4.
pub fn naive_regular_subgroups(hol: &HolGroup) -> BTreeSet<Vec<HolElement>> {
    let free: Vec<HolElement> = hol
        .elements()
        .into_iter()
        .filter(|&g| !hol.is_identity(g) && !hol.has_fixed_point(g))
        .collect();
    let all_free = |m: &[HolElement]| {
        m.iter()
            .all(|&x| hol.is_identity(x) || !hol.has_fixed_point(x))
    };
    let mut found = BTreeSet::new();
    for i in 0..free.len() {
        if let Some(m) = small_closure(hol, &[free[i]]) {
            if m.len() == 8 && all_free(&m) {
                found.insert(m);
            }
        }
        for j in i + 1..free.len() {
            let Some(m) = small_closure(hol, &[free[i], free[j]]) else {
                continue;
            };
            if !all_free(&m) {
                continue;
            }
            if m.len() == 8 {
                found.insert(m);
            } else if m.len() == 4 {
                for &k in &free[j + 1..] {
                    if m.contains(&k) {
                        continue;
                    }
                    if let Some(m3) = small_closure(hol, &[free[i], free[j], k]) {
                        if m3.len() == 8 && all_free(&m3) {
                            found.insert(m3);
                        }
                    }
                }
            }
        }
    }
    found
}

pub fn survey_members(survey: &HolomorphSurvey) -> BTreeSet<Vec<HolElement>> {
    survey
        .subgroups
        .iter()
        .map(|s| s.members().to_vec())
        .collect()
}

pub fn closure_of(hol: &HolGroup, gens: &[&str]) -> Subgroup {
    let gens: Vec<HolElement> = gens.iter().map(|g| hol.parse_element(g).unwrap()).collect();
    closure(hol, &gens).unwrap()
}
