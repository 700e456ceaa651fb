use std::collections::BTreeSet;

use brace8p::oracle::OracleSurvey;
use brace8p::{AbelianGroup, Classification, PairClass, ResidueClass, DEFAULT_ALLOWLIST};

/// Embedded pair orbits hit every oracle class exactly once.
fn assert_bijection(p: u64, e: &AbelianGroup, c: &Classification) {
    let residue = ResidueClass::from_prime(p).unwrap();
    let pairs: Vec<&PairClass> = c.group(e).unwrap().admitted(residue).collect();
    let survey = OracleSurvey::compute(p, e, &DEFAULT_ALLOWLIST).unwrap();
    let hits = survey.pair_correspondence(&pairs).unwrap();
    let distinct: BTreeSet<usize> = hits.iter().copied().collect();
    assert_eq!(
        distinct.len(),
        pairs.len(),
        "p = {p}, {e}: two orbits share a class"
    );
    assert_eq!(
        distinct.len(),
        survey.classes.len(),
        "p = {p}, {e}: classes missed"
    );
    for (pc, &k) in pairs.iter().zip(&hits) {
        assert_eq!(survey.classes[k].iso_type, pc.iso_type);
    }
}

#[test]
fn pair_orbits_match_oracle_classes() {
    let c = Classification::compute().unwrap();
    for p in [5, 13] {
        for e in [AbelianGroup::cyclic8(), AbelianGroup::z4_z2()] {
            assert_bijection(p, &e, &c);
        }
    }
    assert_bijection(11, &AbelianGroup::cyclic8(), &c);
    assert_bijection(17, &AbelianGroup::cyclic8(), &c);
    assert_bijection(5, &AbelianGroup::z2_cubed(), &c);
}

#[test]
fn embedded_pairs_are_regular_at_every_allowed_prime() {
    let c = Classification::compute().unwrap();
    for p in DEFAULT_ALLOWLIST {
        let residue = ResidueClass::from_prime(p).unwrap();
        for g in &c.groups {
            let holn = brace8p::HolN::new(p, &g.group).unwrap();
            for pc in g.admitted(residue) {
                let members =
                    brace8p::tau::embed_pair_default(&holn, &pc.subgroup, &pc.tau).unwrap();
                let n = brace8p::oracle::NSubgroup::from_members(members);
                assert!(brace8p::oracle::is_subgroup_n(&holn, &n), "p = {p}");
                assert!(brace8p::oracle::is_regular_n(&holn, &n), "p = {p}");
            }
        }
    }
}
