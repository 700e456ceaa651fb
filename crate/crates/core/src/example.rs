//! The two non-conjugate semidirect products `Z_p ⋊ (C4 x C2)` over
//! `E = Z8` built from `F = <(2,5)> x <(1,7)>` and the two characters of
//! order 2 with cyclic kernels `<(2,5)>` and `<(7,3)>`.

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::holn::{HolN, HolNElement};
use crate::holomorph::HolGroup;
use crate::oracle::{are_conjugate_n, is_regular_n, NSubgroup};
use crate::subgroups::{closure, Subgroup};
use crate::tau::{embed_pair, homomorphisms, TauMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleOne {
    pub p: u64,
    /// `(m,k,a,u)` patterns, `m` left symbolic.
    pub g1: Vec<String>,
    pub g2: Vec<String>,
    pub g1_regular: bool,
    pub g2_regular: bool,
    pub conjugate: bool,
}

pub struct ExampleGroups {
    pub holn: HolN,
    pub f: Subgroup,
    pub tau1: TauMap,
    pub tau2: TauMap,
    pub g1: NSubgroup,
    pub g2: NSubgroup,
}

fn character_with_kernel(hol: &HolGroup, f: &Subgroup, gen: &str) -> Result<TauMap> {
    let k = closure(hol, &[hol.parse_element(gen)?])?;
    homomorphisms(hol, f)?
        .into_iter()
        .find(|t| t.kernel(f) == k.members())
        .ok_or_else(|| Error::Consistency(format!("no character with kernel <{gen}>")))
}

pub fn example_groups(p: u64) -> Result<ExampleGroups> {
    crate::error::reject_excluded_prime(p)?;
    let hol = HolGroup::new(&AbelianGroup::cyclic8())?;
    let f = closure(
        &hol,
        &[hol.parse_element("(2,5)")?, hol.parse_element("(1,7)")?],
    )?;
    let tau1 = character_with_kernel(&hol, &f, "(2,5)")?;
    let tau2 = character_with_kernel(&hol, &f, "(7,3)")?;
    let holn = HolN::from_hol(p, hol)?;
    let g1 = NSubgroup::from_members(embed_pair(&holn, &f, &tau1, p - 1)?);
    let g2 = NSubgroup::from_members(embed_pair(&holn, &f, &tau2, p - 1)?);
    Ok(ExampleGroups {
        holn,
        f,
        tau1,
        tau2,
        g1,
        g2,
    })
}

/// `(m,k,a,u)` for every `m = 0` member, `k` written as `1`/`-1`.
pub fn patterns(holn: &HolN, g: &NSubgroup) -> Vec<String> {
    let mut out: Vec<String> = g
        .sylow_two()
        .into_iter()
        .map(|x: HolNElement| {
            let rendered = holn.render(x);
            format!("(m{}", &rendered[2..])
        })
        .collect();
    out.sort();
    out
}

pub fn example_one(p: u64) -> Result<ExampleOne> {
    let ex = example_groups(p)?;
    Ok(ExampleOne {
        p,
        g1: patterns(&ex.holn, &ex.g1),
        g2: patterns(&ex.holn, &ex.g2),
        g1_regular: is_regular_n(&ex.holn, &ex.g1),
        g2_regular: is_regular_n(&ex.holn, &ex.g2),
        conjugate: are_conjugate_n(&ex.holn, &ex.g1, &ex.g2)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns_at_five() {
        let ex = example_one(5).unwrap();
        let mut want1 = vec![
            "(m,1,0,1)",
            "(m,1,2,5)",
            "(m,1,4,1)",
            "(m,1,6,5)",
            "(m,-1,1,7)",
            "(m,-1,7,3)",
            "(m,-1,5,7)",
            "(m,-1,3,3)",
        ];
        let mut want2 = vec![
            "(m,1,0,1)",
            "(m,-1,2,5)",
            "(m,1,4,1)",
            "(m,-1,6,5)",
            "(m,-1,1,7)",
            "(m,1,7,3)",
            "(m,-1,5,7)",
            "(m,1,3,3)",
        ];
        want1.sort();
        want2.sort();
        assert_eq!(ex.g1, want1);
        assert_eq!(ex.g2, want2);
        assert!(ex.g1_regular && ex.g2_regular);
        assert!(!ex.conjugate);
    }

    #[test]
    fn excluded_primes_rejected() {
        assert!(example_one(7).is_err());
    }
}
