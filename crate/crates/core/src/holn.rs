//! `Hol(Z_p x E) = Hol(Z_p) x Hol(E)`, elements written `(m, k, a, σ)`.

use std::fmt;

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::holomorph::{HolElement, HolGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HolNElement {
    /// translation mod p
    pub m: u32,
    /// unit mod p
    pub k: u32,
    /// the `Hol(E)` component
    pub e: HolElement,
}

impl HolNElement {
    pub fn new(m: u32, k: u32, e: HolElement) -> Self {
        HolNElement { m, k, e }
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

pub fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut result = 1 % p;
    let mut b = base % p;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    result
}

/// Multiplicative order of a unit mod `p`.
pub fn unit_order(u: u64, p: u64) -> u64 {
    let mut n = 1;
    let mut x = u % p;
    while x != 1 {
        x = x * u % p;
        n += 1;
    }
    n
}

pub fn inv_mod(u: u64, p: u64) -> u64 {
    pow_mod(u, p - 2, p)
}

/// Order of the 2-Sylow subgroup of `Z_p^*`.
pub fn two_part(p: u64) -> u64 {
    let mut t = 1;
    let mut q = p - 1;
    while q.is_multiple_of(2) {
        q /= 2;
        t *= 2;
    }
    t
}

/// Hol(Z_p) x Hol(E) for an odd prime `p`.
#[derive(Clone, Debug)]
pub struct HolN {
    p: u32,
    hol: HolGroup,
}

impl HolN {
    pub fn new(p: u64, group: &AbelianGroup) -> Result<Self> {
        Self::from_hol(p, HolGroup::new(group)?)
    }

    pub fn from_hol(p: u64, hol: HolGroup) -> Result<Self> {
        if p == 2 || !is_prime(p) || p > u16::MAX as u64 {
            return Err(Error::Argument(format!(
                "{p} is not an odd prime below 2^16"
            )));
        }
        Ok(HolN { p: p as u32, hol })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn hol(&self) -> &HolGroup {
        &self.hol
    }

    /// Number of points of `Z_p x E`.
    pub fn degree(&self) -> usize {
        self.p as usize * self.hol.degree()
    }

    pub fn identity(&self) -> HolNElement {
        HolNElement::new(0, 1, self.hol.identity())
    }

    /// `((m1 + k1 m2) mod p, k1 k2 mod p, (a1, σ1)(a2, σ2))`.
    pub fn mul(&self, g: HolNElement, h: HolNElement) -> HolNElement {
        let p = self.p as u64;
        HolNElement::new(
            ((g.m as u64 + g.k as u64 * h.m as u64) % p) as u32,
            (g.k as u64 * h.k as u64 % p) as u32,
            self.hol.mul(g.e, h.e),
        )
    }

    pub fn inv(&self, g: HolNElement) -> HolNElement {
        let p = self.p as u64;
        let ki = inv_mod(g.k as u64, p);
        let m = (p - ki * g.m as u64 % p) % p;
        HolNElement::new(m as u32, ki as u32, self.hol.inv(g.e))
    }

    /// `(m, k, a, σ)·(z, x) = (m + k z, a + σ(x))`, with `x` an element key.
    pub fn act(&self, g: HolNElement, point: (u32, usize)) -> (u32, usize) {
        let p = self.p as u64;
        (
            ((g.m as u64 + g.k as u64 * point.0 as u64) % p) as u32,
            self.hol.act(g.e, point.1),
        )
    }

    /// `Φ_(i, ν)(m, k, a, σ) = (i m, k, ν(a), ν σ ν^{-1})`.
    pub fn conj_by_aut(&self, i: u32, nu: usize, g: HolNElement) -> HolNElement {
        HolNElement::new(
            (i as u64 * g.m as u64 % self.p as u64) as u32,
            g.k,
            self.hol.conj_by_aut(nu, g.e),
        )
    }

    /// `Z_p^*` as `1..p`.
    pub fn units(&self) -> impl Iterator<Item = u32> {
        1..self.p
    }

    /// Renders `(m,k,a,σ)` with `k` printed as a signed residue (`-1` for `p-1`).
    pub fn render(&self, g: HolNElement) -> String {
        let k = if g.k == self.p - 1 {
            "-1".to_string()
        } else {
            g.k.to_string()
        };
        let inner = self.hol.render(g.e);
        let inner = &inner[1..inner.len() - 1];
        format!("({},{},{})", g.m, k, inner)
    }
}

impl fmt::Display for HolNElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{:?})", self.m, self.k, self.e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_helpers() {
        assert!(is_prime(5) && is_prime(13) && !is_prime(9) && !is_prime(1));
        assert_eq!(unit_order(2, 5), 4);
        assert_eq!(unit_order(4, 5), 2);
        assert_eq!(two_part(5), 4);
        assert_eq!(two_part(11), 2);
        assert_eq!(two_part(17), 16);
        assert_eq!(inv_mod(3, 7), 5);
    }

    #[test]
    fn conjugating_the_p_cycle() {
        let n = HolN::new(5, &AbelianGroup::cyclic8()).unwrap();
        let h = n.hol();
        let g = HolNElement::new(0, 2, h.parse_element("(2,5)").unwrap());
        let t = HolNElement::new(1, 1, h.identity());
        let c = n.mul(n.mul(g, t), n.inv(g));
        assert_eq!(c, HolNElement::new(2, 1, h.identity()));
    }

    #[test]
    fn group_laws_on_samples() {
        let n = HolN::new(5, &AbelianGroup::z4_z2()).unwrap();
        let h = n.hol();
        let elems: Vec<HolNElement> = h
            .elements()
            .into_iter()
            .step_by(7)
            .flat_map(|e| (0..5).flat_map(move |m| (1..5).map(move |k| HolNElement::new(m, k, e))))
            .collect();
        for &g in elems.iter().step_by(3) {
            assert_eq!(n.mul(g, n.inv(g)), n.identity());
            assert_eq!(n.mul(n.identity(), g), g);
            for &x in elems.iter().step_by(11) {
                for pt in [(0, 0), (3, 5)] {
                    assert_eq!(n.act(n.mul(g, x), pt), n.act(g, n.act(x, pt)));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(HolN::new(2, &AbelianGroup::cyclic8()).is_err());
        assert!(HolN::new(9, &AbelianGroup::cyclic8()).is_err());
    }
}
