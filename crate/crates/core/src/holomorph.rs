//! The holomorph `Hol(E) = E ⋊ Aut(E)` acting on `E` by `(a, σ)·x = a + σ(x)`.
//!
//! Elements are pairs of small integers (automorphism index, element key), so
//! multiplication is a handful of table lookups.

use std::fmt::Write as _;

use crate::abelian::{automorphism_group, AbelianGroup, AutGroup, Automorphism, Element};
use crate::error::{Error, Result};

/// Upper bound on `|Hol(E)|` for which the lookup tables are built.
pub const HOL_ORDER_BOUND: usize = 1 << 20;

/// `(a, σ)`. Field order makes the derived ordering the canonical key
/// `(automorphism index, element key)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HolElement {
    sigma: u16,
    a: u16,
}

impl HolElement {
    pub fn new(a: usize, sigma: usize) -> Self {
        HolElement {
            sigma: sigma as u16,
            a: a as u16,
        }
    }

    /// Key of the translation part.
    pub fn a(&self) -> usize {
        self.a as usize
    }

    /// Index of the automorphism part in the ambient [`AutGroup`].
    pub fn sigma(&self) -> usize {
        self.sigma as usize
    }
}

#[derive(Clone, Debug)]
enum Notation {
    /// `(a,u)` with `u` a unit.
    Cyclic,
    /// `((a,b),r^i s^j)`; names indexed by automorphism index.
    Dihedral(Vec<String>),
    /// `(e1+e3,[100;011;001])`.
    Binary,
    Generic,
}

#[derive(Clone, Debug)]
pub struct HolGroup {
    base: AbelianGroup,
    auts: AutGroup,
    n: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    /// `act[σ * n + x] = σ(x)`
    act: Vec<u16>,
    /// `in_image[σ * n + x]` iff `x ∈ Im(1 - σ)`
    in_image: Vec<bool>,
    notation: Notation,
}

impl HolGroup {
    pub fn new(base: &AbelianGroup) -> Result<Self> {
        let auts = automorphism_group(base)?;
        Self::with_auts(auts)
    }

    pub fn with_auts(auts: AutGroup) -> Result<Self> {
        let base = auts.group().clone();
        let n = base.order();
        let size = n * auts.len();
        if size > HOL_ORDER_BOUND || n > u16::MAX as usize {
            return Err(Error::Capacity {
                what: format!("Hol({})", base.label()),
                size,
                bound: HOL_ORDER_BOUND,
            });
        }
        let elements = base.elements()?;
        let mut add = vec![0u16; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                add[i * n + j] = base.key(&base.add(x, y)) as u16;
            }
        }
        let neg = elements
            .iter()
            .map(|x| base.key(&base.neg(x)) as u16)
            .collect();
        let mut act = vec![0u16; size];
        let mut in_image = vec![false; size];
        for (s, sigma) in auts.members().iter().enumerate() {
            for x in 0..n {
                let sx = sigma.apply_key(x);
                act[s * n + x] = sx as u16;
                // (1 - σ)(x) = x + (-σ(x))
                let img = base.key(&base.sub(&elements[x], &elements[sx]));
                in_image[s * n + img] = true;
            }
        }
        let notation = notation_for(&base, &auts);
        Ok(HolGroup {
            base,
            auts,
            n,
            add,
            neg,
            act,
            in_image,
            notation,
        })
    }

    pub fn base(&self) -> &AbelianGroup {
        &self.base
    }

    pub fn auts(&self) -> &AutGroup {
        &self.auts
    }

    /// Order of the base group `E`.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.n * self.auts.len()
    }

    pub fn identity(&self) -> HolElement {
        HolElement::new(0, self.auts.identity())
    }

    pub fn is_identity(&self, g: HolElement) -> bool {
        g == self.identity()
    }

    /// Every element, in canonical order.
    pub fn elements(&self) -> Vec<HolElement> {
        (0..self.auts.len())
            .flat_map(|s| (0..self.n).map(move |a| HolElement::new(a, s)))
            .collect()
    }

    pub fn key(&self, g: HolElement) -> usize {
        g.sigma() * self.n + g.a()
    }

    pub fn from_key(&self, key: usize) -> HolElement {
        HolElement::new(key % self.n, key / self.n)
    }

    pub fn element(&self, a: &Element, sigma: &Automorphism) -> Result<HolElement> {
        let s = self
            .auts
            .index_of(sigma)
            .ok_or_else(|| Error::Argument("automorphism not in Aut(E)".into()))?;
        if !self.base.contains(a) {
            return Err(Error::Argument(format!(
                "{a} is not an element of {}",
                self.base
            )));
        }
        Ok(HolElement::new(self.base.key(a), s))
    }

    pub fn translation(&self, g: HolElement) -> Element {
        self.base.element(g.a())
    }

    pub fn automorphism(&self, g: HolElement) -> &Automorphism {
        self.auts.get(g.sigma())
    }

    fn add_keys(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y] as usize
    }

    fn apply(&self, sigma: usize, x: usize) -> usize {
        self.act[sigma * self.n + x] as usize
    }

    /// `(a1, σ1)(a2, σ2) = (a1 + σ1(a2), σ1σ2)`.
    pub fn mul(&self, g: HolElement, h: HolElement) -> HolElement {
        HolElement::new(
            self.add_keys(g.a(), self.apply(g.sigma(), h.a())),
            self.auts.mul(g.sigma(), h.sigma()),
        )
    }

    /// `(a, σ)^{-1} = (-σ^{-1}(a), σ^{-1})`.
    pub fn inv(&self, g: HolElement) -> HolElement {
        let si = self.auts.inv(g.sigma());
        HolElement::new(self.neg[self.apply(si, g.a())] as usize, si)
    }

    pub fn pow(&self, g: HolElement, e: u32) -> HolElement {
        (0..e).fold(self.identity(), |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: HolElement) -> usize {
        let mut n = 1;
        let mut cur = g;
        while !self.is_identity(cur) {
            cur = self.mul(cur, g);
            n += 1;
        }
        n
    }

    /// Natural action on keys of `E`: `a + σ(x)`.
    pub fn act(&self, g: HolElement, x: usize) -> usize {
        self.add_keys(g.a(), self.apply(g.sigma(), x))
    }

    pub fn act_element(&self, g: HolElement, x: &Element) -> Element {
        self.base.element(self.act(g, self.base.key(x)))
    }

    /// `true` iff `a ∈ Im(1 - σ)`, i.e. some point is fixed.
    pub fn has_fixed_point(&self, g: HolElement) -> bool {
        self.in_image[g.sigma() * self.n + g.a()]
    }

    /// `Φ_ν(a, σ) = (ν(a), νσν^{-1})`.
    pub fn conj_by_aut(&self, nu: usize, g: HolElement) -> HolElement {
        let auts = &self.auts;
        HolElement::new(
            self.apply(nu, g.a()),
            auts.mul(auts.mul(nu, g.sigma()), auts.inv(nu)),
        )
    }

    /// `h g h^{-1}`.
    pub fn conj(&self, h: HolElement, g: HolElement) -> HolElement {
        self.mul(self.mul(h, g), self.inv(h))
    }

    /// Rendering: `(a,u)` over `Z8`, `((a,b),r^is^j)` over
    /// `Z4xZ2`, `(v,[rows])` over `Z2^3`.
    pub fn render(&self, g: HolElement) -> String {
        let a = self.translation(g);
        let sigma = self.automorphism(g);
        match &self.notation {
            Notation::Cyclic => format!("({},{})", a.coords[0], sigma.images()[0].coords[0]),
            Notation::Dihedral(names) => {
                format!("(({},{}),{})", a.coords[0], a.coords[1], names[g.sigma()])
            }
            Notation::Binary => format!("({},{})", render_vector(&a), render_matrix(sigma)),
            Notation::Generic => {
                let imgs: Vec<String> = sigma.images().iter().map(|x| x.to_string()).collect();
                format!("({a},[{}])", imgs.join(";"))
            }
        }
    }

    /// Inverse of [`render`](Self::render); also accepts `id`/`Id` for the
    /// identity automorphism and whitespace anywhere.
    pub fn parse_element(&self, text: &str) -> Result<HolElement> {
        let bad = || Error::Argument(format!("cannot parse holomorph element `{text}`"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let split = top_level_comma(inner).ok_or_else(bad)?;
        let (left, right) = (&inner[..split], &inner[split + 1..]);
        let a = self.parse_translation(left).ok_or_else(bad)?;
        let sigma = self.parse_automorphism(right).ok_or_else(bad)?;
        if a >= self.n {
            return Err(bad());
        }
        Ok(HolElement::new(a, sigma))
    }

    fn parse_translation(&self, text: &str) -> Option<usize> {
        if let Notation::Binary = self.notation {
            if text == "0" {
                return Some(0);
            }
            if text.starts_with('e') {
                let mut coords = vec![0u32; 3];
                for term in text.split('+') {
                    let i: usize = term.strip_prefix('e')?.parse().ok()?;
                    *coords.get_mut(i.checked_sub(1)?)? ^= 1;
                }
                return Some(self.base.key(&Element { coords }));
            }
        }
        let body = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(text);
        let coords = body
            .split(',')
            .map(|c| c.parse::<u32>().ok())
            .collect::<Option<Vec<_>>>()?;
        let x = Element { coords };
        self.base.contains(&x).then(|| self.base.key(&x))
    }

    fn parse_automorphism(&self, text: &str) -> Option<usize> {
        if text.eq_ignore_ascii_case("id") || text == "I" || text == "1" && self.base.rank() > 1 {
            return Some(self.auts.identity());
        }
        match &self.notation {
            Notation::Cyclic => {
                let u: u64 = text.parse().ok()?;
                let sigma = Automorphism::scalar(&self.base, u).ok()?;
                self.auts.index_of(&sigma)
            }
            Notation::Dihedral(names) => names.iter().position(|n| n == text),
            Notation::Binary => {
                let rows: Vec<&str> = text
                    .strip_prefix('[')?
                    .strip_suffix(']')?
                    .split(';')
                    .collect();
                if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
                    return None;
                }
                let images = (0..3)
                    .map(|col| Element {
                        coords: rows
                            .iter()
                            .map(|r| (r.as_bytes()[col] == b'1') as u32)
                            .collect(),
                    })
                    .collect();
                let sigma = Automorphism::from_images(&self.base, images).ok()?;
                self.auts.index_of(&sigma)
            }
            Notation::Generic => None,
        }
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn render_vector(v: &Element) -> String {
    let terms: Vec<String> = v
        .coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .map(|(i, _)| format!("e{}", i + 1))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Rows of the matrix whose columns are the images of `e1, e2, e3`.
fn render_matrix(sigma: &Automorphism) -> String {
    let images = sigma.images();
    let rows: Vec<String> = (0..images.len())
        .map(|row| {
            images
                .iter()
                .map(|col| col.coords[row].to_string())
                .collect()
        })
        .collect();
    format!("[{}]", rows.join(";"))
}

fn notation_for(base: &AbelianGroup, auts: &AutGroup) -> Notation {
    match base.factors() {
        [8] => Notation::Cyclic,
        [2, 2, 2] => Notation::Binary,
        [4, 2] => dihedral_names(base, auts).map_or(Notation::Generic, Notation::Dihedral),
        _ => Notation::Generic,
    }
}

/// Names `r^i s^j` for `Aut(Z4 x Z2)` with `r(a,b) = (a+2b, a+b)` and
/// `s(a,b) = (a, a+b)`.
fn dihedral_names(base: &AbelianGroup, auts: &AutGroup) -> Option<Vec<String>> {
    let el = |c: &[u32]| Element { coords: c.to_vec() };
    let r = Automorphism::from_images(base, vec![el(&[1, 1]), el(&[2, 1])]).ok()?;
    let s = Automorphism::from_images(base, vec![el(&[1, 1]), el(&[0, 1])]).ok()?;
    let r = auts.index_of(&r)?;
    let s = auts.index_of(&s)?;
    let mut names = vec![String::new(); auts.len()];
    let mut ri = auts.identity();
    for i in 0..4 {
        let mut g = ri;
        for j in 0..2 {
            let mut name = String::new();
            match i {
                0 => {}
                1 => name.push('r'),
                _ => {
                    let _ = write!(name, "r^{i}");
                }
            }
            if j == 1 {
                name.push('s');
            }
            if name.is_empty() {
                name.push_str("id");
            }
            names[g] = name;
            g = auts.mul(g, s);
        }
        ri = auts.mul(ri, r);
    }
    names.iter().all(|n| !n.is_empty()).then_some(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hol(desc: &str) -> HolGroup {
        HolGroup::new(&desc.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(hol("8").order(), 32);
        assert_eq!(hol("4x2").order(), 64);
        assert_eq!(hol("2x2x2").order(), 1344);
    }

    #[test]
    fn known_products() {
        let h = hol("8");
        let g = h.parse_element("(2,5)").unwrap();
        let f = h.parse_element("(1,7)").unwrap();
        assert_eq!(h.render(h.mul(g, f)), "(7,3)");
        assert_eq!(h.mul(g, h.identity()), g);
        assert_eq!(h.inv(f), f);
        assert_eq!(h.inv(h.identity()), h.identity());

        let h = hol("4x2");
        let g = h.parse_element("((1,0),r)").unwrap();
        let t = h.parse_element("((2,0),id)").unwrap();
        assert_eq!(h.render(h.mul(g, t)), "((3,0),r)");
        assert_eq!(h.mul(g, h.inv(g)), h.identity());
    }

    #[test]
    fn action_examples() {
        let h = hol("8");
        let g = h.parse_element("(2,5)").unwrap();
        assert_eq!(h.act(g, 1), 7);
        assert_eq!(h.act(h.identity(), 3), 3);
        let h = hol("4x2");
        let t = h.parse_element("((2,0),id)").unwrap();
        let x = Element { coords: vec![1, 1] };
        assert_eq!(h.act_element(t, &x), Element { coords: vec![3, 1] });
    }

    #[test]
    fn fixed_points() {
        let h = hol("4x2");
        assert!(h.has_fixed_point(h.identity()));
        assert!(!h.has_fixed_point(h.parse_element("((2,0),id)").unwrap()));
        assert!(!h.has_fixed_point(h.parse_element("((0,1),rs)").unwrap()));
        assert!(h.has_fixed_point(h.parse_element("((0,0),r)").unwrap()));
    }

    #[test]
    fn conjugation_by_automorphisms() {
        let h = hol("4x2");
        let auts = h.auts();
        let named = |s: &str| h.parse_element(&format!("((0,0),{s})")).unwrap().sigma();
        let g = h.parse_element("((1,0),r)").unwrap();
        assert_eq!(h.render(h.conj_by_aut(named("r^2"), g)), "((3,0),r)");
        assert_eq!(h.render(h.conj_by_aut(named("s"), g)), "((1,1),r^3)");
        assert_eq!(h.conj_by_aut(auts.identity(), g), g);
    }

    #[test]
    fn rendering_round_trips() {
        for d in ["8", "4x2", "2x2x2"] {
            let h = hol(d);
            for g in h.elements() {
                assert_eq!(h.parse_element(&h.render(g)).unwrap(), g, "{}", h.render(g));
            }
        }
        let h = hol("2x2x2");
        let g = h.parse_element("(e3, [100;011;001])").unwrap();
        assert_eq!(h.render(h.mul(g, g)), "(e2,[100;010;001])");
        assert_eq!(h.parse_element("(e2,Id)").unwrap(), h.mul(g, g));
    }

    #[test]
    fn parse_errors() {
        let h = hol("4x2");
        assert!(h.parse_element("((4,0),id)").is_err());
        assert!(h.parse_element("((1,0),q)").is_err());
        assert!(h.parse_element("(1,0)").is_err());
    }
}
