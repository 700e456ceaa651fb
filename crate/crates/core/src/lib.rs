//! Left braces of size `8p` for odd primes `p ∉ {3, 7}`.
//!
//! A left brace with additive group `N` is the same thing as an
//! `Aut(N)`-conjugacy class of regular subgroups of `Hol(N)`. For
//! `N = Z_p x E` with `|E| = 8`, those classes are counted as orbits of pairs
//! `(F, τ)`: a regular subgroup `F` of `Hol(E)` and a character
//! `τ: F → Z_p^*`, under the action of `Aut(E)`. An independent oracle
//! enumerates regular subgroups of `Hol(Z_p x E)` directly for small `p`.
//!
//! ```
//! use brace8p::{Classification, ResidueClass};
//!
//! let c = Classification::compute().unwrap();
//! assert_eq!(c.brace_table(ResidueClass::Five).total, 106);
//! ```

pub mod abelian;
pub mod error;
pub mod example;
pub mod holn;
pub mod holomorph;
pub mod oracle;
pub mod report;
pub mod subgroups;
pub mod tau;

pub use abelian::{automorphism_group, AbelianGroup, AutGroup, Automorphism, Element};
pub use error::{Error, Result};
pub use holn::{HolN, HolNElement};
pub use holomorph::{HolElement, HolGroup};
pub use oracle::{cross_check, CrossCheckReport, OracleSurvey, DEFAULT_ALLOWLIST};
pub use subgroups::{
    class_distribution, closure, conjugacy_classes, enumerate_regular_subgroups, is_regular,
    iso_type, ConjClass, HolomorphSurvey, IsoType, Subgroup,
};
pub use tau::{
    brace_table, embed_pair, homomorphisms, pair_orbits, BraceTable, Classification, KernelKind,
    PairClass, ResidueClass, TauMap,
};
