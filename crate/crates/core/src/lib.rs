//! Finite left braces and the set-theoretic Yang-Baxter / reflection equations.
//!
//! Everything in this crate is exact and exhaustive: algebras are finite
//! Cayley tables validated axiom-by-axiom, solutions to the Yang-Baxter
//! equation are permutation tables checked on all triples, reflections are
//! found by scanning the full map space, and the parameter-dependent
//! equations are certified as identities between matrices of integer
//! polynomials in two variables.
//!
//! The main entry points:
//!
//! * [`brace::FiniteBrace`] / [`ring::FiniteRing`] — validated Cayley-table
//!   algebras with the structural maps (socle, opposite, star operation).
//! * [`yang_baxter::YangBaxterMap`] — σ/τ tables for `r(x,y) = (σ_x(y), τ_y(x))`,
//!   either derived from a brace or supplied directly.
//! * [`reflection`] — the reflection equation, equivariant maps, exhaustive
//!   enumeration, the near-ring of equivariant maps, and the constructive
//!   map families.
//! * [`factorizable`] — braces built from a factorized nilpotent ring and
//!   the reflections specific to them.
//! * [`param_dep`] — linearization and the spectral-parameter identities
//!   over ℤ[u,v].
//! * [`catalog`] — the bundled example algebras and solutions.

pub mod brace;
pub mod catalog;
pub mod factorizable;
pub mod json;
pub mod param_dep;
pub mod poly;
pub mod reflection;
pub mod ring;
pub mod suite;
pub mod table;
pub mod yang_baxter;

pub use brace::{BraceError, BraceSide, FiniteBrace, SocleSide, SubsetX};
pub use reflection::PointMap;
pub use ring::{FiniteRing, RingError};
pub use table::{Table, TableError};
pub use yang_baxter::YangBaxterMap;

/// Element of a finite carrier, always a dense index in `0..n`.
pub type Elem = usize;
