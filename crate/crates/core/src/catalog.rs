//! Built-in example algebras and solutions.
//!
//! Every entry is constructed through the validating constructors, so a
//! successful lookup is already a certificate that the object satisfies its
//! axioms.
//!
//! Names accepted by [`catalog`]:
//!
//! | name            | kind          | object                                              |
//! |-----------------|---------------|-----------------------------------------------------|
//! | `trivial:N`     | brace         | trivial brace on ℤ_N (multiplication = addition)    |
//! | `zero:N`        | ring          | zero ring on ℤ_N                                    |
//! | `z4ring`        | ring          | ℤ₄ with x∗y = 2xy                                   |
//! | `z4adj`         | brace         | adjoint brace of `z4ring`                           |
//! | `sd6`           | brace         | order-6 one-sided brace ℤ₃ ⋊ ℤ₂                     |
//! | `ut3:F2`        | factorization | strict upper-triangular 3×3 over F₂ with S, I, J    |
//! | `ut3:F2:ring`   | ring          | the ring alone                                      |
//! | `ut3:F2:adj`    | brace         | its adjoint brace                                   |
//! | `ut3:F2:odot`   | brace         | its ⊙-brace                                         |
//! | `ut4:F2` (+…)   | as above      | strict upper-triangular 4×4 over F₂                 |
//! | `cyclic:N`      | ybmap         | r(x, y) = (y+1, x) on ℤ_N                           |
//! | `phi:N`         | ybmap         | r(x, y) = (φ(y), φ⁻¹(x)), φ the N-cycle             |
//!
//! Basis order for `ut3:F2` is (e12, e23, e13) as bits 0..3, matching the
//! component notation (a, b, c); for `ut4:F2` it is lexicographic
//! (e12, e13, e14, e23, e24, e34) as bits 0..6.

use thiserror::Error;

use crate::brace::{BraceSide, SubsetX};
use crate::factorizable::{verify_factorization, verify_ideal, Factorization, IdealJ};
use crate::yang_baxter::YangBaxterMap;
use crate::{Elem, FiniteBrace, FiniteRing, Table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {name:?}")]
    UnknownEntry { name: String },
    #[error("bad parameter in {name:?}: {detail}")]
    BadParameter { name: String, detail: String },
}

#[derive(Debug, Clone)]
pub enum CatalogObject {
    Ring(FiniteRing),
    Brace(FiniteBrace),
    YbMap(YangBaxterMap),
    Factorization(Box<FactorizationBundle>),
}

impl CatalogObject {
    pub fn kind(&self) -> &'static str {
        match self {
            CatalogObject::Ring(_) => "ring",
            CatalogObject::Brace(_) => "brace",
            CatalogObject::YbMap(_) => "ybmap",
            CatalogObject::Factorization(_) => "factorization",
        }
    }
}

/// A factorized ring together with its canonical small ideal `J`.
#[derive(Debug, Clone)]
pub struct FactorizationBundle {
    pub factorization: Factorization,
    pub j: IdealJ,
}

pub fn trivial_brace(n: usize) -> FiniteBrace {
    let add = Table::from_fn(n, |x, y| (x + y) % n).expect("n ≥ 1");
    FiniteBrace::from_tables(add.clone(), add, BraceSide::Left).expect("trivial tables are a brace")
}

pub fn zero_ring(n: usize) -> FiniteRing {
    let add = Table::from_fn(n, |x, y| (x + y) % n).expect("n ≥ 1");
    let mul = Table::from_fn(n, |_, _| 0).expect("n ≥ 1");
    FiniteRing::from_tables(add, mul).expect("zero product is a ring")
}

/// ℤ₄ with the doubled product x∗y = 2xy, nilpotent of index 3.
pub fn z4_ring() -> FiniteRing {
    let add = Table::from_fn(4, |x, y| (x + y) % 4).unwrap();
    let mul = Table::from_fn(4, |x, y| (2 * x * y) % 4).unwrap();
    FiniteRing::from_tables(add, mul).expect("doubled product is a ring")
}

pub fn z4_adjoint_brace() -> FiniteBrace {
    FiniteBrace::adjoint_of(&z4_ring()).expect("nilpotent rings are radical")
}

/// The semidirect-product brace on ℤ₃ × ℤ₂ (encoded `a + 3b`): addition is
/// componentwise and `(a, b) ∘ (a', b') = (a + (−1)^b a', b + b')`. Its
/// multiplicative group is nonabelian of order 6 and the right-brace law
/// fails, so this is a genuinely one-sided brace.
pub fn semidirect6_brace() -> FiniteBrace {
    let unpack = |x: Elem| (x % 3, x / 3);
    let add = Table::from_fn(6, |x, y| {
        let ((a, b), (a2, b2)) = (unpack(x), unpack(y));
        (a + a2) % 3 + 3 * ((b + b2) % 2)
    })
    .unwrap();
    let mul = Table::from_fn(6, |x, y| {
        let ((a, b), (a2, b2)) = (unpack(x), unpack(y));
        let twisted = if b == 0 { a2 } else { (3 - a2) % 3 };
        (a + twisted) % 3 + 3 * ((b + b2) % 2)
    })
    .unwrap();
    FiniteBrace::from_tables(add, mul, BraceSide::Left).expect("semidirect product is a left brace")
}

/// Strictly upper-triangular `k × k` matrices over F₂ as a nilpotent ring.
/// `k` must be 3 or 4; see the module docs for the basis order.
pub fn strict_upper_triangular_ring(k: usize) -> FiniteRing {
    let basis: &[(usize, usize)] = match k {
        3 => &[(0, 1), (1, 2), (0, 2)],
        4 => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        _ => panic!("only 3×3 and 4×4 matrix rings are bundled"),
    };
    let dim = basis.len();
    let n = 1usize << dim;
    let to_matrix = |x: Elem| {
        let mut m = [[0u8; 4]; 4];
        for (bit, &(i, j)) in basis.iter().enumerate() {
            m[i][j] = ((x >> bit) & 1) as u8;
        }
        m
    };
    let from_matrix = |m: [[u8; 4]; 4]| {
        basis.iter().enumerate().fold(0, |acc, (bit, &(i, j))| acc | ((m[i][j] as usize) << bit))
    };
    let add = Table::from_fn(n, |x, y| x ^ y).unwrap();
    let mul = Table::from_fn(n, |x, y| {
        let (a, b) = (to_matrix(x), to_matrix(y));
        let mut c = [[0u8; 4]; 4];
        for i in 0..k {
            for j in 0..k {
                let mut acc = 0;
                for t in 0..k {
                    acc ^= a[i][t] & b[t][j];
                }
                c[i][j] = acc;
            }
        }
        from_matrix(c)
    })
    .unwrap();
    FiniteRing::from_tables(add, mul).expect("matrix tables form a ring")
}

/// 3×3 case with the canonical factorization S = {0, e12},
/// I = span(e23, e13) and ideal J = {0, e13}.
pub fn ut3_bundle() -> FactorizationBundle {
    let ring = strict_upper_triangular_ring(3);
    let s_set = SubsetX::new(8, [0, 1]).unwrap();
    let i_set = SubsetX::new(8, [0, 2, 4, 6]).unwrap();
    let factorization = verify_factorization(&ring, &s_set, &i_set).expect("canonical factorization");
    let j = verify_ideal(&ring, &SubsetX::new(8, [0, 4]).unwrap(), &i_set, &SubsetX::full(8))
        .expect("e13 spans an ideal");
    FactorizationBundle { factorization, j }
}

/// 4×4 case with S = {0, e12}, I = everything without an e12 component,
/// and J = span(e14, e24) — the smallest ideal with a nontrivial involutive
/// reflection.
pub fn ut4_bundle() -> FactorizationBundle {
    let ring = strict_upper_triangular_ring(4);
    let s_set = SubsetX::new(64, [0, 1]).unwrap();
    let i_set = SubsetX::new(64, (0..64).filter(|x| x & 1 == 0)).unwrap();
    let factorization = verify_factorization(&ring, &s_set, &i_set).expect("canonical factorization");
    let j_members = SubsetX::new(64, [0, 4, 16, 20]).unwrap();
    let j = verify_ideal(&ring, &j_members, &i_set, &SubsetX::full(64))
        .expect("span(e14, e24) is an ideal");
    FactorizationBundle { factorization, j }
}

/// The shift solution `r(x, y) = (y + 1, x)` on ℤ_n: a nondegenerate,
/// non-involutive (for n ≥ 2) solution.
pub fn cyclic_shift_solution(n: usize) -> YangBaxterMap {
    let carrier = SubsetX::full(n);
    let sigma: Vec<Vec<Elem>> = (0..n).map(|_| (0..n).map(|y| (y + 1) % n).collect()).collect();
    let tau: Vec<Vec<Elem>> = (0..n).map(|_| (0..n).collect()).collect();
    YangBaxterMap::from_tables(carrier, &sigma, &tau).expect("tables are total")
}

/// `r(x, y) = (φ(y), φ⁻¹(x))` for φ the n-cycle; involutive and
/// nondegenerate, and every map is a reflection of it.
pub fn cycle_conjugation_solution(n: usize) -> YangBaxterMap {
    let carrier = SubsetX::full(n);
    let sigma: Vec<Vec<Elem>> = (0..n).map(|_| (0..n).map(|y| (y + 1) % n).collect()).collect();
    let tau: Vec<Vec<Elem>> = (0..n).map(|_| (0..n).map(|x| (x + n - 1) % n).collect()).collect();
    YangBaxterMap::from_tables(carrier, &sigma, &tau).expect("tables are total")
}

fn parse_size(name: &str, raw: &str) -> Result<usize, CatalogError> {
    let n: usize = raw.parse().map_err(|_| CatalogError::BadParameter {
        name: name.to_string(),
        detail: format!("{raw:?} is not a size"),
    })?;
    if n == 0 || n > 4096 {
        return Err(CatalogError::BadParameter {
            name: name.to_string(),
            detail: "size must be in 1..=4096".to_string(),
        });
    }
    Ok(n)
}

/// Look up a catalog entry by name; see the module docs for the name table.
pub fn catalog(name: &str) -> Result<CatalogObject, CatalogError> {
    let parts: Vec<&str> = name.split(':').collect();
    let object = match parts.as_slice() {
        ["trivial", raw] => CatalogObject::Brace(trivial_brace(parse_size(name, raw)?)),
        ["zero", raw] => CatalogObject::Ring(zero_ring(parse_size(name, raw)?)),
        ["z4ring"] => CatalogObject::Ring(z4_ring()),
        ["z4adj"] => CatalogObject::Brace(z4_adjoint_brace()),
        ["sd6"] => CatalogObject::Brace(semidirect6_brace()),
        ["cyclic", raw] => CatalogObject::YbMap(cyclic_shift_solution(parse_size(name, raw)?)),
        ["phi", raw] => CatalogObject::YbMap(cycle_conjugation_solution(parse_size(name, raw)?)),
        ["ut3", "F2"] => CatalogObject::Factorization(Box::new(ut3_bundle())),
        ["ut3", "F2", "ring"] => CatalogObject::Ring(strict_upper_triangular_ring(3)),
        ["ut3", "F2", "adj"] => {
            CatalogObject::Brace(ut3_bundle().factorization.adjoint().clone())
        }
        ["ut3", "F2", "odot"] => {
            CatalogObject::Brace(ut3_bundle().factorization.odot_brace().clone())
        }
        ["ut4", "F2"] => CatalogObject::Factorization(Box::new(ut4_bundle())),
        ["ut4", "F2", "ring"] => CatalogObject::Ring(strict_upper_triangular_ring(4)),
        ["ut4", "F2", "adj"] => {
            CatalogObject::Brace(ut4_bundle().factorization.adjoint().clone())
        }
        ["ut4", "F2", "odot"] => {
            CatalogObject::Brace(ut4_bundle().factorization.odot_brace().clone())
        }
        _ => return Err(CatalogError::UnknownEntry { name: name.to_string() }),
    };
    Ok(object)
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct CatalogEntryInfo {
    pub name: &'static str,
    pub kind: &'static str,
    pub description: &'static str,
}

pub fn entries() -> Vec<CatalogEntryInfo> {
    vec![
        CatalogEntryInfo {
            name: "trivial:N",
            kind: "brace",
            description: "trivial brace on Z_N (multiplication = addition)",
        },
        CatalogEntryInfo { name: "zero:N", kind: "ring", description: "zero ring on Z_N" },
        CatalogEntryInfo { name: "z4ring", kind: "ring", description: "Z_4 with x*y = 2xy" },
        CatalogEntryInfo { name: "z4adj", kind: "brace", description: "adjoint brace of z4ring" },
        CatalogEntryInfo {
            name: "sd6",
            kind: "brace",
            description: "one-sided brace of order 6 (Z_3 twisted by Z_2)",
        },
        CatalogEntryInfo {
            name: "ut3:F2",
            kind: "factorization",
            description: "strict upper-triangular 3x3 over F_2 with S = {0, e12}, I = span(e23, e13), J = {0, e13}; :ring/:adj/:odot select parts",
        },
        CatalogEntryInfo {
            name: "ut4:F2",
            kind: "factorization",
            description: "strict upper-triangular 4x4 over F_2 with S = {0, e12}, J = span(e14, e24); :ring/:adj/:odot select parts",
        },
        CatalogEntryInfo {
            name: "cyclic:N",
            kind: "ybmap",
            description: "r(x, y) = (y+1, x) on Z_N (non-involutive for N >= 2)",
        },
        CatalogEntryInfo {
            name: "phi:N",
            kind: "ybmap",
            description: "r(x, y) = (phi(y), phi^-1(x)) for phi the N-cycle",
        },
    ]
}

/// The braces the exhaustive property suites run over.
pub fn catalog_braces() -> Vec<(String, FiniteBrace)> {
    let ut3 = ut3_bundle();
    vec![
        ("trivial:2".to_string(), trivial_brace(2)),
        ("trivial:3".to_string(), trivial_brace(3)),
        ("trivial:4".to_string(), trivial_brace(4)),
        ("z4adj".to_string(), z4_adjoint_brace()),
        ("sd6".to_string(), semidirect6_brace()),
        ("ut3:F2:adj".to_string(), ut3.factorization.adjoint().clone()),
        ("ut3:F2:odot".to_string(), ut3.factorization.odot_brace().clone()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::SocleSide;

    #[test]
    fn every_entry_constructs() {
        for name in
            ["trivial:3", "zero:5", "z4ring", "z4adj", "sd6", "ut3:F2", "ut4:F2", "cyclic:4", "phi:3"]
        {
            let obj = catalog(name).unwrap();
            assert!(!obj.kind().is_empty());
        }
        assert!(matches!(
            catalog("nonsense"),
            Err(CatalogError::UnknownEntry { .. })
        ));
        assert!(matches!(
            catalog("cyclic:0"),
            Err(CatalogError::BadParameter { .. })
        ));
    }

    #[test]
    fn sd6_is_one_sided() {
        let b = semidirect6_brace();
        assert!(!b.is_two_sided());
        // one-sided braces have a nonassociative star operation
        assert_eq!(b.star_associativity_witness(), Some((3, 3, 1)));
    }

    #[test]
    fn two_sided_catalog_braces() {
        assert!(trivial_brace(4).is_two_sided());
        assert!(z4_adjoint_brace().is_two_sided());
        let ut3 = ut3_bundle();
        assert!(ut3.factorization.adjoint().is_two_sided());
        // this particular ⊙-brace happens to be commutative, hence two-sided
        assert!(ut3.factorization.odot_brace().is_two_sided());
        // the 4×4 ⊙-brace is not
        let ut4 = ut4_bundle();
        assert!(!ut4.factorization.odot_brace().is_two_sided());
        assert!(ut4.factorization.odot_brace().star_associativity_witness().is_some());
    }

    #[test]
    fn opposite_of_noncommutative_brace_is_a_right_brace() {
        let adj = ut3_bundle().factorization.adjoint().clone();
        // e12 ∘ e23 = e12 + e23 + e13 ≠ e23 ∘ e12
        assert_ne!(adj.mul(1, 2), adj.mul(2, 1));
        let op = adj.opposite().unwrap();
        assert_eq!(op.side(), BraceSide::Right);
    }

    #[test]
    fn ut3_socles() {
        let adj = ut3_bundle().factorization.adjoint().clone();
        // left socle: a-component zero (star row vanishes)
        assert_eq!(adj.socle(SocleSide::Left).members(), &[0, 2, 4, 6]);
        // opposite socle: b-component zero
        assert_eq!(adj.socle(SocleSide::Opposite).members(), &[0, 1, 4, 5]);
    }

    #[test]
    fn ut3_star_recovers_ring_product() {
        let bundle = ut3_bundle();
        let ring = bundle.factorization.ring();
        let adj = bundle.factorization.adjoint();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(adj.star(x, y), ring.mul(x, y));
            }
        }
        // e12 ∗ e23 = e13
        assert_eq!(ring.mul(1, 2), 4);
        assert_eq!(ring.nilpotency_index(), Some(3));
    }

    #[test]
    fn ut4_ring_shape() {
        let ring = strict_upper_triangular_ring(4);
        assert_eq!(ring.size(), 64);
        assert_eq!(ring.nilpotency_index(), Some(4));
        // e12 ∗ e23 = e13, e12 ∗ e24 = e14, e23 ∗ e34 = e24
        assert_eq!(ring.mul(1, 8), 2);
        assert_eq!(ring.mul(1, 16), 4);
        assert_eq!(ring.mul(8, 32), 16);
    }

    #[test]
    fn phi_solution_is_involutive() {
        let r = cycle_conjugation_solution(3);
        assert!(r.is_solution());
        let c = r.classify();
        assert!(c.involutive && c.nondegenerate);
    }

    #[test]
    fn suite_braces_all_validate() {
        let braces = catalog_braces();
        assert_eq!(braces.len(), 7);
        let sizes: Vec<usize> = braces.iter().map(|(_, b)| b.size()).collect();
        assert_eq!(sizes, vec![2, 3, 4, 4, 6, 8, 8]);
    }
}
