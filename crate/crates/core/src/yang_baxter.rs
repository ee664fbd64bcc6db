//! Set-theoretic Yang-Baxter maps `r(x, y) = (σ_x(y), τ_y(x))` over a
//! finite carrier, stored as σ/τ tables.
//!
//! The braid identity, involutivity, nondegeneracy and the σ-identities of
//! brace-derived maps are all decided by exhaustive scans; witnesses are
//! reported in lexicographic order so diagnostics are deterministic.

use serde::Serialize;
use thiserror::Error;

use crate::brace::{BraceSide, SocleSide, SubsetX};
use crate::{Elem, FiniteBrace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YbError {
    #[error("σ/τ leave the carrier at ({x}, {y}): image {image}")]
    NotClosed { x: Elem, y: Elem, image: Elem },
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("carrier members must lie inside the brace")]
    CarrierMismatch,
    #[error("σ table has wrong shape at row {row}")]
    SigmaShape { row: usize },
    #[error("τ table has wrong shape at row {row}")]
    TauShape { row: usize },
    #[error("table entry {entry} is not a carrier member")]
    EntryNotInCarrier { entry: Elem },
    #[error("Yang-Baxter map of a brace requires a left brace")]
    NotLeftBrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    FromBrace,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub involutive: bool,
    pub nondegenerate: bool,
}

/// σ/τ tables of a map `r : X × X → X × X`.
///
/// Tables are indexed by carrier *position* but store carrier *elements*;
/// `tau` is indexed `τ[y][x]` (outer index `y`), mirroring the usual
/// notation, so serialization never transposes it silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YangBaxterMap {
    carrier: SubsetX,
    sigma: Vec<Elem>,
    tau: Vec<Elem>,
    provenance: Provenance,
}

impl YangBaxterMap {
    /// The Yang-Baxter map of a left brace, restricted to `carrier`:
    /// `σ_x(y) = x∘y − x` and `τ_y(x) = (σ_x(y))⁻¹ ∘ x − (σ_x(y))⁻¹`.
    ///
    /// On the full brace the result is always an involutive nondegenerate
    /// solution. For a proper carrier, closure of both tables inside the
    /// carrier is verified and [`YbError::NotClosed`] carries the first
    /// escaping pair.
    pub fn from_brace(brace: &FiniteBrace, carrier: &SubsetX) -> Result<Self, YbError> {
        if brace.side() != BraceSide::Left {
            return Err(YbError::NotLeftBrace);
        }
        if carrier.ground_size() != brace.size() {
            return Err(YbError::CarrierMismatch);
        }
        if carrier.is_empty() {
            return Err(YbError::EmptyCarrier);
        }
        let m = carrier.len();
        let mut sigma = vec![0; m * m];
        let mut tau = vec![0; m * m];
        for (i, &x) in carrier.members().iter().enumerate() {
            for (j, &y) in carrier.members().iter().enumerate() {
                let s = brace.sigma(x, y);
                if !carrier.contains(s) {
                    return Err(YbError::NotClosed { x, y, image: s });
                }
                sigma[i * m + j] = s;
                let t = brace.tau(y, x);
                if !carrier.contains(t) {
                    return Err(YbError::NotClosed { x, y, image: t });
                }
                tau[j * m + i] = t;
            }
        }
        Ok(YangBaxterMap { carrier: carrier.clone(), sigma, tau, provenance: Provenance::FromBrace })
    }

    /// Wraps explicit σ/τ tables without asserting the braid identity.
    /// Row `i` of `sigma` is `σ` at the `i`-th carrier member; row `j` of
    /// `tau` is `τ` at the `j`-th carrier member (outer index `y`). Entries
    /// are carrier elements.
    pub fn from_tables(
        carrier: SubsetX,
        sigma_rows: &[Vec<Elem>],
        tau_rows: &[Vec<Elem>],
    ) -> Result<Self, YbError> {
        if carrier.is_empty() {
            return Err(YbError::EmptyCarrier);
        }
        let m = carrier.len();
        let flatten = |rows: &[Vec<Elem>], is_sigma: bool| -> Result<Vec<Elem>, YbError> {
            if rows.len() != m {
                return Err(if is_sigma {
                    YbError::SigmaShape { row: rows.len() }
                } else {
                    YbError::TauShape { row: rows.len() }
                });
            }
            let mut flat = Vec::with_capacity(m * m);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != m {
                    return Err(if is_sigma {
                        YbError::SigmaShape { row: i }
                    } else {
                        YbError::TauShape { row: i }
                    });
                }
                for &e in row {
                    if !carrier.contains(e) {
                        return Err(YbError::EntryNotInCarrier { entry: e });
                    }
                    flat.push(e);
                }
            }
            Ok(flat)
        };
        let sigma = flatten(sigma_rows, true)?;
        let tau = flatten(tau_rows, false)?;
        Ok(YangBaxterMap { carrier, sigma, tau, provenance: Provenance::Custom })
    }

    pub fn carrier(&self) -> &SubsetX {
        &self.carrier
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    fn pos(&self, e: Elem) -> usize {
        self.carrier.position(e).expect("element is a carrier member")
    }

    /// `σ_x(y)`; both arguments must be carrier members.
    #[inline]
    pub fn sigma(&self, x: Elem, y: Elem) -> Elem {
        let m = self.carrier.len();
        self.sigma[self.pos(x) * m + self.pos(y)]
    }

    /// `τ_y(x)`; both arguments must be carrier members.
    #[inline]
    pub fn tau(&self, y: Elem, x: Elem) -> Elem {
        let m = self.carrier.len();
        self.tau[self.pos(y) * m + self.pos(x)]
    }

    /// `r(x, y) = (σ_x(y), τ_y(x))`.
    #[inline]
    pub fn apply(&self, x: Elem, y: Elem) -> (Elem, Elem) {
        (self.sigma(x, y), self.tau(y, x))
    }

    /// σ/τ tables in carrier positions, for hot loops.
    pub(crate) fn position_tables(&self) -> (Vec<usize>, Vec<usize>) {
        let to_pos = |t: &[Elem]| t.iter().map(|&e| self.pos(e)).collect();
        (to_pos(&self.sigma), to_pos(&self.tau))
    }

    /// σ table as rows of carrier elements; row `i` is `σ` at the `i`-th
    /// carrier member.
    pub fn sigma_rows(&self) -> Vec<Vec<Elem>> {
        let m = self.carrier.len();
        (0..m).map(|i| self.sigma[i * m..(i + 1) * m].to_vec()).collect()
    }

    /// τ table as rows of carrier elements; row `j` is `τ` at the `j`-th
    /// carrier member (outer index `y`).
    pub fn tau_rows(&self) -> Vec<Vec<Elem>> {
        let m = self.carrier.len();
        (0..m).map(|j| self.tau[j * m..(j + 1) * m].to_vec()).collect()
    }

    /// Lexicographically least triple violating the braid identity
    /// `(id×r)(r×id)(id×r) = (r×id)(id×r)(r×id)`, or `None` when `r` is a
    /// solution of the set-theoretic Yang-Baxter equation.
    pub fn ybe_witness(&self) -> Option<(Elem, Elem, Elem)> {
        let members = self.carrier.members();
        for &x in members {
            for &y in members {
                for &z in members {
                    // rightmost factor acts first
                    let lhs = {
                        let (b, c) = self.apply(y, z);
                        let (a, b) = self.apply(x, b);
                        let (b, c) = self.apply(b, c);
                        (a, b, c)
                    };
                    let rhs = {
                        let (a, b) = self.apply(x, y);
                        let (b2, c) = self.apply(b, z);
                        let (a, b3) = self.apply(a, b2);
                        (a, b3, c)
                    };
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_solution(&self) -> bool {
        self.ybe_witness().is_none()
    }

    /// Involutivity (`r² = id` on all pairs) and nondegeneracy (every `σ_x`
    /// and `τ_y` is a bijection of the carrier). Nondegeneracy is computed
    /// on the stored carrier, never inherited from an ambient brace.
    pub fn classify(&self) -> Classification {
        let members = self.carrier.members();
        let m = members.len();
        let involutive = members.iter().all(|&x| {
            members.iter().all(|&y| {
                let (s, t) = self.apply(x, y);
                self.apply(s, t) == (x, y)
            })
        });
        let bijective_rows = |table: &[Elem]| {
            (0..m).all(|i| {
                let mut seen = vec![false; m];
                table[i * m..(i + 1) * m].iter().all(|&e| {
                    let p = self.pos(e);
                    !std::mem::replace(&mut seen[p], true)
                })
            })
        };
        let nondegenerate = bijective_rows(&self.sigma) && bijective_rows(&self.tau);
        Classification { involutive, nondegenerate }
    }

    pub fn is_involutive(&self) -> bool {
        self.classify().involutive
    }
}

/// Witness against one of the three σ-identities of a brace-derived map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaIdentityWitness {
    /// `σ_x(y + z) ≠ σ_x(y) + σ_x(z)` (σ_x fails to be additive).
    NotAdditive { x: Elem, y: Elem, z: Elem },
    /// `σ_x σ_y ≠ σ_{x∘y}` at `z`.
    NotMultiplicative { x: Elem, y: Elem, z: Elem },
    /// `σ_x(y) ∘ τ_y(x) ≠ x ∘ y`.
    SigmaTauProduct { x: Elem, y: Elem },
}

/// Checks, for all `x, y ∈ X` and `z ∈ B`, that
///
/// * `σ_x` is an endomorphism of `(B, +)`,
/// * `σ_x σ_y = σ_{x∘y}`,
/// * `σ_x(y) ∘ τ_y(x) = x ∘ y`,
///
/// where σ/τ are evaluated through the brace so proper carriers are fine.
pub fn sigma_identity_witness(brace: &FiniteBrace, x_set: &SubsetX) -> Option<SigmaIdentityWitness> {
    let n = brace.size();
    for &x in x_set.members() {
        for y in 0..n {
            for z in 0..n {
                if brace.sigma(x, brace.add(y, z)) != brace.add(brace.sigma(x, y), brace.sigma(x, z))
                {
                    return Some(SigmaIdentityWitness::NotAdditive { x, y, z });
                }
            }
        }
    }
    for &x in x_set.members() {
        for &y in x_set.members() {
            let xy = brace.mul(x, y);
            for z in 0..n {
                if brace.sigma(x, brace.sigma(y, z)) != brace.sigma(xy, z) {
                    return Some(SigmaIdentityWitness::NotMultiplicative { x, y, z });
                }
            }
        }
    }
    for &x in x_set.members() {
        for &y in x_set.members() {
            if brace.mul(brace.sigma(x, y), brace.tau(y, x)) != brace.mul(x, y) {
                return Some(SigmaIdentityWitness::SigmaTauProduct { x, y });
            }
        }
    }
    None
}

/// Common fixpoints of all `σ_x`, `x ∈ X`, computed directly from the brace.
/// These coincide with `X ∩ Soc(Bᵒᵖ)`.
pub fn sigma_fixpoints(brace: &FiniteBrace, x_set: &SubsetX) -> Vec<Elem> {
    x_set
        .members()
        .iter()
        .copied()
        .filter(|&z| x_set.members().iter().all(|&x| brace.sigma(x, z) == z))
        .collect()
}

/// Sanity relation between fixpoints and the opposite socle; `true` for
/// every valid brace.
pub fn socle_fixpoint_equivalence(brace: &FiniteBrace, x_set: &SubsetX) -> bool {
    let soc_op = brace.socle(SocleSide::Opposite);
    let expected: Vec<Elem> =
        x_set.members().iter().copied().filter(|&z| soc_op.contains(z)).collect();
    sigma_fixpoints(brace, x_set) == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Table;

    fn trivial_brace(n: usize) -> FiniteBrace {
        let add = Table::from_fn(n, |x, y| (x + y) % n).unwrap();
        FiniteBrace::from_tables(add.clone(), add, BraceSide::Left).unwrap()
    }

    fn z4_adjoint() -> FiniteBrace {
        let add = Table::from_fn(4, |x, y| (x + y) % 4).unwrap();
        let mul = Table::from_fn(4, |x, y| (x + y + 2 * x * y) % 4).unwrap();
        FiniteBrace::from_tables(add, mul, BraceSide::Left).unwrap()
    }

    /// r(x, y) = (y + 1, x) on Z_n.
    fn cyclic_shift(n: usize) -> YangBaxterMap {
        let carrier = SubsetX::full(n);
        let sigma: Vec<Vec<Elem>> = (0..n).map(|_| (0..n).map(|y| (y + 1) % n).collect()).collect();
        let tau: Vec<Vec<Elem>> = (0..n).map(|_| (0..n).collect()).collect();
        YangBaxterMap::from_tables(carrier, &sigma, &tau).unwrap()
    }

    #[test]
    fn trivial_brace_gives_the_flip() {
        let b = trivial_brace(3);
        let r = YangBaxterMap::from_brace(&b, &SubsetX::full(3)).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(r.apply(x, y), (y, x));
            }
        }
        assert!(r.is_solution());
        let c = r.classify();
        assert!(c.involutive && c.nondegenerate);
    }

    #[test]
    fn z4_adjoint_sigma_rows() {
        let b = z4_adjoint();
        let r = YangBaxterMap::from_brace(&b, &SubsetX::full(4)).unwrap();
        // σ_0 = σ_2 = id, σ_1 = σ_3 = (1 3)
        for y in 0..4 {
            assert_eq!(r.sigma(0, y), y);
            assert_eq!(r.sigma(2, y), y);
            assert_eq!(r.sigma(1, y), [0, 3, 2, 1][y]);
            assert_eq!(r.sigma(3, y), [0, 3, 2, 1][y]);
        }
        assert!(r.is_solution());
        let c = r.classify();
        assert!(c.involutive && c.nondegenerate);
    }

    #[test]
    fn restriction_must_be_closed() {
        let b = z4_adjoint();
        let x01 = SubsetX::new(4, [0, 1]).unwrap();
        // σ_1(1) = 3 escapes {0, 1}
        let err = YangBaxterMap::from_brace(&b, &x01).unwrap_err();
        assert_eq!(err, YbError::NotClosed { x: 1, y: 1, image: 3 });
        let x02 = SubsetX::new(4, [0, 2]).unwrap();
        assert!(YangBaxterMap::from_brace(&b, &x02).is_ok());
    }

    #[test]
    fn cyclic_shift_solves_ybe_but_is_not_involutive() {
        for n in 2..=5 {
            let r = cyclic_shift(n);
            assert!(r.is_solution(), "n = {n}");
            let c = r.classify();
            assert!(!c.involutive);
            assert!(c.nondegenerate);
            // r²(x, y) = (x + 1, y + 1)
            let (a, b) = r.apply(0, 0);
            assert_eq!(r.apply(a, b), (1, 1));
        }
    }

    #[test]
    fn perturbed_flip_breaks_ybe() {
        // flip on Z3 with the σ-row of 0 replaced by the transposition (0 1)
        let carrier = SubsetX::full(3);
        let sigma = vec![vec![1, 0, 2], vec![0, 1, 2], vec![0, 1, 2]];
        let tau = vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]];
        let r = YangBaxterMap::from_tables(carrier, &sigma, &tau).unwrap();
        let w = r.ybe_witness();
        assert!(w.is_some());
        // brute-force oracle: some single-row tweak of the flip must fail,
        // and the checker agrees with a direct evaluation at the witness
        let (x, y, z) = w.unwrap();
        let lhs = {
            let (b, c) = r.apply(y, z);
            let (a, b) = r.apply(x, b);
            let (b, c) = r.apply(b, c);
            (a, b, c)
        };
        let rhs = {
            let (a, b) = r.apply(x, y);
            let (b2, c) = r.apply(b, z);
            let (a, b3) = r.apply(a, b2);
            (a, b3, c)
        };
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn sigma_identities_hold_for_brace_maps() {
        for b in [trivial_brace(3), z4_adjoint()] {
            let full = SubsetX::full(b.size());
            assert_eq!(sigma_identity_witness(&b, &full), None);
            assert!(socle_fixpoint_equivalence(&b, &full));
        }
    }

    #[test]
    fn socle_elements_are_sigma_fixpoints() {
        let b = z4_adjoint();
        let full = SubsetX::full(4);
        assert_eq!(sigma_fixpoints(&b, &full), vec![0, 2]);
    }
}
