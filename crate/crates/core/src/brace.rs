//! Finite left (and right) braces as validated Cayley tables.
//!
//! A left brace is a set `B` with an abelian group `(B, +)`, a group
//! `(B, ∘)`, and the compatibility law
//!
//! ```text
//! x ∘ (y + z) = x∘y + x∘z − x
//! ```
//!
//! for all triples. Right braces satisfy the mirrored law
//! `(x + y) ∘ z = x∘z + y∘z − z` and arise here as opposites of left
//! braces. The two identities necessarily coincide and are pinned to
//! element `0`.

use thiserror::Error;

use crate::ring::{additive_span, FiniteRing};
use crate::table::{abelian_group_violation, group_violation, inverse_table, GroupViolation};
use crate::{Elem, Table, TableError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraceSide {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraceError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("tables disagree in size: {add} vs {mul}")]
    SizeMismatch { add: usize, mul: usize },
    #[error("0 is not the additive identity, witness {x}")]
    AdditiveIdentity { x: Elem },
    #[error("addition is not commutative at ({x}, {y})")]
    AddNotCommutative { x: Elem, y: Elem },
    #[error("addition is not associative at ({x}, {y}, {z})")]
    AddNotAssociative { x: Elem, y: Elem, z: Elem },
    #[error("{x} has no additive inverse")]
    AdditiveInverse { x: Elem },
    #[error("0 is not the multiplicative identity, witness {x}")]
    MultiplicativeIdentity { x: Elem },
    #[error("multiplication is not associative at ({x}, {y}, {z})")]
    MulNotAssociative { x: Elem, y: Elem, z: Elem },
    #[error("{x} has no multiplicative inverse")]
    MultiplicativeInverse { x: Elem },
    #[error("brace compatibility law fails at ({x}, {y}, {z})")]
    CompatibilityFails { x: Elem, y: Elem, z: Elem },
    #[error("{x} has no inverse under the adjoint multiplication")]
    NotRadical { x: Elem },
    #[error("operation requires a left brace")]
    NotLeftBrace,
}

/// Which socle to compute: fixed elements of left multiplication
/// (`a ∘ b = a + b` for all `b`) or of right multiplication
/// (`b ∘ a = a + b` for all `b`, the socle of the opposite brace).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SocleSide {
    Left,
    Opposite,
}

/// A validated finite brace. Additive and multiplicative inverse tables are
/// precomputed so σ/τ evaluation is table lookups only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBrace {
    size: usize,
    add: Table,
    mul: Table,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    side: BraceSide,
}

impl FiniteBrace {
    /// Validates the three brace axioms and returns the brace, or the first
    /// failing axiom with a witness. This is the only constructor; every
    /// `FiniteBrace` in the crate has passed the full axiom scan.
    pub fn from_tables(add: Table, mul: Table, side: BraceSide) -> Result<Self, BraceError> {
        if add.size() != mul.size() {
            return Err(BraceError::SizeMismatch { add: add.size(), mul: mul.size() });
        }
        if let Some(v) = abelian_group_violation(&add) {
            return Err(match v {
                GroupViolation::Identity { x } => BraceError::AdditiveIdentity { x },
                GroupViolation::NotCommutative { x, y } => BraceError::AddNotCommutative { x, y },
                GroupViolation::NotAssociative { x, y, z } => {
                    BraceError::AddNotAssociative { x, y, z }
                }
                GroupViolation::NoInverse { x } => BraceError::AdditiveInverse { x },
            });
        }
        if let Some(v) = group_violation(&mul) {
            return Err(match v {
                GroupViolation::Identity { x } => BraceError::MultiplicativeIdentity { x },
                GroupViolation::NotCommutative { .. } => unreachable!("not checked for groups"),
                GroupViolation::NotAssociative { x, y, z } => {
                    BraceError::MulNotAssociative { x, y, z }
                }
                GroupViolation::NoInverse { x } => BraceError::MultiplicativeInverse { x },
            });
        }
        let n = add.size();
        let neg = inverse_table(&add);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let ok = match side {
                        BraceSide::Left => {
                            // x ∘ (y + z) = x∘y + x∘z − x
                            mul.get(x, add.get(y, z))
                                == add.get(add.get(mul.get(x, y), mul.get(x, z)), neg[x])
                        }
                        BraceSide::Right => {
                            // (x + y) ∘ z = x∘z + y∘z − z
                            mul.get(add.get(x, y), z)
                                == add.get(add.get(mul.get(x, z), mul.get(y, z)), neg[z])
                        }
                    };
                    if !ok {
                        return Err(BraceError::CompatibilityFails { x, y, z });
                    }
                }
            }
        }
        let inv = inverse_table(&mul);
        Ok(FiniteBrace { size: n, add, mul, neg, inv, side })
    }

    /// The adjoint brace of a ring: `x ∘ y = x + y + x∗y`. Fails with
    /// [`BraceError::NotRadical`] when some element has no adjoint inverse
    /// (the ring is not Jacobson radical). Nilpotency is not required.
    pub fn adjoint_of(ring: &FiniteRing) -> Result<Self, BraceError> {
        let n = ring.size();
        let mul = Table::from_fn(n, |x, y| ring.add(ring.add(x, y), ring.mul(x, y)))
            .expect("adjoint product stays in range");
        // locate the radicality failure precisely before the axiom scan
        for x in 0..n {
            if !(0..n).any(|y| mul.get(x, y) == 0 && mul.get(y, x) == 0) {
                return Err(BraceError::NotRadical { x });
            }
        }
        Self::from_tables(ring.add_table().clone(), mul, BraceSide::Left)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn side(&self) -> BraceSide {
        self.side
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add.get(x, y)
    }

    /// Brace multiplication `x ∘ y`.
    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul.get(x, y)
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x]
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add.get(x, self.neg[y])
    }

    /// Inverse under `∘`.
    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inv[x]
    }

    /// `σ_x(y) = x∘y − x`.
    #[inline]
    pub fn sigma(&self, x: Elem, y: Elem) -> Elem {
        self.sub(self.mul.get(x, y), x)
    }

    /// `τ_y(x) = (σ_x(y))⁻¹ ∘ x − (σ_x(y))⁻¹`.
    #[inline]
    pub fn tau(&self, y: Elem, x: Elem) -> Elem {
        let s = self.inv[self.sigma(x, y)];
        self.sub(self.mul.get(s, x), s)
    }

    /// `x ⋆ y = x∘y − x − y`.
    pub fn star(&self, x: Elem, y: Elem) -> Elem {
        self.sub(self.sub(self.mul.get(x, y), x), y)
    }

    /// `n · x` in the additive group, for any integer `n`.
    pub fn nmul(&self, n: i64, x: Elem) -> Elem {
        let base = if n < 0 { self.neg[x] } else { x };
        let mut acc = 0;
        for _ in 0..n.unsigned_abs() {
            acc = self.add.get(acc, base);
        }
        acc
    }

    /// `x^j` in the multiplicative group, `j ≥ 0` (so `x^0 = 0`).
    pub fn opow(&self, x: Elem, j: u32) -> Elem {
        let mut acc = 0;
        for _ in 0..j {
            acc = self.mul.get(acc, x);
        }
        acc
    }

    /// Lexicographically least `(x, y, z)` with `(x⋆y)⋆z ≠ x⋆(y⋆z)`, if any.
    /// `None` means `⋆` is associative on the whole brace.
    pub fn star_associativity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                let xy = self.star(x, y);
                for z in 0..n {
                    if self.star(xy, z) != self.star(x, self.star(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// The socle on the requested side, as a subset. Both socles are
    /// additive subgroups containing `0`.
    pub fn socle(&self, side: SocleSide) -> SubsetX {
        let n = self.size;
        let members: Vec<Elem> = (0..n)
            .filter(|&a| {
                (0..n).all(|b| match side {
                    SocleSide::Left => self.mul.get(a, b) == self.add.get(a, b),
                    SocleSide::Opposite => self.mul.get(b, a) == self.add.get(a, b),
                })
            })
            .collect();
        SubsetX::new(n, members).expect("socle members are valid indices")
    }

    /// Whether `c` commutes with every element under `∘`.
    pub fn is_central(&self, c: Elem) -> bool {
        (0..self.size).all(|b| self.mul.get(c, b) == self.mul.get(b, c))
    }

    /// The opposite brace: same addition, multiplication transposed.
    /// Defined for left braces; the result is a right brace and is
    /// re-validated against the right-brace law.
    pub fn opposite(&self) -> Result<FiniteBrace, BraceError> {
        if self.side != BraceSide::Left {
            return Err(BraceError::NotLeftBrace);
        }
        FiniteBrace::from_tables(self.add.clone(), self.mul.transposed(), BraceSide::Right)
    }

    /// Whether the right-brace law also holds, making the brace two-sided.
    pub fn is_two_sided(&self) -> bool {
        let n = self.size;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| match self.side {
                    BraceSide::Left => {
                        self.mul.get(self.add.get(x, y), z)
                            == self.sub(self.add.get(self.mul.get(x, z), self.mul.get(y, z)), z)
                    }
                    BraceSide::Right => {
                        self.mul.get(x, self.add.get(y, z))
                            == self.sub(self.add.get(self.mul.get(x, y), self.mul.get(x, z)), x)
                    }
                })
            })
        })
    }

    /// Subbrace test: `X` is an additive subgroup and `r(X, X) ⊆ X × X`.
    ///
    /// When both conditions hold, `X` is automatically closed under `∘` and
    /// multiplicative inverses; that consequence is asserted here.
    pub fn verify_subbrace(&self, x: &SubsetX) -> bool {
        if x.ground_size() != self.size || x.is_empty() {
            return false;
        }
        let closed_add =
            x.members().iter().all(|&a| x.members().iter().all(|&b| x.contains(self.add(a, b))));
        if !closed_add {
            return false;
        }
        // a finite subset closed under + is a subgroup; r-closure on top
        let closed_r = x.members().iter().all(|&a| {
            x.members().iter().all(|&b| x.contains(self.sigma(a, b)) && x.contains(self.tau(b, a)))
        });
        if !closed_r {
            return false;
        }
        for &a in x.members() {
            assert!(x.contains(self.inv[a]), "subbrace must contain multiplicative inverses");
            for &b in x.members() {
                assert!(x.contains(self.mul(a, b)), "subbrace must be closed under ∘");
            }
        }
        true
    }

    /// Additive subgroup generated by a set of elements.
    pub fn additive_span(&self, gens: &[Elem]) -> SubsetX {
        SubsetX::new(self.size, additive_span(&self.add, gens)).expect("span members valid")
    }

    pub fn add_table(&self) -> &Table {
        &self.add
    }

    pub fn mul_table(&self) -> &Table {
        &self.mul
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubsetError {
    #[error("member {member} outside ground set 0..{ground}")]
    OutOfRange { member: Elem, ground: usize },
    #[error("duplicate member {member}")]
    Duplicate { member: Elem },
}

/// A subset of a ground carrier `0..n`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetX {
    ground_size: usize,
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl SubsetX {
    pub fn new(ground_size: usize, members: impl IntoIterator<Item = Elem>) -> Result<Self, SubsetError> {
        let mut mask = vec![false; ground_size];
        let mut sorted: Vec<Elem> = Vec::new();
        for m in members {
            if m >= ground_size {
                return Err(SubsetError::OutOfRange { member: m, ground: ground_size });
            }
            if mask[m] {
                return Err(SubsetError::Duplicate { member: m });
            }
            mask[m] = true;
            sorted.push(m);
        }
        sorted.sort_unstable();
        Ok(SubsetX { ground_size, members: sorted, mask })
    }

    pub fn full(ground_size: usize) -> Self {
        SubsetX {
            ground_size,
            members: (0..ground_size).collect(),
            mask: vec![true; ground_size],
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.ground_size
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        e < self.ground_size && self.mask[e]
    }

    /// Position of `e` in the sorted member list.
    pub fn position(&self, e: Elem) -> Option<usize> {
        self.members.binary_search(&e).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn trivial_brace(n: usize) -> FiniteBrace {
        let add = Table::from_fn(n, |x, y| (x + y) % n).unwrap();
        FiniteBrace::from_tables(add.clone(), add, BraceSide::Left).unwrap()
    }

    fn z4_adjoint() -> FiniteBrace {
        // adjoint of x∗y = 2xy mod 4: x∘y = x + y + 2xy
        let add = Table::from_fn(4, |x, y| (x + y) % 4).unwrap();
        let mul = Table::from_fn(4, |x, y| (x + y + 2 * x * y) % 4).unwrap();
        FiniteBrace::from_tables(add, mul, BraceSide::Left).unwrap()
    }

    fn subset(b: &FiniteBrace, members: &[Elem]) -> SubsetX {
        SubsetX::new(b.size(), members.iter().copied()).unwrap()
    }

    #[test]
    fn trivial_tables_form_a_brace() {
        trivial_brace(3);
    }

    #[test]
    fn z4_adjoint_is_a_brace() {
        // oracle: check the left law on all 64 triples straight from the formula
        for x in 0i64..4 {
            for y in 0i64..4 {
                for z in 0i64..4 {
                    let circ = |a: i64, b: i64| (a + b + 2 * a * b).rem_euclid(4);
                    let lhs = circ(x, (y + z).rem_euclid(4));
                    let rhs = (circ(x, y) + circ(x, z) - x).rem_euclid(4);
                    assert_eq!(lhs, rhs);
                }
            }
        }
        let b = z4_adjoint();
        assert_eq!(b.mul(1, 1), 0);
        assert_eq!(b.mul(1, 2), 3);
        assert_eq!(b.mul(2, 3), 1);
    }

    #[test]
    fn z4_with_plain_product_is_not_a_brace() {
        // x∘y = x + y + xy mod 4: 1∘y = 1 + 2y is never 0, so 1 has no inverse
        let add = Table::from_fn(4, |x, y| (x + y) % 4).unwrap();
        let mul = Table::from_fn(4, |x, y| (x + y + x * y) % 4).unwrap();
        let err = FiniteBrace::from_tables(add, mul, BraceSide::Left).unwrap_err();
        assert_eq!(err, BraceError::MultiplicativeInverse { x: 1 });
    }

    #[test]
    fn adjoint_of_doubling_ring_matches_formula() {
        let add = Table::from_fn(4, |x, y| (x + y) % 4).unwrap();
        let mul = Table::from_fn(4, |x, y| (2 * x * y) % 4).unwrap();
        let ring = FiniteRing::from_tables(add, mul).unwrap();
        let b = FiniteBrace::adjoint_of(&ring).unwrap();
        assert_eq!(b, z4_adjoint());
    }

    #[test]
    fn adjoint_of_zero_ring_is_trivial() {
        let add = Table::from_fn(3, |x, y| (x + y) % 3).unwrap();
        let mul = Table::from_fn(3, |_, _| 0).unwrap();
        let ring = FiniteRing::from_tables(add, mul).unwrap();
        let b = FiniteBrace::adjoint_of(&ring).unwrap();
        assert_eq!(b, trivial_brace(3));
    }

    #[test]
    fn non_radical_ring_is_rejected() {
        // F3 with full product: 2 has no adjoint inverse (2∘y = 2 + 3y ≡ 2)
        let add = Table::from_fn(3, |x, y| (x + y) % 3).unwrap();
        let mul = Table::from_fn(3, |x, y| (x * y) % 3).unwrap();
        let ring = FiniteRing::from_tables(add, mul).unwrap();
        let err = FiniteBrace::adjoint_of(&ring).unwrap_err();
        assert_eq!(err, BraceError::NotRadical { x: 2 });
    }

    #[test]
    fn star_values() {
        let b = z4_adjoint();
        // 1∘1 = 0, so 1⋆1 = 0 − 1 − 1 = 2
        assert_eq!(b.star(1, 1), 2);
        let t = trivial_brace(3);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(t.star(x, y), 0);
            }
        }
        // for an adjoint brace ⋆ recovers the ring product
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(b.star(x, y), (2 * x * y) % 4);
            }
        }
    }

    #[test]
    fn star_is_associative_on_two_sided_braces() {
        assert_eq!(trivial_brace(3).star_associativity_witness(), None);
        assert_eq!(z4_adjoint().star_associativity_witness(), None);
    }

    #[test]
    fn socles_of_z4_adjoint() {
        let b = z4_adjoint();
        assert_eq!(b.socle(SocleSide::Left).members(), &[0, 2]);
        assert_eq!(b.socle(SocleSide::Opposite).members(), &[0, 2]);
        let t = trivial_brace(3);
        assert_eq!(t.socle(SocleSide::Left).members(), &[0, 1, 2]);
    }

    #[test]
    fn opposite_of_commutative_brace_is_itself() {
        let b = z4_adjoint();
        let op = b.opposite().unwrap();
        assert_eq!(op.mul_table(), b.mul_table());
        assert_eq!(op.side(), BraceSide::Right);
    }

    #[test]
    fn subbrace_detection() {
        let b = z4_adjoint();
        assert!(b.verify_subbrace(&subset(&b, &[0])));
        assert!(b.verify_subbrace(&subset(&b, &[0, 2])));
        // {0, 1} is not an additive subgroup: 1 + 1 = 2 escapes
        assert!(!b.verify_subbrace(&subset(&b, &[0, 1])));
    }

    #[test]
    fn left_law_identities_hold() {
        // z∘(x−y) − z = z∘x − z∘y on every triple, for a few braces
        for b in [trivial_brace(3), z4_adjoint()] {
            let n = b.size();
            for z in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        let lhs = b.sub(b.mul(z, b.sub(x, y)), z);
                        let rhs = b.sub(b.mul(z, x), b.mul(z, y));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
