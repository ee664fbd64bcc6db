//! Finite nonunital rings as validated Cayley tables.

use thiserror::Error;

use crate::table::{abelian_group_violation, associativity_witness, inverse_table, GroupViolation};
use crate::{Elem, Table, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("additive tables disagree in size: {add} vs {mul}")]
    SizeMismatch { add: usize, mul: usize },
    #[error("0 is not the additive identity, witness {x}")]
    AdditiveIdentity { x: Elem },
    #[error("addition is not commutative at ({x}, {y})")]
    AddNotCommutative { x: Elem, y: Elem },
    #[error("addition is not associative at ({x}, {y}, {z})")]
    AddNotAssociative { x: Elem, y: Elem, z: Elem },
    #[error("{x} has no additive inverse")]
    AdditiveInverse { x: Elem },
    #[error("multiplication is not associative at ({x}, {y}, {z})")]
    MulNotAssociative { x: Elem, y: Elem, z: Elem },
    #[error("left distributivity fails at ({x}, {y}, {z})")]
    NotLeftDistributive { x: Elem, y: Elem, z: Elem },
    #[error("right distributivity fails at ({x}, {y}, {z})")]
    NotRightDistributive { x: Elem, y: Elem, z: Elem },
}

/// A finite nonunital ring `(N, +, ∗)` with carrier `0..n` and zero pinned
/// to element `0`.
///
/// Validation checks every axiom on all pairs/triples and reports the first
/// failure with a witness. A nilpotency certificate (the least `m` such that
/// every `m`-fold product vanishes) is computed when it exists; its absence
/// is recorded, not treated as an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    size: usize,
    add: Table,
    mul: Table,
    neg: Vec<Elem>,
    nilpotency_index: Option<usize>,
}

impl FiniteRing {
    pub fn from_tables(add: Table, mul: Table) -> Result<Self, RingError> {
        if add.size() != mul.size() {
            return Err(RingError::SizeMismatch { add: add.size(), mul: mul.size() });
        }
        if let Some(v) = abelian_group_violation(&add) {
            return Err(match v {
                GroupViolation::Identity { x } => RingError::AdditiveIdentity { x },
                GroupViolation::NotCommutative { x, y } => RingError::AddNotCommutative { x, y },
                GroupViolation::NotAssociative { x, y, z } => {
                    RingError::AddNotAssociative { x, y, z }
                }
                GroupViolation::NoInverse { x } => RingError::AdditiveInverse { x },
            });
        }
        if let Some((x, y, z)) = associativity_witness(&mul) {
            return Err(RingError::MulNotAssociative { x, y, z });
        }
        let n = add.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if mul.get(x, add.get(y, z)) != add.get(mul.get(x, y), mul.get(x, z)) {
                        return Err(RingError::NotLeftDistributive { x, y, z });
                    }
                    if mul.get(add.get(x, y), z) != add.get(mul.get(x, z), mul.get(y, z)) {
                        return Err(RingError::NotRightDistributive { x, y, z });
                    }
                }
            }
        }
        let neg = inverse_table(&add);
        let nilpotency_index = nilpotency_index(&add, &mul);
        Ok(FiniteRing { size: n, add, mul, neg, nilpotency_index })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add.get(x, y)
    }

    /// Ring product `x ∗ y`.
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

    /// Least `m` such that every `m`-fold product is zero, when one exists.
    pub fn nilpotency_index(&self) -> Option<usize> {
        self.nilpotency_index
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index.is_some()
    }

    pub fn add_table(&self) -> &Table {
        &self.add
    }

    pub fn mul_table(&self) -> &Table {
        &self.mul
    }
}

/// Certificate search: iterate the chain of additive spans
/// `N ⊇ span(N∗N) ⊇ span(N∗N∗N) ⊇ …` until it reaches `{0}` (nilpotent,
/// index = chain length) or stabilizes away from `{0}` (not nilpotent).
fn nilpotency_index(add: &Table, mul: &Table) -> Option<usize> {
    let n = add.size();
    let full: Vec<Elem> = (0..n).collect();
    let mut level = full.clone();
    let mut index = 1usize;
    loop {
        if level.len() == 1 && level[0] == 0 {
            return Some(index);
        }
        let products: Vec<Elem> =
            level.iter().flat_map(|&p| full.iter().map(move |&x| mul.get(p, x))).collect();
        let next = additive_span(add, &products);
        if next == level {
            return None;
        }
        level = next;
        index += 1;
    }
}

/// Smallest subset containing `0` and `gens` that is closed under `add`.
/// In a finite abelian group that is exactly the generated subgroup.
pub(crate) fn additive_span(add: &Table, gens: &[Elem]) -> Vec<Elem> {
    let n = add.size();
    let mut member = vec![false; n];
    member[0] = true;
    let mut frontier: Vec<Elem> = vec![0];
    for &g in gens {
        if !member[g] {
            member[g] = true;
            frontier.push(g);
        }
    }
    while let Some(x) = frontier.pop() {
        for y in 0..n {
            if member[y] {
                let s = add.get(x, y);
                if !member[s] {
                    member[s] = true;
                    frontier.push(s);
                }
            }
        }
    }
    (0..n).filter(|&x| member[x]).collect()
}
