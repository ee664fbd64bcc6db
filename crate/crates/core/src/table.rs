//! Square operation tables over a dense carrier `0..n`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum TableError {
    #[error("carrier must have at least one element")]
    Empty,
    #[error("expected {expected} rows, got {got}")]
    RowCount { expected: usize, got: usize },
    #[error("row {row} has length {got}, expected {expected}")]
    RowLength { row: usize, got: usize, expected: usize },
    #[error("entry ({x}, {y}) is {got}, outside 0..{size}")]
    EntryOutOfRange { x: Elem, y: Elem, got: usize, size: usize },
}

/// An `n × n` table with entries in `0..n`, stored row-major.
///
/// `get(x, y)` is the table value of the binary operation at `(x, y)`;
/// closure is guaranteed by construction since every entry is range-checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    size: usize,
    data: Vec<Elem>,
}

impl Table {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, TableError> {
        let size = rows.len();
        if size == 0 {
            return Err(TableError::Empty);
        }
        let mut data = Vec::with_capacity(size * size);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(TableError::RowLength { row: x, got: row.len(), expected: size });
            }
            for (y, &e) in row.iter().enumerate() {
                if e >= size {
                    return Err(TableError::EntryOutOfRange { x, y, got: e, size });
                }
                data.push(e);
            }
        }
        Ok(Table { size, data })
    }

    pub fn from_fn(size: usize, f: impl Fn(Elem, Elem) -> Elem) -> Result<Self, TableError> {
        if size == 0 {
            return Err(TableError::Empty);
        }
        let mut data = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                let e = f(x, y);
                if e >= size {
                    return Err(TableError::EntryOutOfRange { x, y, got: e, size });
                }
                data.push(e);
            }
        }
        Ok(Table { size, data })
    }

    #[inline]
    pub fn get(&self, x: Elem, y: Elem) -> Elem {
        self.data[x * self.size + y]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Table with the two arguments swapped.
    pub fn transposed(&self) -> Table {
        Table::from_fn(self.size, |x, y| self.get(y, x)).expect("transpose preserves range")
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|x| self.data[x * self.size..(x + 1) * self.size].to_vec())
            .collect()
    }
}

/// First violated law of an abelian group with identity `0`, if any.
///
/// The returned witnesses are lexicographically least; scanning order is
/// identity, commutativity, associativity, inverses.
pub(crate) fn abelian_group_violation(t: &Table) -> Option<GroupViolation> {
    let n = t.size();
    for x in 0..n {
        if t.get(0, x) != x || t.get(x, 0) != x {
            return Some(GroupViolation::Identity { x });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if t.get(x, y) != t.get(y, x) {
                return Some(GroupViolation::NotCommutative { x, y });
            }
        }
    }
    if let Some((x, y, z)) = associativity_witness(t) {
        return Some(GroupViolation::NotAssociative { x, y, z });
    }
    for x in 0..n {
        if (0..n).all(|y| t.get(x, y) != 0) {
            return Some(GroupViolation::NoInverse { x });
        }
    }
    None
}

/// First violated law of a (not necessarily abelian) group with identity `0`.
pub(crate) fn group_violation(t: &Table) -> Option<GroupViolation> {
    let n = t.size();
    for x in 0..n {
        if t.get(0, x) != x || t.get(x, 0) != x {
            return Some(GroupViolation::Identity { x });
        }
    }
    if let Some((x, y, z)) = associativity_witness(t) {
        return Some(GroupViolation::NotAssociative { x, y, z });
    }
    for x in 0..n {
        if (0..n).all(|y| t.get(x, y) != 0 || t.get(y, x) != 0) {
            return Some(GroupViolation::NoInverse { x });
        }
    }
    None
}

pub(crate) fn associativity_witness(t: &Table) -> Option<(Elem, Elem, Elem)> {
    let n = t.size();
    for x in 0..n {
        for y in 0..n {
            let xy = t.get(x, y);
            for z in 0..n {
                if t.get(xy, z) != t.get(x, t.get(y, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Inverse table of a validated group table (two-sided inverses).
pub(crate) fn inverse_table(t: &Table) -> Vec<Elem> {
    let n = t.size();
    (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| t.get(x, y) == 0 && t.get(y, x) == 0)
                .expect("validated group has inverses")
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum GroupViolation {
    Identity { x: Elem },
    NotCommutative { x: Elem, y: Elem },
    NotAssociative { x: Elem, y: Elem, z: Elem },
    NoInverse { x: Elem },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_rows() {
        let err = Table::from_rows(&[vec![0, 1], vec![1]]).unwrap_err();
        assert_eq!(err, TableError::RowLength { row: 1, got: 1, expected: 2 });
    }

    #[test]
    fn rejects_out_of_range_entry() {
        let err = Table::from_rows(&[vec![0, 1], vec![1, 2]]).unwrap_err();
        assert_eq!(err, TableError::EntryOutOfRange { x: 1, y: 1, got: 2, size: 2 });
    }

    #[test]
    fn cyclic_group_is_abelian() {
        let t = Table::from_fn(5, |x, y| (x + y) % 5).unwrap();
        assert_eq!(abelian_group_violation(&t), None);
        assert_eq!(inverse_table(&t), vec![0, 4, 3, 2, 1]);
    }

    #[test]
    fn detects_wrong_identity() {
        // operation with identity 1 instead of 0
        let t = Table::from_fn(3, |x, y| (x + y + 2) % 3).unwrap();
        assert_eq!(abelian_group_violation(&t), Some(GroupViolation::Identity { x: 0 }));
    }

    #[test]
    fn detects_missing_inverse() {
        // monoid (max) has identity 0 but no inverses
        let t = Table::from_fn(3, |x, y| x.max(y)).unwrap();
        assert_eq!(group_violation(&t), Some(GroupViolation::NoInverse { x: 1 }));
    }
}
