//! Exact integer polynomials in two variables `u`, `v`, and square matrices
//! of them. No floating point anywhere: identity checking is coefficient
//! equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

/// Sparse polynomial in ℤ[u, v]; keys are exponent pairs `(deg_u, deg_v)`,
/// zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), i64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Poly2::default();
        if c != 0 {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn one() -> Self {
        Poly2::constant(1)
    }

    pub fn u() -> Self {
        Poly2::monomial(1, 0, 1)
    }

    pub fn v() -> Self {
        Poly2::monomial(0, 1, 1)
    }

    pub fn monomial(du: u32, dv: u32, coeff: i64) -> Self {
        let mut p = Poly2::default();
        if coeff != 0 {
            p.terms.insert((du, dv), coeff);
        }
        p
    }

    /// `a·u + b·v + c`.
    pub fn linear(a: i64, b: i64, c: i64) -> Self {
        let mut p = Poly2::default();
        if a != 0 {
            p.terms.insert((1, 0), a);
        }
        if b != 0 {
            p.terms.insert((0, 1), b);
        }
        if c != 0 {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &i64)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: (u32, u32), coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(key).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn scaled(&self, c: i64) -> Poly2 {
        let mut out = Poly2::default();
        if c != 0 {
            for (&k, &a) in &self.terms {
                out.terms.insert(k, a * c);
            }
        }
        out
    }

    /// Highest occurring degree in each variable, `(0, 0)` for zero.
    pub fn max_degrees(&self) -> (u32, u32) {
        self.terms.keys().fold((0, 0), |(du, dv), &(a, b)| (du.max(a), dv.max(b)))
    }

    /// Whether every monomial is divisible by `u^min_u · v^min_v`.
    pub fn divisible_by(&self, min_u: u32, min_v: u32) -> bool {
        self.terms.keys().all(|&(a, b)| a >= min_u && b >= min_v)
    }

    pub fn eval(&self, u: i64, v: i64) -> i64 {
        self.terms
            .iter()
            .map(|(&(du, dv), &c)| c * u.pow(du) * v.pow(dv))
            .sum()
    }

    /// Terms as `[deg_u, deg_v, coeff]` triples, for JSON witnesses.
    pub fn term_triples(&self) -> Vec<[i64; 3]> {
        self.terms.iter().map(|(&(du, dv), &c)| [du as i64, dv as i64, c]).collect()
    }
}

impl Serialize for Poly2 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.term_triples().serialize(serializer)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(du, dv), &c) in &self.terms {
            if !first {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.unsigned_abs();
            if mag != 1 || (du == 0 && dv == 0) {
                write!(f, "{mag}")?;
            }
            for (var, d) in [("u", du), ("v", dv)] {
                match d {
                    0 => {}
                    1 => write!(f, "{var}")?,
                    _ => write!(f, "{var}^{d}")?,
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&k, &c) in &rhs.terms {
            out.insert(k, c);
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&k, &c) in &rhs.terms {
            out.insert(k, -c);
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::default();
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &rhs.terms {
                out.insert((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scaled(-1)
    }
}

/// Dense square matrix with [`Poly2`] entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<Poly2>,
}

impl PolyMatrix {
    pub fn zeros(dim: usize) -> Self {
        PolyMatrix { dim, entries: vec![Poly2::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = PolyMatrix::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Poly2::one();
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Poly2) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly2 {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly2) {
        self.entries[i * self.dim + j] = p;
    }

    pub fn matmul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = PolyMatrix::zeros(d);
        for i in 0..d {
            for t in 0..d {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = rhs.get(t, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let cell = &mut out.entries[i * d + j];
                    *cell = &*cell + &prod;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        PolyMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, p: &Poly2) -> PolyMatrix {
        PolyMatrix { dim: self.dim, entries: self.entries.iter().map(|e| e * p).collect() }
    }

    /// Kronecker product; index `(i_a·dim_b + i_b, j_a·dim_b + j_b)` holds
    /// `a[i_a, j_a] · b[i_b, j_b]`.
    pub fn kron(&self, rhs: &PolyMatrix) -> PolyMatrix {
        let (da, db) = (self.dim, rhs.dim);
        let d = da * db;
        let mut out = PolyMatrix::zeros(d);
        for ia in 0..da {
            for ja in 0..da {
                let a = self.get(ia, ja);
                if a.is_zero() {
                    continue;
                }
                for ib in 0..db {
                    for jb in 0..db {
                        let b = rhs.get(ib, jb);
                        if b.is_zero() {
                            continue;
                        }
                        out.entries[(ia * db + ib) * d + (ja * db + jb)] = a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self == &PolyMatrix::identity(self.dim)
    }

    /// First entry (row-major) where the matrices differ.
    pub fn first_difference(&self, rhs: &PolyMatrix) -> Option<(usize, usize)> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.get(i, j) != rhs.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Entrywise evaluation at integers, row-major.
    pub fn eval(&self, u: i64, v: i64) -> Vec<i64> {
        self.entries.iter().map(|p| p.eval(u, v)).collect()
    }

    /// Maximum entry degree in each variable.
    pub fn max_degrees(&self) -> (u32, u32) {
        self.entries.iter().fold((0, 0), |(du, dv), p| {
            let (a, b) = p.max_degrees();
            (du.max(a), dv.max(b))
        })
    }

    /// Whether every entry is divisible by `u^min_u · v^min_v`.
    pub fn divisible_by(&self, min_u: u32, min_v: u32) -> bool {
        self.entries.iter().all(|p| p.divisible_by(min_u, min_v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(terms: &[(u32, u32, i64)]) -> Poly2 {
        let mut p = Poly2::zero();
        for &(a, b, c) in terms {
            p.insert((a, b), c);
        }
        p
    }

    #[test]
    fn arithmetic_basics() {
        let p = Poly2::linear(1, -1, 0); // u - v
        let q = Poly2::linear(1, 1, 0); // u + v
        assert_eq!(&p * &q, poly(&[(2, 0, 1), (0, 2, -1)])); // u² - v²
        assert_eq!(&p + &q, poly(&[(1, 0, 2)])); // 2u
        assert_eq!(&p - &p, Poly2::zero());
        assert_eq!(p.eval(5, 2), 3);
        assert_eq!((&p * &q).eval(5, 2), 21);
    }

    #[test]
    fn display_is_readable() {
        let p = poly(&[(0, 0, -1), (1, 1, 2), (2, 0, 1)]);
        assert_eq!(p.to_string(), "-1 + 2uv + u^2");
    }

    #[test]
    fn matrix_identity_and_kron() {
        let i2 = PolyMatrix::identity(2);
        let swap = PolyMatrix::from_fn(2, |i, j| Poly2::constant(u64::from(i != j) as i64));
        assert!(swap.matmul(&swap).is_identity());
        let k = i2.kron(&swap);
        assert_eq!(k.dim(), 4);
        // I ⊗ swap exchanges the basis pairs (0,1)↔(0,0)? no: rows (0b00,0b01) swap
        assert_eq!(k.get(0, 1), &Poly2::one());
        assert_eq!(k.get(1, 0), &Poly2::one());
        assert_eq!(k.get(2, 3), &Poly2::one());
        assert_eq!(k.get(3, 2), &Poly2::one());
        assert!(k.get(0, 0).is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = Poly2> {
        proptest::collection::vec(((0u32..4, 0u32..4), -5i64..6), 0..6).prop_map(|terms| {
            let mut p = Poly2::zero();
            for (k, c) in terms {
                p.insert(k, c);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a - &a, Poly2::zero());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), u in -3i64..4, v in -3i64..4) {
            prop_assert_eq!((&a + &b).eval(u, v), a.eval(u, v) + b.eval(u, v));
            prop_assert_eq!((&a * &b).eval(u, v), a.eval(u, v) * b.eval(u, v));
        }
    }
}
