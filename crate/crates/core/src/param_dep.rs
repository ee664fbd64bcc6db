//! Linearization of finite solutions and the spectral-parameter identities.
//!
//! A point map `k` becomes the 0/1 matrix `K` with `K[k(x), x] = 1`; a
//! solution `r` becomes the permutation-style matrix `R` on the tensor
//! square, with basis `(x, y) ↦ x·|X| + y` (row-major). The families
//!
//! ```text
//! R'(w) = I + w·R        K'(w) = w·K
//! ```
//!
//! are then tested against
//!
//! ```text
//! (R'(u)⊗I)(I⊗R'(u+v))(R'(v)⊗I) = (I⊗R'(v))(R'(u+v)⊗I)(I⊗R'(u))
//! ```
//!
//! on the tensor cube and
//!
//! ```text
//! (I⊗K'(v)) R'(u+v) (I⊗K'(u)) R'(u−v) = R'(u−v) (I⊗K'(u)) R'(u+v) (I⊗K'(v))
//! ```
//!
//! on the tensor square, as exact identities in ℤ[u, v]. `I⊗K` acts on the
//! second tensor leg, matching the set-theoretic `id × k`.

use serde::Serialize;
use thiserror::Error;

use crate::poly::{Poly2, PolyMatrix};
use crate::reflection::PointMap;
use crate::yang_baxter::YangBaxterMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("R must act on a tensor square: dimension {dim} is not m² for K of dimension {k_dim}")]
    DimensionMismatch { dim: usize, k_dim: usize },
    #[error("K is not involutive (K² ≠ I)")]
    KNotInvolutive,
    #[error("R is not involutive (R² ≠ I)")]
    RNotInvolutive,
}

/// An integer linear form `a·u + b·v + c`, the allowed spectral arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinForm {
    pub u: i64,
    pub v: i64,
    pub c: i64,
}

impl LinForm {
    pub const ZERO: LinForm = LinForm { u: 0, v: 0, c: 0 };
    pub const U: LinForm = LinForm { u: 1, v: 0, c: 0 };
    pub const V: LinForm = LinForm { u: 0, v: 1, c: 0 };
    pub const U_PLUS_V: LinForm = LinForm { u: 1, v: 1, c: 0 };
    pub const U_MINUS_V: LinForm = LinForm { u: 1, v: -1, c: 0 };

    pub fn poly(self) -> Poly2 {
        Poly2::linear(self.u, self.v, self.c)
    }
}

/// 0/1 matrix of a point map: column `x` carries a single 1 in row `k(x)`
/// (positions within the carrier).
pub fn linearize_point_map(k: &PointMap) -> PolyMatrix {
    let m = k.carrier().len();
    let mut out = PolyMatrix::zeros(m);
    for (col, &image) in k.image().iter().enumerate() {
        let row = k.carrier().position(image).expect("image inside carrier");
        out.set(row, col, Poly2::one());
    }
    out
}

/// 0/1 matrix of `r` on the tensor square: basis `(x, y) ↦ x·m + y`, and
/// the column of `(x, y)` carries a single 1 in the row of
/// `(σ_x(y), τ_y(x))`.
pub fn linearize_r(r: &YangBaxterMap) -> PolyMatrix {
    let carrier = r.carrier();
    let m = carrier.len();
    let mut out = PolyMatrix::zeros(m * m);
    for (i, &x) in carrier.members().iter().enumerate() {
        for (j, &y) in carrier.members().iter().enumerate() {
            let (s, t) = r.apply(x, y);
            let row = carrier.position(s).unwrap() * m + carrier.position(t).unwrap();
            out.set(row, i * m + j, Poly2::one());
        }
    }
    out
}

/// `R'(arg) = I + arg·R`.
pub fn r_prime(r_mat: &PolyMatrix, arg: LinForm) -> PolyMatrix {
    PolyMatrix::identity(r_mat.dim()).add(&r_mat.scale(&arg.poly()))
}

/// `K'(arg) = arg·K`.
pub fn k_prime(k_mat: &PolyMatrix, arg: LinForm) -> PolyMatrix {
    k_mat.scale(&arg.poly())
}

/// Location and both entry values of the first mismatching matrix entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamWitness {
    pub row: usize,
    pub col: usize,
    pub lhs_entry: Poly2,
    pub rhs_entry: Poly2,
}

/// Degree bookkeeping for a verified identity: the raw maximum entry
/// degrees of both sides, and (for the reflection equation) whether every
/// monomial is divisible by `uv`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeAudit {
    pub lhs_max_deg: (u32, u32),
    pub rhs_max_deg: (u32, u32),
    pub divisible_by_uv: bool,
    /// Degrees of the sides after dividing out the shared `uv` factor.
    pub reduced_max_deg: (u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamCheck {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ParamWitness>,
    pub audit: DegreeAudit,
}

fn audit(lhs: &PolyMatrix, rhs: &PolyMatrix, expect_uv_factor: bool) -> DegreeAudit {
    let lhs_max_deg = lhs.max_degrees();
    let rhs_max_deg = rhs.max_degrees();
    let divisible_by_uv =
        expect_uv_factor && lhs.divisible_by(1, 1) && rhs.divisible_by(1, 1);
    let reduced_max_deg = if divisible_by_uv {
        (lhs_max_deg.0.saturating_sub(1), lhs_max_deg.1.saturating_sub(1))
    } else {
        lhs_max_deg
    };
    DegreeAudit { lhs_max_deg, rhs_max_deg, divisible_by_uv, reduced_max_deg }
}

fn compare(lhs: &PolyMatrix, rhs: &PolyMatrix, expect_uv_factor: bool) -> ParamCheck {
    let witness = lhs.first_difference(rhs).map(|(row, col)| ParamWitness {
        row,
        col,
        lhs_entry: lhs.get(row, col).clone(),
        rhs_entry: rhs.get(row, col).clone(),
    });
    ParamCheck { holds: witness.is_none(), witness, audit: audit(lhs, rhs, expect_uv_factor) }
}

/// Builds both sides of the parameter-dependent Yang-Baxter identity for
/// `R'(w) = I + wR` on the tensor cube and compares them entrywise.
///
/// No involutivity guard: running the check on a non-involutive solution is
/// how one sees the identity fail.
pub fn check_param_ybe(r_mat: &PolyMatrix) -> Result<ParamCheck, ParamError> {
    let dim = r_mat.dim();
    let m = integer_sqrt(dim).ok_or(ParamError::DimensionMismatch { dim, k_dim: 0 })?;
    let eye = PolyMatrix::identity(m);
    let leg12 = |w: LinForm| r_prime(r_mat, w).kron(&eye);
    let leg23 = |w: LinForm| eye.kron(&r_prime(r_mat, w));
    let lhs = leg12(LinForm::U).matmul(&leg23(LinForm::U_PLUS_V)).matmul(&leg12(LinForm::V));
    let rhs = leg23(LinForm::V).matmul(&leg12(LinForm::U_PLUS_V)).matmul(&leg23(LinForm::U));
    Ok(compare(&lhs, &rhs, false))
}

/// Builds both sides of the parameter-dependent reflection identity for
/// `R'(w) = I + wR`, `K'(w) = wK` on the tensor square.
///
/// Preconditions guard the setting of the underlying statement: both `R`
/// and `K` must be involutive as constant matrices.
pub fn check_param_reflection(
    r_mat: &PolyMatrix,
    k_mat: &PolyMatrix,
) -> Result<ParamCheck, ParamError> {
    let dim = r_mat.dim();
    let m = k_mat.dim();
    if m * m != dim {
        return Err(ParamError::DimensionMismatch { dim, k_dim: m });
    }
    if !r_mat.matmul(r_mat).is_identity() {
        return Err(ParamError::RNotInvolutive);
    }
    if !k_mat.matmul(k_mat).is_identity() {
        return Err(ParamError::KNotInvolutive);
    }
    let eye = PolyMatrix::identity(m);
    let boundary = |w: LinForm| eye.kron(&k_prime(k_mat, w));
    let bulk = |w: LinForm| r_prime(r_mat, w);
    let lhs = boundary(LinForm::V)
        .matmul(&bulk(LinForm::U_PLUS_V))
        .matmul(&boundary(LinForm::U))
        .matmul(&bulk(LinForm::U_MINUS_V));
    let rhs = bulk(LinForm::U_MINUS_V)
        .matmul(&boundary(LinForm::U))
        .matmul(&bulk(LinForm::U_PLUS_V))
        .matmul(&boundary(LinForm::V));
    Ok(compare(&lhs, &rhs, true))
}

fn integer_sqrt(n: usize) -> Option<usize> {
    let m = (n as f64).sqrt().round() as usize;
    (m * m == n).then_some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{BraceSide, SubsetX};
    use crate::catalog;
    use crate::{FiniteBrace, Table};

    fn z4_adjoint() -> FiniteBrace {
        let add = Table::from_fn(4, |x, y| (x + y) % 4).unwrap();
        let mul = Table::from_fn(4, |x, y| (x + y + 2 * x * y) % 4).unwrap();
        FiniteBrace::from_tables(add, mul, BraceSide::Left).unwrap()
    }

    fn flip(n: usize) -> YangBaxterMap {
        let b = catalog::trivial_brace(n);
        YangBaxterMap::from_brace(&b, &SubsetX::full(n)).unwrap()
    }

    fn map(r: &YangBaxterMap, image: &[usize]) -> PointMap {
        PointMap::new(r.carrier().clone(), image.to_vec()).unwrap()
    }

    #[test]
    fn point_map_matrices() {
        let r = flip(3);
        let id = linearize_point_map(&PointMap::identity(r.carrier().clone()));
        assert!(id.is_identity());
        let r4 = flip(4);
        let perm = linearize_point_map(&map(&r4, &[0, 3, 2, 1]));
        assert_eq!(perm.get(3, 1), &Poly2::one());
        assert_eq!(perm.get(1, 3), &Poly2::one());
        assert_eq!(perm.get(0, 0), &Poly2::one());
        assert!(perm.get(1, 1).is_zero());
        // constant-0 on two points: rows (1 1) / (0 0)
        let r2 = flip(2);
        let c0 = linearize_point_map(&map(&r2, &[0, 0]));
        assert_eq!(c0.get(0, 0), &Poly2::one());
        assert_eq!(c0.get(0, 1), &Poly2::one());
        assert!(c0.get(1, 0).is_zero() && c0.get(1, 1).is_zero());
    }

    #[test]
    fn flip_linearization_is_the_swap_matrix() {
        let r = flip(2);
        let m = linearize_r(&r);
        for (row, col) in [(0, 0), (2, 1), (1, 2), (3, 3)] {
            assert_eq!(m.get(row, col), &Poly2::one(), "({row}, {col})");
        }
        assert!(m.matmul(&m).is_identity());
    }

    #[test]
    fn cyclic_shift_linearization() {
        let r = catalog::cyclic_shift_solution(2);
        let m = linearize_r(&r);
        // (0,0) ↦ (1,0): column 0 row 2, (0,1) ↦ (0,0), (1,0) ↦ (1,1), (1,1) ↦ (0,1)
        for (row, col) in [(2, 0), (0, 1), (3, 2), (1, 3)] {
            assert_eq!(m.get(row, col), &Poly2::one(), "({row}, {col})");
        }
        assert!(!m.matmul(&m).is_identity());
    }

    #[test]
    fn prime_families_at_zero() {
        let r = flip(2);
        let rm = linearize_r(&r);
        assert!(r_prime(&rm, LinForm::ZERO).is_identity());
        let k = linearize_point_map(&PointMap::identity(r.carrier().clone()));
        assert_eq!(k_prime(&k, LinForm::ZERO), PolyMatrix::zeros(2));
        // degrees of I + (u−v)R stay ≤ 1 per variable
        assert_eq!(r_prime(&rm, LinForm::U_MINUS_V).max_degrees(), (1, 1));
    }

    #[test]
    fn param_ybe_holds_for_involutive_solutions() {
        let check = check_param_ybe(&linearize_r(&flip(2))).unwrap();
        assert!(check.holds, "{:?}", check.witness);
        let b = z4_adjoint();
        let r = YangBaxterMap::from_brace(&b, &SubsetX::full(4)).unwrap();
        let check = check_param_ybe(&linearize_r(&r)).unwrap();
        assert!(check.holds);
    }

    #[test]
    fn param_ybe_fails_for_non_involutive_solutions() {
        let r = catalog::cyclic_shift_solution(3);
        assert!(r.is_solution());
        let check = check_param_ybe(&linearize_r(&r)).unwrap();
        assert!(!check.holds);
        let w = check.witness.unwrap();
        assert_ne!(w.lhs_entry, w.rhs_entry);
    }

    #[test]
    fn param_reflection_holds_for_identity_boundary() {
        for n in [2, 3] {
            let r = flip(n);
            let rm = linearize_r(&r);
            let km = linearize_point_map(&PointMap::identity(r.carrier().clone()));
            let check = check_param_reflection(&rm, &km).unwrap();
            assert!(check.holds, "n = {n}");
            assert!(check.audit.divisible_by_uv);
            assert!(check.audit.reduced_max_deg.0 <= 2 && check.audit.reduced_max_deg.1 <= 2);
        }
    }

    #[test]
    fn param_reflection_guards() {
        // non-involutive R is rejected
        let r = catalog::cyclic_shift_solution(2);
        let rm = linearize_r(&r);
        let km = linearize_point_map(&PointMap::identity(r.carrier().clone()));
        assert_eq!(check_param_reflection(&rm, &km).unwrap_err(), ParamError::RNotInvolutive);
        // non-involutive K is rejected
        let f = flip(2);
        let fm = linearize_r(&f);
        let c0 = linearize_point_map(&map(&f, &[0, 0]));
        assert_eq!(check_param_reflection(&fm, &c0).unwrap_err(), ParamError::KNotInvolutive);
    }

    #[test]
    fn zero_parameters_reduce_to_trivial_identities() {
        let r = flip(2);
        let rm = linearize_r(&r);
        let km = linearize_point_map(&map(&r, &[1, 0]));
        // R'(0) = I makes each Yang-Baxter side the identity at u = v = 0
        let eye = PolyMatrix::identity(2);
        let side = eye
            .kron(&k_prime(&km, LinForm::V))
            .matmul(&r_prime(&rm, LinForm::U_PLUS_V))
            .matmul(&eye.kron(&k_prime(&km, LinForm::U)))
            .matmul(&r_prime(&rm, LinForm::U_MINUS_V));
        // K'(0) = 0 kills both reflection sides at u = v = 0
        assert!(side.eval(0, 0).iter().all(|&c| c == 0));
        let ybe_side = r_prime(&rm, LinForm::U)
            .kron(&eye)
            .matmul(&eye.kron(&r_prime(&rm, LinForm::U_PLUS_V)))
            .matmul(&r_prime(&rm, LinForm::V).kron(&eye));
        assert_eq!(ybe_side.eval(0, 0), PolyMatrix::identity(8).eval(0, 0));
    }

    #[test]
    fn evaluation_agrees_with_integer_matrix_products() {
        // independent route: evaluate the factors first, multiply as
        // integer matrices, compare against the evaluated polynomial side
        let b = z4_adjoint();
        let r = YangBaxterMap::from_brace(&b, &SubsetX::full(4)).unwrap();
        let rm = linearize_r(&r);
        let k1 = map(&r, &[0, 3, 2, 1]);
        let km = linearize_point_map(&k1);
        let eye = PolyMatrix::identity(4);
        for (u, v) in (0..3).flat_map(|u| (0..3).map(move |v| (u, v))) {
            let lhs_poly = eye
                .kron(&k_prime(&km, LinForm::V))
                .matmul(&r_prime(&rm, LinForm::U_PLUS_V))
                .matmul(&eye.kron(&k_prime(&km, LinForm::U)))
                .matmul(&r_prime(&rm, LinForm::U_MINUS_V));
            let factors: Vec<Vec<i64>> = vec![
                eye.kron(&k_prime(&km, LinForm::V)).eval(u, v),
                r_prime(&rm, LinForm::U_PLUS_V).eval(u, v),
                eye.kron(&k_prime(&km, LinForm::U)).eval(u, v),
                r_prime(&rm, LinForm::U_MINUS_V).eval(u, v),
            ];
            let d = 16;
            let int_matmul = |a: &[i64], b: &[i64]| -> Vec<i64> {
                let mut out = vec![0i64; d * d];
                for i in 0..d {
                    for t in 0..d {
                        let av = a[i * d + t];
                        if av == 0 {
                            continue;
                        }
                        for j in 0..d {
                            out[i * d + j] += av * b[t * d + j];
                        }
                    }
                }
                out
            };
            let mut acc = factors[0].clone();
            for f in &factors[1..] {
                acc = int_matmul(&acc, f);
            }
            assert_eq!(acc, lhs_poly.eval(u, v), "(u, v) = ({u}, {v})");
        }
    }
}
