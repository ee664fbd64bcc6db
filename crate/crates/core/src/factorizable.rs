//! Braces of factorized nilpotent rings and their reflections.
//!
//! Given a nilpotent ring `N` with a subring `S` and a two-sided ideal `I`
//! such that `S ∩ I = {0}` and `N = S + I`, the adjoint group `(N, ∘)`
//! factorizes exactly as `S ∘ I`, and
//!
//! ```text
//! x ⊙ y = x₁ ∘ y ∘ x₂          (x = x₁ ∘ x₂, x₁ ∈ S, x₂ ∈ I)
//! ```
//!
//! turns `(N, +, ⊙)` into a new brace. Reflections of its Yang-Baxter map
//! can be manufactured from ring data: `k₁(x) = f(x) ∗ g(x)` and
//! `k₂(x) = f(x) + f(x) ∗ g(x)` for suitable `f`, `g`, and maps that move
//! points only inside a small ideal `J` and land in the socle.

use thiserror::Error;

use crate::brace::{BraceError, BraceSide, SocleSide, SubsetX};
use crate::reflection::{
    equivariance_witness, is_reflection, PointMap, ReflectError,
};
use crate::yang_baxter::{YangBaxterMap, YbError};
use crate::{Elem, FiniteBrace, FiniteRing, Table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("ring is not nilpotent")]
    NotNilpotent,
    #[error("S is not a subring, witness pair ({x}, {y})")]
    NotSubring { x: Elem, y: Elem },
    #[error("not a two-sided ideal, witness pair ({x}, {y})")]
    NotIdeal { x: Elem, y: Elem },
    #[error("S ∩ I contains nonzero element {x}")]
    IntersectionNontrivial { x: Elem },
    #[error("additive factorization N = S + I fails")]
    AdditiveFactorizationFails,
    #[error("adjoint factorization of {x} has {hits} decompositions")]
    DecompNotUnique { x: Elem, hits: usize },
    #[error("J member {x} lies outside I ∩ X")]
    JOutsideIntersection { x: Elem },
    #[error("subsets must live on the ring carrier")]
    SubsetMismatch,
    #[error("k moves {x} outside its J-coset")]
    KNotJClose { x: Elem },
    #[error("hypothesis {name} fails, witness {witness:?}")]
    HypothesisFailed { name: &'static str, witness: Vec<Elem> },
    #[error("image of {x} is {image}, outside X")]
    ImageEscapesX { x: Elem, image: Elem },
    #[error("guaranteed conclusion {what} failed at ({x}, {y}); this is a bug")]
    InternalInvariant { what: &'static str, x: Elem, y: Elem },
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error(transparent)]
    Yb(#[from] YbError),
    #[error(transparent)]
    Reflect(#[from] ReflectError),
}

/// A verified factorization `N = S + I` (additively) and `N = S ∘ I`
/// (in the adjoint group), with the decomposition of every element
/// precomputed.
#[derive(Debug, Clone)]
pub struct Factorization {
    ring: FiniteRing,
    s_set: SubsetX,
    i_set: SubsetX,
    adjoint: FiniteBrace,
    odot: FiniteBrace,
    decomp: Vec<(Elem, Elem)>,
}

/// Validates every structural requirement and computes the unique adjoint
/// decompositions by exhaustive pairing over `S × I`.
pub fn verify_factorization(
    ring: &FiniteRing,
    s_set: &SubsetX,
    i_set: &SubsetX,
) -> Result<Factorization, FactorError> {
    let n = ring.size();
    if s_set.ground_size() != n || i_set.ground_size() != n {
        return Err(FactorError::SubsetMismatch);
    }
    if !ring.is_nilpotent() {
        return Err(FactorError::NotNilpotent);
    }
    if s_set.is_empty() || !s_set.contains(0) {
        return Err(FactorError::NotSubring { x: 0, y: 0 });
    }
    for &x in s_set.members() {
        for &y in s_set.members() {
            if !s_set.contains(ring.add(x, y)) || !s_set.contains(ring.mul(x, y)) {
                return Err(FactorError::NotSubring { x, y });
            }
        }
    }
    if i_set.is_empty() || !i_set.contains(0) {
        return Err(FactorError::NotIdeal { x: 0, y: 0 });
    }
    for &x in i_set.members() {
        for &y in i_set.members() {
            if !i_set.contains(ring.add(x, y)) {
                return Err(FactorError::NotIdeal { x, y });
            }
        }
    }
    for x in 0..n {
        for &y in i_set.members() {
            if !i_set.contains(ring.mul(x, y)) || !i_set.contains(ring.mul(y, x)) {
                return Err(FactorError::NotIdeal { x, y });
            }
        }
    }
    if let Some(&x) = s_set.members().iter().find(|&&x| x != 0 && i_set.contains(x)) {
        return Err(FactorError::IntersectionNontrivial { x });
    }
    if s_set.len() * i_set.len() != n {
        return Err(FactorError::AdditiveFactorizationFails);
    }
    let mut covered = vec![false; n];
    for &s in s_set.members() {
        for &i in i_set.members() {
            let sum = ring.add(s, i);
            if std::mem::replace(&mut covered[sum], true) {
                return Err(FactorError::AdditiveFactorizationFails);
            }
        }
    }
    let adjoint = FiniteBrace::adjoint_of(ring)?;
    let mut hits: Vec<Vec<(Elem, Elem)>> = vec![Vec::new(); n];
    for &s in s_set.members() {
        for &i in i_set.members() {
            hits[adjoint.mul(s, i)].push((s, i));
        }
    }
    let mut decomp = Vec::with_capacity(n);
    for (x, h) in hits.iter().enumerate() {
        if h.len() != 1 {
            return Err(FactorError::DecompNotUnique { x, hits: h.len() });
        }
        decomp.push(h[0]);
    }
    let odot_mul = Table::from_fn(n, |x, y| {
        let (x1, x2) = decomp[x];
        adjoint.mul(adjoint.mul(x1, y), x2)
    })
    .expect("⊙ products stay in range");
    let odot = FiniteBrace::from_tables(ring.add_table().clone(), odot_mul, BraceSide::Left)?;
    Ok(Factorization {
        ring: ring.clone(),
        s_set: s_set.clone(),
        i_set: i_set.clone(),
        adjoint,
        odot,
        decomp,
    })
}

impl Factorization {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn s_set(&self) -> &SubsetX {
        &self.s_set
    }

    pub fn i_set(&self) -> &SubsetX {
        &self.i_set
    }

    /// The adjoint brace `(N, +, ∘)` of the underlying ring.
    pub fn adjoint(&self) -> &FiniteBrace {
        &self.adjoint
    }

    /// The brace `(N, +, ⊙)`; its tables passed the full axiom scan during
    /// construction.
    pub fn odot_brace(&self) -> &FiniteBrace {
        &self.odot
    }

    /// The pair `(x₁, x₂) ∈ S × I` with `x₁ ∘ x₂ = x`.
    pub fn decomp(&self, x: Elem) -> (Elem, Elem) {
        self.decomp[x]
    }

    /// Yang-Baxter map of the ⊙-brace restricted to `x_set`.
    pub fn odot_solution(&self, x_set: &SubsetX) -> Result<YangBaxterMap, YbError> {
        YangBaxterMap::from_brace(&self.odot, x_set)
    }
}

/// A two-sided ring ideal `J ⊆ I ∩ X`, the coset scale on which the
/// factorized reflections are allowed to move points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealJ {
    members: SubsetX,
}

impl IdealJ {
    pub fn members(&self) -> &SubsetX {
        &self.members
    }
}

pub fn verify_ideal(
    ring: &FiniteRing,
    j_set: &SubsetX,
    i_set: &SubsetX,
    x_set: &SubsetX,
) -> Result<IdealJ, FactorError> {
    let n = ring.size();
    if j_set.ground_size() != n || i_set.ground_size() != n || x_set.ground_size() != n {
        return Err(FactorError::SubsetMismatch);
    }
    if j_set.is_empty() || !j_set.contains(0) {
        return Err(FactorError::NotIdeal { x: 0, y: 0 });
    }
    if let Some(&x) =
        j_set.members().iter().find(|&&x| !i_set.contains(x) || !x_set.contains(x))
    {
        return Err(FactorError::JOutsideIntersection { x });
    }
    for &x in j_set.members() {
        for &y in j_set.members() {
            if !j_set.contains(ring.add(x, y)) {
                return Err(FactorError::NotIdeal { x, y });
            }
        }
    }
    for x in 0..n {
        for &y in j_set.members() {
            if !j_set.contains(ring.mul(x, y)) || !j_set.contains(ring.mul(y, x)) {
                return Err(FactorError::NotIdeal { x, y });
            }
        }
    }
    Ok(IdealJ { members: j_set.clone() })
}

/// Checks the coset stability of τ: when `k` moves points only inside their
/// `J`-coset, `τ_{k(y)}(x) − τ_y(x) ∈ J` for all pairs. That conclusion is
/// guaranteed, so a returned witness signals an implementation bug rather
/// than a property of the input.
pub fn coset_lemma_witness(
    fac: &Factorization,
    j: &IdealJ,
    k: &PointMap,
    x_set: &SubsetX,
) -> Result<Option<(Elem, Elem)>, FactorError> {
    if k.carrier() != x_set {
        return Err(FactorError::SubsetMismatch);
    }
    for &x in x_set.members() {
        if !j.members().contains(fac.ring.sub(k.apply(x), x)) {
            return Err(FactorError::KNotJClose { x });
        }
    }
    let r = fac.odot_solution(x_set)?;
    for &x in x_set.members() {
        for &y in x_set.members() {
            let moved = r.tau(k.apply(y), x);
            let base = r.tau(y, x);
            if !j.members().contains(fac.ring.sub(moved, base)) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingReflectionVariant {
    /// `k(x) = f(x) ∗ g(x)`.
    K1,
    /// `k(x) = f(x) + f(x) ∗ g(x)`.
    K2,
}

/// Which hypothesis set to verify before constructing a ring reflection.
#[derive(Debug, Clone, Copy)]
pub enum RingReflectionHypotheses<'a> {
    /// Check the τ-compatibility equation
    /// `f(x) ∗ g(τ_{k(y)}(x)) = f(x) ∗ g(τ_y(x))` directly, together with
    /// `g(x) ∗ c = c ∗ g(x)` for all `c ∈ I`.
    Direct,
    /// Replace the τ equation by ideal data: `g` commutes with `I`, `g` is
    /// constant on `J`-cosets, and `k` moves points only inside their
    /// `J`-coset.
    CosetIdeal(&'a IdealJ),
}

/// Builds `k₁` or `k₂` from ring data and verifies the chosen hypothesis
/// set exhaustively; the constructed map is guaranteed (and re-checked) to
/// be a reflection of the ⊙-brace's solution on `X`.
pub fn make_ring_reflection(
    fac: &Factorization,
    x_set: &SubsetX,
    f: &PointMap,
    g: &PointMap,
    variant: RingReflectionVariant,
    hypotheses: RingReflectionHypotheses<'_>,
) -> Result<PointMap, FactorError> {
    if f.carrier() != x_set || g.carrier() != x_set {
        return Err(FactorError::SubsetMismatch);
    }
    let ring = &fac.ring;
    let image: Vec<Elem> = x_set
        .members()
        .iter()
        .map(|&x| {
            let fx = f.apply(x);
            let prod = ring.mul(fx, g.apply(x));
            match variant {
                RingReflectionVariant::K1 => prod,
                RingReflectionVariant::K2 => ring.add(fx, prod),
            }
        })
        .collect();
    for (idx, &e) in image.iter().enumerate() {
        if !x_set.contains(e) {
            return Err(FactorError::ImageEscapesX { x: x_set.members()[idx], image: e });
        }
    }
    let k = PointMap::new(x_set.clone(), image).expect("image validated");

    let r = fac.odot_solution(x_set)?;
    if let Some((x, y)) = equivariance_witness(&r, f)? {
        return Err(FactorError::HypothesisFailed { name: "f-equivariant", witness: vec![x, y] });
    }
    for &x in x_set.members() {
        let gx = g.apply(x);
        for &c in fac.i_set.members() {
            if ring.mul(gx, c) != ring.mul(c, gx) {
                return Err(FactorError::HypothesisFailed {
                    name: "g-commutes-with-ideal",
                    witness: vec![x, c],
                });
            }
        }
    }
    match hypotheses {
        RingReflectionHypotheses::Direct => {
            for &x in x_set.members() {
                let fx = f.apply(x);
                for &y in x_set.members() {
                    let lhs = ring.mul(fx, g.apply(r.tau(k.apply(y), x)));
                    let rhs = ring.mul(fx, g.apply(r.tau(y, x)));
                    if lhs != rhs {
                        return Err(FactorError::HypothesisFailed {
                            name: "tau-compat",
                            witness: vec![x, y],
                        });
                    }
                }
            }
        }
        RingReflectionHypotheses::CosetIdeal(j) => {
            check_constant_on_cosets(ring, x_set, j, g, "g-not-constant-on-cosets")?;
            for &x in x_set.members() {
                if !j.members().contains(ring.sub(k.apply(x), x)) {
                    return Err(FactorError::HypothesisFailed {
                        name: "k-not-j-close",
                        witness: vec![x],
                    });
                }
            }
        }
    }
    if let Some((x, y)) =
        crate::reflection::reflection_witness(&r, &k, crate::reflection::ReflectMode::Full)?
    {
        return Err(FactorError::InternalInvariant { what: "ring reflection", x, y });
    }
    Ok(k)
}

/// Confirms the socle construction: `k` constant on `J`-cosets, moving
/// points only inside their coset, with every value in `Soc(B⊙ᵒᵖ) ∩ X`,
/// is a reflection of the ⊙-brace's solution.
pub fn check_socle_reflection(
    fac: &Factorization,
    j: &IdealJ,
    x_set: &SubsetX,
    k: &PointMap,
) -> Result<bool, FactorError> {
    if k.carrier() != x_set {
        return Err(FactorError::SubsetMismatch);
    }
    let ring = &fac.ring;
    check_constant_on_cosets(ring, x_set, j, k, "k-not-constant-on-cosets")?;
    for &x in x_set.members() {
        if !j.members().contains(ring.sub(k.apply(x), x)) {
            return Err(FactorError::HypothesisFailed { name: "k-not-j-close", witness: vec![x] });
        }
    }
    let socle_op = fac.odot.socle(SocleSide::Opposite);
    for &x in x_set.members() {
        let kx = k.apply(x);
        if !socle_op.contains(kx) {
            return Err(FactorError::HypothesisFailed {
                name: "k-image-not-in-socle",
                witness: vec![x],
            });
        }
    }
    let r = fac.odot_solution(x_set)?;
    if let Some((x, y)) =
        crate::reflection::reflection_witness(&r, k, crate::reflection::ReflectMode::Full)?
    {
        return Err(FactorError::InternalInvariant { what: "socle reflection", x, y });
    }
    Ok(true)
}

/// Builds the involutive reflection `k(x) = x + x ∗ g(x)` from a map `g`
/// landing in `J`, commuting with `I`, constant on `J`-cosets, and with
/// every value involutive in the adjoint group.
pub fn make_involutive_ring_reflection(
    fac: &Factorization,
    j: &IdealJ,
    x_set: &SubsetX,
    g: &PointMap,
) -> Result<PointMap, FactorError> {
    if g.carrier() != x_set {
        return Err(FactorError::SubsetMismatch);
    }
    let ring = &fac.ring;
    for &x in x_set.members() {
        let gx = g.apply(x);
        for &z in fac.i_set.members() {
            if ring.mul(gx, z) != ring.mul(z, gx) {
                return Err(FactorError::HypothesisFailed {
                    name: "g-commutes-with-ideal",
                    witness: vec![x, z],
                });
            }
        }
        if !j.members().contains(gx) {
            return Err(FactorError::HypothesisFailed {
                name: "g-image-not-in-ideal",
                witness: vec![x],
            });
        }
        if fac.adjoint.mul(gx, gx) != 0 {
            return Err(FactorError::HypothesisFailed {
                name: "g-value-not-involutive",
                witness: vec![x],
            });
        }
    }
    check_constant_on_cosets(ring, x_set, j, g, "g-not-constant-on-cosets")?;
    let image: Vec<Elem> =
        x_set.members().iter().map(|&x| ring.add(x, ring.mul(x, g.apply(x)))).collect();
    for (idx, &e) in image.iter().enumerate() {
        if !x_set.contains(e) {
            return Err(FactorError::ImageEscapesX { x: x_set.members()[idx], image: e });
        }
    }
    let k = PointMap::new(x_set.clone(), image).expect("image validated");
    if !k.is_involutive() {
        return Err(FactorError::InternalInvariant { what: "involutivity", x: 0, y: 0 });
    }
    let r = fac.odot_solution(x_set)?;
    if !is_reflection(&r, &k) {
        return Err(FactorError::InternalInvariant { what: "involutive ring reflection", x: 0, y: 0 });
    }
    Ok(k)
}

fn check_constant_on_cosets(
    ring: &FiniteRing,
    x_set: &SubsetX,
    j: &IdealJ,
    map: &PointMap,
    name: &'static str,
) -> Result<(), FactorError> {
    for &x in x_set.members() {
        for &jm in j.members().members() {
            let shifted = ring.add(x, jm);
            if !x_set.contains(shifted) {
                return Err(FactorError::HypothesisFailed {
                    name: "coset-escapes-carrier",
                    witness: vec![x, jm],
                });
            }
            if map.apply(shifted) != map.apply(x) {
                return Err(FactorError::HypothesisFailed { name, witness: vec![x, jm] });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn ut3_factorization_decomposition() {
        let bundle = catalog::ut3_bundle();
        let fac = &bundle.factorization;
        // oracle: x = (a, b, c) decomposes as (a, 0, 0) ∘ (0, b, c + ab)
        for x in 0..8 {
            let (a, b, c) = ((x & 1), (x >> 1) & 1, (x >> 2) & 1);
            let expect = (a, (b << 1) | ((c ^ (a & b)) << 2));
            assert_eq!(fac.decomp(x), expect, "x = {x}");
        }
        // round trip: x₁ ∘ x₂ = x
        for x in 0..8 {
            let (x1, x2) = fac.decomp(x);
            assert_eq!(fac.adjoint().mul(x1, x2), x);
        }
    }

    #[test]
    fn zero_ring_trivial_factorization() {
        let ring = catalog::zero_ring(1);
        let s = SubsetX::new(1, [0]).unwrap();
        let fac = verify_factorization(&ring, &s, &s).unwrap();
        assert_eq!(fac.odot_brace().size(), 1);
    }

    #[test]
    fn z4_ring_has_no_nontrivial_factorization() {
        let ring = catalog::z4_ring();
        // S = I = {0, 2}: intersection is nontrivial
        let half = SubsetX::new(4, [0, 2]).unwrap();
        let err = verify_factorization(&ring, &half, &half).unwrap_err();
        assert_eq!(err, FactorError::IntersectionNontrivial { x: 2 });
        // S = {0}, I = {0, 2}: 2 · 2 ≠ 4 elements
        let zero_only = SubsetX::new(4, [0]).unwrap();
        let err = verify_factorization(&ring, &zero_only, &half).unwrap_err();
        assert_eq!(err, FactorError::AdditiveFactorizationFails);
    }

    #[test]
    fn odot_extremes() {
        // S = N, I = {0}: ⊙ = ∘
        let ring = catalog::strict_upper_triangular_ring(3);
        let full = SubsetX::full(8);
        let zero_only = SubsetX::new(8, [0]).unwrap();
        let fac = verify_factorization(&ring, &full, &zero_only).unwrap();
        assert_eq!(fac.odot_brace().mul_table(), fac.adjoint().mul_table());
        // S = {0}, I = N: ⊙ is the opposite multiplication
        let fac = verify_factorization(&ring, &zero_only, &full).unwrap();
        let adj = fac.adjoint();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(fac.odot_brace().mul(x, y), adj.mul(y, x));
            }
        }
    }

    #[test]
    fn ut3_odot_brace_is_distinct_from_adjoint() {
        let bundle = catalog::ut3_bundle();
        let fac = &bundle.factorization;
        // e23 ⊙ e12 = e12 + e23 + e13, but e23 ∘ e12 = e12 + e23
        assert_eq!(fac.odot_brace().mul(2, 1), 7);
        assert_eq!(fac.adjoint().mul(2, 1), 3);
        let r = fac.odot_solution(&SubsetX::full(8)).unwrap();
        assert!(r.is_solution());
        let c = r.classify();
        assert!(c.involutive && c.nondegenerate);
    }

    #[test]
    fn ideal_verification() {
        let ring = catalog::strict_upper_triangular_ring(3);
        let i_set = SubsetX::new(8, [0, 2, 4, 6]).unwrap();
        let full = SubsetX::full(8);
        let j0 = SubsetX::new(8, [0]).unwrap();
        assert!(verify_ideal(&ring, &j0, &i_set, &full).is_ok());
        // {0, e13} absorbs everything
        let j13 = SubsetX::new(8, [0, 4]).unwrap();
        assert!(verify_ideal(&ring, &j13, &i_set, &full).is_ok());
        // {0, e23} does not: e12 ∗ e23 = e13 escapes
        let j23 = SubsetX::new(8, [0, 2]).unwrap();
        let err = verify_ideal(&ring, &j23, &i_set, &full).unwrap_err();
        assert_eq!(err, FactorError::NotIdeal { x: 1, y: 2 });
    }

    #[test]
    fn coset_lemma_on_ut3() {
        let bundle = catalog::ut3_bundle();
        let fac = &bundle.factorization;
        let full = SubsetX::full(8);
        let j = &bundle.j;
        // k(x) = x + a(x) b(x) e13
        let k = PointMap::from_fn(full.clone(), |x| {
            let (a, b) = (x & 1, (x >> 1) & 1);
            x ^ ((a & b) << 2)
        })
        .unwrap();
        assert_eq!(coset_lemma_witness(fac, j, &k, &full).unwrap(), None);
        // identity is trivially J-close for any J
        let id = PointMap::identity(full.clone());
        assert_eq!(coset_lemma_witness(fac, j, &id, &full).unwrap(), None);
        let j0 = verify_ideal(fac.ring(), &SubsetX::new(8, [0]).unwrap(), fac.i_set(), &full).unwrap();
        assert_eq!(coset_lemma_witness(fac, &j0, &id, &full).unwrap(), None);
        // a map leaving its coset is rejected up front
        let swap = PointMap::from_fn(full.clone(), |x| x ^ 1).unwrap();
        assert_eq!(coset_lemma_witness(fac, j, &swap, &full).unwrap_err(), FactorError::KNotJClose { x: 0 });
    }

    #[test]
    fn ring_reflection_k2_on_ut3() {
        let bundle = catalog::ut3_bundle();
        let fac = &bundle.factorization;
        let full = SubsetX::full(8);
        let f = PointMap::identity(full.clone());
        // g(x) = b(x) e23
        let g = PointMap::from_fn(full.clone(), |x| x & 0b010).unwrap();
        let k = make_ring_reflection(
            fac,
            &full,
            &f,
            &g,
            RingReflectionVariant::K2,
            RingReflectionHypotheses::CosetIdeal(&bundle.j),
        )
        .unwrap();
        // k(x) = (a, b, c + ab): moves e12+e23 = 3 to 7, fixes the rest's pattern
        assert_eq!(k.image(), &[0, 1, 2, 7, 4, 5, 6, 3]);
        assert!(!k.is_identity());
        // the direct hypothesis set accepts the same data
        let k_direct = make_ring_reflection(
            fac,
            &full,
            &f,
            &g,
            RingReflectionVariant::K2,
            RingReflectionHypotheses::Direct,
        )
        .unwrap();
        assert_eq!(k_direct, k);
    }

    #[test]
    fn ring_reflection_rejects_noncommuting_g() {
        let bundle = catalog::ut3_bundle();
        let fac = &bundle.factorization;
        let full = SubsetX::full(8);
        let f = PointMap::identity(full.clone());
        // constant g = e12 does not commute with e23 under ∗
        let g = PointMap::constant(full.clone(), 1).unwrap();
        let err = make_ring_reflection(
            fac,
            &full,
            &f,
            &g,
            RingReflectionVariant::K1,
            RingReflectionHypotheses::Direct,
        )
        .unwrap_err();
        assert_eq!(
            err,
            FactorError::HypothesisFailed { name: "g-commutes-with-ideal", witness: vec![0, 2] }
        );
    }

    #[test]
    fn ring_reflection_with_zero_g() {
        let bundle = catalog::ut3_bundle();
        let fac = &bundle.factorization;
        let full = SubsetX::full(8);
        let f = PointMap::identity(full.clone());
        let g = PointMap::constant(full.clone(), 0).unwrap();
        let k1 = make_ring_reflection(
            fac,
            &full,
            &f,
            &g,
            RingReflectionVariant::K1,
            RingReflectionHypotheses::Direct,
        )
        .unwrap();
        assert_eq!(k1.image(), &[0; 8], "f ∗ 0 is the zero map");
        let k2 = make_ring_reflection(
            fac,
            &full,
            &f,
            &g,
            RingReflectionVariant::K2,
            RingReflectionHypotheses::Direct,
        )
        .unwrap();
        assert!(k2.is_identity(), "f + f ∗ 0 = f = id");
    }

    #[test]
    fn socle_reflection_on_ut3() {
        let bundle = catalog::ut3_bundle();
        let fac = &bundle.factorization;
        // Soc(B⊙ᵒᵖ) = {0, e13}
        assert_eq!(fac.odot_brace().socle(SocleSide::Opposite).members(), &[0, 4]);
        // X = {0, e13} is closed under the ⊙ solution; J = X works
        let x_set = SubsetX::new(8, [0, 4]).unwrap();
        let j = verify_ideal(fac.ring(), &x_set, fac.i_set(), &x_set).unwrap();
        let id = PointMap::identity(x_set.clone());
        let j0 = verify_ideal(fac.ring(), &SubsetX::new(8, [0]).unwrap(), fac.i_set(), &x_set).unwrap();
        assert!(check_socle_reflection(fac, &j0, &x_set, &id).unwrap());
        // constant map to 0 collapses each J-coset to a socle point
        let const0 = PointMap::constant(x_set.clone(), 0).unwrap();
        assert!(check_socle_reflection(fac, &j, &x_set, &const0).unwrap());
        // k with k(x) − x outside J is refused
        let err = check_socle_reflection(fac, &j0, &x_set, &const0).unwrap_err();
        assert_eq!(err, FactorError::HypothesisFailed { name: "k-not-j-close", witness: vec![4] });
    }

    #[test]
    fn involutive_reflection_degenerates_on_ut3() {
        let bundle = catalog::ut3_bundle();
        let fac = &bundle.factorization;
        let full = SubsetX::full(8);
        // g(x) = b(x) e13 lands in J and annihilates everything, so k = id
        let g = PointMap::from_fn(full.clone(), |x| ((x >> 1) & 1) << 2).unwrap();
        let k = make_involutive_ring_reflection(fac, &bundle.j, &full, &g).unwrap();
        assert!(k.is_identity());
    }

    #[test]
    fn involutive_reflection_is_nontrivial_on_ut4() {
        let bundle = catalog::ut4_bundle();
        let fac = &bundle.factorization;
        let full = SubsetX::full(64);
        // g(x) = b34(x) e24 (bit 5 selects e34; e24 is bit 4)
        let g = PointMap::from_fn(full.clone(), |x| ((x >> 5) & 1) << 4).unwrap();
        let k = make_involutive_ring_reflection(fac, &bundle.j, &full, &g).unwrap();
        let moved = k.image().iter().zip(full.members()).filter(|(a, b)| a != b).count();
        assert_eq!(moved, 16);
        assert!(k.is_involutive());
    }
}
