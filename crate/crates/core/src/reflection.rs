//! The set-theoretic reflection equation: checking, exhaustive enumeration,
//! the near-ring of equivariant maps, and the constructive map families of
//! braces with central elements.
//!
//! A map `k : X → X` is a reflection of a solution `(X, r)` when
//!
//! ```text
//! r (id×k) r (id×k) = (id×k) r (id×k) r
//! ```
//!
//! as maps `X × X → X × X` (rightmost factor acts first). For involutive
//! nondegenerate solutions it is enough that the first coordinates agree;
//! that shortcut is opt-in and rejected for non-involutive `r`, where it is
//! unsound.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::brace::{SocleSide, SubsetX};
use crate::yang_baxter::YangBaxterMap;
use crate::{Elem, FiniteBrace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectError {
    #[error("first-coordinate mode is unsound for non-involutive solutions")]
    ShortcutUnsound,
    #[error("maps must share the solution's carrier")]
    CarrierMismatch,
    #[error("map space has {space} maps, exceeding the budget of {budget}")]
    BudgetExceeded { space: u128, budget: u64 },
    #[error("image of {x} is {image}, outside the carrier")]
    ImageEscapesCarrier { x: Elem, image: Elem },
    #[error("image list has length {got}, carrier has {expected} members")]
    ImageLength { got: usize, expected: usize },
    #[error("f is not equivariant, witness ({x}, {y})")]
    FNotEquivariant { x: Elem, y: Elem },
    #[error("wedge table missing or malformed")]
    WedgeShape,
}

/// A total map on a carrier; `image[i]` is the image of the `i`-th carrier
/// member and is itself a carrier member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMap {
    carrier: SubsetX,
    image: Vec<Elem>,
}

impl PointMap {
    pub fn new(carrier: SubsetX, image: Vec<Elem>) -> Result<Self, ReflectError> {
        if image.len() != carrier.len() {
            return Err(ReflectError::ImageLength { got: image.len(), expected: carrier.len() });
        }
        for (i, &e) in image.iter().enumerate() {
            if !carrier.contains(e) {
                return Err(ReflectError::ImageEscapesCarrier { x: carrier.members()[i], image: e });
            }
        }
        Ok(PointMap { carrier, image })
    }

    pub fn from_fn(carrier: SubsetX, f: impl Fn(Elem) -> Elem) -> Result<Self, ReflectError> {
        let image: Vec<Elem> = carrier.members().iter().map(|&x| f(x)).collect();
        PointMap::new(carrier, image)
    }

    pub fn identity(carrier: SubsetX) -> Self {
        let image = carrier.members().to_vec();
        PointMap { carrier, image }
    }

    pub fn constant(carrier: SubsetX, a: Elem) -> Result<Self, ReflectError> {
        PointMap::from_fn(carrier, |_| a)
    }

    pub fn carrier(&self) -> &SubsetX {
        &self.carrier
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[self.carrier.position(x).expect("argument is a carrier member")]
    }

    pub fn is_identity(&self) -> bool {
        self.image == self.carrier.members()
    }

    /// `k ∘ k = id` on the carrier.
    pub fn is_involutive(&self) -> bool {
        self.carrier.members().iter().all(|&x| self.apply(self.apply(x)) == x)
    }

    fn from_positions(carrier: &SubsetX, pos: &[usize]) -> Self {
        let image = pos.iter().map(|&p| carrier.members()[p]).collect();
        PointMap { carrier: carrier.clone(), image }
    }
}

impl Serialize for PointMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PointMap", 2)?;
        s.serialize_field("carrier", self.carrier.members())?;
        s.serialize_field("image", &self.image)?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectMode {
    /// Compare both coordinates of the reflection identity.
    Full,
    /// Compare first coordinates only; sound only for involutive `r`.
    FirstCoordinate,
}

/// Lexicographically least pair `(a, b)` violating the reflection identity
/// for `k`, or `None` when `k` is a reflection of `r`.
pub fn reflection_witness(
    r: &YangBaxterMap,
    k: &PointMap,
    mode: ReflectMode,
) -> Result<Option<(Elem, Elem)>, ReflectError> {
    if k.carrier() != r.carrier() {
        return Err(ReflectError::CarrierMismatch);
    }
    if mode == ReflectMode::FirstCoordinate && !r.is_involutive() {
        return Err(ReflectError::ShortcutUnsound);
    }
    let members = r.carrier().members();
    for &a in members {
        for &b in members {
            // LHS: r (id×k) r (id×k) applied to (a, b)
            let (s1, t1) = r.apply(a, k.apply(b));
            let (l1, l2) = r.apply(s1, k.apply(t1));
            // RHS: (id×k) r (id×k) r applied to (a, b)
            let (s2, t2) = r.apply(a, b);
            let (u1, u2) = r.apply(s2, k.apply(t2));
            let (r1, r2) = (u1, k.apply(u2));
            let agree = match mode {
                ReflectMode::Full => (l1, l2) == (r1, r2),
                ReflectMode::FirstCoordinate => l1 == r1,
            };
            if !agree {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Full-mode reflection test.
pub fn is_reflection(r: &YangBaxterMap, k: &PointMap) -> bool {
    matches!(reflection_witness(r, k, ReflectMode::Full), Ok(None))
}

/// Least pair `(x, y)` with `k(σ_x(y)) ≠ σ_x(k(y))`, or `None` when `k`
/// commutes with every `σ_x`.
pub fn equivariance_witness(r: &YangBaxterMap, k: &PointMap) -> Result<Option<(Elem, Elem)>, ReflectError> {
    if k.carrier() != r.carrier() {
        return Err(ReflectError::CarrierMismatch);
    }
    let members = r.carrier().members();
    for &x in members {
        for &y in members {
            if k.apply(r.sigma(x, y)) != r.sigma(x, k.apply(y)) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

pub fn is_equivariant(r: &YangBaxterMap, k: &PointMap) -> bool {
    matches!(equivariance_witness(r, k), Ok(None))
}

// ---------------------------------------------------------------------------
// exhaustive enumeration

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Filter {
    Reflections,
    Equivariant,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetPolicy {
    /// Scan the first `budget` maps in lexicographic order and flag the
    /// report as truncated.
    Truncate,
    /// Refuse to run when the map space exceeds the budget.
    Error,
}

#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    pub filter: Filter,
    pub budget: u64,
    pub on_budget: BudgetPolicy,
    pub emit_maps: bool,
    pub jobs: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            filter: Filter::Reflections,
            budget: 1 << 24,
            on_budget: BudgetPolicy::Truncate,
            emit_maps: false,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflectionReport {
    pub carrier_size: usize,
    pub maps_scanned: u64,
    pub truncated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reflection_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involutive_reflection_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivariant_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reflections: Option<Vec<PointMap>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivariant: Option<Vec<PointMap>>,
}

#[derive(Default)]
struct BlockTally {
    scanned: u64,
    reflections: u64,
    involutive: u64,
    equivariant: u64,
    refl_maps: Vec<Vec<usize>>,
    equi_maps: Vec<Vec<usize>>,
}

/// Scans all maps `X → X` in lexicographic order of their image arrays and
/// classifies each one. The scan is partitioned on the image of the first
/// carrier member, so the merged report is identical for every worker
/// count.
pub fn enumerate(r: &YangBaxterMap, opts: &EnumerateOptions) -> Result<ReflectionReport, ReflectError> {
    let m = r.carrier().len();
    let space: u128 = (m as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    let cap: u128 = if space > opts.budget as u128 {
        match opts.on_budget {
            BudgetPolicy::Error => {
                return Err(ReflectError::BudgetExceeded { space, budget: opts.budget })
            }
            BudgetPolicy::Truncate => opts.budget as u128,
        }
    } else {
        space
    };
    let block: u128 = (m as u128).checked_pow(m as u32 - 1).unwrap_or(u128::MAX);
    let (sig, tau) = r.position_tables();

    // per-first-image block quotas under the global cap
    let quota = |v: usize| -> u64 {
        let start = (v as u128).saturating_mul(block);
        cap.saturating_sub(start).min(block) as u64
    };

    let want_refl = matches!(opts.filter, Filter::Reflections | Filter::Both);
    let want_equi = matches!(opts.filter, Filter::Equivariant | Filter::Both);
    let scan_block = |v: usize| -> BlockTally {
        let mut tally = BlockTally::default();
        let limit = quota(v);
        if limit == 0 {
            return tally;
        }
        let mut k = vec![0usize; m];
        k[0] = v;
        loop {
            tally.scanned += 1;
            if want_refl && reflection_holds_pos(&sig, &tau, m, &k, false) {
                tally.reflections += 1;
                if involutive_pos(&k) {
                    tally.involutive += 1;
                }
                if opts.emit_maps {
                    tally.refl_maps.push(k.clone());
                }
            }
            if want_equi && equivariant_pos(&sig, m, &k) {
                tally.equivariant += 1;
                if opts.emit_maps {
                    tally.equi_maps.push(k.clone());
                }
            }
            if tally.scanned == limit || !advance_tail(&mut k, m) {
                return tally;
            }
        }
    };

    let jobs = opts.jobs.max(1).min(m.max(1));
    let mut blocks: Vec<BlockTally> = Vec::with_capacity(m);
    if jobs <= 1 {
        for v in 0..m {
            blocks.push(scan_block(v));
        }
    } else {
        let mut slots: Vec<Option<BlockTally>> = (0..m).map(|_| None).collect();
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for worker in 0..jobs {
                let scan_block = &scan_block;
                handles.push(scope.spawn(move || {
                    let mut mine = Vec::new();
                    let mut v = worker;
                    while v < m {
                        mine.push((v, scan_block(v)));
                        v += jobs;
                    }
                    mine
                }));
            }
            for h in handles {
                for (v, tally) in h.join().expect("enumeration worker panicked") {
                    slots[v] = Some(tally);
                }
            }
        });
        blocks.extend(slots.into_iter().map(|s| s.expect("every block scanned")));
    }

    let mut report = ReflectionReport {
        carrier_size: m,
        maps_scanned: 0,
        truncated: cap < space,
        reflection_count: want_refl.then_some(0),
        involutive_reflection_count: want_refl.then_some(0),
        equivariant_count: want_equi.then_some(0),
        reflections: (want_refl && opts.emit_maps).then(Vec::new),
        equivariant: (want_equi && opts.emit_maps).then(Vec::new),
    };
    for tally in blocks {
        report.maps_scanned += tally.scanned;
        if let Some(c) = report.reflection_count.as_mut() {
            *c += tally.reflections;
        }
        if let Some(c) = report.involutive_reflection_count.as_mut() {
            *c += tally.involutive;
        }
        if let Some(c) = report.equivariant_count.as_mut() {
            *c += tally.equivariant;
        }
        if let Some(maps) = report.reflections.as_mut() {
            maps.extend(tally.refl_maps.iter().map(|k| PointMap::from_positions(r.carrier(), k)));
        }
        if let Some(maps) = report.equivariant.as_mut() {
            maps.extend(tally.equi_maps.iter().map(|k| PointMap::from_positions(r.carrier(), k)));
        }
    }
    Ok(report)
}

/// Advance positions `k[1..]` as a base-`m` odometer (most significant at
/// index 1); returns `false` when the block is exhausted.
fn advance_tail(k: &mut [usize], m: usize) -> bool {
    for d in (1..k.len()).rev() {
        k[d] += 1;
        if k[d] < m {
            return true;
        }
        k[d] = 0;
    }
    false
}

fn reflection_holds_pos(sig: &[usize], tau: &[usize], m: usize, k: &[usize], first_only: bool) -> bool {
    for a in 0..m {
        for b in 0..m {
            let kb = k[b];
            let s1 = sig[a * m + kb];
            let t1 = tau[kb * m + a];
            let kt1 = k[t1];
            let s2 = sig[a * m + b];
            let t2 = tau[b * m + a];
            let kt2 = k[t2];
            if sig[s1 * m + kt1] != sig[s2 * m + kt2] {
                return false;
            }
            if !first_only && tau[kt1 * m + s1] != k[tau[kt2 * m + s2]] {
                return false;
            }
        }
    }
    true
}

fn equivariant_pos(sig: &[usize], m: usize, k: &[usize]) -> bool {
    for x in 0..m {
        for y in 0..m {
            if k[sig[x * m + y]] != sig[x * m + k[y]] {
                return false;
            }
        }
    }
    true
}

fn involutive_pos(k: &[usize]) -> bool {
    (0..k.len()).all(|p| k[k[p]] == p)
}

// ---------------------------------------------------------------------------
// the near-ring of equivariant maps

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NearRingOp {
    /// Pointwise addition in the brace's additive group.
    Add,
    /// Function composition `x ↦ f(g(x))`.
    Compose,
    /// Pointwise additive inverse.
    Negate,
}

/// Combines maps over a carrier inside `brace`. Addition and negation use
/// the brace's `+`; the result must stay inside the carrier.
pub fn combine(
    brace: &FiniteBrace,
    op: NearRingOp,
    f: &PointMap,
    g: Option<&PointMap>,
) -> Result<PointMap, ReflectError> {
    let carrier = f.carrier().clone();
    if carrier.ground_size() != brace.size() {
        return Err(ReflectError::CarrierMismatch);
    }
    match op {
        NearRingOp::Add => {
            let g = g.ok_or(ReflectError::CarrierMismatch)?;
            if g.carrier() != &carrier {
                return Err(ReflectError::CarrierMismatch);
            }
            PointMap::from_fn(carrier, |x| brace.add(f.apply(x), g.apply(x)))
        }
        NearRingOp::Compose => {
            let g = g.ok_or(ReflectError::CarrierMismatch)?;
            if g.carrier() != &carrier {
                return Err(ReflectError::CarrierMismatch);
            }
            PointMap::from_fn(carrier, |x| f.apply(g.apply(x)))
        }
        NearRingOp::Negate => {
            if g.is_some() {
                return Err(ReflectError::CarrierMismatch);
            }
            PointMap::from_fn(carrier, |x| brace.neg(f.apply(x)))
        }
    }
}

// ---------------------------------------------------------------------------
// map families from central elements

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// `x ↦ a`, for `a` in the opposite socle.
    Const { a: Elem },
    /// `x ↦ c∘x`, for central `c` in the socle.
    MulBy { c: Elem },
    /// `x ↦ c∘x − c`, for central `c`.
    K1 { c: Elem },
    /// `x ↦ c∘x + c`, needs the two-torsion condition.
    K2 { c: Elem },
    /// `x ↦ c∘x − c + n·x`.
    K1N { c: Elem, n: i64 },
    /// `x ↦ c∘x + c + n·x`, needs the two-torsion condition.
    K2N { c: Elem, n: i64 },
    /// `x ↦ c^{2m}∘x + c^{2m} + 2·Σ_{j=1}^{m-1} c^{2j} − 2·Σ_{j=1}^{m} c^{2j-1}`;
    /// pointwise equal to the `m`-fold composite of (k1 after k2).
    Tilde { c: Elem, m: u32 },
    /// The mirror image of `Tilde`; pointwise the `m`-fold composite of
    /// (k2 after k1).
    Hat { c: Elem, m: u32 },
    /// `x ↦ 2m·c + (2m+n)·x`, pointwise `m·k1 + m·k2 + n·id`.
    Lmn { c: Elem, m: u32, n: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{c} is not central in the multiplicative group")]
    NotCentral { c: Elem },
    #[error("two-torsion condition 2(c∘x) = 2x + 2c fails at x = {witness}")]
    ConditionFailed { c: Elem, witness: Elem },
    #[error("family image of {x} is {image}, outside X")]
    ImageEscapesX { x: Elem, image: Elem },
    #[error("{a} is not in the required socle")]
    NotInSocle { a: Elem },
    #[error("carrier does not live in this brace")]
    CarrierMismatch,
    #[error("parameter m must be at least 1")]
    ZeroM,
}

/// Two-torsion condition `2 (c∘x) = 2x + 2c` on `X`, plus whether the
/// stronger membership `c ∈ Soc(B)` (equivalently `c ⋆ b = 0` for all `b`)
/// holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoTorsionReport {
    pub holds: bool,
    pub witness: Option<Elem>,
    pub c_in_socle: bool,
}

pub fn two_torsion_condition(brace: &FiniteBrace, c: Elem, x_set: &SubsetX) -> TwoTorsionReport {
    let witness = x_set.members().iter().copied().find(|&x| {
        let cx = brace.mul(c, x);
        brace.add(cx, cx) != brace.add(brace.add(x, x), brace.add(c, c))
    });
    let c_in_socle = (0..brace.size()).all(|b| brace.star(c, b) == 0);
    TwoTorsionReport { holds: witness.is_none(), witness, c_in_socle }
}

/// Builds a family map after validating its hypotheses; refuses loudly when
/// one fails.
pub fn family(brace: &FiniteBrace, x_set: &SubsetX, kind: FamilyKind) -> Result<PointMap, FamilyError> {
    build_family(brace, x_set, kind, true)
}

/// Builds the same map without hypothesis checks, for probing necessity
/// directions; the image is still required to stay inside `X`.
pub fn family_forced(
    brace: &FiniteBrace,
    x_set: &SubsetX,
    kind: FamilyKind,
) -> Result<PointMap, FamilyError> {
    build_family(brace, x_set, kind, false)
}

fn build_family(
    brace: &FiniteBrace,
    x_set: &SubsetX,
    kind: FamilyKind,
    check: bool,
) -> Result<PointMap, FamilyError> {
    if x_set.ground_size() != brace.size() {
        return Err(FamilyError::CarrierMismatch);
    }
    let require_central = |c: Elem| -> Result<(), FamilyError> {
        if check && !brace.is_central(c) {
            return Err(FamilyError::NotCentral { c });
        }
        Ok(())
    };
    let require_condition = |c: Elem| -> Result<(), FamilyError> {
        if check {
            let report = two_torsion_condition(brace, c, x_set);
            if let Some(witness) = report.witness {
                return Err(FamilyError::ConditionFailed { c, witness });
            }
        }
        Ok(())
    };
    let formula: Box<dyn Fn(Elem) -> Elem> = match kind {
        FamilyKind::Const { a } => {
            if check && !brace.socle(SocleSide::Opposite).contains(a) {
                return Err(FamilyError::NotInSocle { a });
            }
            Box::new(move |_| a)
        }
        FamilyKind::MulBy { c } => {
            require_central(c)?;
            if check && !brace.socle(SocleSide::Left).contains(c) {
                return Err(FamilyError::NotInSocle { a: c });
            }
            Box::new(move |x| brace.mul(c, x))
        }
        FamilyKind::K1 { c } => {
            require_central(c)?;
            Box::new(move |x| brace.sub(brace.mul(c, x), c))
        }
        FamilyKind::K2 { c } => {
            require_central(c)?;
            require_condition(c)?;
            Box::new(move |x| brace.add(brace.mul(c, x), c))
        }
        FamilyKind::K1N { c, n } => {
            require_central(c)?;
            Box::new(move |x| brace.add(brace.sub(brace.mul(c, x), c), brace.nmul(n, x)))
        }
        FamilyKind::K2N { c, n } => {
            require_central(c)?;
            require_condition(c)?;
            Box::new(move |x| brace.add(brace.add(brace.mul(c, x), c), brace.nmul(n, x)))
        }
        FamilyKind::Tilde { c, m } => {
            if m == 0 {
                return Err(FamilyError::ZeroM);
            }
            require_central(c)?;
            require_condition(c)?;
            let c2m = brace.opow(c, 2 * m);
            let correction = tilde_correction(brace, c, m);
            Box::new(move |x| brace.add(brace.add(brace.mul(c2m, x), c2m), correction))
        }
        FamilyKind::Hat { c, m } => {
            if m == 0 {
                return Err(FamilyError::ZeroM);
            }
            require_central(c)?;
            require_condition(c)?;
            let c2m = brace.opow(c, 2 * m);
            let correction = brace.neg(tilde_correction(brace, c, m));
            Box::new(move |x| brace.add(brace.sub(brace.mul(c2m, x), c2m), correction))
        }
        FamilyKind::Lmn { c, m, n } => {
            if m == 0 {
                return Err(FamilyError::ZeroM);
            }
            require_central(c)?;
            require_condition(c)?;
            let shift = brace.nmul(2 * i64::from(m), c);
            let scale = 2 * i64::from(m) + n;
            Box::new(move |x| brace.add(shift, brace.nmul(scale, x)))
        }
    };
    let image: Vec<Elem> = x_set.members().iter().map(|&x| formula(x)).collect();
    for (i, &e) in image.iter().enumerate() {
        if !x_set.contains(e) {
            return Err(FamilyError::ImageEscapesX { x: x_set.members()[i], image: e });
        }
    }
    Ok(PointMap::new(x_set.clone(), image).expect("image validated above"))
}

/// `2·Σ_{j=1}^{m-1} c^{2j} − 2·Σ_{j=1}^{m} c^{2j-1}` (the constant tail of
/// the `Tilde` family; `Hat` uses its negative).
fn tilde_correction(brace: &FiniteBrace, c: Elem, m: u32) -> Elem {
    let mut even_sum = 0;
    for j in 1..m {
        even_sum = brace.add(even_sum, brace.opow(c, 2 * j));
    }
    let mut odd_sum = 0;
    for j in 1..=m {
        odd_sum = brace.add(odd_sum, brace.opow(c, 2 * j - 1));
    }
    brace.sub(brace.nmul(2, even_sum), brace.nmul(2, odd_sum))
}

// ---------------------------------------------------------------------------
// wedge-composed reflections

/// A binary operation `∧ : X × X → X` given by a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeOp {
    carrier: SubsetX,
    table: Vec<Elem>,
}

impl WedgeOp {
    pub fn from_fn(carrier: SubsetX, f: impl Fn(Elem, Elem) -> Elem) -> Result<Self, ReflectError> {
        let m = carrier.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in carrier.members() {
            for &y in carrier.members() {
                let e = f(x, y);
                if !carrier.contains(e) {
                    return Err(ReflectError::ImageEscapesCarrier { x, image: e });
                }
                table.push(e);
            }
        }
        Ok(WedgeOp { carrier, table })
    }

    pub fn carrier(&self) -> &SubsetX {
        &self.carrier
    }

    #[inline]
    pub fn apply(&self, x: Elem, y: Elem) -> Elem {
        let m = self.carrier.len();
        let i = self.carrier.position(x).expect("x in carrier");
        let j = self.carrier.position(y).expect("y in carrier");
        self.table[i * m + j]
    }
}

/// Outcome of testing the wedge decomposition `k(x) = f(x) ∧ g(x)`.
///
/// When `sigma_compatible` holds (σ_x slides through the first wedge
/// argument) and `r` comes from a brace, `tau_insensitive` is equivalent to
/// `k` being a reflection; that equivalence is asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WedgeReport {
    pub sigma_compatible: bool,
    pub sigma_witness: Option<(Elem, Elem, Elem)>,
    pub tau_insensitive: bool,
    pub tau_witness: Option<(Elem, Elem)>,
    pub is_reflection: bool,
    pub k: PointMap,
}

pub fn check_wedge_theorem(
    r: &YangBaxterMap,
    f: &PointMap,
    g: &PointMap,
    wedge: &WedgeOp,
) -> Result<WedgeReport, ReflectError> {
    let carrier = r.carrier();
    if f.carrier() != carrier || g.carrier() != carrier || wedge.carrier() != carrier {
        return Err(ReflectError::CarrierMismatch);
    }
    if let Some((x, y)) = equivariance_witness(r, f)? {
        return Err(ReflectError::FNotEquivariant { x, y });
    }
    let members = carrier.members();
    let mut sigma_witness = None;
    'outer: for &x in members {
        for &y in members {
            for &z in members {
                let gz = g.apply(z);
                if r.sigma(x, wedge.apply(y, gz)) != wedge.apply(r.sigma(x, y), gz) {
                    sigma_witness = Some((x, y, z));
                    break 'outer;
                }
            }
        }
    }
    let k = PointMap::from_fn(carrier.clone(), |x| wedge.apply(f.apply(x), g.apply(x)))
        .expect("wedge image stays in carrier");
    let mut tau_witness = None;
    'outer2: for &x in members {
        for &y in members {
            let lhs = wedge.apply(f.apply(x), g.apply(r.tau(k.apply(y), x)));
            let rhs = wedge.apply(f.apply(x), g.apply(r.tau(y, x)));
            if lhs != rhs {
                tau_witness = Some((x, y));
                break 'outer2;
            }
        }
    }
    let is_refl = is_reflection(r, &k);
    let report = WedgeReport {
        sigma_compatible: sigma_witness.is_none(),
        sigma_witness,
        tau_insensitive: tau_witness.is_none(),
        tau_witness,
        is_reflection: is_refl,
        k,
    };
    if report.sigma_compatible && r.provenance() == crate::yang_baxter::Provenance::FromBrace {
        assert_eq!(
            report.tau_insensitive, report.is_reflection,
            "wedge criterion must match the reflection verdict when σ-compatibility holds"
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::BraceSide;
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

    fn cyclic_shift(n: usize) -> YangBaxterMap {
        let carrier = SubsetX::full(n);
        let sigma: Vec<Vec<Elem>> = (0..n).map(|_| (0..n).map(|y| (y + 1) % n).collect()).collect();
        let tau: Vec<Vec<Elem>> = (0..n).map(|_| (0..n).collect()).collect();
        YangBaxterMap::from_tables(carrier, &sigma, &tau).unwrap()
    }

    fn map(r: &YangBaxterMap, image: &[Elem]) -> PointMap {
        PointMap::new(r.carrier().clone(), image.to_vec()).unwrap()
    }

    #[test]
    fn cyclic_two_reflections() {
        let r = cyclic_shift(2);
        let id = PointMap::identity(r.carrier().clone());
        assert!(is_reflection(&r, &id));
        let swap = map(&r, &[1, 0]);
        assert!(is_reflection(&r, &swap));
        let const0 = map(&r, &[0, 0]);
        assert!(!is_reflection(&r, &const0));
    }

    #[test]
    fn flip_accepts_every_map() {
        let b = trivial_brace(3);
        let r = YangBaxterMap::from_brace(&b, &SubsetX::full(3)).unwrap();
        for a in 0..3 {
            for b2 in 0..3 {
                for c in 0..3 {
                    assert!(is_reflection(&r, &map(&r, &[a, b2, c])));
                }
            }
        }
    }

    #[test]
    fn shortcut_is_rejected_for_non_involutive_solutions() {
        let r = cyclic_shift(3);
        let id = PointMap::identity(r.carrier().clone());
        let err = reflection_witness(&r, &id, ReflectMode::FirstCoordinate).unwrap_err();
        assert_eq!(err, ReflectError::ShortcutUnsound);
        // full mode still works
        assert!(reflection_witness(&r, &id, ReflectMode::Full).unwrap().is_none());
    }

    #[test]
    fn shortcut_agrees_on_involutive_solutions() {
        let b = z4_adjoint();
        let r = YangBaxterMap::from_brace(&b, &SubsetX::full(4)).unwrap();
        for image in [[0, 1, 2, 3], [0, 3, 2, 1], [2, 1, 0, 3], [0, 0, 0, 0]] {
            let k = map(&r, &image);
            let full = reflection_witness(&r, &k, ReflectMode::Full).unwrap().is_none();
            let fst = reflection_witness(&r, &k, ReflectMode::FirstCoordinate).unwrap().is_none();
            assert_eq!(full, fst, "image {image:?}");
        }
    }

    #[test]
    fn equivariance_examples() {
        let b = z4_adjoint();
        let r = YangBaxterMap::from_brace(&b, &SubsetX::full(4)).unwrap();
        // x ↦ 3x commutes with σ₁ = (1 3)
        assert!(is_equivariant(&r, &map(&r, &[0, 3, 2, 1])));
        // the transposition (0 1) does not: σ₁k(0) = σ₁(1) = 3 ≠ kσ₁(0) = 1
        let k = map(&r, &[1, 0, 2, 3]);
        assert_eq!(equivariance_witness(&r, &k).unwrap(), Some((1, 0)));
        // every map is equivariant for a trivial brace
        let t = trivial_brace(3);
        let rt = YangBaxterMap::from_brace(&t, &SubsetX::full(3)).unwrap();
        assert!(is_equivariant(&rt, &map(&rt, &[2, 2, 0])));
    }

    #[test]
    fn involutivity_of_maps() {
        let r = cyclic_shift(4);
        assert!(PointMap::identity(r.carrier().clone()).is_involutive());
        assert!(map(&r, &[0, 3, 2, 1]).is_involutive());
        assert!(!map(&r, &[0, 0, 0, 0]).is_involutive());
    }

    #[test]
    fn enumerate_cyclic_counts() {
        for n in 2..=5 {
            let r = cyclic_shift(n);
            let report = enumerate(
                &r,
                &EnumerateOptions { emit_maps: true, ..EnumerateOptions::default() },
            )
            .unwrap();
            assert_eq!(report.reflection_count, Some(n as u64), "n = {n}");
            assert_eq!(report.maps_scanned, (n as u64).pow(n as u32));
            assert!(!report.truncated);
            // each reflection shifts along the orbit: k(b + 1) = k(b) + 1
            for k in report.reflections.as_ref().unwrap() {
                for b in 0..n {
                    assert_eq!(k.apply((b + 1) % n), (k.apply(b) + 1) % n);
                }
            }
        }
    }

    #[test]
    fn enumerate_is_deterministic_across_workers() {
        let r = cyclic_shift(4);
        let base = enumerate(
            &r,
            &EnumerateOptions { filter: Filter::Both, emit_maps: true, ..Default::default() },
        )
        .unwrap();
        for jobs in [2, 3, 7] {
            let par = enumerate(
                &r,
                &EnumerateOptions { filter: Filter::Both, emit_maps: true, jobs, ..Default::default() },
            )
            .unwrap();
            assert_eq!(par, base, "jobs = {jobs}");
        }
    }

    #[test]
    fn enumerate_budget_behaviour() {
        let r = cyclic_shift(3);
        let err = enumerate(
            &r,
            &EnumerateOptions { budget: 10, on_budget: BudgetPolicy::Error, ..Default::default() },
        )
        .unwrap_err();
        assert_eq!(err, ReflectError::BudgetExceeded { space: 27, budget: 10 });
        let report = enumerate(
            &r,
            &EnumerateOptions { budget: 10, on_budget: BudgetPolicy::Truncate, ..Default::default() },
        )
        .unwrap();
        assert!(report.truncated);
        assert_eq!(report.maps_scanned, 10);
    }

    #[test]
    fn near_ring_combinations() {
        let b = z4_adjoint();
        let r = YangBaxterMap::from_brace(&b, &SubsetX::full(4)).unwrap();
        let f = map(&r, &[0, 3, 2, 1]);
        let zero = map(&r, &[0, 0, 0, 0]);
        let id = PointMap::identity(r.carrier().clone());
        assert_eq!(combine(&b, NearRingOp::Add, &zero, Some(&f)).unwrap(), f);
        assert_eq!(combine(&b, NearRingOp::Compose, &id, Some(&f)).unwrap(), f);
        // 3x + 3x = 2x pointwise
        let doubled = combine(&b, NearRingOp::Add, &f, Some(&f)).unwrap();
        assert_eq!(doubled.image(), &[0, 2, 0, 2]);
        let neg = combine(&b, NearRingOp::Negate, &f, None).unwrap();
        assert_eq!(neg.image(), &[0, 1, 2, 3]);
    }

    #[test]
    fn family_k1_k2_on_z4() {
        let b = z4_adjoint();
        let full = SubsetX::full(4);
        let k1 = family(&b, &full, FamilyKind::K1 { c: 1 }).unwrap();
        assert_eq!(k1.image(), &[0, 3, 2, 1]);
        let k2 = family(&b, &full, FamilyKind::K2 { c: 1 }).unwrap();
        assert_eq!(k2.image(), &[2, 1, 0, 3]);
        // k̃₁(x) = x + 2, and it equals k1 ∘ k2 pointwise
        let tilde1 = family(&b, &full, FamilyKind::Tilde { c: 1, m: 1 }).unwrap();
        assert_eq!(tilde1.image(), &[2, 3, 0, 1]);
        let composed = combine(&b, NearRingOp::Compose, &k1, Some(&k2)).unwrap();
        assert_eq!(tilde1, composed);
    }

    #[test]
    fn family_parameter_sweeps_stay_equivariant() {
        let b = z4_adjoint();
        let full = SubsetX::full(4);
        let r = YangBaxterMap::from_brace(&b, &full).unwrap();
        for n in -3..=3 {
            let k1n = family(&b, &full, FamilyKind::K1N { c: 1, n }).unwrap();
            assert!(is_equivariant(&r, &k1n), "k1n with n = {n}");
            let k2n = family(&b, &full, FamilyKind::K2N { c: 1, n }).unwrap();
            assert!(is_equivariant(&r, &k2n), "k2n with n = {n}");
        }
        for m in 1..=3 {
            for kind in [FamilyKind::Tilde { c: 1, m }, FamilyKind::Hat { c: 1, m }] {
                let k = family(&b, &full, kind).unwrap();
                assert!(is_equivariant(&r, &k), "{kind:?}");
            }
        }
    }

    #[test]
    fn two_torsion_reports() {
        let b = z4_adjoint();
        let full = SubsetX::full(4);
        let zero = two_torsion_condition(&b, 0, &full);
        assert!(zero.holds && zero.c_in_socle);
        let one = two_torsion_condition(&b, 1, &full);
        assert!(one.holds, "4x ≡ 0 mod 4");
        assert!(!one.c_in_socle, "1 ⋆ 1 = 2 ≠ 0");
    }

    #[test]
    fn family_hypothesis_failures() {
        let b = z4_adjoint();
        let full = SubsetX::full(4);
        // 1 is central but not in Soc(B), so MulBy refuses
        assert_eq!(
            family(&b, &full, FamilyKind::MulBy { c: 1 }).unwrap_err(),
            FamilyError::NotInSocle { a: 1 }
        );
        // 1 is not in the opposite socle either
        assert_eq!(
            family(&b, &full, FamilyKind::Const { a: 1 }).unwrap_err(),
            FamilyError::NotInSocle { a: 1 }
        );
        // forced construction skips the check but the image must stay in X
        let forced = family_forced(&b, &full, FamilyKind::MulBy { c: 1 }).unwrap();
        assert_eq!(forced.image(), &[1, 0, 3, 2]);
    }

    #[test]
    fn family_respects_carrier() {
        let b = z4_adjoint();
        let x02 = SubsetX::new(4, [0, 2]).unwrap();
        // k1 with c = 1 maps 0 ↦ 0, 2 ↦ 2: stays inside {0, 2}
        let k1 = family(&b, &x02, FamilyKind::K1 { c: 1 }).unwrap();
        assert_eq!(k1.image(), &[0, 2]);
        // cnst_2 works on {0, 2} since 2 ∈ Soc(B^op) ∩ X
        let c2 = family(&b, &x02, FamilyKind::Const { a: 2 }).unwrap();
        assert_eq!(c2.image(), &[2, 2]);
    }

    #[test]
    fn wedge_projection_reduces_to_f() {
        let b = z4_adjoint();
        let r = YangBaxterMap::from_brace(&b, &SubsetX::full(4)).unwrap();
        let f = map(&r, &[0, 3, 2, 1]);
        let g = PointMap::identity(r.carrier().clone());
        let wedge = WedgeOp::from_fn(r.carrier().clone(), |x, _| x).unwrap();
        let report = check_wedge_theorem(&r, &f, &g, &wedge).unwrap();
        assert!(report.sigma_compatible);
        assert!(report.tau_insensitive);
        assert!(report.is_reflection);
        assert_eq!(&report.k, &f);
    }

    #[test]
    fn wedge_with_brace_product_fails_sigma_compat() {
        let b = z4_adjoint();
        let r = YangBaxterMap::from_brace(&b, &SubsetX::full(4)).unwrap();
        let id = PointMap::identity(r.carrier().clone());
        let wedge = WedgeOp::from_fn(r.carrier().clone(), |x, y| b.mul(x, y)).unwrap();
        let report = check_wedge_theorem(&r, &id, &id, &wedge).unwrap();
        assert!(!report.sigma_compatible);
        assert_eq!(report.sigma_witness, Some((1, 0, 1)));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_image() -> impl Strategy<Value = Vec<Elem>> {
            proptest::collection::vec(0usize..4, 4)
        }

        proptest! {
            // right distributivity (f+g)∘h = f∘h + g∘h needs nothing from
            // the maps themselves, only the definitions
            #[test]
            fn right_distributivity_for_arbitrary_maps(
                fi in arb_image(), gi in arb_image(), hi in arb_image()
            ) {
                let b = z4_adjoint();
                let r = YangBaxterMap::from_brace(&b, &SubsetX::full(4)).unwrap();
                let f = map(&r, &fi);
                let g = map(&r, &gi);
                let h = map(&r, &hi);
                let sum = combine(&b, NearRingOp::Add, &f, Some(&g)).unwrap();
                let lhs = combine(&b, NearRingOp::Compose, &sum, Some(&h)).unwrap();
                let rhs = combine(
                    &b,
                    NearRingOp::Add,
                    &combine(&b, NearRingOp::Compose, &f, Some(&h)).unwrap(),
                    Some(&combine(&b, NearRingOp::Compose, &g, Some(&h)).unwrap()),
                )
                .unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            // enumeration reports are identical for every worker count
            #[test]
            fn enumeration_is_worker_count_invariant(jobs in 1usize..6, budget in 1u64..300) {
                let r = cyclic_shift(3);
                let opts = |jobs| EnumerateOptions {
                    filter: Filter::Both,
                    budget,
                    on_budget: BudgetPolicy::Truncate,
                    emit_maps: true,
                    jobs,
                };
                let base = enumerate(&r, &opts(1)).unwrap();
                let par = enumerate(&r, &opts(jobs)).unwrap();
                prop_assert_eq!(base, par);
            }
        }
    }
}
