//! The built-in verification suite: ten exhaustive, exact criteria over the
//! bundled catalog. `brace-lab selftest` runs it, and the `acceptance`
//! integration test asserts every criterion.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use crate::brace::{SocleSide, SubsetX};
use crate::catalog;
use crate::factorizable::{
    coset_lemma_witness, make_ring_reflection, RingReflectionHypotheses, RingReflectionVariant,
};
use crate::param_dep::{check_param_reflection, check_param_ybe, linearize_point_map, linearize_r};
use crate::reflection::{
    combine, enumerate, equivariance_witness, family, family_forced, is_equivariant,
    is_reflection, reflection_witness, two_torsion_condition, EnumerateOptions, FamilyKind,
    Filter, NearRingOp, PointMap, ReflectMode,
};
use crate::yang_baxter::{sigma_identity_witness, socle_fixpoint_equivalence, YangBaxterMap};
use crate::{Elem, FiniteBrace};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub millis: u128,
    pub time_limit_millis: u128,
}

struct Criterion {
    id: u32,
    name: &'static str,
    time_limit_millis: u128,
    run: fn(usize) -> Result<String, String>,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "cyclic shift has exactly n reflections", time_limit_millis: 10_000, run: c1_cyclic_counts },
    Criterion { id: 2, name: "two-point shift: identity and transposition", time_limit_millis: 1_000, run: c2_two_point },
    Criterion { id: 3, name: "cycle conjugation accepts all 27 maps", time_limit_millis: 1_000, run: c3_phi_all_maps },
    Criterion { id: 4, name: "equivariant maps are reflections", time_limit_millis: 30_000, run: c4_equivariant_implies_reflection },
    Criterion { id: 5, name: "equivariant maps form a right near-ring", time_limit_millis: 30_000, run: c5_near_ring },
    Criterion { id: 6, name: "family formulas match their compositions", time_limit_millis: 5_000, run: c6_families },
    Criterion { id: 7, name: "two-torsion condition is exactly k2 equivariance", time_limit_millis: 30_000, run: c7_two_torsion_iff },
    Criterion { id: 8, name: "factorized 3x3 ring suite", time_limit_millis: 10_000, run: c8_factorizable },
    Criterion { id: 9, name: "parameter-dependent identities hold exactly", time_limit_millis: 60_000, run: c9_param_dep },
    Criterion { id: 10, name: "brace identity suite over the catalog", time_limit_millis: 30_000, run: c10_brace_identities },
];

pub fn run_all(jobs: usize) -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|c| run_one(c, jobs)).collect()
}

pub fn run_criterion(id: u32, jobs: usize) -> Option<CriterionOutcome> {
    CRITERIA.iter().find(|c| c.id == id).map(|c| run_one(c, jobs))
}

fn run_one(c: &Criterion, jobs: usize) -> CriterionOutcome {
    let start = Instant::now();
    let result = (c.run)(jobs);
    let millis = start.elapsed().as_millis();
    let in_time = millis < c.time_limit_millis;
    match result {
        Ok(details) => CriterionOutcome {
            id: c.id,
            name: c.name,
            passed: in_time,
            details: if in_time {
                details
            } else {
                format!("{details}; exceeded time limit ({millis} ms)")
            },
            millis,
            time_limit_millis: c.time_limit_millis,
        },
        Err(details) => CriterionOutcome {
            id: c.id,
            name: c.name,
            passed: false,
            details,
            millis,
            time_limit_millis: c.time_limit_millis,
        },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn full_solution(brace: &FiniteBrace) -> YangBaxterMap {
    YangBaxterMap::from_brace(brace, &SubsetX::full(brace.size()))
        .expect("full carrier is always closed")
}

fn c1_cyclic_counts(jobs: usize) -> Result<String, String> {
    for n in 2..=6usize {
        let r = catalog::cyclic_shift_solution(n);
        let report = enumerate(
            &r,
            &EnumerateOptions { emit_maps: true, jobs, ..EnumerateOptions::default() },
        )
        .map_err(|e| e.to_string())?;
        ensure(report.maps_scanned == (n as u64).pow(n as u32), || {
            format!("n = {n}: scanned {} maps", report.maps_scanned)
        })?;
        ensure(report.reflection_count == Some(n as u64), || {
            format!("n = {n}: found {:?} reflections, expected {n}", report.reflection_count)
        })?;
        for k in report.reflections.as_deref().unwrap_or_default() {
            for b in 0..n {
                ensure(k.apply((b + 1) % n) == (k.apply(b) + 1) % n, || {
                    format!("n = {n}: reflection {:?} is not a shift", k.image())
                })?;
            }
        }
    }
    Ok("n in 2..=6: exactly n reflections, each with k(b+1) = k(b)+1".to_string())
}

fn c2_two_point(jobs: usize) -> Result<String, String> {
    let r = catalog::cyclic_shift_solution(2);
    let report = enumerate(
        &r,
        &EnumerateOptions { emit_maps: true, jobs, ..EnumerateOptions::default() },
    )
    .map_err(|e| e.to_string())?;
    let images: Vec<&[Elem]> =
        report.reflections.as_deref().unwrap_or_default().iter().map(|k| k.image()).collect();
    ensure(images == vec![&[0, 1][..], &[1, 0][..]], || {
        format!("reflections were {images:?}, expected identity and transposition")
    })?;
    Ok("reflections = {identity, transposition}".to_string())
}

fn c3_phi_all_maps(jobs: usize) -> Result<String, String> {
    let r = catalog::cycle_conjugation_solution(3);
    let report = enumerate(
        &r,
        &EnumerateOptions { jobs, ..EnumerateOptions::default() },
    )
    .map_err(|e| e.to_string())?;
    ensure(report.maps_scanned == 27 && report.reflection_count == Some(27), || {
        format!("{:?} of {} maps were reflections", report.reflection_count, report.maps_scanned)
    })?;
    Ok("all 27 maps on 3 points are reflections".to_string())
}

fn c4_equivariant_implies_reflection(jobs: usize) -> Result<String, String> {
    let mut checked = Vec::new();
    for (name, brace) in catalog::catalog_braces() {
        if brace.size() > 4 {
            continue;
        }
        let r = full_solution(&brace);
        let c = r.classify();
        ensure(c.involutive && c.nondegenerate, || format!("{name}: solution not involutive"))?;
        let report = enumerate(
            &r,
            &EnumerateOptions { filter: Filter::Both, emit_maps: true, jobs, ..Default::default() },
        )
        .map_err(|e| e.to_string())?;
        let reflections: BTreeSet<Vec<Elem>> = report
            .reflections
            .as_deref()
            .unwrap_or_default()
            .iter()
            .map(|k| k.image().to_vec())
            .collect();
        let equivariant = report.equivariant.as_deref().unwrap_or_default();
        for k in equivariant {
            ensure(reflections.contains(k.image()), || {
                format!("{name}: equivariant map {:?} is not a reflection", k.image())
            })?;
        }
        checked.push(format!("{name} ({} equivariant of {} maps)", equivariant.len(), report.maps_scanned));
    }
    Ok(checked.join(", "))
}

fn c5_near_ring(jobs: usize) -> Result<String, String> {
    let brace = catalog::z4_adjoint_brace();
    let r = full_solution(&brace);
    let report = enumerate(
        &r,
        &EnumerateOptions { filter: Filter::Equivariant, emit_maps: true, jobs, ..Default::default() },
    )
    .map_err(|e| e.to_string())?;
    let maps = report.equivariant.as_deref().unwrap_or_default();
    let members: BTreeSet<Vec<Elem>> = maps.iter().map(|k| k.image().to_vec()).collect();
    ensure(members.len() == 16, || format!("expected 16 equivariant maps, found {}", members.len()))?;
    let zero = PointMap::constant(r.carrier().clone(), 0).unwrap();
    let id = PointMap::identity(r.carrier().clone());
    ensure(members.contains(zero.image()), || "zero map missing".to_string())?;
    ensure(members.contains(id.image()), || "identity map missing".to_string())?;
    for f in maps {
        let negated = combine(&brace, NearRingOp::Negate, f, None).map_err(|e| e.to_string())?;
        ensure(members.contains(negated.image()), || {
            format!("negation of {:?} escapes the near-ring", f.image())
        })?;
        ensure(
            combine(&brace, NearRingOp::Add, &zero, Some(f)).map_err(|e| e.to_string())?.image()
                == f.image(),
            || "zero map is not the additive unit".to_string(),
        )?;
        ensure(
            combine(&brace, NearRingOp::Compose, &id, Some(f)).map_err(|e| e.to_string())?.image()
                == f.image(),
            || "identity map is not the composition unit".to_string(),
        )?;
        for g in maps {
            let sum = combine(&brace, NearRingOp::Add, f, Some(g)).map_err(|e| e.to_string())?;
            ensure(members.contains(sum.image()), || {
                format!("{:?} + {:?} escapes the near-ring", f.image(), g.image())
            })?;
            let comp = combine(&brace, NearRingOp::Compose, f, Some(g)).map_err(|e| e.to_string())?;
            ensure(members.contains(comp.image()), || {
                format!("{:?} . {:?} escapes the near-ring", f.image(), g.image())
            })?;
            for h in maps {
                // (f + g) . h = f . h + g . h
                let lhs = combine(&brace, NearRingOp::Compose, &sum, Some(h)).unwrap();
                let rhs = combine(
                    &brace,
                    NearRingOp::Add,
                    &combine(&brace, NearRingOp::Compose, f, Some(h)).unwrap(),
                    Some(&combine(&brace, NearRingOp::Compose, g, Some(h)).unwrap()),
                )
                .unwrap();
                ensure(lhs == rhs, || "right distributivity fails".to_string())?;
                // composition is associative
                let assoc_l = combine(&brace, NearRingOp::Compose, &comp, Some(h)).unwrap();
                let gh = combine(&brace, NearRingOp::Compose, g, Some(h)).unwrap();
                let assoc_r = combine(&brace, NearRingOp::Compose, f, Some(&gh)).unwrap();
                ensure(assoc_l == assoc_r, || "composition not associative".to_string())?;
            }
        }
    }
    Ok("16 equivariant maps: closed, right-distributive, correct units".to_string())
}

/// `m`-fold pointwise sum of a map with itself.
fn pointwise_multiple(brace: &FiniteBrace, base: &PointMap, m: u32) -> PointMap {
    let zero = PointMap::constant(base.carrier().clone(), 0).unwrap();
    let mut acc = zero;
    for _ in 0..m {
        acc = combine(brace, NearRingOp::Add, &acc, Some(base)).unwrap();
    }
    acc
}

fn c6_families(_jobs: usize) -> Result<String, String> {
    let brace = catalog::z4_adjoint_brace();
    let full = SubsetX::full(4);
    let r = full_solution(&brace);
    let k1 = family(&brace, &full, FamilyKind::K1 { c: 1 }).map_err(|e| e.to_string())?;
    let k2 = family(&brace, &full, FamilyKind::K2 { c: 1 }).map_err(|e| e.to_string())?;
    ensure(k1.image() == [0, 3, 2, 1], || format!("k1 image {:?}", k1.image()))?;
    ensure(k2.image() == [2, 1, 0, 3], || format!("k2 image {:?}", k2.image()))?;
    ensure(is_equivariant(&r, &k1), || "k1 not equivariant".to_string())?;
    ensure(is_equivariant(&r, &k2), || "k2 not equivariant".to_string())?;
    let k1_after_k2 = combine(&brace, NearRingOp::Compose, &k1, Some(&k2)).unwrap();
    let k2_after_k1 = combine(&brace, NearRingOp::Compose, &k2, Some(&k1)).unwrap();
    let mut tilde_power = PointMap::identity(full.clone());
    let mut hat_power = PointMap::identity(full.clone());
    for m in 1..=3u32 {
        tilde_power = combine(&brace, NearRingOp::Compose, &k1_after_k2, Some(&tilde_power)).unwrap();
        hat_power = combine(&brace, NearRingOp::Compose, &k2_after_k1, Some(&hat_power)).unwrap();
        let tilde = family(&brace, &full, FamilyKind::Tilde { c: 1, m }).map_err(|e| e.to_string())?;
        ensure(tilde == tilde_power, || format!("tilde_{m} differs from (k1 k2)^{m}"))?;
        let hat = family(&brace, &full, FamilyKind::Hat { c: 1, m }).map_err(|e| e.to_string())?;
        ensure(hat == hat_power, || format!("hat_{m} differs from (k2 k1)^{m}"))?;
    }
    let id = PointMap::identity(full.clone());
    let neg_id = combine(&brace, NearRingOp::Negate, &id, None).unwrap();
    for m in 1..=2u32 {
        for n in -2..=2i64 {
            let l = family(&brace, &full, FamilyKind::Lmn { c: 1, m, n }).map_err(|e| e.to_string())?;
            let m_k1 = pointwise_multiple(&brace, &k1, m);
            let m_k2 = pointwise_multiple(&brace, &k2, m);
            let n_id = pointwise_multiple(&brace, if n < 0 { &neg_id } else { &id }, n.unsigned_abs() as u32);
            let sum = combine(
                &brace,
                NearRingOp::Add,
                &combine(&brace, NearRingOp::Add, &m_k1, Some(&m_k2)).unwrap(),
                Some(&n_id),
            )
            .unwrap();
            ensure(l == sum, || format!("l_({m},{n}) differs from m k1 + m k2 + n id"))?;
        }
    }
    Ok("k1 = (1 3), k2 = 3x+2; tilde/hat powers and l_(m,n) sums all match".to_string())
}

fn c7_two_torsion_iff(_jobs: usize) -> Result<String, String> {
    let mut tested = 0;
    for (name, brace) in catalog::catalog_braces() {
        let full = SubsetX::full(brace.size());
        let r = full_solution(&brace);
        for c in 0..brace.size() {
            if !brace.is_central(c) {
                continue;
            }
            let forced = family_forced(&brace, &full, FamilyKind::K2 { c }).map_err(|e| e.to_string())?;
            let condition = two_torsion_condition(&brace, c, &full);
            let equivariant = is_equivariant(&r, &forced);
            ensure(equivariant == condition.holds, || {
                format!(
                    "{name}, c = {c}: equivariance {equivariant} but condition {}",
                    condition.holds
                )
            })?;
            tested += 1;
        }
    }
    Ok(format!("{tested} central elements across the catalog agree with the iff"))
}

fn c8_factorizable(_jobs: usize) -> Result<String, String> {
    let bundle = catalog::ut3_bundle();
    let fac = &bundle.factorization;
    let full = SubsetX::full(8);
    for x in 0..8 {
        let (x1, x2) = fac.decomp(x);
        ensure(fac.adjoint().mul(x1, x2) == x, || format!("decomp of {x} does not multiply back"))?;
    }
    let r = fac.odot_solution(&full).map_err(|e| e.to_string())?;
    let c = r.classify();
    ensure(r.is_solution() && c.involutive && c.nondegenerate, || {
        "⊙ solution must be involutive and nondegenerate".to_string()
    })?;
    // coset stability for k(x) = x + a(x)b(x)e13 with J = {0, e13}
    let k = PointMap::from_fn(full.clone(), |x| x ^ (((x & 1) & ((x >> 1) & 1)) << 2)).unwrap();
    let lemma = coset_lemma_witness(fac, &bundle.j, &k, &full).map_err(|e| e.to_string())?;
    ensure(lemma.is_none(), || format!("coset stability failed at {lemma:?}"))?;
    // ring reflection k2 with f = id, g(x) = b(x)e23
    let f = PointMap::identity(full.clone());
    let g = PointMap::from_fn(full.clone(), |x| x & 0b010).unwrap();
    let k2 = make_ring_reflection(
        fac,
        &full,
        &f,
        &g,
        RingReflectionVariant::K2,
        RingReflectionHypotheses::CosetIdeal(&bundle.j),
    )
    .map_err(|e| e.to_string())?;
    ensure(!k2.is_identity(), || "k2 must be nontrivial".to_string())?;
    ensure(k2.image() == [0, 1, 2, 7, 4, 5, 6, 3], || format!("k2 image {:?}", k2.image()))?;
    ensure(is_reflection(&r, &k2), || "constructed k2 must be a reflection".to_string())?;
    Ok("factorization, ⊙-brace, coset stability, and ring reflection k2 all verified".to_string())
}

fn c9_param_dep(_jobs: usize) -> Result<String, String> {
    let brace = catalog::z4_adjoint_brace();
    let full = SubsetX::full(4);
    let r = full_solution(&brace);
    let k1 = family(&brace, &full, FamilyKind::K1 { c: 1 }).map_err(|e| e.to_string())?;
    // c² = 1∘1 = 0 lies in the socle, so k1 is involutive
    ensure(brace.opow(1, 2) == 0, || "1∘1 must be 0".to_string())?;
    ensure(brace.socle(SocleSide::Left).contains(brace.opow(1, 2)), || {
        "c² must lie in the socle".to_string()
    })?;
    ensure(k1.is_involutive(), || "k1 must be involutive".to_string())?;
    ensure(is_reflection(&r, &k1), || "k1 must be a reflection".to_string())?;
    let r_mat = linearize_r(&r);
    let k_mat = linearize_point_map(&k1);
    let refl = check_param_reflection(&r_mat, &k_mat).map_err(|e| e.to_string())?;
    ensure(refl.holds, || format!("reflection identity failed: {:?}", refl.witness))?;
    ensure(refl.audit.divisible_by_uv, || "both sides must carry a uv factor".to_string())?;
    ensure(refl.audit.reduced_max_deg.0 <= 2 && refl.audit.reduced_max_deg.1 <= 2, || {
        format!("reduced degrees {:?} exceed 2", refl.audit.reduced_max_deg)
    })?;
    let ybe = check_param_ybe(&r_mat).map_err(|e| e.to_string())?;
    ensure(ybe.holds, || format!("parameter Yang-Baxter identity failed: {:?}", ybe.witness))?;
    Ok("16x16 reflection identity and 64x64 Yang-Baxter identity hold exactly".to_string())
}

fn c10_brace_identities(_jobs: usize) -> Result<String, String> {
    let braces = catalog::catalog_braces();
    for (name, b) in &braces {
        let n = b.size();
        let fail = |what: &str, xs: &[Elem]| format!("{name}: {what} fails at {xs:?}");
        for z in 0..n {
            for x in 0..n {
                for y in 0..n {
                    // z∘(x−y) − z = z∘x − z∘y
                    let lhs = b.sub(b.mul(z, b.sub(x, y)), z);
                    let rhs = b.sub(b.mul(z, x), b.mul(z, y));
                    ensure(lhs == rhs, || fail("difference identity", &[z, x, y]))?;
                    // x∘(y₁+y₂) = x∘y₁ + x∘y₂ − x
                    let lhs = b.mul(z, b.add(x, y));
                    let rhs = b.sub(b.add(b.mul(z, x), b.mul(z, y)), z);
                    ensure(lhs == rhs, || fail("pair sum identity", &[z, x, y]))?;
                    // x∘(y₁+y₂+y₃) = Σ x∘yᵢ − 2x  (checked with y₃ = z over all triples)
                    for w in 0..n {
                        let lhs = b.mul(x, b.add(b.add(y, z), w));
                        let rhs = b.sub(
                            b.add(b.add(b.mul(x, y), b.mul(x, z)), b.mul(x, w)),
                            b.nmul(2, x),
                        );
                        ensure(lhs == rhs, || fail("triple sum identity", &[x, y, z, w]))?;
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                // x∘y + x∘(−y) = 2x
                ensure(
                    b.add(b.mul(x, y), b.mul(x, b.neg(y))) == b.nmul(2, x),
                    || fail("negation identity", &[x, y]),
                )?;
                for m in 1..=n as i64 {
                    // x∘(ny) = n(x∘y) − (n−1)x
                    let lhs = b.mul(x, b.nmul(m, y));
                    let rhs = b.sub(b.nmul(m, b.mul(x, y)), b.nmul(m - 1, x));
                    ensure(lhs == rhs, || fail("multiple identity", &[x, y, m as usize]))?;
                    // x∘(−ny) = (n+1)x − n(x∘y)
                    let lhs = b.mul(x, b.nmul(-m, y));
                    let rhs = b.sub(b.nmul(m + 1, x), b.nmul(m, b.mul(x, y)));
                    ensure(lhs == rhs, || fail("negative multiple identity", &[x, y, m as usize]))?;
                }
            }
        }
        let full = SubsetX::full(n);
        ensure(sigma_identity_witness(b, &full).is_none(), || {
            format!("{name}: a σ-identity fails")
        })?;
        ensure(socle_fixpoint_equivalence(b, &full), || {
            format!("{name}: socle-fixpoint equivalence fails")
        })?;
        // x ↦ −x commutes with every σ_x
        let negation = PointMap::from_fn(full.clone(), |x| b.neg(x)).expect("negation is total");
        ensure(is_equivariant(&full_solution(b), &negation), || {
            format!("{name}: negation map is not equivariant")
        })?;
        // socles are additive subgroups containing 0
        for side in [SocleSide::Left, SocleSide::Opposite] {
            let soc = b.socle(side);
            ensure(soc.contains(0), || format!("{name}: socle misses 0"))?;
            for &a in soc.members() {
                for &c in soc.members() {
                    ensure(soc.contains(b.add(a, c)), || {
                        format!("{name}: socle not closed under +")
                    })?;
                }
            }
        }
    }
    Ok(format!("all identities hold on {} catalog braces", braces.len()))
}

/// Checks shared by several criteria, exposed for reuse in tests: the full
/// reflection/equivariance agreement on one brace.
pub fn equivariant_maps_are_reflections(brace: &FiniteBrace, jobs: usize) -> Result<u64, String> {
    let r = full_solution(brace);
    let report = enumerate(
        &r,
        &EnumerateOptions { filter: Filter::Both, emit_maps: true, jobs, ..Default::default() },
    )
    .map_err(|e| e.to_string())?;
    let reflections: BTreeSet<Vec<Elem>> = report
        .reflections
        .as_deref()
        .unwrap_or_default()
        .iter()
        .map(|k| k.image().to_vec())
        .collect();
    let mut count = 0;
    for k in report.equivariant.as_deref().unwrap_or_default() {
        if !reflections.contains(k.image()) {
            return Err(format!("equivariant map {:?} is not a reflection", k.image()));
        }
        // agreement between the set view and the direct check
        if reflection_witness(&r, k, ReflectMode::Full).map_err(|e| e.to_string())?.is_some() {
            return Err(format!("direct reflection check disagrees for {:?}", k.image()));
        }
        if equivariance_witness(&r, k).map_err(|e| e.to_string())?.is_some() {
            return Err("enumerated equivariant map fails the direct check".to_string());
        }
        count += 1;
    }
    Ok(count)
}
