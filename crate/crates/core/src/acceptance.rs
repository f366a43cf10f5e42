//! The end-to-end acceptance suite, shared by the `acceptance` test target
//! and the command-line `selftest`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::base::BaseElement;
use crate::coding::{
    delta_lower_bound, delta_min_search, det_lemma_study, encode, lift_codeword, min_det_sq_in_box,
    BoundFormula, BoundInputs, FieldCodeKind, IdealShape, LiftStrategy, OuterCode, OuterWord, SearchOptions,
};
use crate::error::{AlgebraError, Result};
use crate::exec::Execution;
use crate::extension::{IdealSpec, OkElement};
use crate::io::{builtin_algebra, builtin_names};
use crate::order::{AlgebraSpec, OrderElement};
use crate::residue::ideals::{all_two_sided_ideals, ideal_generated, z_power_ideal};
use crate::residue::{CrtDecomposition, QuotientRing};
use crate::structure::{
    check_ideal_lattice, identify_quotient, monomial_element, stairwell_contains, verify_isomorphism,
    Construction, StructureCase, VerifyMode, VerifyOptions,
};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: f64,
}

type Check = fn() -> Result<String>;

const CRITERIA: [(u32, &str, f64, Check); 11] = [
    (1, "golden mod (1+i) is M_2(F_2)", 1.0, golden_matrix_ring),
    (2, "q7 mod 2 is M_3(F_4)", 30.0, q7_matrix_ring),
    (3, "q15 mod (1+i) is M_4(F_2)", 60.0, q15_matrix_ring),
    (4, "golden u=1+i mod (1+i) is a skew quotient", 1.0, golden_nilpotent),
    (5, "golden mod (1+i)^2 lifts to M_2(Z[i]/(1+i)^2)", 5.0, golden_power),
    (6, "split unit: gauss mod 5 is M_2(F_5)", 5.0, split_unit),
    (7, "split nilpotent: monomial ideals of gauss u=5 mod 5", 10.0, split_nilpotent),
    (8, "determinant inequality on random matrices", 120.0, lemma_trials),
    (9, "parity code over golden: Δ_min = 4", 120.0, parity_delta),
    (10, "⟨z⟩-code over golden u=1+i: Δ_min = 2", 120.0, z_code_delta),
    (11, "exact property suites", 120.0, property_suites),
];

/// Runs one criterion (1-based).
pub fn run_criterion(id: u32) -> Option<CriterionReport> {
    let &(id, title, limit, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let t = Instant::now();
    let outcome = check();
    let elapsed = t.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(e) => (false, format!("{}: {e}", e.name())),
    };
    if elapsed > Duration::from_secs_f64(limit) {
        passed = false;
        detail = format!("{detail}; took {:.2}s, limit {limit}s", elapsed.as_secs_f64());
    }
    Some(CriterionReport {
        id,
        title,
        passed,
        detail,
        seconds: elapsed.as_secs_f64(),
        limit_seconds: limit,
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0)).collect()
}

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(AlgebraError::VerificationFailed {
            reason: what(),
            counterexample: None,
        })
    }
}

fn ideal(a: &AlgebraSpec, s: &str) -> Result<IdealSpec> {
    IdealSpec::parse(a.base(), s)
}

fn golden_matrix_ring() -> Result<String> {
    let a = builtin_algebra("golden_u_i")?;
    let mut r = identify_quotient(&a, &ideal(&a, "1+i")?)?;
    ensure(r.case == StructureCase::InertUnit, || format!("case {:?}", r.case))?;
    ensure(r.target.description == "M_2(F_2)", || r.target.description.clone())?;
    let cert = r.iso.as_mut().ok_or_else(|| AlgebraError::invalid("no certificate"))?;
    let v = verify_isomorphism(cert, &r.quotient, &VerifyOptions::new(VerifyMode::Exhaustive))?;
    ensure(v.verified && v.elements_mapped == 16 && v.pairs_checked == 256 && v.all_pairs, || {
        format!("{v:?}")
    })?;
    let c = check_ideal_lattice(&r, Execution::default())?;
    ensure(c.equal && c.brute_force_count == 2, || format!("{c:?}"))?;
    Ok(format!(
        "{} elements, {} pairs, ideals {{0, ring}}",
        v.elements_mapped, v.pairs_checked
    ))
}

fn q7_matrix_ring() -> Result<String> {
    let a = builtin_algebra("q7_cubic")?;
    let mut r = identify_quotient(&a, &ideal(&a, "2")?)?;
    ensure(r.target.description == "M_3(F_4)", || r.target.description.clone())?;
    ensure(r.cardinality == 1 << 18 && r.target.size == 1 << 18, || {
        format!("|Λ/2Λ| = {}, |M_3(F_4)| = {}", r.cardinality, r.target.size)
    })?;
    let cert = r.iso.as_mut().ok_or_else(|| AlgebraError::invalid("no certificate"))?;
    let v = verify_isomorphism(cert, &r.quotient, &VerifyOptions::new(VerifyMode::Sampled))?;
    ensure(v.verified && v.pairs_checked >= 10_000 && v.rank == v.rank_required, || {
        format!("{v:?}")
    })?;
    Ok(format!(
        "sampled {} pairs, additive rank {}/{}, 2^18 = 2^18",
        v.pairs_checked, v.rank, v.rank_required
    ))
}

fn q15_matrix_ring() -> Result<String> {
    let a = builtin_algebra("q15_quartic")?;
    let mut r = identify_quotient(&a, &ideal(&a, "1+i")?)?;
    ensure(r.target.description == "M_4(F_2)", || r.target.description.clone())?;
    let cert = r.iso.as_mut().ok_or_else(|| AlgebraError::invalid("no certificate"))?;
    let v = verify_isomorphism(cert, &r.quotient, &VerifyOptions::new(VerifyMode::Exhaustive))?;
    ensure(
        v.verified
            && v.elements_mapped == 1 << 16
            && v.images_distinct == Some(true)
            && v.pairs_checked == 100_000
            && v.rank == v.rank_required,
        || format!("{v:?}"),
    )?;
    Ok(format!(
        "2^16 elements mapped injectively, {} sampled pairs, rank {}",
        v.pairs_checked, v.rank
    ))
}

fn golden_nilpotent() -> Result<String> {
    let a = builtin_algebra("golden_u_1pi")?;
    let r = identify_quotient(&a, &ideal(&a, "1+i")?)?;
    ensure(r.case == StructureCase::InertNilpotent, || format!("case {:?}", r.case))?;
    let q = &r.quotient;
    let chain = r.skew_chain.as_ref().ok_or_else(|| AlgebraError::invalid("no ideal chain"))?;
    ensure(chain.len() == 2 && chain[0].quotient_size == 4, || format!("{chain:?}"))?;

    // Λ/⟨z⟩ is a field with 4 elements: every class outside ⟨z⟩ is invertible mod ⟨z⟩.
    let zi = z_power_ideal(q, 1)?;
    let size = q.check_enumerable(1 << 12)?;
    for x in (0..size).filter(|&x| !zi.contains(x)) {
        let xe = q.from_index(x);
        let invertible = (0..size).any(|y| {
            let d = q.sub(&q.mul(&xe, &q.from_index(y)), &q.one());
            zi.contains(q.index(&d))
        });
        ensure(invertible, || format!("{} has no inverse modulo ⟨z⟩", q.display(&xe)))?;
    }
    ensure(size / zi.len() == 4, || "Λ/⟨z⟩ does not have 4 elements".into())?;

    let brute: Vec<_> = all_two_sided_ideals(q, Execution::default())?
        .into_iter()
        .map(|i| i.elements)
        .collect();
    let mut expected = vec![z_power_ideal(q, 2)?, zi];
    let whole = ideal_generated(q, &[q.one()])?.elements;
    expected.push(whole);
    let mut b = brute.clone();
    b.sort();
    expected.sort();
    ensure(b == expected, || format!("brute force found {} ideals", brute.len()))?;
    Ok("Λ/⟨z⟩ ≅ F_4; proper ideals ⟨z⟩ ⊃ ⟨z²⟩ = 0, matching all 3 brute-force ideals".into())
}

fn golden_power() -> Result<String> {
    let a = builtin_algebra("golden_u_i")?;
    let mut r = identify_quotient(&a, &ideal(&a, "1+i:2")?)?;
    ensure(r.case == StructureCase::InertUnitPower, || format!("case {:?}", r.case))?;
    ensure(r.cardinality == 256 && r.target.size == 256, || format!("{}", r.cardinality))?;
    ensure(r.target.matrix_size == Some(2), || format!("{:?}", r.target))?;
    let cert = r.iso.as_mut().ok_or_else(|| AlgebraError::invalid("no certificate"))?;
    let units_ok = matches!(cert.construction, Construction::MatrixUnits { .. });
    ensure(units_ok, || "certificate does not come from lifted matrix units".into())?;
    let v = verify_isomorphism(cert, &r.quotient, &VerifyOptions::new(VerifyMode::Exhaustive))?;
    ensure(v.verified && v.elements_mapped == 256, || format!("{v:?}"))?;
    let c = check_ideal_lattice(&r, Execution::default())?;
    ensure(c.equal && c.brute_force_count == 3, || format!("{c:?}"))?;
    Ok(format!(
        "target {} = {}, 256 elements verified, ideals {{0, qΛ/q²Λ, ring}}",
        r.target.description,
        r.target.coefficient_ring_alt.as_deref().unwrap_or("")
    ))
}

fn split_unit() -> Result<String> {
    let a = builtin_algebra("gauss_over_Q")?;
    let mut r = identify_quotient(&a, &ideal(&a, "5")?)?;
    ensure(r.case == StructureCase::SplitUnit && r.g == 2, || format!("{:?} g={}", r.case, r.g))?;
    ensure(r.target.description == "M_2(F_5)", || r.target.description.clone())?;
    let cert = r.iso.as_mut().ok_or_else(|| AlgebraError::invalid("no certificate"))?;
    let v = verify_isomorphism(cert, &r.quotient, &VerifyOptions::new(VerifyMode::Exhaustive))?;
    ensure(v.verified && v.rank == v.rank_required, || format!("{v:?}"))?;
    let c = check_ideal_lattice(&r, Execution::default())?;
    ensure(c.equal && c.brute_force_count == 2, || format!("{c:?}"))?;
    Ok("625 elements verified, ideals {0, ring}".into())
}

fn split_nilpotent() -> Result<String> {
    let base = builtin_algebra("gauss_over_Q")?;
    let a = base.with_u(BaseElement::from_int(base.base(), 5))?;
    let r = identify_quotient(&a, &ideal(&a, "5")?)?;
    ensure(r.case == StructureCase::SplitNilpotent, || format!("case {:?}", r.case))?;
    let c = check_ideal_lattice(&r, Execution::default())?;
    ensure(c.equal && c.sizes_match, || format!("{c:?}"))?;
    let q = &r.quotient;
    let fac = &r.factorization;
    let mons = r.monomial_ideals.as_ref().ok_or_else(|| AlgebraError::invalid("no monomial ideals"))?;
    let gens = |g: &[(usize, usize)]| g.iter().map(|&(i, j)| monomial_element(q, fac, i, j)).collect::<Vec<_>>();
    for m in mons {
        ensure(m.is_minimal(), || format!("{} is not minimal", m.display()))?;
        let full = ideal_generated(q, &gens(&m.generators))?.elements.len();
        for k in 0..m.generators.len() {
            let mut fewer = m.generators.clone();
            fewer.remove(k);
            let smaller = ideal_generated(q, &gens(&fewer))?.elements.len();
            ensure(smaller < full, || format!("generator {k} of {} is redundant", m.display()))?;
        }
    }
    let (g, n) = (fac.g, q.degree());
    let mut pairs = 0;
    for i in 1..=g {
        for j in 0..n {
            let id = ideal_generated(q, &[monomial_element(q, fac, i, j)])?;
            for p in 1..=g {
                for t in 0..n {
                    let inside = id.elements.contains(q.index(&monomial_element(q, fac, p, t)));
                    ensure(inside == stairwell_contains((i, j), (p, t), g, n), || {
                        format!("stairwell of ({i},{j}) disagrees at ({p},{t})")
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} monomial ideals = {} brute-force ideals, {pairs} stairwell pairs consistent",
        mons.len(),
        c.brute_force_count
    ))
}

fn lemma_trials() -> Result<String> {
    let r = det_lemma_study(10_000, &[2, 3, 4], &[1, 2, 3], 0x1e44a, Execution::default())?;
    ensure(r.violations == 0 && r.singular == 0, || format!("{r:?}"))?;
    let gap = r.max_equality_gap.unwrap_or(f64::NAN);
    ensure(gap <= 1e-12, || format!("k = 1 relative gap {gap:e}"))?;
    Ok(format!(
        "{} trials, {} hold, 0 violations, k = 1 relative gap ≤ {gap:.1e}",
        r.trials, r.holds
    ))
}

fn parity_delta() -> Result<String> {
    let a = builtin_algebra("golden_u_i")?;
    let (min_det, _) = min_det_sq_in_box(&a, 1, Execution::default())?;
    ensure(min_det == 1.0 && a.abs_det_sq(&a.one())? == 1.0, || {
        format!("min |det|² = {min_det}")
    })?;
    let code = OuterCode::parity(&a, &ideal(&a, "1+i")?, 3)?;
    let r = delta_min_search(&code, &SearchOptions::new(1))?;
    ensure(r.bound_formula == BoundFormula::Principal && r.lower_bound == 4.0 * min_det, || {
        format!("bound {} ({:?})", r.lower_bound, r.bound_formula)
    })?;
    let found = r.search_min.unwrap_or(f64::NAN);
    ensure((found - 4.0).abs() < 1e-6, || format!("search minimum {found}"))?;
    let x = &r.argmin.as_ref().ok_or(AlgebraError::EmptyCode)?.components;
    ensure(x[1].is_zero() && x[0] == x[2] && a.abs_det_sq(&x[0])? == 1.0, || {
        format!("argmin ({}, {}, {})", x[0], x[1], x[2])
    })?;
    Ok(format!(
        "bound 4·1 = 4, search {found:.6} at ({}, 0, {}), {} evaluations",
        x[0], x[2], r.evaluations
    ))
}

fn z_code_delta() -> Result<String> {
    let a = builtin_algebra("golden_u_1pi")?;
    let q = BaseElement::parse(a.base(), "1+i")?;
    let shape = IdealShape::ZPower { alpha: q.clone(), j: 1 };
    let inputs = BoundInputs {
        d_h: 2,
        min_det_sq: 1.0,
        ideal_min_det_sq: None,
    };
    let b = delta_lower_bound(&a, &shape, BoundFormula::NilpotentU, inputs)?;
    ensure(b.lower_bound == 2.0, || format!("bound {}", b.lower_bound))?;
    let code = OuterCode::first_coefficient(&a, &q, FieldCodeKind::Parity, 3)?;
    let r = delta_min_search(&code, &SearchOptions::new(1))?;
    ensure(r.lower_bound == 2.0, || format!("search bound {}", r.lower_bound))?;
    let found = r.search_min.unwrap_or(f64::NAN);
    ensure((found - 2.0).abs() < 1e-6, || format!("search minimum {found}"))?;
    let target = vec![a.zero(), a.zero(), a.z()];
    let hit = r.minimizers.iter().find(|c| c.components == target);
    let hit = hit.ok_or_else(|| AlgebraError::VerificationFailed {
        reason: "(0, 0, z) is not among the minimizers".into(),
        counterexample: None,
    })?;
    ensure((hit.delta(&a) - 2.0).abs() < 1e-9, || "Δ(0, 0, z) ≠ 2".into())?;
    Ok(format!(
        "bound 2, search {found:.6}, attained at (0, 0, z) among {} minimizers",
        r.minimizer_count
    ))
}

fn random_ok(rng: &mut ChaCha8Rng, a: &AlgebraSpec, bound: i64) -> OkElement {
    let rank = a.base().rank();
    OkElement::new(
        (0..a.degree())
            .map(|_| {
                let x = rng.random_range(-bound..=bound);
                let y = if rank == 2 { rng.random_range(-bound..=bound) } else { 0 };
                BaseElement::new(a.base(), x, y)
            })
            .collect(),
    )
}

fn random_order(rng: &mut ChaCha8Rng, a: &AlgebraSpec, bound: i64) -> OrderElement {
    OrderElement {
        zcoords: (0..a.degree()).map(|_| random_ok(rng, a, bound)).collect(),
    }
}

fn random_base(rng: &mut ChaCha8Rng, a: &AlgebraSpec, bound: i64) -> BaseElement {
    let y = if a.base().rank() == 2 { rng.random_range(-bound..=bound) } else { 0 };
    BaseElement::new(a.base(), rng.random_range(-bound..=bound), y)
}

/// `M(xy) = M(y)·M(x)` (columns of `M(x)` are the coordinates of `z^c x`).
fn embedding_suite(rng: &mut ChaCha8Rng) -> Result<usize> {
    let names = builtin_names();
    let mut checked = 0;
    for t in 0..1000 {
        let a = builtin_algebra(names[t % names.len()])?;
        let x = random_order(rng, &a, 3);
        let y = random_order(rng, &a, 3);
        let lhs = a.matrix_embedding(&a.order_mul(&x, &y)?);
        let rhs = a.matrix_mul(&a.matrix_embedding(&y), &a.matrix_embedding(&x));
        ensure(lhs == rhs, || format!("embedding fails for x = {x}, y = {y} in {}", a.name()))?;
        checked += 1;
    }
    Ok(checked)
}

fn crt_suite(rng: &mut ChaCha8Rng) -> Result<usize> {
    let a = builtin_algebra("golden_u_i")?;
    let crt = CrtDecomposition::new(&a, &[ideal(&a, "1+i")?, ideal(&a, "3")?])?;
    let whole = crt.whole();
    let size = whole.cardinality() as u64;
    for _ in 0..500 {
        let x = whole.from_index(rng.random_range(0..size));
        let back = crt.recombine(&crt.decompose(&x))?;
        ensure(back == x, || format!("CRT round trip fails for {}", whole.display(&x)))?;
    }
    Ok(500)
}

fn section_suite(rng: &mut ChaCha8Rng) -> Result<usize> {
    let a = builtin_algebra("golden_u_i")?;
    let parity = OuterCode::parity(&a, &ideal(&a, "1+i")?, 3)?;
    let b = builtin_algebra("golden_u_1pi")?;
    let q = BaseElement::parse(b.base(), "1+i")?;
    let first = OuterCode::first_coefficient(&b, &q, FieldCodeKind::Parity, 3)?;
    let OuterCode::ParityOverRing { quotient, .. } = &parity else {
        unreachable!()
    };
    let size = quotient.cardinality() as u64;
    for t in 0..100u64 {
        let strategy = match t % 3 {
            0 => LiftStrategy::CanonicalZero,
            1 => LiftStrategy::FirstCoefficient,
            _ => LiftStrategy::Randomized(rng.random()),
        };
        let (code, msg) = if t % 2 == 0 {
            let m = (0..2).map(|_| quotient.from_index(rng.random_range(0..size))).collect();
            (&parity, OuterWord::Ring(m))
        } else {
            (&first, OuterWord::Field(vec![rng.random_range(0..4), rng.random_range(0..4)]))
        };
        let w = encode(code, &msg)?;
        let lift = lift_codeword(code, &w, strategy)?;
        ensure(lift.outer_image == w, || format!("π ∘ lift ≠ id at trial {t}"))?;
    }
    Ok(100)
}

/// `(1 + cz)·Σ_{k<n} (-cz)^k = 1` whenever `ū = 0`.
fn nilpotent_inverse_suite() -> Result<usize> {
    let mut quotients: Vec<QuotientRing> = Vec::new();
    for name in builtin_names() {
        let a = builtin_algebra(name)?;
        for p in ["1+i", "2", "3", "5", "1+w", "2+w", "7"] {
            let Ok(q) = IdealSpec::parse(a.base(), p) else { continue };
            if q.alpha.divides(a.u()) {
                quotients.push(QuotientRing::new(&a, &q)?);
            }
        }
    }
    let g = builtin_algebra("gauss_over_Q")?;
    let g5 = g.with_u(BaseElement::from_int(g.base(), 5))?;
    quotients.push(QuotientRing::new(&g5, &ideal(&g5, "5")?)?);
    let mut checked = 0;
    for q in &quotients {
        let n = q.degree();
        let ksize = q.ring().size() as u64;
        for ci in 0..ksize {
            let cz = q.from_k(&q.ring().from_index(ci), 1);
            let one_plus = q.add(&q.one(), &cz);
            let minus = q.neg(&cz);
            let mut inv = q.zero();
            for k in 0..n {
                inv = q.add(&inv, &q.pow(&minus, k as u64));
            }
            ensure(q.mul(&one_plus, &inv) == q.one() && q.mul(&inv, &one_plus) == q.one(), || {
                format!("(1+cz) inverse fails in {} for c index {ci}", q.algebra().name())
            })?;
            checked += 1;
        }
    }
    ensure(quotients.len() >= 2, || "no nilpotent quotients found".into())?;
    Ok(checked)
}

fn det_divisibility_suite(rng: &mut ChaCha8Rng) -> Result<usize> {
    let names = builtin_names();
    for t in 0..200 {
        let a = builtin_algebra(names[t % names.len()])?;
        let x = random_order(rng, &a, 3);
        let alpha = random_base(rng, &a, 4);
        let lhs = a.reduced_det(&a.scale(&alpha, &x))?;
        let rhs = &alpha.pow(a.degree() as u64) * &a.reduced_det(&x)?;
        ensure(lhs == rhs, || format!("det(αx) ≠ α^n det(x) for α = {alpha}, x = {x}"))?;
    }
    Ok(200)
}

fn property_suites() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let e = embedding_suite(&mut rng)?;
    let c = crt_suite(&mut rng)?;
    let s = section_suite(&mut rng)?;
    let n = nilpotent_inverse_suite()?;
    let d = det_divisibility_suite(&mut rng)?;
    Ok(format!(
        "embedding {e} pairs, CRT {c} round trips, {s} lifts, {n} (1+cz) inverses, {d} det(αx) checks"
    ))
}
