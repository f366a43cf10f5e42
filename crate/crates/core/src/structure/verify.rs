//! Independent verification of an isomorphism certificate.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::base::BaseQuotient;
use crate::error::{AlgebraError, Result};
use crate::exec::Execution;
use crate::extension::IdealSpec;
use crate::linalg::fp_rank;
use crate::residue::component::fp_basis;
use crate::residue::{GcaElement, QuotientRing};

use super::iso::IsoCertificate;
use super::matrix::Matrix;

/// Exhaustive verification maps every element; allowed up to this size.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 16;
/// All pairs are checked when there are at most this many.
pub const ALL_PAIRS_LIMIT: u128 = 1 << 20;
pub const EXHAUSTIVE_SAMPLED_PAIRS: u64 = 100_000;
pub const MIN_SAMPLED_PAIRS: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub source_size: u128,
    pub target_size: u128,
    pub elements_mapped: u64,
    pub pairs_checked: u64,
    pub all_pairs: bool,
    pub images_distinct: Option<bool>,
    pub rank: usize,
    pub rank_required: usize,
    pub seed: u64,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub mode: VerifyMode,
    pub sampled_pairs: u64,
    pub seed: u64,
    pub exec: Execution,
}

impl VerifyOptions {
    pub fn new(mode: VerifyMode) -> Self {
        VerifyOptions {
            mode,
            sampled_pairs: match mode {
                VerifyMode::Exhaustive => EXHAUSTIVE_SAMPLED_PAIRS,
                VerifyMode::Sampled => MIN_SAMPLED_PAIRS,
            },
            seed: 0,
            exec: Execution::default(),
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn pairs(mut self, pairs: u64) -> Self {
        self.sampled_pairs = pairs;
        self
    }

    pub fn exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }
}

fn failure(reason: String, pair: Option<(u64, u64)>) -> AlgebraError {
    AlgebraError::VerificationFailed {
        reason,
        counterexample: pair,
    }
}

/// Checks `f(x+y) = f(x)+f(y)` and `f(xy) = f(x)f(y)`; returns a failure message.
fn check_pair(cert: &IsoCertificate, q: &QuotientRing, x: &GcaElement, y: &GcaElement, fx: &Matrix, fy: &Matrix) -> Option<String> {
    let bq = &cert.coefficients;
    if cert.forward(&q.add(x, y)) != fx.add(bq, fy) {
        return Some("additivity".into());
    }
    if cert.forward(&q.mul(x, y)) != fx.mul(bq, fy) {
        return Some("multiplicativity".into());
    }
    None
}

/// Rank over `F_p` of the map reduced modulo `q`. Full rank means the map
/// is onto modulo `q`, hence onto (Nakayama), hence bijective once the
/// cardinalities agree.
fn reduced_rank(cert: &IsoCertificate, q: &QuotientRing) -> Result<(usize, usize)> {
    let ideal = q.ideal().ok_or_else(|| AlgebraError::invalid("not a prime-power quotient"))?;
    let local = q.local().unwrap();
    let p = local.p();
    let q1 = QuotientRing::new(q.algebra(), &IdealSpec::new(ideal.alpha.clone(), 1)?)?;
    let field: &BaseQuotient = local.residue_field();
    let n = q.degree();
    let mut rows = Vec::new();
    for j in 0..n {
        for k in fp_basis(q1.ring()) {
            let x1 = q1.from_k(&k, j);
            let x = GcaElement {
                c: x1.c.iter().map(|&r| local.lift_from_residue_field(r)).collect(),
            };
            let img = cert.forward(&x);
            rows.push(
                img.a
                    .iter()
                    .flat_map(|&r| field.coords(local.to_residue_field(r)))
                    .map(|a| a as u64)
                    .collect::<Vec<u64>>(),
            );
        }
    }
    let required = rows.len();
    let target_dim = rows.first().map_or(0, Vec::len);
    Ok((fp_rank(&mut rows, p), required.max(target_dim)))
}

/// Verifies a certificate against its source ring and sets `cert.verified`.
pub fn verify_isomorphism(cert: &mut IsoCertificate, q: &QuotientRing, opts: &VerifyOptions) -> Result<VerificationReport> {
    cert.verified = false;
    let source_size = q.cardinality();
    let target_size = (cert.coefficients.size() as u128).saturating_pow((cert.n * cert.n) as u32);
    if source_size != target_size {
        return Err(failure(format!("cardinalities differ: {source_size} vs {target_size}"), None));
    }
    let mut report = VerificationReport {
        mode: opts.mode,
        source_size,
        target_size,
        elements_mapped: 0,
        pairs_checked: 0,
        all_pairs: false,
        images_distinct: None,
        rank: 0,
        rank_required: 0,
        seed: opts.seed,
        verified: false,
    };
    let cert_ref = &*cert;
    match opts.mode {
        VerifyMode::Exhaustive => {
            if source_size > EXHAUSTIVE_LIMIT {
                return Err(AlgebraError::TooLargeToEnumerate {
                    what: "exhaustive verification source".into(),
                    size: source_size,
                    limit: EXHAUSTIVE_LIMIT,
                });
            }
            let size = source_size as u64;
            let images: Vec<Matrix> = opts
                .exec
                .map_range(size as usize, |i| cert_ref.forward(&q.from_index(i as u64)));
            report.elements_mapped = size;
            let distinct = images.iter().collect::<HashSet<_>>().len() as u64 == size;
            report.images_distinct = Some(distinct);
            if !distinct {
                let mut seen = std::collections::HashMap::new();
                for (i, m) in images.iter().enumerate() {
                    if let Some(&j) = seen.get(m) {
                        return Err(failure("two elements share an image".into(), Some((j, i as u64))));
                    }
                    seen.insert(m, i as u64);
                }
            }
            if source_size * source_size <= ALL_PAIRS_LIMIT {
                report.all_pairs = true;
                let bq = &cert.coefficients;
                let firsts = opts.exec.map_range(size as usize, |i| {
                    let x = q.from_index(i as u64);
                    for j in 0..size {
                        let y = q.from_index(j);
                        let (s, p) = (q.add(&x, &y), q.mul(&x, &y));
                        if images[q.index(&s) as usize] != images[i].add(bq, &images[j as usize])
                            || images[q.index(&p) as usize] != images[i].mul(bq, &images[j as usize])
                        {
                            return Some(j);
                        }
                    }
                    None
                });
                if let Some((i, j)) = firsts.iter().enumerate().find_map(|(i, r)| r.map(|j| (i as u64, j))) {
                    return Err(failure("homomorphism property fails".into(), Some((i, j))));
                }
                report.pairs_checked = size * size;
            } else {
                sampled_pairs(cert_ref, q, opts, Some(&images), &mut report)?;
            }
        }
        VerifyMode::Sampled => {
            sampled_pairs(cert_ref, q, opts, None, &mut report)?;
        }
    }
    if !cert_ref.relations_hold(q) {
        return Err(failure("generator images violate the defining relations".into(), None));
    }
    let (rank, required) = reduced_rank(cert_ref, q)?;
    report.rank = rank;
    report.rank_required = required;
    if rank != required {
        return Err(failure(format!("reduced map has rank {rank}, need {required}"), None));
    }
    report.verified = true;
    cert.verified = true;
    Ok(report)
}

fn sampled_pairs(
    cert: &IsoCertificate,
    q: &QuotientRing,
    opts: &VerifyOptions,
    images: Option<&[Matrix]>,
    report: &mut VerificationReport,
) -> Result<()> {
    let total = opts.sampled_pairs.max(match opts.mode {
        VerifyMode::Sampled => MIN_SAMPLED_PAIRS,
        VerifyMode::Exhaustive => 1,
    });
    let size = q.cardinality();
    let random_element = |rng: &mut ChaCha8Rng| -> (u64, GcaElement) {
        let x = GcaElement {
            c: q.zero().c.iter().map(|_| q.base().from_index(rng.random_range(0..q.base().size()))).collect(),
        };
        (if size <= u64::MAX as u128 { q.index(&x) } else { u64::MAX }, x)
    };
    const CHUNK: u64 = 1024;
    let results = opts.exec.map_chunks(total, CHUNK, |lo, hi| {
        // one independent stream per chunk keeps results identical across modes
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(lo / CHUNK);
        for _ in lo..hi {
            let (i, x) = random_element(&mut rng);
            let (j, y) = random_element(&mut rng);
            let image = |k: u64, e: &GcaElement| match images {
                Some(imgs) => imgs[k as usize].clone(),
                None => cert.forward(e),
            };
            let (fx, fy) = (image(i, &x), image(j, &y));
            if let Some(why) = check_pair(cert, q, &x, &y, &fx, &fy) {
                return Some((why, i, j));
            }
        }
        None
    });
    if let Some((why, i, j)) = results.into_iter().flatten().next() {
        return Err(failure(format!("{why} fails on a sampled pair"), Some((i, j))));
    }
    report.pairs_checked = total;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin_algebra;
    use crate::structure::iso::build_matrix_iso_s1;

    #[test]
    fn golden_exhaustive_and_corrupted() {
        let a = builtin_algebra("golden_u_i").unwrap();
        let ideal = IdealSpec::parse(a.base(), "1+i").unwrap();
        let q = QuotientRing::new(&a, &ideal).unwrap();
        let mut cert = build_matrix_iso_s1(&a, &ideal).unwrap();
        let r = verify_isomorphism(&mut cert, &q, &VerifyOptions::new(VerifyMode::Exhaustive)).unwrap();
        assert!(r.verified && cert.verified && r.all_pairs);
        assert_eq!((r.elements_mapped, r.pairs_checked), (16, 256));
        cert.basis_images.swap(1, 2);
        let err = verify_isomorphism(&mut cert, &q, &VerifyOptions::new(VerifyMode::Exhaustive)).unwrap_err();
        assert!(matches!(err, AlgebraError::VerificationFailed { counterexample: Some(_), .. }));
        assert!(!cert.verified);
    }

    #[test]
    fn sampled_is_deterministic_across_modes() {
        let a = builtin_algebra("gauss_over_Q").unwrap();
        let ideal = IdealSpec::parse(a.base(), "5").unwrap();
        let q = QuotientRing::new(&a, &ideal).unwrap();
        let mut cert = build_matrix_iso_s1(&a, &ideal).unwrap();
        let o = VerifyOptions::new(VerifyMode::Sampled).seed(3);
        let r1 = verify_isomorphism(&mut cert, &q, &o.clone().exec(Execution::Sequential)).unwrap();
        let r2 = verify_isomorphism(&mut cert, &q, &o.exec(Execution::Parallel)).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.pairs_checked, 10_000);
    }
}
