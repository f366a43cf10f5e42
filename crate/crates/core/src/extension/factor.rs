//! Splitting of an unramified prime `q` of `O_F` in `O_K`.

use serde::Serialize;

use super::{ExtensionSpec, IdealSpec, OkElement};
use crate::base::{BaseQuotient, Residue};
use crate::error::{AlgebraError, Result};
use crate::exec::Execution;
use crate::linalg::fp_solve;
use crate::residue::poly::FpPoly;
use crate::residue::ring::{KResidue, ResidueRing};

/// Residue rings up to this size are searched exhaustively for idempotents.
pub const BRUTE_FORCE_LIMIT: u128 = 1 << 20;

/// `qO_K = 𝔔_1 ⋯ 𝔔_g` with residue degree `f`, described by the primitive
/// idempotents `v_i` of `O_K/qO_K`, ordered so that `σ(v_i) = v_{i+1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorizationData {
    pub g: usize,
    pub e: usize,
    pub f: usize,
    #[serde(serialize_with = "ser_ok_vec")]
    pub idempotents: Vec<OkElement>,
    #[serde(skip)]
    pub residues: Vec<KResidue>,
    pub residue_field_size: u64,
}

fn ser_ok_vec<S: serde::Serializer>(v: &[OkElement], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn factor_prime(ext: &ExtensionSpec, q: &IdealSpec) -> Result<FactorizationData> {
    factor_prime_with(ext, q, Execution::default())
}

pub fn factor_prime_with(ext: &ExtensionSpec, q: &IdealSpec, exec: Execution) -> Result<FactorizationData> {
    let bq = BaseQuotient::new(&q.alpha)?;
    let ring = ResidueRing::new(ext, bq);
    let idem = if ring.size() <= BRUTE_FORCE_LIMIT {
        brute_force_idempotents(&ring, &q.alpha.to_string(), exec)?
    } else {
        primitive_element_idempotents(ext, &ring, &q.alpha.to_string())?
    };
    let ordered = sigma_order(&ring, idem)?;
    let n = ext.degree();
    let g = ordered.len();
    let f = n / g;
    Ok(FactorizationData {
        g,
        e: 1,
        f,
        idempotents: ordered.iter().map(|v| ring.to_ok(v)).collect(),
        residues: ordered,
        residue_field_size: ring.base().size().pow(f as u32),
    })
}

fn brute_force_idempotents(ring: &ResidueRing, name: &str, exec: Execution) -> Result<Vec<KResidue>> {
    let size = ring.size() as u64;
    let chunks = exec.map_chunks(size, 1 << 12, |lo, hi| {
        let mut idem = Vec::new();
        let mut nilpotent = false;
        for i in lo.max(1)..hi {
            let x = ring.from_index(i);
            let sq = ring.mul(&x, &x);
            if sq == x {
                idem.push(x);
            } else if ring.is_zero(&sq) {
                nilpotent = true;
            }
        }
        (idem, nilpotent)
    });
    if chunks.iter().any(|c| c.1) {
        return Err(AlgebraError::RamifiedPrime(name.into()));
    }
    let all: Vec<KResidue> = chunks.into_iter().flat_map(|c| c.0).collect();
    // primitive: no smaller nonzero idempotent below it
    let prim = all
        .iter()
        .filter(|e| !all.iter().any(|f| f != *e && ring.mul(e, f) == *f))
        .cloned()
        .collect();
    Ok(prim)
}

/// Factors the minimal polynomial of the primitive element modulo a prime
/// of residue degree one and builds the idempotents by CRT.
fn primitive_element_idempotents(ext: &ExtensionSpec, ring: &ResidueRing, name: &str) -> Result<Vec<KResidue>> {
    let too_big = || AlgebraError::UnsupportedSize {
        size: ring.size(),
        limit: BRUTE_FORCE_LIMIT,
    };
    let bq = ring.base();
    let n = ring.degree();
    let theta = ext.primitive_element().ok_or_else(too_big)?;
    if bq.coords(bq.one()).len() != 1 {
        return Err(too_big());
    }
    let p = bq.size();
    let fp = |x: &[Residue]| -> Vec<u64> { x.iter().map(|&c| bq.coords(c)[0] as u64).collect() };
    let t = ring.from_ok(theta);
    let mut powers = vec![ring.one()];
    for k in 1..=n {
        powers.push(ring.mul(&powers[k - 1], &t));
    }
    let vecs: Vec<Vec<u64>> = powers[..n].iter().map(|x| fp(x)).collect();
    let c = fp_solve(&vecs, &fp(&powers[n]), p).ok_or_else(too_big)?;
    let mut coeffs: Vec<u64> = c.iter().map(|&x| (p - x) % p).collect();
    coeffs.push(1);
    let minpoly = FpPoly::new(p, coeffs);
    if !minpoly.is_squarefree() {
        return Err(AlgebraError::RamifiedPrime(name.into()));
    }
    let eval = |poly: &FpPoly| -> KResidue {
        poly.coeffs().iter().enumerate().fold(ring.zero(), |acc, (k, &a)| {
            ring.add(&acc, &ring.scale(bq.from_i64(a as i64), &powers[k]))
        })
    };
    Ok(minpoly
        .factor_squarefree()
        .iter()
        .map(|fi| {
            let cof = minpoly.divrem(fi).0;
            let (_, s, _) = cof.xgcd(fi);
            eval(&cof.mul(&s).rem(&minpoly))
        })
        .collect())
}

/// Orders the idempotents along the σ-orbit of the smallest one.
fn sigma_order(ring: &ResidueRing, mut idem: Vec<KResidue>) -> Result<Vec<KResidue>> {
    idem.sort_by_key(|x| ring.index(x));
    let Some(first) = idem.first().cloned() else {
        return Err(AlgebraError::invalid("no idempotents found"));
    };
    let mut ordered = vec![first];
    loop {
        let next = ring.sigma(ordered.last().unwrap(), 1);
        if next == ordered[0] {
            break;
        }
        if !idem.contains(&next) || ordered.len() > idem.len() {
            return Err(AlgebraError::invalid("σ does not permute the idempotents"));
        }
        ordered.push(next);
    }
    if ordered.len() != idem.len() {
        return Err(AlgebraError::invalid("σ does not act transitively on the primes above q"));
    }
    Ok(ordered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{BaseElement, BaseRing};
    use crate::io::builtin_algebra;

    fn check_invariants(ext: &ExtensionSpec, q: &IdealSpec, d: &FactorizationData) {
        let ring = ResidueRing::new(ext, BaseQuotient::new(&q.alpha).unwrap());
        let sum = d.residues.iter().fold(ring.zero(), |a, v| ring.add(&a, v));
        assert_eq!(sum, ring.one());
        for (i, v) in d.residues.iter().enumerate() {
            assert_eq!(ring.mul(v, v), *v);
            assert_eq!(ring.sigma(v, 1), d.residues[(i + 1) % d.g]);
            for w in &d.residues[i + 1..] {
                assert!(ring.is_zero(&ring.mul(v, w)));
            }
        }
        assert_eq!(d.e * d.f * d.g, ext.degree());
    }

    #[test]
    fn shipped_factorizations() {
        let cases = [
            ("golden_u_i", "1+i", 1, 2),
            ("q7_cubic", "2", 1, 3),
            ("q15_quartic", "1+i", 1, 4),
            ("gauss_over_Q", "5", 2, 1),
            ("gauss_over_Q", "3", 1, 2),
        ];
        for (name, alpha, g, f) in cases {
            let ext = builtin_algebra(name).unwrap().extension().clone();
            let q = IdealSpec::parse(ext.base(), alpha).unwrap();
            let d = factor_prime(&ext, &q).unwrap();
            assert_eq!((d.g, d.f), (g, f), "{name} {alpha}");
            check_invariants(&ext, &q, &d);
        }
    }

    #[test]
    fn ramified_prime_detected() {
        let ext = builtin_algebra("gauss_over_Q").unwrap().extension().clone();
        let q = IdealSpec::new(BaseElement::from_int(BaseRing::RationalIntegers, 2), 1).unwrap();
        assert_eq!(factor_prime(&ext, &q).unwrap_err().name(), "RamifiedPrime");
        let golden = builtin_algebra("golden_u_i").unwrap().extension().clone();
        let q = IdealSpec::parse(BaseRing::GaussianIntegers, "2+i").unwrap();
        // 5 = (2+i)(2−i) ramifies in ℚ(√5)
        assert_eq!(factor_prime(&golden, &q).unwrap_err().name(), "RamifiedPrime");
    }

    #[test]
    fn primitive_element_path_matches_brute_force() {
        let ext = builtin_algebra("gauss_over_Q").unwrap().extension().clone();
        for p in ["5", "13", "7"] {
            let q = IdealSpec::parse(ext.base(), p).unwrap();
            let ring = ResidueRing::new(&ext, BaseQuotient::new(&q.alpha).unwrap());
            let mut a = brute_force_idempotents(&ring, p, Execution::Sequential).unwrap();
            let mut b = primitive_element_idempotents(&ext, &ring, p).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }
}
