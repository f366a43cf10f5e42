//! `Λ/IΛ ≅ ∏ Λ/q_i^{s_i}Λ` for `I = ∏ q_i^{s_i}` with distinct primes.

use crate::base::{BaseElement, Residue};
use crate::error::{AlgebraError, Result};
use crate::extension::IdealSpec;
use crate::order::AlgebraSpec;

use super::quotient::{GcaElement, QuotientRing};

#[derive(Clone, Debug)]
pub struct CrtDecomposition {
    whole: QuotientRing,
    parts: Vec<QuotientRing>,
    /// `e_i ≡ 1 mod q_i^{s_i}`, `≡ 0` modulo the other factors.
    idempotents: Vec<Residue>,
}

impl CrtDecomposition {
    pub fn new(algebra: &AlgebraSpec, factors: &[IdealSpec]) -> Result<Self> {
        for (i, a) in factors.iter().enumerate() {
            for b in &factors[i + 1..] {
                if a.alpha.is_associate(&b.alpha) {
                    return Err(AlgebraError::RepeatedPrime(a.alpha.to_string()));
                }
            }
        }
        if factors.is_empty() {
            return Err(AlgebraError::invalid("empty factorization"));
        }
        let gens: Vec<BaseElement> = factors.iter().map(IdealSpec::generator).collect();
        let one = BaseElement::one(algebra.base());
        let m = gens.iter().fold(one.clone(), |acc, g| &acc * g);
        let whole = QuotientRing::with_modulus(algebra, &m)?;
        let parts = factors
            .iter()
            .map(|f| QuotientRing::new(algebra, f))
            .collect::<Result<Vec<_>>>()?;
        let mut idempotents = Vec::new();
        for (i, gi) in gens.iter().enumerate() {
            let others = gens
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(one.clone(), |acc, (_, g)| &acc * g);
            let (g, s, _) = BaseElement::xgcd(&others, gi)?;
            let ginv = g
                .unit_inverse()
                .ok_or_else(|| AlgebraError::RepeatedPrime(factors[i].alpha.to_string()))?;
            idempotents.push(whole.base().from_base(&(&(&others * &s) * &ginv)));
        }
        Ok(CrtDecomposition {
            whole,
            parts,
            idempotents,
        })
    }

    pub fn whole(&self) -> &QuotientRing {
        &self.whole
    }

    pub fn parts(&self) -> &[QuotientRing] {
        &self.parts
    }

    pub fn decompose(&self, x: &GcaElement) -> Vec<GcaElement> {
        let wb = self.whole.base();
        self.parts
            .iter()
            .map(|p| GcaElement {
                c: x.c.iter().map(|&r| p.base().from_base(&wb.to_base(r))).collect(),
            })
            .collect()
    }

    pub fn recombine(&self, xs: &[GcaElement]) -> Result<GcaElement> {
        if xs.len() != self.parts.len() {
            return Err(AlgebraError::invalid(format!(
                "expected {} components, got {}",
                self.parts.len(),
                xs.len()
            )));
        }
        let wb = self.whole.base();
        let mut acc = self.whole.zero();
        for ((x, p), &e) in xs.iter().zip(&self.parts).zip(&self.idempotents) {
            let lifted = GcaElement {
                c: x.c.iter().map(|&r| wb.from_base(&p.base().to_base(r))).collect(),
            };
            acc = self.whole.add(&acc, &self.whole.scale(e, &lifted));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin_algebra;

    #[test]
    fn round_trip_and_repeated_prime() {
        let a = builtin_algebra("golden_u_i").unwrap();
        let f1 = IdealSpec::parse(a.base(), "1+i").unwrap();
        let f2 = IdealSpec::parse(a.base(), "3").unwrap();
        let crt = CrtDecomposition::new(&a, &[f1.clone(), f2]).unwrap();
        let parts = crt.decompose(&crt.whole().one());
        assert!(parts.iter().zip(crt.parts()).all(|(x, p)| *x == p.one()));
        for i in [0u64, 1, 17, 1234, 99_999] {
            let x = crt.whole().from_index(i);
            assert_eq!(crt.recombine(&crt.decompose(&x)).unwrap(), x);
        }
        let again = IdealSpec::parse(a.base(), "1-i").unwrap();
        assert_eq!(CrtDecomposition::new(&a, &[f1, again]).unwrap_err().name(), "RepeatedPrime");
    }
}
