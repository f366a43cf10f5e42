use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{BaseElement, BaseRing};
use crate::error::{AlgebraError, Result};

/// Coordinates of a class in `O_F/(m)`, reduced against the Hermite normal
/// form of the lattice `m·O_F`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    pub a: i64,
    pub b: i64,
}

impl Residue {
    pub const ZERO: Residue = Residue { a: 0, b: 0 };

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

/// The finite ring `O_F/(m)` for a nonzero `m`.
///
/// The ideal `m·O_F` is a sublattice of ℤ² with basis `(h11, 0)`,
/// `(h21, h22)`; residues are stored as `0 ≤ b < h22`, `0 ≤ a < h11`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseQuotient {
    ring: BaseRing,
    modulus: BaseElement,
    h11: i64,
    h21: i64,
    h22: i64,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl BaseQuotient {
    /// Fails for a zero modulus or one whose norm exceeds 2^40.
    pub fn new(modulus: &BaseElement) -> Result<Self> {
        if modulus.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let ring = modulus.ring();
        let norm = modulus.norm();
        if norm > BigInt::from(1u64 << 40) {
            return Err(AlgebraError::UnsupportedSize {
                size: norm.to_u128().unwrap_or(u128::MAX),
                limit: 1 << 40,
            });
        }
        let (h11, h21, h22) = match ring {
            BaseRing::RationalIntegers => (modulus.a().to_i64().unwrap().abs(), 0, 1),
            _ => {
                let (x1, y1) = modulus.to_i64_pair().unwrap();
                let md = modulus * &BaseElement::delta(ring);
                let (x2, y2) = md.to_i64_pair().unwrap();
                let (x1, y1, x2, y2) = (x1 as i128, y1 as i128, x2 as i128, y2 as i128);
                let (g, s, t) = ext_gcd(y1, y2);
                let h21 = s * x1 + t * x2;
                let h11 = ((y2 / g) * x1 - (y1 / g) * x2).abs();
                (h11 as i64, h21.rem_euclid(h11) as i64, g as i64)
            }
        };
        Ok(BaseQuotient {
            ring,
            modulus: modulus.clone(),
            h11,
            h21,
            h22,
        })
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn modulus(&self) -> &BaseElement {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        (self.h11 * self.h22) as u64
    }

    fn reduce_wide(&self, a: i128, b: i128) -> Residue {
        let t = b.div_euclid(self.h22 as i128);
        let b = b - t * self.h22 as i128;
        let a = (a - t * self.h21 as i128).rem_euclid(self.h11 as i128);
        Residue {
            a: a as i64,
            b: b as i64,
        }
    }

    pub fn zero(&self) -> Residue {
        Residue::ZERO
    }

    pub fn one(&self) -> Residue {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> Residue {
        self.reduce_wide(k as i128, 0)
    }

    pub fn delta(&self) -> Residue {
        self.reduce_wide(0, 1)
    }

    pub fn from_base(&self, x: &BaseElement) -> Residue {
        assert_eq!(x.ring(), self.ring, "mixed base rings");
        let h22 = BigInt::from(self.h22);
        let (t, b) = x.b().div_mod_floor(&h22);
        let a = (x.a() - t * self.h21).mod_floor(&BigInt::from(self.h11));
        Residue {
            a: a.to_i64().unwrap(),
            b: b.to_i64().unwrap(),
        }
    }

    /// The canonical (minimal-norm) representative of the class.
    pub fn to_base(&self, r: Residue) -> BaseElement {
        let raw = BaseElement::new(self.ring, r.a, r.b);
        raw.rem(&self.modulus).expect("modulus is nonzero")
    }

    pub fn add(&self, x: Residue, y: Residue) -> Residue {
        self.reduce_wide(x.a as i128 + y.a as i128, x.b as i128 + y.b as i128)
    }

    pub fn sub(&self, x: Residue, y: Residue) -> Residue {
        self.reduce_wide(x.a as i128 - y.a as i128, x.b as i128 - y.b as i128)
    }

    pub fn neg(&self, x: Residue) -> Residue {
        self.reduce_wide(-(x.a as i128), -(x.b as i128))
    }

    pub fn mul(&self, x: Residue, y: Residue) -> Residue {
        let (a, b, c, d) = (x.a as i128, x.b as i128, y.a as i128, y.b as i128);
        match self.ring {
            BaseRing::RationalIntegers => self.reduce_wide(a * c, 0),
            BaseRing::GaussianIntegers => self.reduce_wide(a * c - b * d, a * d + b * c),
            BaseRing::EisensteinIntegers => {
                self.reduce_wide(a * c - b * d, a * d + b * c - b * d)
            }
        }
    }

    pub fn mul_add(&self, acc: Residue, x: Residue, y: Residue) -> Residue {
        self.add(acc, self.mul(x, y))
    }

    pub fn pow(&self, x: Residue, mut e: u64) -> Residue {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, if the class is a unit.
    pub fn inverse(&self, x: Residue) -> Option<Residue> {
        let xb = BaseElement::new(self.ring, x.a, x.b);
        let (g, s, _) = BaseElement::xgcd(&xb, &self.modulus).ok()?;
        let gi = g.unit_inverse()?;
        Some(self.from_base(&(&s * &gi)))
    }

    pub fn is_unit(&self, x: Residue) -> bool {
        self.inverse(x).is_some()
    }

    pub fn index(&self, r: Residue) -> u64 {
        r.a as u64 + self.h11 as u64 * r.b as u64
    }

    pub fn from_index(&self, i: u64) -> Residue {
        Residue {
            a: (i % self.h11 as u64) as i64,
            b: (i / self.h11 as u64) as i64,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Residue> + '_ {
        (0..self.size()).map(move |i| self.from_index(i))
    }

    /// Additive generators of the group `O_F/(m)`.
    pub fn additive_generators(&self) -> Vec<Residue> {
        if self.ring == BaseRing::RationalIntegers {
            vec![self.one()]
        } else {
            vec![self.one(), self.delta()]
        }
    }

    /// Coordinates over ℤ/h11 and ℤ/h22 (for a prime modulus these are
    /// coordinates over the prime field).
    pub fn coords(&self, r: Residue) -> Vec<i64> {
        if self.h22 == 1 {
            vec![r.a]
        } else {
            vec![r.a, r.b]
        }
    }

    pub fn display(&self, r: Residue) -> String {
        self.to_base(r).to_string()
    }
}

/// `O_F/q^s` for a prime `q = (α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBaseRing {
    alpha: BaseElement,
    s: u32,
    p: u64,
    quotient: BaseQuotient,
    residue_field: BaseQuotient,
}

impl LocalBaseRing {
    pub fn new(alpha: &BaseElement, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(AlgebraError::invalid("exponent s must be positive"));
        }
        let p = alpha
            .rational_prime()
            .ok_or_else(|| AlgebraError::invalid(format!("{alpha} is not prime in {}", alpha.ring())))?;
        Ok(LocalBaseRing {
            alpha: alpha.clone(),
            s,
            p,
            quotient: BaseQuotient::new(&alpha.pow(s as u64))?,
            residue_field: BaseQuotient::new(alpha)?,
        })
    }

    pub fn alpha(&self) -> &BaseElement {
        &self.alpha
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// The rational prime below α.
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residue_size(&self) -> u64 {
        self.quotient.size()
    }

    /// `O_F/q`.
    pub fn residue_field(&self) -> &BaseQuotient {
        &self.residue_field
    }

    pub fn quotient(&self) -> &BaseQuotient {
        &self.quotient
    }

    /// Reduction `O_F/q^s → O_F/q`.
    pub fn to_residue_field(&self, x: Residue) -> Residue {
        self.residue_field.from_base(&self.quotient.to_base(x))
    }

    /// Canonical lift `O_F/q → O_F/q^s`.
    pub fn lift_from_residue_field(&self, x: Residue) -> Residue {
        self.quotient.from_base(&self.residue_field.to_base(x))
    }

    /// Largest `t ≤ s` with `α^t | x`.
    pub fn valuation(&self, x: Residue) -> u32 {
        let mut v = self.quotient.to_base(x);
        if v.is_zero() {
            return self.s;
        }
        let mut t = 0;
        while let Some(q) = v.exact_div(&self.alpha) {
            t += 1;
            v = q;
            if t == self.s {
                break;
            }
        }
        t
    }
}

impl Deref for LocalBaseRing {
    type Target = BaseQuotient;
    fn deref(&self) -> &BaseQuotient {
        &self.quotient
    }
}

/// The canonical representative of `x` modulo `α^s`.
pub fn local_reduce(x: &BaseElement, r: &LocalBaseRing) -> BaseElement {
    r.to_base(r.from_base(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> BaseElement {
        BaseElement::new(BaseRing::GaussianIntegers, a, b)
    }

    #[test]
    fn four_element_ring() {
        let r = LocalBaseRing::new(&g(1, 1), 2).unwrap();
        assert_eq!(r.size(), 4);
        assert!(local_reduce(&g(2, 0), &r).is_zero());
        let i = r.from_base(&g(0, 1));
        assert!(!i.is_zero());
        assert_eq!(r.mul(i, i), r.one());
        let reps: std::collections::BTreeSet<_> = r.elements().map(|x| r.to_base(x)).collect();
        assert_eq!(reps.len(), 4);
    }

    #[test]
    fn hnf_sizes() {
        for (m, n) in [(g(3, 0), 9), (g(2, 1), 5), (g(1, 1).pow(3), 8), (g(5, 0), 25)] {
            assert_eq!(BaseQuotient::new(&m).unwrap().size(), n);
        }
        let w = BaseElement::new(BaseRing::EisensteinIntegers, 2, 1);
        assert_eq!(BaseQuotient::new(&w).unwrap().size(), 3);
        let z = BaseElement::from_int(BaseRing::RationalIntegers, 7);
        assert_eq!(BaseQuotient::new(&z).unwrap().size(), 7);
    }

    #[test]
    fn inverses_and_valuation() {
        let r = LocalBaseRing::new(&g(2, 1), 2).unwrap();
        for x in r.elements() {
            match r.inverse(x) {
                Some(y) => assert_eq!(r.mul(x, y), r.one()),
                None => assert!(r.valuation(x) >= 1),
            }
        }
        assert_eq!(r.valuation(r.from_base(&g(2, 1))), 1);
        assert_eq!(r.valuation(r.zero()), 2);
    }
}
