//! `Λ/mΛ = ⊕ (O_K/mO_K) z^j`, a generalized cyclic algebra over a finite ring.

use std::fmt;

use crate::base::{BaseElement, BaseQuotient, LocalBaseRing, Residue};
use crate::error::{AlgebraError, Result};
use crate::extension::IdealSpec;
use crate::order::{AlgebraSpec, OrderElement};

use super::ring::{KResidue, ResidueRing};

/// An element of `Λ/mΛ`; coordinate `j·n + k` multiplies `b_k z^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GcaElement {
    pub c: Vec<Residue>,
}

impl GcaElement {
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|r| r.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct QuotientRing {
    algebra: AlgebraSpec,
    ideal: Option<IdealSpec>,
    local: Option<LocalBaseRing>,
    ring: ResidueRing,
    ubar: Residue,
}

impl QuotientRing {
    /// `Λ/q^sΛ` for a prime power.
    pub fn new(algebra: &AlgebraSpec, ideal: &IdealSpec) -> Result<Self> {
        let local = LocalBaseRing::new(&ideal.alpha, ideal.s)?;
        let mut q = Self::with_modulus(algebra, &ideal.generator())?;
        q.ideal = Some(ideal.clone());
        q.local = Some(local);
        Ok(q)
    }

    /// `Λ/mΛ` for any nonzero `m ∈ O_F`.
    pub fn with_modulus(algebra: &AlgebraSpec, m: &BaseElement) -> Result<Self> {
        if m.ring() != algebra.base() {
            return Err(AlgebraError::IncompatibleRings(
                m.ring().to_string(),
                algebra.base().to_string(),
            ));
        }
        let bq = BaseQuotient::new(m)?;
        let ubar = bq.from_base(algebra.u());
        Ok(QuotientRing {
            algebra: algebra.clone(),
            ideal: None,
            local: None,
            ring: ResidueRing::new(algebra.extension(), bq),
            ubar,
        })
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn ideal(&self) -> Option<&IdealSpec> {
        self.ideal.as_ref()
    }

    pub fn local(&self) -> Option<&LocalBaseRing> {
        self.local.as_ref()
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn base(&self) -> &BaseQuotient {
        self.ring.base()
    }

    pub fn modulus(&self) -> &BaseElement {
        self.ring.base().modulus()
    }

    pub fn degree(&self) -> usize {
        self.ring.degree()
    }

    pub fn ubar(&self) -> Residue {
        self.ubar
    }

    /// `|O_K/mO_K|^n`, saturating at `u128::MAX`.
    pub fn cardinality(&self) -> u128 {
        let r = self.ring.size();
        let mut acc: u128 = 1;
        for _ in 0..self.degree() {
            acc = acc.saturating_mul(r);
        }
        acc
    }

    /// Fails with `TooLargeToEnumerate` above `limit` elements.
    pub fn check_enumerable(&self, limit: u128) -> Result<u64> {
        let size = self.cardinality();
        if size > limit {
            return Err(AlgebraError::TooLargeToEnumerate {
                what: "quotient ring".into(),
                size,
                limit,
            });
        }
        Ok(size as u64)
    }

    pub fn zero(&self) -> GcaElement {
        GcaElement {
            c: vec![Residue::ZERO; self.degree() * self.degree()],
        }
    }

    pub fn one(&self) -> GcaElement {
        self.from_k(&self.ring.one(), 0)
    }

    /// `k·z^j`.
    pub fn from_k(&self, k: &[Residue], j: usize) -> GcaElement {
        let n = self.degree();
        let mut x = self.zero();
        x.c[j * n..(j + 1) * n].copy_from_slice(k);
        x
    }

    pub fn scalar(&self, c: Residue) -> GcaElement {
        self.from_k(&self.ring.scalar(c), 0)
    }

    pub fn z(&self) -> GcaElement {
        if self.degree() == 1 {
            return self.scalar(self.ubar);
        }
        self.from_k(&self.ring.one(), 1)
    }

    pub fn zcoord(&self, x: &GcaElement, j: usize) -> KResidue {
        let n = self.degree();
        x.c[j * n..(j + 1) * n].to_vec()
    }

    /// The reduction map `π: Λ → Λ/mΛ`.
    pub fn reduce(&self, x: &OrderElement) -> GcaElement {
        GcaElement {
            c: x.zcoords.iter().flat_map(|k| self.ring.from_ok(k)).collect(),
        }
    }

    /// Canonical lift to `Λ`.
    pub fn lift(&self, x: &GcaElement) -> OrderElement {
        let n = self.degree();
        OrderElement {
            zcoords: (0..n).map(|j| self.ring.to_ok(&x.c[j * n..(j + 1) * n])).collect(),
        }
    }

    pub fn add(&self, x: &GcaElement, y: &GcaElement) -> GcaElement {
        let b = self.base();
        GcaElement {
            c: x.c.iter().zip(&y.c).map(|(&a, &c)| b.add(a, c)).collect(),
        }
    }

    pub fn sub(&self, x: &GcaElement, y: &GcaElement) -> GcaElement {
        let b = self.base();
        GcaElement {
            c: x.c.iter().zip(&y.c).map(|(&a, &c)| b.sub(a, c)).collect(),
        }
    }

    pub fn neg(&self, x: &GcaElement) -> GcaElement {
        let b = self.base();
        GcaElement {
            c: x.c.iter().map(|&a| b.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: Residue, x: &GcaElement) -> GcaElement {
        let b = self.base();
        GcaElement {
            c: x.c.iter().map(|&a| b.mul(c, a)).collect(),
        }
    }

    /// Checked product; both operands must have this ring's shape.
    pub fn gca_mul(&self, x: &GcaElement, y: &GcaElement) -> Result<GcaElement> {
        let nn = self.degree() * self.degree();
        if x.c.len() != nn || y.c.len() != nn {
            return Err(AlgebraError::IncompatibleAlgebras(format!(
                "element shapes {} and {} in a ring of shape {nn}",
                x.c.len(),
                y.c.len()
            )));
        }
        Ok(self.mul(x, y))
    }

    /// `(a z^i)(b z^j) = a σ^i(b) z^{i+j}`, folding `z^n = ū`.
    pub fn mul(&self, x: &GcaElement, y: &GcaElement) -> GcaElement {
        let n = self.degree();
        let r = &self.ring;
        let b = self.base();
        let mut out = self.zero();
        for i in 0..n {
            let a = &x.c[i * n..(i + 1) * n];
            if r.is_zero(a) {
                continue;
            }
            for j in 0..n {
                let bj = &y.c[j * n..(j + 1) * n];
                if r.is_zero(bj) {
                    continue;
                }
                let mut t = r.mul(a, &r.sigma(bj, i as i64));
                if i + j >= n {
                    if self.ubar.is_zero() {
                        continue;
                    }
                    t = r.scale(self.ubar, &t);
                }
                let k = (i + j) % n;
                for (o, v) in out.c[k * n..(k + 1) * n].iter_mut().zip(&t) {
                    *o = b.add(*o, *v);
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &GcaElement, mut e: u64) -> GcaElement {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Mixed-radix index; requires `cardinality() ≤ 2^64`.
    pub fn index(&self, x: &GcaElement) -> u64 {
        let q = self.base().size();
        x.c.iter().rev().fold(0u64, |acc, &c| acc.wrapping_mul(q).wrapping_add(self.base().index(c)))
    }

    pub fn from_index(&self, mut i: u64) -> GcaElement {
        let q = self.base().size();
        let n = self.degree();
        GcaElement {
            c: (0..n * n)
                .map(|_| {
                    let c = self.base().from_index(i % q);
                    i /= q;
                    c
                })
                .collect(),
        }
    }

    /// Elements `g·b_k·z^j` (`g` an additive generator of `O_F/m`); they
    /// generate the additive group and, with it, the ring.
    pub fn additive_generators(&self) -> Vec<GcaElement> {
        let n = self.degree();
        let mut out = Vec::new();
        for j in 0..n {
            for k in 0..n {
                for g in self.base().additive_generators() {
                    let mut x = self.zero();
                    x.c[j * n + k] = g;
                    out.push(x);
                }
            }
        }
        out
    }

    pub fn display(&self, x: &GcaElement) -> String {
        let n = self.degree();
        let parts: Vec<String> = (0..n)
            .filter(|&j| !self.ring.is_zero(&x.c[j * n..(j + 1) * n]))
            .map(|j| {
                let k = self.ring.display(&x.c[j * n..(j + 1) * n]);
                match j {
                    0 => k,
                    1 => format!("{k}z"),
                    _ => format!("{k}z^{j}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for GcaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c.iter().map(|r| (r.a, r.b)).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin_algebra;

    #[test]
    fn golden_mod_one_plus_i() {
        let a = builtin_algebra("golden_u_i").unwrap();
        let q = QuotientRing::new(&a, &IdealSpec::parse(a.base(), "1+i").unwrap()).unwrap();
        assert_eq!(q.cardinality(), 16);
        let z = q.z();
        assert_eq!(q.mul(&z, &z), q.one());
        let theta = q.reduce(&a.from_ok(a.extension().basis(1), 0));
        // θ² = θ + 1 in F_4
        assert_eq!(q.mul(&theta, &theta), q.add(&theta, &q.one()));
        for i in 0..16 {
            assert_eq!(q.index(&q.from_index(i)), i);
        }
    }

    #[test]
    fn reduction_is_a_homomorphism_on_samples() {
        let a = builtin_algebra("q7_cubic").unwrap();
        let q = QuotientRing::new(&a, &IdealSpec::parse(a.base(), "2").unwrap()).unwrap();
        let e = a.extension();
        let x = OrderElement {
            zcoords: vec![e.from_ints(&[3, -1, 2]), e.from_ints(&[0, 5, 1]), e.from_ints(&[1, 1, -7])],
        };
        let y = a.add(&a.z(), &a.from_ok(e.from_ints(&[2, 3, 1]), 2));
        assert_eq!(q.reduce(&a.mul(&x, &y)), q.mul(&q.reduce(&x), &q.reduce(&y)));
        assert_eq!(q.reduce(&a.add(&x, &y)), q.add(&q.reduce(&x), &q.reduce(&y)));
        assert!(q.reduce(&a.scale(&BaseElement::from_int(a.base(), 2), &x)).is_zero());
        assert_eq!(q.reduce(&q.lift(&q.reduce(&x))), q.reduce(&x));
    }
}
