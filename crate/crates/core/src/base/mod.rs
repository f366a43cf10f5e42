//! Exact arithmetic in the rings of integers ℤ, ℤ[i] and ℤ[ω] and in their
//! finite quotients.

mod local;

pub use local::{local_reduce, BaseQuotient, LocalBaseRing, Residue};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{AlgebraError, Result};

/// One of the three norm-Euclidean base rings.
///
/// Elements are written `a + bδ` where δ is `i` (root of x²+1) or `ω`
/// (root of x²+x+1); for ℤ the coordinate `b` is always zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseRing {
    RationalIntegers,
    GaussianIntegers,
    EisensteinIntegers,
}

impl BaseRing {
    /// Rank of the ring as a ℤ-module.
    pub fn rank(self) -> usize {
        match self {
            BaseRing::RationalIntegers => 1,
            _ => 2,
        }
    }

    /// Coefficients (constant term first) of the monic minimal polynomial of δ.
    pub fn delta_minimal_polynomial(self) -> Vec<i64> {
        match self {
            BaseRing::RationalIntegers => vec![0, 1],
            BaseRing::GaussianIntegers => vec![1, 0, 1],
            BaseRing::EisensteinIntegers => vec![1, 1, 1],
        }
    }

    /// Image of δ under the fixed embedding (upper half-plane).
    pub fn delta_complex(self) -> Complex64 {
        match self {
            BaseRing::RationalIntegers => Complex64::new(0.0, 0.0),
            BaseRing::GaussianIntegers => Complex64::new(0.0, 1.0),
            BaseRing::EisensteinIntegers => Complex64::new(-0.5, 3f64.sqrt() / 2.0),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BaseRing::RationalIntegers => "",
            BaseRing::GaussianIntegers => "i",
            BaseRing::EisensteinIntegers => "w",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseRing::RationalIntegers => "Z",
            BaseRing::GaussianIntegers => "Z[i]",
            BaseRing::EisensteinIntegers => "Z[w]",
        }
    }

    pub fn from_name(s: &str) -> Option<BaseRing> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" | "rational" | "rational_integers" | "q" => Some(BaseRing::RationalIntegers),
            "z[i]" | "gaussian" | "gaussian_integers" | "q(i)" => Some(BaseRing::GaussianIntegers),
            "z[w]" | "eisenstein" | "eisenstein_integers" | "q(w)" => {
                Some(BaseRing::EisensteinIntegers)
            }
            _ => None,
        }
    }

    /// The units of the ring.
    pub fn units(self) -> Vec<BaseElement> {
        let e = |a: i64, b: i64| BaseElement::new(self, a, b);
        match self {
            BaseRing::RationalIntegers => vec![e(1, 0), e(-1, 0)],
            BaseRing::GaussianIntegers => vec![e(1, 0), e(0, 1), e(-1, 0), e(0, -1)],
            BaseRing::EisensteinIntegers => vec![
                e(1, 0),
                e(1, 1),
                e(0, 1),
                e(-1, 0),
                e(-1, -1),
                e(0, -1),
            ],
        }
    }

    /// Whether the rational prime `p` stays prime in this ring.
    pub fn is_inert(self, p: u64) -> bool {
        match self {
            BaseRing::RationalIntegers => true,
            BaseRing::GaussianIntegers => p % 4 == 3,
            BaseRing::EisensteinIntegers => p % 3 == 2,
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for BaseRing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for BaseRing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BaseRing::from_name(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown base ring {s:?}")))
    }
}

/// The arithmetic operations accepted by [`BaseElement::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseOp {
    Add,
    Sub,
    Mul,
}

/// An element `a + bδ` of a base ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseElement {
    ring: BaseRing,
    a: BigInt,
    b: BigInt,
}

impl BaseElement {
    /// Panics when `b ≠ 0` over ℤ.
    pub fn new(ring: BaseRing, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self::from_big(ring, a.into(), b.into())
    }

    pub fn from_big(ring: BaseRing, a: BigInt, b: BigInt) -> Self {
        assert!(
            ring != BaseRing::RationalIntegers || b.is_zero(),
            "rational integer with nonzero delta coordinate"
        );
        BaseElement { ring, a, b }
    }

    pub fn zero(ring: BaseRing) -> Self {
        Self::new(ring, 0, 0)
    }

    pub fn one(ring: BaseRing) -> Self {
        Self::new(ring, 1, 0)
    }

    pub fn from_int(ring: BaseRing, a: impl Into<BigInt>) -> Self {
        Self::from_big(ring, a.into(), BigInt::zero())
    }

    /// The generator δ. Panics over ℤ.
    pub fn delta(ring: BaseRing) -> Self {
        Self::new(ring, 0, 1)
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::IncompatibleRings(
                self.ring.name().into(),
                other.ring.name().into(),
            ))
        }
    }

    pub fn arith(&self, op: BaseOp, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(match op {
            BaseOp::Add => self.add_unchecked(other),
            BaseOp::Sub => self.sub_unchecked(other),
            BaseOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.arith(BaseOp::Add, other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.arith(BaseOp::Sub, other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.arith(BaseOp::Mul, other)
    }

    fn add_unchecked(&self, o: &Self) -> Self {
        BaseElement {
            ring: self.ring,
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    fn sub_unchecked(&self, o: &Self) -> Self {
        BaseElement {
            ring: self.ring,
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &o.a, &o.b);
        match self.ring {
            BaseRing::RationalIntegers => BaseElement {
                ring: self.ring,
                a: a * c,
                b: BigInt::zero(),
            },
            // δ² = -1
            BaseRing::GaussianIntegers => BaseElement {
                ring: self.ring,
                a: a * c - b * d,
                b: a * d + b * c,
            },
            // δ² = -1 - δ
            BaseRing::EisensteinIntegers => {
                let bd = b * d;
                BaseElement {
                    ring: self.ring,
                    a: a * c - &bd,
                    b: a * d + b * c - bd,
                }
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        BaseElement {
            ring: self.ring,
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugate, which is again an element of the ring.
    pub fn conj(&self) -> Self {
        match self.ring {
            BaseRing::RationalIntegers => self.clone(),
            BaseRing::GaussianIntegers => BaseElement {
                ring: self.ring,
                a: self.a.clone(),
                b: -&self.b,
            },
            // conj(ω) = ω² = -1 - ω
            BaseRing::EisensteinIntegers => BaseElement {
                ring: self.ring,
                a: &self.a - &self.b,
                b: -&self.b,
            },
        }
    }

    /// Absolute norm, the squared modulus (or the square for ℤ).
    pub fn norm(&self) -> BigInt {
        let (a, b) = (&self.a, &self.b);
        match self.ring {
            BaseRing::RationalIntegers => a * a,
            BaseRing::GaussianIntegers => a * a + b * b,
            BaseRing::EisensteinIntegers => a * a - a * b + b * b,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        Complex64::new(a, 0.0) + self.ring.delta_complex() * b
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Division with remainder by `m`, rounding `x/m` to a nearest lattice
    /// point. Among the minimal-norm remainders the one with the smallest
    /// `(a, b)` is returned, so the remainder depends only on the class of
    /// `x` modulo `m`.
    pub fn euclidean_divmod(&self, m: &Self) -> Result<(Self, Self)> {
        self.check(m)?;
        if m.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = m.norm();
        let w = self.mul_unchecked(&m.conj());
        let fa = w.a.div_floor(&n);
        let fb = w.b.div_floor(&n);
        let b_range: Vec<i64> = if self.ring == BaseRing::RationalIntegers {
            vec![0]
        } else {
            vec![-1, 0, 1, 2]
        };
        let mut best: Option<(BigInt, Self, Self)> = None;
        for da in -1i64..=2 {
            for &db in &b_range {
                let qa = &fa + da;
                let qb = if self.ring == BaseRing::RationalIntegers {
                    BigInt::zero()
                } else {
                    &fb + db
                };
                let q = BaseElement::from_big(self.ring, qa, qb);
                let r = self.sub_unchecked(&q.mul_unchecked(m));
                let nr = r.norm();
                let better = match &best {
                    None => true,
                    Some((bn, _, br)) => (&nr, &r.a, &r.b) < (bn, &br.a, &br.b),
                };
                if better {
                    best = Some((nr, q, r));
                }
            }
        }
        let (_, q, r) = best.expect("candidate set is nonempty");
        Ok((q, r))
    }

    /// Canonical remainder modulo `m`.
    pub fn rem(&self, m: &Self) -> Result<Self> {
        Ok(self.euclidean_divmod(m)?.1)
    }

    /// Exact quotient `self / m` if `m` divides `self`.
    pub fn exact_div(&self, m: &Self) -> Option<Self> {
        if m.is_zero() || self.ring != m.ring {
            return None;
        }
        let n = m.norm();
        let w = self.mul_unchecked(&m.conj());
        if (&w.a % &n).is_zero() && (&w.b % &n).is_zero() {
            Some(BaseElement::from_big(self.ring, &w.a / &n, &w.b / &n))
        } else {
            None
        }
    }

    pub fn divides(&self, x: &Self) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.exact_div(self).is_some()
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        Self::one(self.ring).exact_div(self)
    }

    /// Extended gcd: returns `(g, s, t)` with `s·x + t·y = g`.
    pub fn xgcd(x: &Self, y: &Self) -> Result<(Self, Self, Self)> {
        x.check(y)?;
        let ring = x.ring;
        let (mut r0, mut r1) = (x.clone(), y.clone());
        let (mut s0, mut s1) = (Self::one(ring), Self::zero(ring));
        let (mut t0, mut t1) = (Self::zero(ring), Self::one(ring));
        while !r1.is_zero() {
            let (q, r) = r0.euclidean_divmod(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        Ok((r0, s0, t0))
    }

    /// Whether two elements differ by a unit factor.
    pub fn is_associate(&self, other: &Self) -> bool {
        if self.ring != other.ring {
            return false;
        }
        match self.exact_div(other) {
            Some(q) => q.is_unit(),
            None => false,
        }
    }

    /// Whether the element generates a prime ideal.
    pub fn is_prime(&self) -> bool {
        let n = self.norm();
        let Some(n) = n.to_u64() else {
            return false;
        };
        if n < 2 {
            return false;
        }
        match self.ring {
            BaseRing::RationalIntegers => is_prime_u64(self.a.abs().to_u64().unwrap_or(0)),
            _ => {
                if is_prime_u64(n) {
                    return true;
                }
                let r = (n as f64).sqrt().round() as u64;
                r * r == n
                    && is_prime_u64(r)
                    && self.ring.is_inert(r)
                    && self.is_associate(&Self::from_int(self.ring, r))
            }
        }
    }

    /// The rational prime below a prime element.
    pub fn rational_prime(&self) -> Option<u64> {
        if !self.is_prime() {
            return None;
        }
        let n = self.norm().to_u64()?;
        if is_prime_u64(n) {
            Some(n)
        } else {
            Some((n as f64).sqrt().round() as u64)
        }
    }

    /// Small-coordinate view, if both coordinates fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.a.to_i64()?, self.b.to_i64()?))
    }

    /// Parses strings such as `3`, `-i`, `1+i`, `2-3w` or `1+2*i`.
    pub fn parse(ring: BaseRing, s: &str) -> Result<Self> {
        let bad = || AlgebraError::invalid(format!("cannot parse {s:?} as an element of {ring}"));
        let t: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .map(|c| match c {
                'ω' | 'W' => 'w',
                'I' => 'i',
                '−' => '-',
                c => c,
            })
            .collect();
        if t.is_empty() {
            return Err(bad());
        }
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(&t);
        let sym = ring.symbol();
        let mut a = BigInt::zero();
        let mut b = BigInt::zero();
        let mut i = 0;
        let bytes = t.as_bytes();
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            } else if i != 0 {
                return Err(bad());
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits = &t[start..i];
            let has_sym = i < bytes.len() && (bytes[i] == b'i' || bytes[i] == b'w');
            if has_sym {
                if sym.is_empty() || &t[i..i + 1] != sym {
                    return Err(bad());
                }
                i += 1;
                let c = if digits.is_empty() {
                    BigInt::one()
                } else {
                    BigInt::from_str(digits).map_err(|_| bad())?
                };
                b += sign * c;
            } else {
                if digits.is_empty() {
                    return Err(bad());
                }
                a += sign * BigInt::from_str(digits).map_err(|_| bad())?;
            }
        }
        Ok(BaseElement::from_big(ring, a, b))
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.ring.symbol();
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coef = |b: &BigInt| -> String {
            if b.is_one() {
                String::new()
            } else if *b == -BigInt::one() {
                "-".into()
            } else {
                b.to_string()
            }
        };
        if self.a.is_zero() {
            write!(f, "{}{}", coef(&self.b), sym)
        } else if self.b.is_negative() {
            write!(f, "{}-{}{}", self.a, coef(&-&self.b), sym)
        } else {
            write!(f, "{}+{}{}", self.a, coef(&self.b), sym)
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl<'a> $tr<&'a BaseElement> for &'a BaseElement {
            type Output = BaseElement;
            fn $m(self, o: &'a BaseElement) -> BaseElement {
                assert_eq!(self.ring, o.ring, "mixed base rings");
                self.$inner(o)
            }
        }
        impl $tr for BaseElement {
            type Output = BaseElement;
            fn $m(self, o: BaseElement) -> BaseElement {
                (&self).$m(&o)
            }
        }
    };
}

forward_binop!(Add, add, add_unchecked);
forward_binop!(Sub, sub, sub_unchecked);
forward_binop!(Mul, mul, mul_unchecked);

impl Neg for &BaseElement {
    type Output = BaseElement;
    fn neg(self) -> BaseElement {
        BaseElement {
            ring: self.ring,
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for BaseElement {
    type Output = BaseElement;
    fn neg(self) -> BaseElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> BaseElement {
        BaseElement::new(BaseRing::GaussianIntegers, a, b)
    }

    fn e(a: i64, b: i64) -> BaseElement {
        BaseElement::new(BaseRing::EisensteinIntegers, a, b)
    }

    #[test]
    fn small_products() {
        assert_eq!(&g(1, 1) * &g(1, -1), g(2, 0));
        assert_eq!(&e(0, 1) * &e(0, 1), e(-1, -1));
        assert!((&g(2, 3) + &g(-2, -3)).is_zero());
    }

    #[test]
    fn norms() {
        assert_eq!(g(1, 1).norm(), BigInt::from(2));
        assert_eq!(g(0, 0).norm(), BigInt::from(0));
        assert_eq!(e(2, 1).norm(), BigInt::from(3));
        let z = e(2, 1).to_complex();
        assert!((z.norm_sqr() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn mixed_rings_rejected() {
        let err = g(1, 0).checked_add(&e(1, 0)).unwrap_err();
        assert_eq!(err.name(), "IncompatibleRings");
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = g(3, 0).euclidean_divmod(&g(1, 1)).unwrap();
        assert!(r.norm() < BigInt::from(2));
        assert_eq!(&(&q * &g(1, 1)) + &r, g(3, 0));
        let m = g(1, 1).pow(2);
        assert!(m.euclidean_divmod(&m).unwrap().1.is_zero());
        assert_eq!(
            g(1, 0).euclidean_divmod(&g(0, 0)).unwrap_err(),
            AlgebraError::DivisionByZero
        );
    }

    #[test]
    fn parse_and_display() {
        for s in ["0", "3", "-2", "i", "-i", "1+i", "1-i", "2+3i", "-4-5i"] {
            let x = BaseElement::parse(BaseRing::GaussianIntegers, s).unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!(
            BaseElement::parse(BaseRing::EisensteinIntegers, "-1-w").unwrap(),
            e(-1, -1)
        );
        assert!(BaseElement::parse(BaseRing::RationalIntegers, "i").is_err());
        assert!(BaseElement::parse(BaseRing::GaussianIntegers, "1+w").is_err());
    }

    #[test]
    fn primes() {
        assert!(g(1, 1).is_prime());
        assert!(g(3, 0).is_prime());
        assert!(!g(5, 0).is_prime());
        assert!(g(2, 1).is_prime());
        assert!(e(2, 0).is_prime());
        assert!(!e(3, 0).is_prime());
        assert_eq!(g(0, 3).rational_prime(), Some(3));
    }

    #[test]
    fn xgcd_bezout() {
        let (x, y) = (g(5, 0), g(2, 1));
        let (gg, s, t) = BaseElement::xgcd(&x, &y).unwrap();
        assert_eq!(&(&s * &x) + &(&t * &y), gg);
        assert!(gg.is_associate(&g(2, 1)));
    }
}
