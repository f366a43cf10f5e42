//! Rings of integers of cyclic extensions `K/F` given by an integral basis.

pub mod factor;

pub use factor::{factor_prime, FactorizationData};

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::base::{BaseElement, BaseOp, BaseRing};
use crate::error::{AlgebraError, Result};

/// An element of `O_K`, written on the integral basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OkElement {
    pub coords: Vec<BaseElement>,
}

impl OkElement {
    pub fn new(coords: Vec<BaseElement>) -> Self {
        OkElement { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(BaseElement::is_zero)
    }

    pub fn degree(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for OkElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A cyclic extension `K/F` of degree `n` with `Gal(K/F) = ⟨σ⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionSpec {
    name: String,
    base: BaseRing,
    basis_names: Vec<String>,
    /// `mult[i][j]` holds the coordinates of `b_i·b_j`.
    mult: Vec<Vec<Vec<BaseElement>>>,
    /// Row `i` holds the coordinates of `σ(b_i)`.
    sigma: Vec<Vec<BaseElement>>,
    /// `embeddings[e][k]` is the image of `b_k` under `φ_0 ∘ σ^e`.
    embeddings: Vec<Vec<Complex64>>,
    primitive_element: Option<OkElement>,
}

impl ExtensionSpec {
    /// Builds and validates an extension.
    pub fn new(
        name: impl Into<String>,
        base: BaseRing,
        basis_names: Vec<String>,
        mult: Vec<Vec<Vec<BaseElement>>>,
        sigma: Vec<Vec<BaseElement>>,
        embeddings: Vec<Vec<Complex64>>,
        primitive_element: Option<OkElement>,
    ) -> Result<Self> {
        let e = ExtensionSpec {
            name: name.into(),
            base,
            basis_names,
            mult,
            sigma,
            embeddings,
            primitive_element,
        };
        e.validate()?;
        Ok(e)
    }

    fn validate(&self) -> Result<()> {
        let n = self.degree();
        let bad = |m: String| Err(AlgebraError::invalid(format!("extension {}: {m}", self.name)));
        if n == 0 {
            return bad("degree must be positive".into());
        }
        if self.mult.len() != n
            || self.mult.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n))
        {
            return bad("multiplication table has the wrong shape".into());
        }
        if self.sigma.len() != n || self.sigma.iter().any(|r| r.len() != n) {
            return bad("sigma matrix has the wrong shape".into());
        }
        if self.embeddings.len() != n || self.embeddings.iter().any(|r| r.len() != n) {
            return bad("embedding table has the wrong shape".into());
        }
        let all = self.mult.iter().flatten().flatten().chain(self.sigma.iter().flatten());
        for c in all {
            if c.ring() != self.base {
                return bad(format!("coefficient {c} is not in {}", self.base));
            }
        }
        for j in 0..n {
            if self.mult[0][j] != self.basis(j).coords {
                return bad("the first basis element must be 1".into());
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.mult[i][j] != self.mult[j][i] {
                    return bad("multiplication is not commutative".into());
                }
                for k in 0..n {
                    let (bi, bj, bk) = (self.basis(i), self.basis(j), self.basis(k));
                    let l = self.mul(&self.mul(&bi, &bj), &bk);
                    let r = self.mul(&bi, &self.mul(&bj, &bk));
                    if l != r {
                        return bad("multiplication is not associative".into());
                    }
                }
                let (bi, bj) = (self.basis(i), self.basis(j));
                if self.sigma_once(&self.mul(&bi, &bj))
                    != self.mul(&self.sigma_once(&bi), &self.sigma_once(&bj))
                {
                    return bad("sigma is not multiplicative".into());
                }
            }
        }
        let mut order = None;
        let mut pows: Vec<OkElement> = (0..n).map(|k| self.basis(k)).collect();
        for d in 1..=n {
            pows = pows.iter().map(|b| self.sigma_once(b)).collect();
            if pows.iter().enumerate().all(|(k, b)| *b == self.basis(k)) {
                order = Some(d);
                break;
            }
        }
        if order != Some(n) {
            return bad("sigma does not have order n".into());
        }
        // the embedding table must be a ring map compatible with σ
        for e in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let lhs = self.embeddings[e][i] * self.embeddings[e][j];
                    let rhs = self.embed_complex(&self.mul(&self.basis(i), &self.basis(j)), e);
                    if (lhs - rhs).norm() > 1e-9 * (1.0 + lhs.norm()) {
                        return bad(format!("embedding {e} is not multiplicative"));
                    }
                }
                let lhs = self.embeddings[(e + 1) % n][i];
                let rhs = self.embed_complex(&self.sigma_once(&self.basis(i)), e);
                if (lhs - rhs).norm() > 1e-9 * (1.0 + lhs.norm()) {
                    return bad(format!("embedding {} is not embedding {e} after sigma", (e + 1) % n));
                }
            }
        }
        if let Some(p) = &self.primitive_element {
            if p.degree() != n {
                return bad("primitive element has the wrong length".into());
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.sigma.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn mult_table(&self) -> &[Vec<Vec<BaseElement>>] {
        &self.mult
    }

    pub fn sigma_matrix(&self) -> &[Vec<BaseElement>] {
        &self.sigma
    }

    pub fn embeddings(&self) -> &[Vec<Complex64>] {
        &self.embeddings
    }

    pub fn primitive_element(&self) -> Option<&OkElement> {
        self.primitive_element.as_ref()
    }

    pub fn zero(&self) -> OkElement {
        OkElement::new(vec![BaseElement::zero(self.base); self.degree()])
    }

    pub fn one(&self) -> OkElement {
        self.from_base(&BaseElement::one(self.base))
    }

    pub fn basis(&self, k: usize) -> OkElement {
        let mut x = self.zero();
        x.coords[k] = BaseElement::one(self.base);
        x
    }

    pub fn from_base(&self, c: &BaseElement) -> OkElement {
        let mut x = self.zero();
        x.coords[0] = c.clone();
        x
    }

    pub fn from_ints(&self, v: &[i64]) -> OkElement {
        OkElement::new(v.iter().map(|&a| BaseElement::from_int(self.base, a)).collect())
    }

    fn check(&self, x: &OkElement) -> Result<()> {
        if x.degree() != self.degree() {
            return Err(AlgebraError::IncompatibleAlgebras(format!(
                "element of degree {} used in extension {} of degree {}",
                x.degree(),
                self.name,
                self.degree()
            )));
        }
        if let Some(c) = x.coords.iter().find(|c| c.ring() != self.base) {
            return Err(AlgebraError::IncompatibleRings(
                c.ring().name().into(),
                self.base.name().into(),
            ));
        }
        Ok(())
    }

    pub fn ok_arith(&self, op: BaseOp, x: &OkElement, y: &OkElement) -> Result<OkElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(match op {
            BaseOp::Add => self.add(x, y),
            BaseOp::Sub => self.sub(x, y),
            BaseOp::Mul => self.mul(x, y),
        })
    }

    pub fn add(&self, x: &OkElement, y: &OkElement) -> OkElement {
        OkElement::new(x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, x: &OkElement, y: &OkElement) -> OkElement {
        OkElement::new(x.coords.iter().zip(&y.coords).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self, x: &OkElement) -> OkElement {
        OkElement::new(x.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &BaseElement, x: &OkElement) -> OkElement {
        OkElement::new(x.coords.iter().map(|a| c * a).collect())
    }

    pub fn mul(&self, x: &OkElement, y: &OkElement) -> OkElement {
        let n = self.degree();
        let mut out = self.zero();
        for i in 0..n {
            if x.coords[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.coords[j].is_zero() {
                    continue;
                }
                let c = &x.coords[i] * &y.coords[j];
                for k in 0..n {
                    let t = &self.mult[i][j][k];
                    if !t.is_zero() {
                        out.coords[k] = &out.coords[k] + &(&c * t);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &OkElement, mut e: u64) -> OkElement {
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

    fn sigma_once(&self, x: &OkElement) -> OkElement {
        let n = self.degree();
        let mut out = self.zero();
        for i in 0..n {
            if x.coords[i].is_zero() {
                continue;
            }
            for k in 0..n {
                let s = &self.sigma[i][k];
                if !s.is_zero() {
                    out.coords[k] = &out.coords[k] + &(&x.coords[i] * s);
                }
            }
        }
        out
    }

    /// `σ^power(x)`; negative powers are taken modulo `n`.
    pub fn apply_sigma(&self, x: &OkElement, power: i64) -> OkElement {
        let p = power.rem_euclid(self.degree() as i64);
        let mut y = x.clone();
        for _ in 0..p {
            y = self.sigma_once(&y);
        }
        y
    }

    /// Matrix of `σ^power` with row `i` equal to the coordinates of `σ^power(b_i)`.
    pub fn sigma_power_matrix(&self, power: i64) -> Vec<Vec<BaseElement>> {
        (0..self.degree())
            .map(|i| self.apply_sigma(&self.basis(i), power).coords)
            .collect()
    }

    /// Image of `x` under the embedding `φ_0 ∘ σ^which`.
    pub fn embed_complex(&self, x: &OkElement, which: usize) -> Complex64 {
        x.coords
            .iter()
            .zip(&self.embeddings[which])
            .map(|(c, e)| c.to_complex() * e)
            .sum()
    }

    /// `x` as an element of `O_F`, if it lies there.
    pub fn as_base(&self, x: &OkElement) -> Option<BaseElement> {
        if x.coords[1..].iter().all(BaseElement::is_zero) {
            Some(x.coords[0].clone())
        } else {
            None
        }
    }

    pub fn is_sigma_fixed(&self, x: &OkElement) -> bool {
        self.sigma_once(x) == *x
    }

    /// The relative norm `∏ σ^j(x)`.
    pub fn norm(&self, x: &OkElement) -> Result<BaseElement> {
        let mut acc = x.clone();
        let mut y = x.clone();
        for _ in 1..self.degree() {
            y = self.sigma_once(&y);
            acc = self.mul(&acc, &y);
        }
        self.as_base(&acc).ok_or_else(|| AlgebraError::NotInBaseRing(acc.to_string()))
    }

    /// The relative trace `Σ σ^j(x)`.
    pub fn trace(&self, x: &OkElement) -> Result<BaseElement> {
        let mut acc = x.clone();
        let mut y = x.clone();
        for _ in 1..self.degree() {
            y = self.sigma_once(&y);
            acc = self.add(&acc, &y);
        }
        self.as_base(&acc).ok_or_else(|| AlgebraError::NotInBaseRing(acc.to_string()))
    }
}

/// A prime power `q^s` of `O_F`, with `q = (α)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealSpec {
    #[serde(with = "crate::io::base_element_string")]
    pub alpha: BaseElement,
    pub s: u32,
}

impl IdealSpec {
    pub fn new(alpha: BaseElement, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(AlgebraError::invalid("ideal exponent must be positive"));
        }
        if !alpha.is_prime() {
            return Err(AlgebraError::invalid(format!(
                "{alpha} does not generate a prime ideal of {}",
                alpha.ring()
            )));
        }
        Ok(IdealSpec { alpha, s })
    }

    /// The generator `α^s` of the ideal.
    pub fn generator(&self) -> BaseElement {
        self.alpha.pow(self.s as u64)
    }

    /// Parses `"1+i"` or `"1+i:2"` (generator and exponent).
    pub fn parse(ring: BaseRing, s: &str) -> Result<Self> {
        let (g, e) = match s.split_once(':').or_else(|| s.split_once('^')) {
            Some((g, e)) => (
                g,
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| AlgebraError::invalid(format!("bad exponent in {s:?}")))?,
            ),
            None => (s, 1),
        };
        IdealSpec::new(BaseElement::parse(ring, g)?, e)
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s == 1 {
            write!(f, "({})", self.alpha)
        } else {
            write!(f, "({})^{}", self.alpha, self.s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> ExtensionSpec {
        crate::io::builtin_algebra("golden_u_i").unwrap().extension().clone()
    }

    #[test]
    fn golden_arithmetic() {
        let e = golden();
        let theta = e.basis(1);
        assert_eq!(e.mul(&theta, &theta), e.add(&theta, &e.one()));
        assert_eq!(e.apply_sigma(&theta, 1), e.from_ints(&[1, -1]));
        assert_eq!(e.apply_sigma(&theta, 2), theta);
        assert_eq!(e.apply_sigma(&theta, -1), e.apply_sigma(&theta, 1));
        let v = e.embed_complex(&theta, 0);
        assert!((v.re - 1.618_033_988_749_895).abs() < 1e-12);
        assert!((v * v - v - 1.0).norm() < 1e-12);
    }

    #[test]
    fn q7_cubic_relation() {
        let e = crate::io::builtin_algebra("q7_cubic").unwrap().extension().clone();
        let c = e.basis(1);
        let c3 = e.pow(&c, 3);
        // c³ + c² − 2c − 1 = 0
        let lhs = e.sub(
            &e.add(&c3, &e.pow(&c, 2)),
            &e.add(&e.scale(&BaseElement::from_int(e.base(), 2), &c), &e.one()),
        );
        assert!(lhs.is_zero());
    }

    #[test]
    fn norms_and_traces() {
        let e = golden();
        let theta = e.basis(1);
        assert_eq!(e.norm(&theta).unwrap(), BaseElement::from_int(e.base(), -1));
        assert_eq!(e.trace(&theta).unwrap(), BaseElement::one(e.base()));
    }

    #[test]
    fn ideal_parse() {
        let q = IdealSpec::parse(BaseRing::GaussianIntegers, "1+i:2").unwrap();
        assert_eq!(q.s, 2);
        assert_eq!(q.generator(), BaseElement::new(BaseRing::GaussianIntegers, 0, 2));
        assert!(IdealSpec::parse(BaseRing::GaussianIntegers, "5").is_err());
    }
}
