//! Finite fields `F_{p^m}` with log/antilog tables.

use super::poly::{prime_factors, FpPoly};
use crate::error::{AlgebraError, Result};

const MAX_FIELD_SIZE: u64 = 1 << 24;

/// The field `F_p[t]/(modulus)`.
///
/// Elements are indices `Σ c_i p^i` of their coefficient vectors on
/// `1, t, …, t^(m-1)`; 0 is zero and 1 is one.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    m: usize,
    size: u64,
    modulus: FpPoly,
    exp: Vec<u32>,
    log: Vec<u32>,
    generator: u32,
    frobenius: Vec<u64>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl FiniteField {
    /// Builds the field from an irreducible monic modulus.
    pub fn new(modulus: FpPoly) -> Result<Self> {
        let p = modulus.p();
        let m = modulus.degree().unwrap_or(0);
        if !modulus.is_irreducible() {
            return Err(AlgebraError::invalid("field modulus is not irreducible"));
        }
        let modulus = modulus.monic();
        let size = p
            .checked_pow(m as u32)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or(AlgebraError::UnsupportedSize {
                size: (p as u128).saturating_pow(m as u32),
                limit: MAX_FIELD_SIZE as u128,
            })?;
        let mut f = FiniteField {
            p,
            m,
            size,
            modulus,
            exp: vec![],
            log: vec![],
            generator: 0,
            frobenius: vec![],
        };
        let order = size - 1;
        let factors = prime_factors(order);
        let g = (1..size as u32)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| f.slow_pow(g, order / r) != 1 || order == 1)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        f.generator = g;
        f.exp = Vec::with_capacity(order as usize);
        f.log = vec![0; size as usize];
        let mut x = 1u32;
        for e in 0..order {
            f.exp.push(x);
            f.log[x as usize] = e as u32;
            x = f.slow_mul(x, g);
        }
        f.frobenius = (0..m.max(1))
            .map(|k| {
                let mut e = 1u64;
                for _ in 0..k {
                    e = (e as u128 * p as u128 % order.max(1) as u128) as u64;
                }
                e
            })
            .collect();
        Ok(f)
    }

    /// `F_{p^m}` defined by the first primitive monic polynomial of degree
    /// `m` in the order of its lower coefficients read as a base-`p` number.
    pub fn with_degree(p: u64, m: usize) -> Result<Self> {
        if !crate::base::is_prime_u64(p) || m == 0 {
            return Err(AlgebraError::invalid(format!("no field of order {p}^{m}")));
        }
        let size = p.checked_pow(m as u32).filter(|&s| s <= MAX_FIELD_SIZE).ok_or(
            AlgebraError::UnsupportedSize {
                size: (p as u128).saturating_pow(m as u32),
                limit: MAX_FIELD_SIZE as u128,
            },
        )?;
        for low in 0..size {
            let mut c = digits(low, p, m);
            c.push(1);
            let f = FpPoly::new(p, c);
            if !f.is_irreducible() {
                continue;
            }
            let field = FiniteField::new(f)?;
            let t = if m == 1 {
                // any generator will do in the prime field
                field.generator
            } else {
                p as u32
            };
            if field.order_of(t) == size - 1 {
                return Ok(field.rebase_generator(t));
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }

    fn rebase_generator(mut self, g: u32) -> Self {
        let order = self.size - 1;
        let mut x = 1u32;
        for e in 0..order {
            self.exp[e as usize] = x;
            self.log[x as usize] = e as u32;
            x = self.slow_mul(x, g);
        }
        self.generator = g;
        self
    }

    fn order_of(&self, x: u32) -> u64 {
        let order = self.size - 1;
        match self.log[x as usize] as u64 {
            0 => 1,
            l => order / num_integer::gcd(order, l),
        }
    }

    fn poly_of(&self, x: u32) -> FpPoly {
        FpPoly::new(self.p, digits(x as u64, self.p, self.m))
    }

    fn index_of(&self, f: &FpPoly) -> u32 {
        let mut idx = 0u64;
        for i in (0..self.m).rev() {
            idx = idx * self.p + f.coeff(i);
        }
        idx as u32
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        self.index_of(&self.poly_of(a).mul_mod(&self.poly_of(b), &self.modulus))
    }

    fn slow_pow(&self, a: u32, e: u64) -> u32 {
        self.index_of(&self.poly_of(a).pow_mod(e as u128, &self.modulus))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    /// The cached primitive element.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size as u32
    }

    /// The element `k·1` of the prime field.
    pub fn from_prime(&self, k: u64) -> u32 {
        (k % self.p) as u32
    }

    pub fn from_coeffs(&self, c: &[u64]) -> u32 {
        self.index_of(&FpPoly::new(self.p, c.to_vec()))
    }

    pub fn coeffs(&self, x: u32) -> Vec<u64> {
        digits(x as u64, self.p, self.m)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let (mut out, mut place) = (0u64, 1u64);
        while a > 0 || b > 0 {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a as u64;
        let (mut out, mut place) = (0u64, 1u64);
        while a > 0 {
            out += (self.p - a % self.p) % self.p * place;
            a /= self.p;
            place *= self.p;
        }
        out as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.size - 1;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % order;
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = self.size - 1;
        let e = (order - self.log[a as usize] as u64) % order;
        Some(self.exp[e as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = self.size - 1;
        let l = (self.log[a as usize] as u128 * e as u128 % order as u128) as usize;
        self.exp[l]
    }

    /// `γ^e` for the cached generator γ.
    pub fn exp(&self, e: u64) -> u32 {
        self.exp[(e % (self.size - 1)) as usize]
    }

    /// Discrete logarithm to the base of the cached generator.
    pub fn log(&self, a: u32) -> Option<u64> {
        (a != 0).then(|| self.log[a as usize] as u64)
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: u32, k: usize) -> u32 {
        if a == 0 {
            return 0;
        }
        let order = self.size - 1;
        let e = self.frobenius[k % self.m.max(1)];
        let l = (self.log[a as usize] as u128 * e as u128 % order as u128) as usize;
        self.exp[l]
    }

    /// Human-readable polynomial in `t`.
    pub fn display(&self, a: u32) -> String {
        let c = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            terms.push(match (ci, i) {
                (_, 0) => ci.to_string(),
                (1, _) => mono,
                _ => format!("{ci}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    pub fn describe(&self) -> String {
        format!("F_{}", self.size)
    }
}

pub(crate) fn digits(mut x: u64, p: u64, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(x % p);
        x /= p;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f16_default_modulus() {
        let f = FiniteField::with_degree(2, 4).unwrap();
        assert_eq!(f.modulus().coeffs(), &[1, 1, 0, 0, 1]);
        assert_eq!(f.generator(), 2);
        assert_eq!(f.size(), 16);
    }

    #[test]
    fn field_axioms_small() {
        for (p, m) in [(2, 2), (3, 2), (5, 1), (2, 3)] {
            let f = FiniteField::with_degree(p, m).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
                assert_eq!(f.frobenius(a, 1), f.pow(a, p));
            }
        }
    }

    #[test]
    fn f4_norms_are_one() {
        let f = FiniteField::with_degree(2, 2).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.frobenius(a, 1)), 1);
        }
    }
}
