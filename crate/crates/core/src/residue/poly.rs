//! Dense univariate polynomials over a prime field `F_p`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coefficients are stored constant term first with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * a as u128 % p as u128) as u64;
        }
        a = (a as u128 * a as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.c.len().max(o.c.len());
        Self::new(self.p, (0..len).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let len = self.c.len().max(o.c.len());
        Self::new(
            self.p,
            (0..len).map(|i| self.coeff(i) + self.p - o.coeff(i)).collect(),
        )
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(
            self.p,
            self.c
                .iter()
                .map(|&a| (a as u128 * k as u128 % self.p as u128) as u64)
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(self.p, out.into_iter().map(|x| x as u64).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), self.p))
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = inv_mod(d.lead(), self.p);
        let mut r = self.c.clone();
        let n = r.len();
        if n <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let mut q = vec![0u64; n - dd];
        let p = self.p as u128;
        for i in (dd..n).rev() {
            let coef = (r[i] as u128 * inv as u128 % p) as u64;
            if coef == 0 {
                continue;
            }
            q[i - dd] = coef;
            for (j, &dj) in d.c.iter().enumerate() {
                let t = (coef as u128 * dj as u128 % p) as u64;
                r[i - dd + j] = (r[i - dd + j] + self.p - t) % self.p;
            }
        }
        (Self::new(self.p, q), Self::new(self.p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        let k = if r0.is_zero() { 1 } else { inv_mod(r0.lead(), p) };
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| (a as u128 * i as u128 % self.p as u128) as u64)
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u128;
        self.c
            .iter()
            .rev()
            .fold(0u128, |acc, &a| (acc * x as u128 + a as u128) % p) as u64
    }

    /// `x^(p^k) mod m`, by repeated `p`-th powers.
    fn frobenius_x(&self, k: usize) -> Self {
        let mut y = Self::x(self.p).rem(self);
        for _ in 0..k {
            y = y.pow_mod(self.p as u128, self);
        }
        y
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(m) = self.degree() else {
            return false;
        };
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let x = Self::x(self.p);
        if self.frobenius_x(m).sub(&x).rem(self).is_zero() {
            for r in prime_factors(m as u64) {
                let h = self.frobenius_x(m / r as usize).sub(&x);
                if h.gcd(self).degree() != Some(0) {
                    return false;
                }
            }
            true
        } else {
            false
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(d, product of all irreducible factors of degree d)`.
    pub fn distinct_degree_factors(&self) -> Vec<(usize, FpPoly)> {
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = Self::x(self.p);
        let mut h = x.rem(&f);
        let mut d = 0;
        while f.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(self.p as u128, &f);
            let g = h.sub(&x).gcd(&f);
            if g.degree() != Some(0) {
                out.push((d, g.clone()));
                f = f.divrem(&g).0;
                h = h.rem(&f);
            }
        }
        if let Some(df) = f.degree() {
            if df > 0 {
                out.push((df, f));
            }
        }
        out
    }

    /// Equal-degree splitting of a product of irreducibles of degree `d`.
    pub fn equal_degree_factors(&self, d: usize, seed: u64) -> Vec<FpPoly> {
        let f = self.monic();
        let deg = f.degree().unwrap_or(0);
        if deg == d {
            return vec![f];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let a = Self::new(self.p, (0..deg).map(|_| rng.random_range(0..self.p)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if self.p == 2 {
                // trace map a + a² + a⁴ + … + a^(2^(d-1))
                let mut t = a.rem(&f);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul_mod(&t, &f);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let e = ((self.p as u128).pow(d as u32) - 1) / 2;
                a.pow_mod(e, &f).sub(&Self::one(self.p))
            };
            let g = b.gcd(&f);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < deg {
                let h = f.divrem(&g).0;
                let mut out = g.equal_degree_factors(d, rng.random());
                out.extend(h.equal_degree_factors(d, rng.random()));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted.
    pub fn factor_squarefree(&self) -> Vec<FpPoly> {
        let mut out: Vec<FpPoly> = self
            .distinct_degree_factors()
            .into_iter()
            .flat_map(|(d, g)| g.equal_degree_factors(d, 0x5eed ^ d as u64))
            .collect();
        out.sort_by(|a, b| (a.degree(), &a.c).cmp(&(b.degree(), &b.c)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        assert!(FpPoly::new(2, vec![1, 1, 0, 0, 1]).is_irreducible());
        assert!(!FpPoly::new(2, vec![1, 0, 0, 0, 1]).is_irreducible());
        assert!(FpPoly::new(2, vec![1, 1, 1]).is_irreducible());
        assert!(!FpPoly::new(5, vec![1, 0, 1]).is_irreducible());
        assert!(FpPoly::new(3, vec![1, 0, 1]).is_irreducible());
    }

    #[test]
    fn factoring() {
        // x^2 + 1 = (x - 2)(x - 3) over F_5
        let f = FpPoly::new(5, vec![1, 0, 1]);
        let fs = f.factor_squarefree();
        assert_eq!(fs, vec![FpPoly::new(5, vec![2, 1]), FpPoly::new(5, vec![3, 1])]);
        // x^15 - 1 over F_2: 1 + 1 + 2 + 1 factors of degrees 1,2,4,4,4
        let mut c = vec![0u64; 16];
        c[0] = 1;
        c[15] = 1;
        let g = FpPoly::new(2, c);
        let fs = g.factor_squarefree();
        let degs: Vec<_> = fs.iter().map(|f| f.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 2, 4, 4, 4]);
        let prod = fs.iter().fold(FpPoly::one(2), |a, b| a.mul(b));
        assert_eq!(prod, g);
    }

    #[test]
    fn xgcd_identity() {
        let a = FpPoly::new(7, vec![3, 1, 4, 1]);
        let b = FpPoly::new(7, vec![5, 0, 2]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
