//! The residue ring `O_K/mO_K` for a nonzero `m ∈ O_F`.

use crate::base::{BaseElement, BaseQuotient, Residue};
use crate::error::{AlgebraError, Result};
use crate::extension::{ExtensionSpec, OkElement};

/// Coordinates of an element of `O_K/mO_K` on the integral basis.
pub type KResidue = Vec<Residue>;

#[derive(Clone, Debug)]
pub struct ResidueRing {
    base: BaseQuotient,
    n: usize,
    mult: Vec<Residue>,
    sigma: Vec<Vec<Residue>>,
}

impl ResidueRing {
    /// Reduces the multiplication table and all powers of σ once.
    pub fn new(ext: &ExtensionSpec, base: BaseQuotient) -> Self {
        let n = ext.degree();
        let mut mult = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mult.push(base.from_base(&ext.mult_table()[i][j][k]));
                }
            }
        }
        let sigma = (0..n as i64)
            .map(|p| {
                ext.sigma_power_matrix(p)
                    .iter()
                    .flatten()
                    .map(|c| base.from_base(c))
                    .collect()
            })
            .collect();
        ResidueRing {
            base,
            n,
            mult,
            sigma,
        }
    }

    pub fn base(&self) -> &BaseQuotient {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `|O_F/m|^n`.
    pub fn size(&self) -> u128 {
        (self.base.size() as u128).pow(self.n as u32)
    }

    pub fn zero(&self) -> KResidue {
        vec![Residue::ZERO; self.n]
    }

    pub fn one(&self) -> KResidue {
        self.scalar(self.base.one())
    }

    pub fn scalar(&self, c: Residue) -> KResidue {
        let mut x = self.zero();
        x[0] = c;
        x
    }

    pub fn basis(&self, k: usize) -> KResidue {
        let mut x = self.zero();
        x[k] = self.base.one();
        x
    }

    pub fn from_ok(&self, x: &OkElement) -> KResidue {
        x.coords.iter().map(|c| self.base.from_base(c)).collect()
    }

    /// Canonical lift to `O_K`.
    pub fn to_ok(&self, x: &[Residue]) -> OkElement {
        OkElement::new(x.iter().map(|&c| self.base.to_base(c)).collect())
    }

    pub fn is_zero(&self, x: &[Residue]) -> bool {
        x.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, x: &[Residue], y: &[Residue]) -> KResidue {
        x.iter().zip(y).map(|(&a, &b)| self.base.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[Residue], y: &[Residue]) -> KResidue {
        x.iter().zip(y).map(|(&a, &b)| self.base.sub(a, b)).collect()
    }

    pub fn neg(&self, x: &[Residue]) -> KResidue {
        x.iter().map(|&a| self.base.neg(a)).collect()
    }

    pub fn scale(&self, c: Residue, x: &[Residue]) -> KResidue {
        x.iter().map(|&a| self.base.mul(c, a)).collect()
    }

    pub fn mul(&self, x: &[Residue], y: &[Residue]) -> KResidue {
        let n = self.n;
        let mut out = self.zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = self.base.mul(x[i], y[j]);
                let row = &self.mult[(i * n + j) * n..(i * n + j + 1) * n];
                for k in 0..n {
                    if !row[k].is_zero() {
                        out[k] = self.base.mul_add(out[k], c, row[k]);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[Residue], mut e: u64) -> KResidue {
        let mut base = x.to_vec();
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

    /// `σ^power(x)`, power taken modulo `n`.
    pub fn sigma(&self, x: &[Residue], power: i64) -> KResidue {
        let n = self.n;
        let s = &self.sigma[power.rem_euclid(n as i64) as usize];
        let mut out = self.zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for k in 0..n {
                if !s[i * n + k].is_zero() {
                    out[k] = self.base.mul_add(out[k], x[i], s[i * n + k]);
                }
            }
        }
        out
    }

    /// Row `i` of the reduced `σ^power` matrix, i.e. `σ^power(b_i)`.
    pub fn sigma_row(&self, power: i64, i: usize) -> &[Residue] {
        let n = self.n;
        &self.sigma[power.rem_euclid(n as i64) as usize][i * n..(i + 1) * n]
    }

    /// Mixed-radix index of an element; requires `size() < 2^64`.
    pub fn index(&self, x: &[Residue]) -> u64 {
        let q = self.base.size();
        x.iter().rev().fold(0u64, |acc, &c| acc * q + self.base.index(c))
    }

    pub fn from_index(&self, mut i: u64) -> KResidue {
        let q = self.base.size();
        (0..self.n)
            .map(|_| {
                let c = self.base.from_index(i % q);
                i /= q;
                c
            })
            .collect()
    }

    /// Fails with `TooLargeToEnumerate` above `limit` elements.
    pub fn check_enumerable(&self, limit: u128) -> Result<u64> {
        let size = self.size();
        if size > limit {
            return Err(AlgebraError::TooLargeToEnumerate {
                what: "residue ring".into(),
                size,
                limit,
            });
        }
        Ok(size as u64)
    }

    pub fn display(&self, x: &[Residue]) -> String {
        crate::io::format_coords(x.iter().map(|&c| self.base.to_base(c)))
    }

    /// Reduction of a base element into the ring.
    pub fn scalar_from_base(&self, c: &BaseElement) -> KResidue {
        self.scalar(self.base.from_base(c))
    }
}
