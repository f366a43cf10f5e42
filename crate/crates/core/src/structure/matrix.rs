//! Square matrices over a finite base quotient `O_F/m`.

use crate::base::{BaseQuotient, Residue};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub n: usize,
    pub a: Vec<Residue>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            a: vec![Residue::ZERO; n * n],
        }
    }

    pub fn identity(bq: &BaseQuotient, n: usize) -> Self {
        Self::scalar(bq, n, bq.one())
    }

    pub fn scalar(_bq: &BaseQuotient, n: usize, c: Residue) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.a[i * n + i] = c;
        }
        m
    }

    /// The elementary matrix with a one at `(r, c)`.
    pub fn unit(bq: &BaseQuotient, n: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zero(n);
        m.a[r * n + c] = bq.one();
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Residue {
        self.a[r * self.n + c]
    }

    pub fn add(&self, bq: &BaseQuotient, o: &Self) -> Self {
        Matrix {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(&x, &y)| bq.add(x, y)).collect(),
        }
    }

    pub fn scale(&self, bq: &BaseQuotient, c: Residue) -> Self {
        Matrix {
            n: self.n,
            a: self.a.iter().map(|&x| bq.mul(c, x)).collect(),
        }
    }

    /// `self += c·o`.
    pub fn add_scaled(&mut self, bq: &BaseQuotient, c: Residue, o: &Self) {
        if c.is_zero() {
            return;
        }
        for (x, &y) in self.a.iter_mut().zip(&o.a) {
            if !y.is_zero() {
                *x = bq.mul_add(*x, c, y);
            }
        }
    }

    pub fn mul(&self, bq: &BaseQuotient, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = o.a[k * n + j];
                    if !y.is_zero() {
                        out.a[i * n + j] = bq.mul_add(out.a[i * n + j], x, y);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, bq: &BaseQuotient, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(bq, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(bq, &base);
            }
            base = base.mul(bq, &base);
            e >>= 1;
        }
        acc
    }

    pub fn to_strings(&self, bq: &BaseQuotient) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| bq.display(self.get(r, c))).collect())
            .collect()
    }
}
