//! Small dense linear algebra: Gaussian elimination over `F_p` and complex
//! determinants.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{One, ToPrimitive, Zero};

use crate::residue::poly::inv_mod;

/// Row-reduces `rows` over `F_p` in place and returns the rank.
pub fn fp_rank(rows: &mut [Vec<u64>], p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c] % p, p);
        for x in rows[rank].iter_mut() {
            *x = (*x as u128 * inv as u128 % p as u128) as u64;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_multiple_of(p) {
                let f = rows[r][c] % p;
                for k in 0..cols {
                    let t = (f as u128 * rows[rank][k] as u128 % p as u128) as u64;
                    rows[r][k] = (rows[r][k] % p + p - t) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `Σ c_i v_i = target` over `F_p`, if possible.
pub fn fp_solve(vectors: &[Vec<u64>], target: &[u64], p: u64) -> Option<Vec<u64>> {
    let k = vectors.len();
    let dim = target.len();
    // augmented system: one row per coordinate
    let mut rows: Vec<Vec<u64>> = (0..dim)
        .map(|d| {
            let mut r: Vec<u64> = vectors.iter().map(|v| v[d] % p).collect();
            r.push(target[d] % p);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..k {
        let Some(piv) = (rank..dim).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = (*x as u128 * inv as u128 % p as u128) as u64;
        }
        for r in 0..dim {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for j in 0..=k {
                    let t = (f as u128 * rows[rank][j] as u128 % p as u128) as u64;
                    rows[r][j] = (rows[r][j] + p - t) % p;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[k] != 0) {
        return None;
    }
    let mut sol = vec![0; k];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = rows[r][k];
    }
    Some(sol)
}

/// A dense square complex matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    pub n: usize,
    pub a: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            a: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        CMatrix {
            n,
            a: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.n + j]
    }

    pub fn add(&self, o: &Self) -> Self {
        CMatrix {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        CMatrix {
            n: self.n,
            a: self.a.iter().map(|x| x * k).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                for j in 0..n {
                    out.a[i * n + j] += x * o.a[k * n + j];
                }
            }
        }
        out
    }

    /// Accumulates `X·X*` into `self`.
    pub fn add_gram(&mut self, x: &Self) {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    s += x.a[i * n + k] * x.a[j * n + k].conj();
                }
                self.a[i * n + j] += s;
            }
        }
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let n = self.n;
        let mut a = self.a.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for c in 0..n {
            let piv = (c..n)
                .max_by(|&x, &y| a[x * n + c].norm().total_cmp(&a[y * n + c].norm()))
                .unwrap();
            if a[piv * n + c].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if piv != c {
                for k in 0..n {
                    a.swap(c * n + k, piv * n + k);
                }
                det = -det;
            }
            let d = a[c * n + c];
            det *= d;
            for r in c + 1..n {
                let f = a[r * n + c] / d;
                if f.norm() != 0.0 {
                    for k in c..n {
                        let t = a[c * n + k];
                        a[r * n + k] -= f * t;
                    }
                }
            }
        }
        det
    }
}

type Dyadic = (BigInt, i64);

/// `x = m · 2^e` exactly.
fn dyadic(x: f64) -> Dyadic {
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1 << 52) - 1);
    let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1 << 52), exp - 1075) };
    let m = BigInt::from(m);
    (if x.is_sign_negative() { -m } else { m }, e)
}

/// `b · 2^e` rounded to `f64`.
fn scaled_to_f64(b: &BigInt, mut e: i64) -> f64 {
    let extra = b.bits().saturating_sub(64) as i64;
    let head = (b >> extra as usize).to_f64().unwrap_or(f64::NAN);
    e += extra;
    let mut v = head;
    while e > 0 {
        let s = e.min(512);
        v *= 2f64.powi(s as i32);
        e -= s;
    }
    while e < 0 {
        let s = e.max(-512);
        v *= 2f64.powi(s as i32);
        e -= s;
    }
    v
}

type GaussInt = Complex<BigInt>;

/// Determinant over `Z[i]` by fraction-free (Bareiss) elimination.
fn bareiss(mut a: Vec<GaussInt>, n: usize) -> GaussInt {
    let mut prev = GaussInt::one();
    let mut sign = false;
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return GaussInt::zero();
            };
            for c in 0..n {
                a.swap(k * n + c, r * n + c);
            }
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = t / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    let d = a[n * n - 1].clone();
    if sign { -d } else { d }
}

/// Exact values, rounded once, of `|det X_i|²` for each input and of
/// `det(Σ X_i X_i*)`.
pub fn exact_gram_dets(ms: &[CMatrix]) -> (Vec<f64>, f64) {
    let n = ms.first().map_or(0, |m| m.n);
    let parts: Vec<Vec<(Dyadic, Dyadic)>> = ms
        .iter()
        .map(|m| m.a.iter().map(|z| (dyadic(z.re), dyadic(z.im))).collect())
        .collect();
    let e0 = parts
        .iter()
        .flatten()
        .flat_map(|(r, i)| [r.1, i.1])
        .min()
        .unwrap_or(0);
    let lift = |(m, e): &Dyadic| m << (e - e0) as usize;
    let ints: Vec<Vec<GaussInt>> = parts
        .iter()
        .map(|m| m.iter().map(|(r, i)| GaussInt::new(lift(r), lift(i))).collect())
        .collect();
    let scale = 2 * e0 * n as i64;
    let singles = ints
        .iter()
        .map(|x| {
            let d = bareiss(x.clone(), n);
            scaled_to_f64(&d.norm_sqr(), scale)
        })
        .collect();
    let mut gram = vec![GaussInt::zero(); n * n];
    for x in &ints {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    gram[i * n + j] += &x[i * n + k] * x[j * n + k].conj();
                }
            }
        }
    }
    // Hermitian, so the determinant is real
    let g = bareiss(gram, n);
    (singles, scaled_to_f64(&g.re, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_gram_matches_single_determinant() {
        let m = CMatrix {
            n: 2,
            a: vec![
                Complex64::new(0.1, 0.2),
                Complex64::new(-3.5, 1e-3),
                Complex64::new(7.0, 0.0),
                Complex64::new(0.25, -0.3),
            ],
        };
        let (singles, g) = exact_gram_dets(std::slice::from_ref(&m));
        assert_eq!(singles[0], g);
        assert!((g - m.det().norm_sqr()).abs() <= 1e-12 * g);
    }

    #[test]
    fn rank_and_solve() {
        let mut rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(fp_rank(&mut rows, 7), 2);
        let v = vec![vec![1, 0, 1], vec![0, 1, 1]];
        assert_eq!(fp_solve(&v, &[1, 1, 0], 2), Some(vec![1, 1]));
        assert_eq!(fp_solve(&v, &[1, 1, 1], 2), None);
    }

    #[test]
    fn complex_det() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let m = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 1.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]);
        assert!((m.det() - c(0.0, -1.0)).norm() < 1e-15);
        let mut g = CMatrix::zeros(2);
        g.add_gram(&CMatrix::identity(2));
        g.add_gram(&CMatrix::identity(2));
        assert!((g.det() - c(4.0, 0.0)).norm() < 1e-15);
    }
}
