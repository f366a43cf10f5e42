//! The natural order `Λ = ⊕ O_K z^j` of a cyclic algebra `(K/F, σ, u)`.

use std::fmt;

use num_traits::ToPrimitive;

use crate::base::{BaseElement, BaseRing};
use crate::error::{AlgebraError, Result};
use crate::extension::{ExtensionSpec, OkElement};
use crate::linalg::CMatrix;

/// A cyclic algebra with `zk = σ(k)z` and `z^n = u`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    extension: ExtensionSpec,
    u: BaseElement,
    claims_division: bool,
    description: String,
}

/// `x_0 + x_1 z + … + x_{n-1} z^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderElement {
    pub zcoords: Vec<OkElement>,
}

impl OrderElement {
    pub fn is_zero(&self) -> bool {
        self.zcoords.iter().all(OkElement::is_zero)
    }
}

impl fmt::Display for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .zcoords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => c.to_string(),
                1 => format!("{c}z"),
                _ => format!("{c}z^{j}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `M(x)`, an `n × n` matrix over `O_K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedMatrix {
    pub entries: Vec<Vec<OkElement>>,
}

/// Determinant by Laplace expansion along the first row; fine for `n ≤ 4`.
pub(crate) fn laplace_det<T: Clone>(
    m: &[Vec<T>],
    zero: &T,
    mul: &dyn Fn(&T, &T) -> T,
    add: &dyn Fn(&T, &T) -> T,
    neg: &dyn Fn(&T) -> T,
) -> T {
    fn rec<T: Clone>(
        m: &[Vec<T>],
        rows: &[usize],
        cols: &mut Vec<usize>,
        zero: &T,
        mul: &dyn Fn(&T, &T) -> T,
        add: &dyn Fn(&T, &T) -> T,
        neg: &dyn Fn(&T) -> T,
    ) -> T {
        if rows.is_empty() {
            unreachable!()
        }
        if rows.len() == 1 {
            return m[rows[0]][cols[0]].clone();
        }
        let mut acc = zero.clone();
        for k in 0..cols.len() {
            let c = cols.remove(k);
            let minor = rec(m, &rows[1..], cols, zero, mul, add, neg);
            cols.insert(k, c);
            let t = mul(&m[rows[0]][c], &minor);
            acc = if k % 2 == 0 { add(&acc, &t) } else { add(&acc, &neg(&t)) };
        }
        acc
    }
    let rows: Vec<usize> = (0..m.len()).collect();
    let mut cols = rows.clone();
    rec(m, &rows, &mut cols, zero, mul, add, neg)
}

impl AlgebraSpec {
    pub fn new(extension: ExtensionSpec, u: BaseElement, claims_division: bool) -> Result<Self> {
        if u.ring() != extension.base() {
            return Err(AlgebraError::IncompatibleRings(
                u.ring().to_string(),
                extension.base().to_string(),
            ));
        }
        if u.is_zero() {
            return Err(AlgebraError::invalid("u must be nonzero"));
        }
        Ok(AlgebraSpec {
            extension,
            u,
            claims_division,
            description: String::new(),
        })
    }

    pub fn with_description(mut self, d: String) -> Self {
        self.description = d;
        self
    }

    /// Same extension, different `u`.
    pub fn with_u(&self, u: BaseElement) -> Result<Self> {
        let mut a = AlgebraSpec::new(self.extension.clone(), u, false)?;
        a.description = format!("{} with u replaced", self.name());
        Ok(a)
    }

    pub fn name(&self) -> &str {
        self.extension.name()
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn extension(&self) -> &ExtensionSpec {
        &self.extension
    }

    pub fn u(&self) -> &BaseElement {
        &self.u
    }

    pub fn claims_division(&self) -> bool {
        self.claims_division
    }

    pub fn degree(&self) -> usize {
        self.extension.degree()
    }

    pub fn base(&self) -> BaseRing {
        self.extension.base()
    }

    pub fn zero(&self) -> OrderElement {
        OrderElement {
            zcoords: vec![self.extension.zero(); self.degree()],
        }
    }

    pub fn one(&self) -> OrderElement {
        self.from_ok(self.extension.one(), 0)
    }

    /// `k·z^j`.
    pub fn from_ok(&self, k: OkElement, j: usize) -> OrderElement {
        let mut x = self.zero();
        x.zcoords[j] = k;
        x
    }

    pub fn from_base(&self, c: &BaseElement) -> OrderElement {
        self.from_ok(self.extension.from_base(c), 0)
    }

    /// Parses `x_0; x_1; …` where each block lists the `O_F`-coordinates
    /// of `x_j` in the integral basis, comma separated (`"1, 0; 0, 1+i"` is
    /// `1 + θz` for basis `1, θ`). Missing trailing entries are zero and
    /// square brackets are ignored.
    pub fn parse_element(&self, s: &str) -> Result<OrderElement> {
        let n = self.degree();
        let cleaned: String = s.chars().filter(|c| !matches!(c, '[' | ']')).collect();
        let blocks: Vec<&str> = cleaned.split(';').collect();
        if blocks.len() > n {
            return Err(AlgebraError::invalid(format!("{s:?} has more than {n} z-blocks")));
        }
        let mut x = self.zero();
        for (j, block) in blocks.iter().enumerate() {
            if block.trim().is_empty() {
                continue;
            }
            let coords: Vec<&str> = block.split(',').collect();
            if coords.len() > n {
                return Err(AlgebraError::invalid(format!("block {block:?} has more than {n} coordinates")));
            }
            let mut full = vec![BaseElement::zero(self.base()); n];
            for (k, c) in coords.iter().enumerate() {
                full[k] = BaseElement::parse(self.base(), c.trim())?;
            }
            x.zcoords[j] = OkElement::new(full);
        }
        Ok(x)
    }

    pub fn z(&self) -> OrderElement {
        if self.degree() == 1 {
            return self.from_base(&self.u);
        }
        self.from_ok(self.extension.one(), 1)
    }

    fn check(&self, x: &OrderElement) -> Result<()> {
        let n = self.degree();
        if x.zcoords.len() != n || x.zcoords.iter().any(|c| c.degree() != n) {
            return Err(AlgebraError::IncompatibleAlgebras(format!(
                "element of shape {} used in {}",
                x.zcoords.len(),
                self.name()
            )));
        }
        match x.zcoords.iter().flat_map(|c| &c.coords).find(|c| c.ring() != self.base()) {
            Some(c) => Err(AlgebraError::IncompatibleRings(c.ring().to_string(), self.base().to_string())),
            None => Ok(()),
        }
    }

    pub fn add(&self, x: &OrderElement, y: &OrderElement) -> OrderElement {
        OrderElement {
            zcoords: x.zcoords.iter().zip(&y.zcoords).map(|(a, b)| self.extension.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, x: &OrderElement, y: &OrderElement) -> OrderElement {
        OrderElement {
            zcoords: x.zcoords.iter().zip(&y.zcoords).map(|(a, b)| self.extension.sub(a, b)).collect(),
        }
    }

    pub fn neg(&self, x: &OrderElement) -> OrderElement {
        OrderElement {
            zcoords: x.zcoords.iter().map(|a| self.extension.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: &BaseElement, x: &OrderElement) -> OrderElement {
        OrderElement {
            zcoords: x.zcoords.iter().map(|a| self.extension.scale(c, a)).collect(),
        }
    }

    /// Checked product in `Λ`.
    pub fn order_mul(&self, x: &OrderElement, y: &OrderElement) -> Result<OrderElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// `(Σ a_i z^i)(Σ b_j z^j) = Σ a_i σ^i(b_j) z^{i+j}` with `z^n = u`.
    pub fn mul(&self, x: &OrderElement, y: &OrderElement) -> OrderElement {
        let e = &self.extension;
        let n = self.degree();
        let mut out = self.zero();
        for (i, a) in x.zcoords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.zcoords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut t = e.mul(a, &e.apply_sigma(b, i as i64));
                if i + j >= n {
                    t = e.scale(&self.u, &t);
                }
                let k = (i + j) % n;
                out.zcoords[k] = e.add(&out.zcoords[k], &t);
            }
        }
        out
    }

    pub fn pow(&self, x: &OrderElement, mut e: u64) -> OrderElement {
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

    /// Column `c` holds the `z`-coordinates of `z^c·x`: entry `(r, c)` is
    /// `σ^c(x_{r-c})`, times `u` when the index wraps (`r < c`).
    pub fn matrix_embedding(&self, x: &OrderElement) -> EmbeddedMatrix {
        let n = self.degree();
        let e = &self.extension;
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let v = e.apply_sigma(&x.zcoords[(r + n - c) % n], c as i64);
                        if r < c {
                            e.scale(&self.u, &v)
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        EmbeddedMatrix { entries }
    }

    /// Product of two embedded matrices over `O_K`.
    pub fn matrix_mul(&self, a: &EmbeddedMatrix, b: &EmbeddedMatrix) -> EmbeddedMatrix {
        let n = self.degree();
        let e = &self.extension;
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        (0..n).fold(e.zero(), |acc, k| {
                            e.add(&acc, &e.mul(&a.entries[r][k], &b.entries[k][c]))
                        })
                    })
                    .collect()
            })
            .collect();
        EmbeddedMatrix { entries }
    }

    fn ok_det(&self, m: &[Vec<OkElement>]) -> OkElement {
        let e = &self.extension;
        laplace_det(m, &e.zero(), &|a, b| e.mul(a, b), &|a, b| e.add(a, b), &|a| e.neg(a))
    }

    /// The literal determinant of `M(x)`, as an element of `O_F`.
    pub fn reduced_det(&self, x: &OrderElement) -> Result<BaseElement> {
        let d = self.ok_det(&self.matrix_embedding(x).entries);
        if !self.extension.is_sigma_fixed(&d) {
            return Err(AlgebraError::NotInBaseRing(d.to_string()));
        }
        self.extension
            .as_base(&d)
            .ok_or_else(|| AlgebraError::NotInBaseRing(d.to_string()))
    }

    /// Coefficients `c_0, …, c_n` of `det(tI − M(x))`, each checked to lie in `O_F`.
    pub fn charpoly(&self, x: &OrderElement) -> Result<Vec<BaseElement>> {
        let e = &self.extension;
        let n = self.degree();
        type Poly = Vec<OkElement>;
        let m = self.matrix_embedding(x);
        let pm: Vec<Vec<Poly>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let mut p = vec![e.neg(&m.entries[r][c])];
                        if r == c {
                            p.push(e.one());
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        let add = |a: &Poly, b: &Poly| -> Poly {
            (0..a.len().max(b.len()))
                .map(|k| match (a.get(k), b.get(k)) {
                    (Some(x), Some(y)) => e.add(x, y),
                    (Some(x), None) | (None, Some(x)) => x.clone(),
                    _ => unreachable!(),
                })
                .collect()
        };
        let mul = |a: &Poly, b: &Poly| -> Poly {
            let mut out = vec![e.zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = e.add(&out[i + j], &e.mul(x, y));
                }
            }
            out
        };
        let neg = |a: &Poly| -> Poly { a.iter().map(|x| e.neg(x)).collect() };
        let det = laplace_det(&pm, &vec![e.zero()], &mul, &add, &neg);
        det.iter()
            .take(n + 1)
            .map(|c| {
                if e.is_sigma_fixed(c) {
                    e.as_base(c).ok_or_else(|| AlgebraError::NotInBaseRing(c.to_string()))
                } else {
                    Err(AlgebraError::NotInBaseRing(c.to_string()))
                }
            })
            .collect()
    }

    /// `|φ(det M(x))|²` for the fixed embedding `φ` of `F`. For the
    /// imaginary quadratic bases this is the norm, for ℤ the square.
    pub fn abs_det_sq(&self, x: &OrderElement) -> Result<f64> {
        Ok(self.reduced_det(x)?.norm().to_f64().unwrap_or(f64::INFINITY))
    }

    /// `M(x)` under the embedding `φ_0` of `K`.
    pub fn numeric_matrix(&self, x: &OrderElement) -> CMatrix {
        let m = self.matrix_embedding(x);
        let rows: Vec<Vec<_>> = m
            .entries
            .iter()
            .map(|r| r.iter().map(|c| self.extension.embed_complex(c, 0)).collect())
            .collect();
        CMatrix::from_rows(&rows)
    }

    pub fn display(&self, x: &OrderElement) -> String {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin_algebra;

    #[test]
    fn z_relations() {
        let a = builtin_algebra("golden_u_i").unwrap();
        let e = a.extension();
        let z = a.z();
        assert_eq!(a.mul(&z, &z), a.from_base(a.u()));
        let theta = a.from_ok(e.basis(1), 0);
        assert_eq!(a.mul(&z, &theta), a.from_ok(e.from_ints(&[1, -1]), 1));
        let m = a.matrix_embedding(&z);
        assert!(m.entries[0][0].is_zero() && m.entries[1][1].is_zero());
        assert_eq!(m.entries[0][1], e.from_base(a.u()));
        assert_eq!(m.entries[1][0], e.one());
        assert_eq!(a.reduced_det(&z).unwrap(), -a.u().clone());
    }

    #[test]
    fn parses_elements() {
        let a = builtin_algebra("golden_u_i").unwrap();
        let theta_z = a.from_ok(a.extension().basis(1), 1);
        assert_eq!(a.parse_element("[1, 0]; [0, 1]").unwrap(), a.add(&a.one(), &theta_z));
        assert_eq!(a.parse_element("0; 1").unwrap(), a.z());
        assert_eq!(a.parse_element("1+i").unwrap(), a.from_base(&BaseElement::new(a.base(), 1, 1)));
        assert!(a.parse_element("1;2;3").is_err());
    }

    #[test]
    fn determinants_of_scalars_and_z_powers() {
        for name in crate::io::builtin_names() {
            let a = builtin_algebra(name).unwrap();
            let n = a.degree() as u64;
            let alpha = BaseElement::parse(a.base(), "3").unwrap();
            assert_eq!(a.reduced_det(&a.from_base(&alpha)).unwrap(), alpha.pow(n));
            for j in 0..=n {
                let d = a.reduced_det(&a.pow(&a.z(), j)).unwrap();
                assert_eq!(d.norm(), a.u().pow(j).norm());
            }
        }
    }

    #[test]
    fn charpoly_constant_term_is_signed_det() {
        let a = builtin_algebra("q7_cubic").unwrap();
        let e = a.extension();
        let x = OrderElement {
            zcoords: vec![e.from_ints(&[1, 2, 0]), e.from_ints(&[0, -1, 1]), e.from_ints(&[3, 0, 0])],
        };
        let cp = a.charpoly(&x).unwrap();
        assert_eq!(cp.len(), 4);
        assert!(cp[3].is_one());
        // det(−M) = −det(M) for n = 3
        assert_eq!(cp[0], -a.reduced_det(&x).unwrap());
    }
}
