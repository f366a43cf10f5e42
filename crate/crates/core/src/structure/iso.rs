//! Explicit isomorphisms `Λ/q^sΛ ≅ M_n(O_F/q^s)` when `u ∉ q`.

use serde::Serialize;

use crate::base::{BaseQuotient, Residue};
use crate::error::{AlgebraError, Result};
use crate::extension::{factor_prime, FactorizationData, IdealSpec};
use crate::linalg::fp_solve;
use crate::order::AlgebraSpec;
use crate::residue::component::fp_basis;
use crate::residue::{FieldComponent, GcaElement, QuotientRing, ResidueRing};

use super::matrix::Matrix;
use super::norm::solve_norm_equation;

/// How the certificate was produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    /// `y = wz` with `y^n = 1`; `K̄` acts by left multiplication `λ_x`
    /// and `y` by the matrix `T` of `σ̄`.
    RegularRepresentation {
        norm_solution: String,
        w: String,
        t_matrix: Vec<Vec<String>>,
    },
    /// A full system of matrix units `e_ij` in `Λ/q^sΛ`, lifted from `s = 1`.
    MatrixUnits {
        refinement_rounds: usize,
        #[serde(skip)]
        units: Vec<GcaElement>,
        units_display: Vec<String>,
    },
}

/// An additive, `O_F`-linear map `Λ/q^sΛ → M_n(O_F/q^s)` given by the
/// images of the `O_F/q^s`-basis `b_k z^j` (index `j·n + k`).
#[derive(Clone, Debug, Serialize)]
pub struct IsoCertificate {
    pub n: usize,
    pub coefficient_ring: String,
    #[serde(skip)]
    pub coefficients: BaseQuotient,
    #[serde(skip)]
    pub basis_images: Vec<Matrix>,
    /// Images of `b_0, …, b_{n-1}` followed by the image of `z`.
    pub generator_images: Vec<Vec<Vec<String>>>,
    pub construction: Construction,
    pub verified: bool,
}

impl IsoCertificate {
    fn new(coefficients: BaseQuotient, n: usize, basis_images: Vec<Matrix>, construction: Construction) -> Self {
        let mut gens: Vec<_> = basis_images[..n].iter().map(|m| m.to_strings(&coefficients)).collect();
        let z = if n > 1 {
            basis_images[n].clone()
        } else {
            Matrix::identity(&coefficients, 1)
        };
        gens.push(z.to_strings(&coefficients));
        IsoCertificate {
            n,
            coefficient_ring: format!("{}/({})", coefficients.ring(), coefficients.modulus()),
            coefficients,
            basis_images,
            generator_images: gens,
            construction,
            verified: false,
        }
    }

    /// The image of an arbitrary element.
    pub fn forward(&self, x: &GcaElement) -> Matrix {
        let mut m = Matrix::zero(self.n);
        for (c, img) in x.c.iter().zip(&self.basis_images) {
            m.add_scaled(&self.coefficients, *c, img);
        }
        m
    }

    /// Image of `b_k` (`z^0` part).
    pub fn image_of_k(&self, q: &QuotientRing, k: &[Residue]) -> Matrix {
        self.forward(&q.from_k(k, 0))
    }

    pub fn image_of_z(&self, q: &QuotientRing) -> Matrix {
        self.forward(&q.z())
    }

    /// Checks the defining relations on the generator images:
    /// `Z·λ_b = λ_{σ(b)}·Z`, `λ_{b_i}λ_{b_j} = λ_{b_i b_j}`, `Z^n = ū·I`.
    pub fn relations_hold(&self, q: &QuotientRing) -> bool {
        let bq = &self.coefficients;
        let ring = q.ring();
        let n = self.n;
        let z = self.image_of_z(q);
        for i in 0..n {
            let bi = ring.basis(i);
            let li = self.image_of_k(q, &bi);
            if z.mul(bq, &li) != self.image_of_k(q, &ring.sigma(&bi, 1)).mul(bq, &z) {
                return false;
            }
            for j in 0..n {
                let bj = ring.basis(j);
                if li.mul(bq, &self.image_of_k(q, &bj)) != self.image_of_k(q, &ring.mul(&bi, &bj)) {
                    return false;
                }
            }
        }
        self.image_of_k(q, &ring.one()) == Matrix::identity(bq, n)
            && z.pow(bq, n as u64) == Matrix::scalar(bq, n, q.ubar())
    }
}

fn wrong_case(q: &QuotientRing, why: &str) -> AlgebraError {
    AlgebraError::WrongCase(format!("{} modulo {}: {why}", q.algebra().name(), q.modulus()))
}

/// `λ_x` on the `F̄`-basis `b_j`: column `j` holds the coordinates of `x·b_j`.
fn left_mult(ring: &ResidueRing, x: &[Residue]) -> Matrix {
    let n = ring.degree();
    let mut m = Matrix::zero(n);
    for j in 0..n {
        let col = ring.mul(x, &ring.basis(j));
        for k in 0..n {
            m.a[k * n + j] = col[k];
        }
    }
    m
}

/// The `s = 1` isomorphism for `u ∉ q` (inert or split).
pub fn build_matrix_iso_s1(algebra: &AlgebraSpec, ideal: &IdealSpec) -> Result<IsoCertificate> {
    let q = QuotientRing::new(algebra, ideal)?;
    let fac = factor_prime(algebra.extension(), ideal)?;
    build_s1(&q, &fac)
}

pub(crate) fn build_s1(q: &QuotientRing, fac: &FactorizationData) -> Result<IsoCertificate> {
    let ideal = q.ideal().ok_or_else(|| wrong_case(q, "not a prime power"))?;
    if ideal.s != 1 {
        return Err(wrong_case(q, "needs s = 1"));
    }
    let bq = q.base();
    let ubar_inv = bq.inverse(q.ubar()).ok_or_else(|| wrong_case(q, "u lies in q"))?;
    let ring = q.ring();
    let n = q.degree();
    let p = q.local().unwrap().p();
    let v1 = &fac.residues[0];
    let comp = FieldComponent::new(ring, v1, p)?;
    let field = comp.field();
    // σ^g acts on the component as a power of Frobenius
    let gamma = field.exp(1);
    let moved = comp
        .to_field(ring, &ring.sigma(comp.from_field(gamma), fac.g as i64))
        .ok_or_else(|| AlgebraError::invalid("σ^g does not preserve the first component"))?;
    let frob = (0..field.degree().max(1))
        .find(|&r| field.frobenius(gamma, r) == moved)
        .ok_or_else(|| AlgebraError::invalid("σ^g is not a field automorphism"))?;
    let target = comp
        .to_field(ring, &ring.scale(ubar_inv, v1))
        .ok_or_else(|| AlgebraError::invalid("scalar outside the component"))?;
    let k = solve_norm_equation(field, frob, fac.f, target)?;
    let k_inv = field.inv(k).unwrap();
    let not_v1 = ring.sub(&ring.one(), v1);
    let w = ring.add(comp.from_field(k), &not_v1);
    let w_inv = ring.add(comp.from_field(k_inv), &not_v1);
    // T[k][j] = coefficient k of σ(b_j)
    let mut t = Matrix::zero(n);
    for j in 0..n {
        let s = ring.sigma_row(1, j);
        for kk in 0..n {
            t.a[kk * n + j] = s[kk];
        }
    }
    let z_img = left_mult(ring, &w_inv).mul(bq, &t);
    let mut basis_images = Vec::with_capacity(n * n);
    let mut zj = Matrix::identity(bq, n);
    for _ in 0..n {
        for kk in 0..n {
            basis_images.push(left_mult(ring, &ring.basis(kk)).mul(bq, &zj));
        }
        zj = zj.mul(bq, &z_img);
    }
    let construction = Construction::RegularRepresentation {
        norm_solution: ring.display(comp.from_field(k)),
        w: ring.display(&w),
        t_matrix: t.to_strings(bq),
    };
    let cert = IsoCertificate::new(bq.clone(), n, basis_images, construction);
    debug_assert!(cert.relations_hold(q));
    Ok(cert)
}

/// An `F_p`-basis of `Λ/qΛ` (q prime).
fn gca_fp_basis(q: &QuotientRing) -> Vec<GcaElement> {
    let n = q.degree();
    (0..n)
        .flat_map(|j| fp_basis(q.ring()).into_iter().map(move |k| (j, k)))
        .map(|(j, k)| q.from_k(&k, j))
        .collect()
}

fn matrix_fp_coords(bq: &BaseQuotient, m: &Matrix) -> Vec<u64> {
    m.a.iter().flat_map(|&c| bq.coords(c)).map(|a| a as u64).collect()
}

/// Preimages of the elementary matrices under an `s = 1` certificate.
fn preimages_of_units(q1: &QuotientRing, cert: &IsoCertificate) -> Result<Vec<GcaElement>> {
    let n = q1.degree();
    let bq = q1.base();
    let p = q1.local().unwrap().p();
    let basis = gca_fp_basis(q1);
    let images: Vec<Vec<u64>> = basis.iter().map(|b| matrix_fp_coords(bq, &cert.forward(b))).collect();
    let mut out = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let target = matrix_fp_coords(bq, &Matrix::unit(bq, n, r, c));
            let sol = fp_solve(&images, &target, p)
                .ok_or_else(|| AlgebraError::invalid("s = 1 certificate is not surjective"))?;
            let mut x = q1.zero();
            for (b, &coef) in basis.iter().zip(&sol) {
                x = q1.add(&x, &q1.scale(bq.from_i64(coef as i64), b));
            }
            out.push(x);
        }
    }
    Ok(out)
}

/// Refines an approximate idempotent by `e ← 3e² − 2e³`.
fn refine_idempotent(q: &QuotientRing, mut e: GcaElement, max_rounds: usize) -> Result<(GcaElement, usize)> {
    let bq = q.base();
    let three = bq.from_i64(3);
    let two = bq.from_i64(2);
    for round in 0..=max_rounds {
        let e2 = q.mul(&e, &e);
        if e2 == e {
            return Ok((e, round));
        }
        if round == max_rounds {
            break;
        }
        let e3 = q.mul(&e2, &e);
        e = q.sub(&q.scale(three, &e2), &q.scale(two, &e3));
    }
    Err(AlgebraError::LiftDivergence { rounds: max_rounds })
}

/// Inverse of `c` in the corner ring `eRe`, where `c ≡ e` modulo the
/// nilpotent ideal `q`.
fn corner_inverse(q: &QuotientRing, e: &GcaElement, c: &GcaElement, s: u32) -> Result<GcaElement> {
    let t = q.sub(e, c);
    let mut acc = e.clone();
    let mut pw = e.clone();
    for _ in 0..=s * q.degree() as u32 {
        pw = q.mul(&pw, &t);
        if pw.is_zero() {
            return Ok(acc);
        }
        acc = q.add(&acc, &pw);
    }
    Err(AlgebraError::LiftDivergence { rounds: s as usize })
}

/// Lifts the `s = 1` matrix units to `Λ/q^sΛ` and reads off the induced
/// isomorphism to `M_n(O_F/q^s)`.
pub fn lift_matrix_iso_power(algebra: &AlgebraSpec, ideal: &IdealSpec) -> Result<IsoCertificate> {
    let q = QuotientRing::new(algebra, ideal)?;
    let fac = factor_prime(algebra.extension(), ideal)?;
    lift_power(&q, &fac)
}

pub(crate) fn lift_power(q: &QuotientRing, fac: &FactorizationData) -> Result<IsoCertificate> {
    let ideal = q.ideal().ok_or_else(|| wrong_case(q, "not a prime power"))?.clone();
    if ideal.s < 2 {
        return Err(wrong_case(q, "needs s > 1"));
    }
    if ideal.alpha.divides(q.algebra().u()) {
        return Err(wrong_case(q, "u lies in q"));
    }
    let local = q.local().unwrap();
    let n = q.degree();
    let s = ideal.s;
    let q1 = QuotientRing::new(q.algebra(), &IdealSpec::new(ideal.alpha.clone(), 1)?)?;
    let cert1 = build_s1(&q1, fac)?;
    let approx: Vec<GcaElement> = preimages_of_units(&q1, &cert1)?
        .iter()
        .map(|x| GcaElement {
            c: x.c.iter().map(|&r| local.lift_from_residue_field(r)).collect(),
        })
        .collect();
    let at = |r: usize, c: usize| &approx[r * n + c];
    let max_rounds = s as usize + 2;
    // diagonal idempotents, each refined inside the complement of the previous ones
    let mut diag = Vec::with_capacity(n);
    let mut rest = q.one();
    let mut rounds = 0;
    for i in 0..n {
        if i + 1 == n {
            diag.push(rest.clone());
            break;
        }
        let f = q.mul(&q.mul(&rest, at(i, i)), &rest);
        let (e, r) = refine_idempotent(q, f, max_rounds)?;
        rounds = rounds.max(r);
        rest = q.sub(&rest, &e);
        diag.push(e);
    }
    let e11 = &diag[0];
    let mut first_row = vec![e11.clone()];
    let mut first_col = vec![e11.clone()];
    for i in 1..n {
        let a = q.mul(&q.mul(e11, at(0, i)), &diag[i]);
        let b = q.mul(&q.mul(&diag[i], at(i, 0)), e11);
        let c = q.mul(&a, &b);
        let cinv = corner_inverse(q, e11, &c, s)?;
        first_row.push(a);
        first_col.push(q.mul(&b, &cinv));
    }
    let units: Vec<GcaElement> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .map(|(r, c)| q.mul(&first_col[r], &first_row[c]))
        .collect();
    // read coordinates against a unit coefficient of e11
    let bq = q.base();
    let pivot = e11
        .c
        .iter()
        .position(|&r| bq.is_unit(r))
        .ok_or_else(|| AlgebraError::invalid("e11 has no unit coefficient"))?;
    let pinv = bq.inverse(e11.c[pivot]).unwrap();
    let mut basis_images = Vec::with_capacity(n * n);
    for idx in 0..n * n {
        let mut beta = q.zero();
        beta.c[idx] = bq.one();
        let mut m = Matrix::zero(n);
        for a in 0..n {
            let left = q.mul(&first_row[a], &beta);
            for b in 0..n {
                let y = q.mul(&left, &first_col[b]);
                let coef = bq.mul(y.c[pivot], pinv);
                if q.scale(coef, e11) != y {
                    return Err(AlgebraError::invalid("corner element is not a scalar multiple of e11"));
                }
                m.a[a * n + b] = coef;
            }
        }
        basis_images.push(m);
    }
    let units_display = units.iter().map(|u| q.display(u)).collect();
    let construction = Construction::MatrixUnits {
        refinement_rounds: rounds,
        units,
        units_display,
    };
    Ok(IsoCertificate::new(bq.clone(), n, basis_images, construction))
}

/// Checks `Σ e_ii = 1` and `e_ij e_kl = δ_jk e_il`.
pub fn matrix_units_hold(q: &QuotientRing, units: &[GcaElement]) -> bool {
    let n = q.degree();
    let sum = (0..n).fold(q.zero(), |acc, i| q.add(&acc, &units[i * n + i]));
    if sum != q.one() {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let prod = q.mul(&units[i * n + j], &units[k * n + l]);
                    let want = if j == k { units[i * n + l].clone() } else { q.zero() };
                    if prod != want {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin_algebra;

    #[test]
    fn golden_s1_relations() {
        let a = builtin_algebra("golden_u_i").unwrap();
        let ideal = IdealSpec::parse(a.base(), "1+i").unwrap();
        let q = QuotientRing::new(&a, &ideal).unwrap();
        let cert = build_matrix_iso_s1(&a, &ideal).unwrap();
        assert!(cert.relations_hold(&q));
        assert_eq!(cert.forward(&q.one()), Matrix::identity(q.base(), 2));
    }

    #[test]
    fn split_s1_relations() {
        let a = builtin_algebra("gauss_over_Q").unwrap();
        let ideal = IdealSpec::parse(a.base(), "5").unwrap();
        let q = QuotientRing::new(&a, &ideal).unwrap();
        let cert = build_matrix_iso_s1(&a, &ideal).unwrap();
        assert!(cert.relations_hold(&q));
    }

    #[test]
    fn golden_lift_to_s2() {
        let a = builtin_algebra("golden_u_i").unwrap();
        let ideal = IdealSpec::parse(a.base(), "1+i:2").unwrap();
        let q = QuotientRing::new(&a, &ideal).unwrap();
        let cert = lift_matrix_iso_power(&a, &ideal).unwrap();
        let Construction::MatrixUnits { units, .. } = &cert.construction else {
            panic!()
        };
        assert!(matrix_units_hold(&q, units));
        assert!(cert.relations_hold(&q));
        // the units reduce to the s = 1 preimages
        let q1 = QuotientRing::new(&a, &IdealSpec::parse(a.base(), "1+i").unwrap()).unwrap();
        let c1 = build_matrix_iso_s1(&a, &IdealSpec::parse(a.base(), "1+i").unwrap()).unwrap();
        let local = q.local().unwrap();
        for (idx, u) in units.iter().enumerate() {
            let red = GcaElement {
                c: u.c.iter().map(|&r| local.to_residue_field(r)).collect(),
            };
            assert_eq!(c1.forward(&red), Matrix::unit(q1.base(), 2, idx / 2, idx % 2));
        }
    }
}
