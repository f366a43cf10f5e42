//! A field factor `v·(O_K/qO_K)` identified with an explicit [`FiniteField`].

use std::collections::HashMap;

use crate::base::Residue;
use crate::error::{AlgebraError, Result};
use crate::linalg::{fp_rank, fp_solve};

use super::field::FiniteField;
use super::poly::{prime_factors, FpPoly};
use super::ring::{KResidue, ResidueRing};

/// The component `C = v·R` of a residue ring `R = O_K/qO_K` (q prime,
/// `v` a primitive idempotent), with mutually inverse maps to a table field.
#[derive(Clone, Debug)]
pub struct FieldComponent {
    field: FiniteField,
    unit: KResidue,
    from_field: Vec<KResidue>,
    to_field: HashMap<u64, u32>,
}

/// `F_p`-coordinates of an element of `O_K/qO_K` (q prime).
pub(crate) fn fp_coords(ring: &ResidueRing, x: &[Residue]) -> Vec<u64> {
    x.iter().flat_map(|&c| ring.base().coords(c)).map(|a| a as u64).collect()
}

/// An `F_p`-basis of `O_K/qO_K` (q prime).
pub(crate) fn fp_basis(ring: &ResidueRing) -> Vec<KResidue> {
    let dims = ring.base().coords(Residue::ZERO).len();
    let mut out = Vec::new();
    for k in 0..ring.degree() {
        for d in 0..dims {
            let mut x = ring.zero();
            x[k] = if d == 0 { Residue { a: 1, b: 0 } } else { Residue { a: 0, b: 1 } };
            out.push(x);
        }
    }
    out
}

impl FieldComponent {
    /// `p` is the characteristic; the base modulus must be prime.
    pub fn new(ring: &ResidueRing, unit: &[Residue], p: u64) -> Result<Self> {
        let mut span: Vec<Vec<u64>> = fp_basis(ring)
            .iter()
            .map(|b| fp_coords(ring, &ring.mul(unit, b)))
            .collect();
        let dim = fp_rank(&mut span, p);
        let size = p.checked_pow(dim as u32).filter(|&s| s <= 1 << 24).ok_or(AlgebraError::UnsupportedSize {
            size: (p as u128).pow(dim as u32),
            limit: 1 << 24,
        })?;
        let order = size - 1;
        let factors = prime_factors(order);
        let is_generator = |g: &KResidue| {
            ring.pow(g, order) == unit && factors.iter().all(|&r| ring.pow(g, order / r) != unit)
        };
        let mut gamma = None;
        for i in 1..ring.size() as u64 {
            let g = ring.mul(unit, &ring.from_index(i));
            if !ring.is_zero(&g) && is_generator(&g) {
                gamma = Some(g);
                break;
            }
        }
        let gamma = gamma.ok_or_else(|| AlgebraError::invalid("component is not a field"))?;
        // minimal polynomial of γ over F_p
        let mut powers = vec![unit.to_vec()];
        for k in 1..=dim {
            powers.push(ring.mul(&powers[k - 1], &gamma));
        }
        let vecs: Vec<Vec<u64>> = powers[..dim].iter().map(|x| fp_coords(ring, x)).collect();
        let c = fp_solve(&vecs, &fp_coords(ring, &powers[dim]), p)
            .ok_or_else(|| AlgebraError::invalid("component is not a field"))?;
        let mut coeffs: Vec<u64> = c.iter().map(|&x| (p - x) % p).collect();
        coeffs.push(1);
        let modulus = FpPoly::new(p, coeffs);
        let field = FiniteField::new(modulus.clone())?;
        let tau = field.from_coeffs(FpPoly::x(p).rem(&modulus).coeffs());
        let mut from_field = vec![ring.zero(); size as usize];
        let mut to_field = HashMap::with_capacity(size as usize);
        to_field.insert(ring.index(&ring.zero()), field.zero());
        let (mut a, mut g) = (field.one(), unit.to_vec());
        for _ in 0..order {
            to_field.insert(ring.index(&g), a);
            from_field[a as usize] = g.clone();
            a = field.mul(a, tau);
            g = ring.mul(&g, &gamma);
        }
        Ok(FieldComponent {
            field,
            unit: unit.to_vec(),
            from_field,
            to_field,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn unit(&self) -> &[Residue] {
        &self.unit
    }

    pub fn size(&self) -> u64 {
        self.field.size()
    }

    /// Image of an element of the component (`None` if outside it).
    pub fn to_field(&self, ring: &ResidueRing, x: &[Residue]) -> Option<u32> {
        self.to_field.get(&ring.index(x)).copied()
    }

    pub fn from_field(&self, a: u32) -> &[Residue] {
        &self.from_field[a as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseQuotient;
    use crate::extension::IdealSpec;
    use crate::io::builtin_algebra;

    #[test]
    fn golden_residue_field_is_f4() {
        let a = builtin_algebra("golden_u_i").unwrap();
        let q = IdealSpec::parse(a.base(), "1+i").unwrap();
        let ring = ResidueRing::new(a.extension(), BaseQuotient::new(&q.alpha).unwrap());
        let c = FieldComponent::new(&ring, &ring.one(), 2).unwrap();
        assert_eq!(c.size(), 4);
        for x in c.field().elements() {
            for y in c.field().elements() {
                let prod = ring.mul(c.from_field(x), c.from_field(y));
                assert_eq!(c.to_field(&ring, &prod), Some(c.field().mul(x, y)));
                let sum = ring.add(c.from_field(x), c.from_field(y));
                assert_eq!(c.to_field(&ring, &sum), Some(c.field().add(x, y)));
            }
        }
    }

    #[test]
    fn split_components_are_prime_fields() {
        let a = builtin_algebra("gauss_over_Q").unwrap();
        let q = IdealSpec::parse(a.base(), "5").unwrap();
        let d = crate::extension::factor_prime(a.extension(), &q).unwrap();
        let ring = ResidueRing::new(a.extension(), BaseQuotient::new(&q.alpha).unwrap());
        for v in &d.residues {
            let c = FieldComponent::new(&ring, v, 5).unwrap();
            assert_eq!(c.size(), 5);
            assert_eq!(c.from_field(c.field().one()), v.as_slice());
        }
    }
}
