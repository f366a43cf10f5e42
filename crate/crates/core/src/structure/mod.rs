//! Classification of `Λ/q^sΛ`: case analysis, isomorphism certificates to
//! matrix rings, and two-sided ideal lattices.

pub mod iso;
pub mod matrix;
pub mod monomial;
pub mod norm;
pub mod verify;

pub use iso::{build_matrix_iso_s1, lift_matrix_iso_power, matrix_units_hold, Construction, IsoCertificate};
pub use matrix::Matrix;
pub use monomial::{enumerate_monomial_ideals, monomial_element, stairwell_contains, MonomialIdeal};
pub use norm::{field_norm, solve_norm_equation};
pub use verify::{verify_isomorphism, VerificationReport, VerifyMode, VerifyOptions};

use std::collections::BTreeSet;

use serde::Serialize;

use crate::base::{BaseElement, BaseRing};
use crate::error::{AlgebraError, Result};
use crate::exec::Execution;
use crate::extension::{factor_prime, FactorizationData, IdealSpec};
use crate::order::AlgebraSpec;
use crate::residue::ideals::{all_two_sided_ideals, ideal_generated, IDEAL_SEARCH_LIMIT};
use crate::residue::{skew_poly_ideal_chain, GcaElement, QuotientRing, SkewIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StructureCase {
    InertUnit,
    InertNilpotent,
    InertUnitPower,
    SplitUnit,
    SplitNilpotent,
    SplitUnitPower,
}

impl StructureCase {
    pub fn classify(g: usize, u_in_q: bool, s: u32) -> Result<Self> {
        use StructureCase::*;
        Ok(match (g > 1, u_in_q, s > 1) {
            (false, false, false) => InertUnit,
            (false, true, false) => InertNilpotent,
            (false, false, true) => InertUnitPower,
            (true, false, false) => SplitUnit,
            (true, true, false) => SplitNilpotent,
            (true, false, true) => SplitUnitPower,
            (_, true, true) => {
                return Err(AlgebraError::UnsupportedCase(
                    "u ∈ q with s > 1 is not classified".into(),
                ))
            }
        })
    }

    pub fn has_matrix_target(self) -> bool {
        !matches!(self, StructureCase::InertNilpotent | StructureCase::SplitNilpotent)
    }
}

/// The ring `Λ/q^sΛ` was identified with.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TargetRing {
    pub kind: String,
    pub description: String,
    pub matrix_size: Option<usize>,
    pub coefficient_ring: Option<String>,
    pub coefficient_ring_alt: Option<String>,
    pub size: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealDescriptor {
    pub name: String,
    pub generators: Vec<String>,
    pub size: u128,
    #[serde(skip)]
    pub generator_elements: Vec<GcaElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub algebra: String,
    pub ideal: String,
    pub case: StructureCase,
    pub g: usize,
    pub e: usize,
    pub f: usize,
    pub u_in_q: bool,
    pub cardinality: u128,
    pub target: TargetRing,
    pub iso: Option<IsoCertificate>,
    pub ideal_lattice: Vec<IdealDescriptor>,
    pub monomial_ideals: Option<Vec<MonomialIdeal>>,
    pub skew_chain: Option<Vec<SkewIdeal>>,
    #[serde(skip)]
    pub quotient: QuotientRing,
    #[serde(skip)]
    pub factorization: FactorizationData,
}

fn field_name(size: u64) -> String {
    format!("F_{size}")
}

fn delta_poly(ring: BaseRing) -> &'static str {
    match ring {
        BaseRing::GaussianIntegers => "x^2+1",
        BaseRing::EisensteinIntegers => "x^2+x+1",
        BaseRing::RationalIntegers => "x",
    }
}

/// `O_F/(α^s)` as text, plus `(ℤ/N)[x]/(δ-poly)` when `α^s` is associate
/// to a rational integer `N`.
fn coefficient_names(ideal: &IdealSpec) -> (String, Option<String>) {
    let ring = ideal.alpha.ring();
    let m = ideal.generator();
    let main = if ideal.s == 1 {
        format!("{}/({})", ring, ideal.alpha)
    } else {
        format!("{}/(({})^{})", ring, ideal.alpha, ideal.s)
    };
    if ring == BaseRing::RationalIntegers {
        return (main, None);
    }
    let alt = ring.units().iter().find_map(|e| {
        let t = &m * e;
        (t.b().sign() == num_bigint::Sign::NoSign).then(|| t.a().magnitude().clone())
    });
    let alt = alt.map(|n| {
        let coeff = match n.to_string().parse::<u64>() {
            Ok(v) if crate::base::is_prime_u64(v) => format!("F_{v}"),
            _ => format!("(Z/{n})"),
        };
        format!("{coeff}[x]/({})", delta_poly(ring))
    });
    (main, alt)
}

fn scalar_ideal_name(alpha: &BaseElement, t: u32) -> String {
    match t {
        1 => format!("({alpha})Λ"),
        _ => format!("({alpha})^{t}Λ"),
    }
}

/// Classifies `Λ/q^sΛ` and builds the certificate and ideal lattice.
pub fn identify_quotient(algebra: &AlgebraSpec, ideal: &IdealSpec) -> Result<StructureReport> {
    identify_quotient_with(algebra, ideal, Execution::default())
}

pub fn identify_quotient_with(algebra: &AlgebraSpec, ideal: &IdealSpec, exec: Execution) -> Result<StructureReport> {
    let fac = crate::extension::factor::factor_prime_with(algebra.extension(), ideal, exec)?;
    let u_in_q = ideal.alpha.divides(algebra.u());
    let case = StructureCase::classify(fac.g, u_in_q, ideal.s)?;
    let q = QuotientRing::new(algebra, ideal)?;
    let n = algebra.degree();
    let fbar = q.local().unwrap().residue_field().size();
    let (coef, coef_alt) = coefficient_names(ideal);
    let cardinality = q.cardinality();
    let mut report = StructureReport {
        algebra: algebra.name().to_string(),
        ideal: ideal.to_string(),
        case,
        g: fac.g,
        e: fac.e,
        f: fac.f,
        u_in_q,
        cardinality,
        target: TargetRing {
            kind: String::new(),
            description: String::new(),
            matrix_size: None,
            coefficient_ring: None,
            coefficient_ring_alt: None,
            size: cardinality,
        },
        iso: None,
        ideal_lattice: Vec::new(),
        monomial_ideals: None,
        skew_chain: None,
        quotient: q.clone(),
        factorization: fac.clone(),
    };
    match case {
        StructureCase::InertUnit | StructureCase::SplitUnit => {
            report.iso = Some(iso::build_s1(&q, &fac)?);
        }
        StructureCase::InertUnitPower | StructureCase::SplitUnitPower => {
            report.iso = Some(iso::lift_power(&q, &fac)?);
        }
        _ => {}
    }
    if case.has_matrix_target() {
        let coefficients = if ideal.s == 1 { field_name(fbar) } else { coef.clone() };
        report.target = TargetRing {
            kind: "matrix_ring".into(),
            description: format!("M_{n}({coefficients})"),
            matrix_size: Some(n),
            coefficient_ring: Some(coefficients),
            coefficient_ring_alt: if ideal.s == 1 { Some(coef) } else { coef_alt },
            size: cardinality,
        };
        let per_level = (fbar as u128).pow((n * n) as u32);
        report.ideal_lattice = (0..=ideal.s)
            .rev()
            .map(|t| {
                let name = match t {
                    t if t == ideal.s => "0".to_string(),
                    0 => "ring".to_string(),
                    _ => scalar_ideal_name(&ideal.alpha, t),
                };
                let gen = ideal.alpha.pow(t as u64);
                IdealDescriptor {
                    name,
                    generators: vec![if t == ideal.s { "0".into() } else { gen.to_string() }],
                    size: per_level.pow(ideal.s - t),
                    generator_elements: vec![q.scalar(q.base().from_base(&gen))],
                }
            })
            .collect();
    } else if case == StructureCase::InertNilpotent {
        let kbar = fac.residue_field_size;
        report.target = TargetRing {
            kind: "skew_quotient".into(),
            description: format!("{}[x;σ]/(x^{n})", field_name(kbar)),
            matrix_size: None,
            coefficient_ring: Some(field_name(kbar)),
            coefficient_ring_alt: None,
            size: cardinality,
        };
        let chain = skew_poly_ideal_chain(&q)?;
        let mut lattice: Vec<IdealDescriptor> = chain
            .iter()
            .rev()
            .map(|c| IdealDescriptor {
                name: if c.i == n { "0".into() } else { format!("<{}>", c.generator) },
                generators: vec![c.generator.clone()],
                size: c.size,
                generator_elements: vec![q.pow(&q.z(), c.i as u64)],
            })
            .collect();
        lattice.push(IdealDescriptor {
            name: "ring".into(),
            generators: vec!["1".into()],
            size: cardinality,
            generator_elements: vec![q.one()],
        });
        report.ideal_lattice = lattice;
        report.skew_chain = Some(chain);
    } else {
        let kbar = fac.residue_field_size;
        report.target = TargetRing {
            kind: "monomial_gca".into(),
            description: format!("({})^{}[x;σ]/(x^{n})", field_name(kbar), fac.g),
            matrix_size: None,
            coefficient_ring: Some(format!("({})^{}", field_name(kbar), fac.g)),
            coefficient_ring_alt: None,
            size: cardinality,
        };
        let mons = enumerate_monomial_ideals(&q, &fac)?;
        report.ideal_lattice = mons
            .iter()
            .map(|m| IdealDescriptor {
                name: m.display(),
                generators: m
                    .generators
                    .iter()
                    .map(|&(i, j)| MonomialIdeal { g: m.g, n: m.n, generators: vec![(i, j)] }.display())
                    .map(|s| s.trim_matches(['<', '>']).to_string())
                    .collect(),
                size: m.size(kbar as u128),
                generator_elements: m
                    .generators
                    .iter()
                    .map(|&(i, j)| monomial_element(&q, &fac, i, j))
                    .collect(),
            })
            .collect();
        report.monomial_ideals = Some(mons);
    }
    Ok(report)
}

/// Outcome of comparing a reported ideal lattice with exhaustive search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeCheck {
    pub brute_force_count: usize,
    pub reported_count: usize,
    pub sizes_match: bool,
    pub equal: bool,
}

/// Compares the reported ideals (as generated two-sided ideals) with every
/// two-sided ideal found by exhaustive closure. Rings above
/// [`IDEAL_SEARCH_LIMIT`] elements are rejected.
pub fn check_ideal_lattice(report: &StructureReport, exec: Execution) -> Result<LatticeCheck> {
    let q = &report.quotient;
    let brute: BTreeSet<_> = all_two_sided_ideals(q, exec)?.into_iter().map(|i| i.elements).collect();
    let mut reported = BTreeSet::new();
    let mut sizes_match = true;
    for d in &report.ideal_lattice {
        let id = ideal_generated(q, &d.generator_elements)?;
        sizes_match &= id.elements.len() as u128 == d.size;
        reported.insert(id.elements);
    }
    Ok(LatticeCheck {
        brute_force_count: brute.len(),
        reported_count: report.ideal_lattice.len(),
        sizes_match,
        equal: brute == reported && reported.len() == report.ideal_lattice.len(),
    })
}

/// Largest ring handled by [`check_ideal_lattice`].
pub const LATTICE_CHECK_LIMIT: u128 = IDEAL_SEARCH_LIMIT;

/// Convenience: the factorization used for a report.
pub fn factorization(algebra: &AlgebraSpec, ideal: &IdealSpec) -> Result<FactorizationData> {
    factor_prime(algebra.extension(), ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin_algebra;

    fn report(name: &str, ideal: &str) -> StructureReport {
        let a = builtin_algebra(name).unwrap();
        identify_quotient(&a, &IdealSpec::parse(a.base(), ideal).unwrap()).unwrap()
    }

    #[test]
    fn golden_cases() {
        let r = report("golden_u_i", "1+i");
        assert_eq!(r.case, StructureCase::InertUnit);
        assert_eq!(r.target.description, "M_2(F_2)");
        assert_eq!(r.ideal_lattice.len(), 2);
        let r = report("golden_u_i", "1+i:2");
        assert_eq!(r.case, StructureCase::InertUnitPower);
        assert_eq!(r.target.coefficient_ring_alt.as_deref(), Some("F_2[x]/(x^2+1)"));
        assert_eq!(r.cardinality, 256);
        let r = report("golden_u_1pi", "1+i");
        assert_eq!(r.case, StructureCase::InertNilpotent);
        assert_eq!(r.target.description, "F_4[x;σ]/(x^2)");
    }

    #[test]
    fn unsupported_and_ramified() {
        let a = builtin_algebra("golden_u_1pi").unwrap();
        let e = identify_quotient(&a, &IdealSpec::parse(a.base(), "1+i:2").unwrap()).unwrap_err();
        assert_eq!(e.name(), "UnsupportedCase");
        let g = builtin_algebra("gauss_over_Q").unwrap();
        let e = identify_quotient(&g, &IdealSpec::parse(g.base(), "2").unwrap()).unwrap_err();
        assert_eq!(e.name(), "RamifiedPrime");
    }

    #[test]
    fn lattices_match_brute_force() {
        for (name, ideal) in [("golden_u_i", "1+i"), ("golden_u_1pi", "1+i"), ("golden_u_i", "1+i:2")] {
            let r = report(name, ideal);
            let c = check_ideal_lattice(&r, Execution::default()).unwrap();
            assert!(c.equal && c.sizes_match, "{name} {ideal}: {c:?}");
        }
    }
}
