use std::time::Instant;

use cyclic_orders::base::BaseElement;
use cyclic_orders::exec::Execution;
use cyclic_orders::extension::IdealSpec;
use cyclic_orders::io::builtin_algebra;
use cyclic_orders::residue::ideals::{ideal_generated, IdealClosure};
use cyclic_orders::structure::{
    check_ideal_lattice, identify_quotient, monomial_element, stairwell_contains, verify_isomorphism,
    StructureCase, VerifyMode, VerifyOptions,
};

#[test]
fn q7_mod_2_is_m3_f4() {
    let a = builtin_algebra("q7_cubic").unwrap();
    let mut r = identify_quotient(&a, &IdealSpec::parse(a.base(), "2").unwrap()).unwrap();
    assert_eq!(r.case, StructureCase::InertUnit);
    assert_eq!(r.target.description, "M_3(F_4)");
    assert_eq!(r.cardinality, 1 << 18);
    let t = Instant::now();
    let rep = verify_isomorphism(r.iso.as_mut().unwrap(), &r.quotient, &VerifyOptions::new(VerifyMode::Sampled)).unwrap();
    assert!(rep.verified);
    assert_eq!(rep.rank, rep.rank_required);
    assert_eq!(rep.rank, 18);
    eprintln!("q7 sampled verification: {:?}", t.elapsed());
}

#[test]
fn q15_mod_1_plus_i_is_m4_f2() {
    let a = builtin_algebra("q15_quartic").unwrap();
    let mut r = identify_quotient(&a, &IdealSpec::parse(a.base(), "1+i").unwrap()).unwrap();
    assert_eq!(r.target.description, "M_4(F_2)");
    assert_eq!(r.cardinality, 1 << 16);
    let t = Instant::now();
    let rep =
        verify_isomorphism(r.iso.as_mut().unwrap(), &r.quotient, &VerifyOptions::new(VerifyMode::Exhaustive)).unwrap();
    assert_eq!(rep.elements_mapped, 1 << 16);
    assert_eq!(rep.images_distinct, Some(true));
    assert_eq!(rep.pairs_checked, 100_000);
    eprintln!("q15 exhaustive verification: {:?}", t.elapsed());
}

#[test]
fn split_unit_mod_5() {
    let a = builtin_algebra("gauss_over_Q").unwrap();
    let mut r = identify_quotient(&a, &IdealSpec::parse(a.base(), "5").unwrap()).unwrap();
    assert_eq!(r.case, StructureCase::SplitUnit);
    assert_eq!((r.g, r.f), (2, 1));
    assert_eq!(r.target.description, "M_2(F_5)");
    let rep =
        verify_isomorphism(r.iso.as_mut().unwrap(), &r.quotient, &VerifyOptions::new(VerifyMode::Exhaustive)).unwrap();
    assert!(rep.all_pairs && rep.verified);
    let c = check_ideal_lattice(&r, Execution::default()).unwrap();
    assert!(c.equal && c.brute_force_count == 2);
}

#[test]
fn split_unit_power_mod_25() {
    let a = builtin_algebra("gauss_over_Q").unwrap();
    let mut r = identify_quotient(&a, &IdealSpec::parse(a.base(), "5:2").unwrap()).unwrap();
    assert_eq!(r.case, StructureCase::SplitUnitPower);
    let rep = verify_isomorphism(r.iso.as_mut().unwrap(), &r.quotient, &VerifyOptions::new(VerifyMode::Sampled)).unwrap();
    assert!(rep.verified);
}

#[test]
fn split_nilpotent_monomial_ideals() {
    let base = builtin_algebra("gauss_over_Q").unwrap();
    let a = base.with_u(BaseElement::from_int(base.base(), 5)).unwrap();
    let r = identify_quotient(&a, &IdealSpec::parse(a.base(), "5").unwrap()).unwrap();
    assert_eq!(r.case, StructureCase::SplitNilpotent);
    let c = check_ideal_lattice(&r, Execution::default()).unwrap();
    assert!(c.equal && c.sizes_match, "{c:?}");
    let mons = r.monomial_ideals.as_ref().unwrap();
    let q = &r.quotient;
    let fac = &r.factorization;
    for m in mons {
        assert!(m.is_minimal());
        let full = ideal_generated(q, &gens(q, fac, &m.generators)).unwrap();
        for k in 0..m.generators.len() {
            let mut fewer = m.generators.clone();
            fewer.remove(k);
            let smaller = ideal_generated(q, &gens(q, fac, &fewer)).unwrap();
            assert!(smaller.elements.len() < full.elements.len());
        }
    }
    let (g, n) = (2, 2);
    for i in 1..=g {
        for j in 0..n {
            let id: IdealClosure = ideal_generated(q, &[monomial_element(q, fac, i, j)]).unwrap();
            for p in 1..=g {
                for qq in 0..n {
                    let inside = id.elements.contains(q.index(&monomial_element(q, fac, p, qq)));
                    assert_eq!(inside, stairwell_contains((i, j), (p, qq), g, n), "({i},{j}) vs ({p},{qq})");
                }
            }
        }
    }
}

fn gens(
    q: &cyclic_orders::residue::QuotientRing,
    fac: &cyclic_orders::extension::FactorizationData,
    g: &[(usize, usize)],
) -> Vec<cyclic_orders::residue::GcaElement> {
    g.iter().map(|&(i, j)| monomial_element(q, fac, i, j)).collect()
}
