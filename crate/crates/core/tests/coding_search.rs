use std::time::Instant;

use cyclic_orders::base::BaseElement;
use cyclic_orders::coding::{
    delta_min_search, encode, lift_codeword, BoundFormula, FieldCodeKind, LiftStrategy, OuterCode,
    OuterWord, SearchMode, SearchOptions,
};
use cyclic_orders::exec::Execution;
use cyclic_orders::extension::IdealSpec;
use cyclic_orders::io::builtin_algebra;
use cyclic_orders::order::OrderElement;

#[test]
fn golden_parity_minimum_is_four() {
    let a = builtin_algebra("golden_u_i").unwrap();
    let q = IdealSpec::parse(a.base(), "1+i").unwrap();
    let code = OuterCode::parity(&a, &q, 3).unwrap();
    let t = Instant::now();
    let r = delta_min_search(&code, &SearchOptions::new(1)).unwrap();
    eprintln!("parity search {:?}, {} evaluations", t.elapsed(), r.evaluations);
    assert_eq!(r.bound_formula, BoundFormula::Principal);
    assert_eq!((r.d_h, r.min_det_sq, r.lower_bound), (2, 1.0, 4.0));
    assert_eq!(r.search_mode, Some(SearchMode::Exhaustive));
    assert!((r.search_min.unwrap() - 4.0).abs() < 1e-6);
    let x = &r.argmin.as_ref().unwrap().components;
    assert!(x[1].is_zero());
    assert_eq!(x[0], x[2]);
    assert_eq!(a.abs_det_sq(&x[0]).unwrap(), 1.0);
    assert!(r.consistent());
}

#[test]
fn z_code_minimum_is_two_at_z() {
    let a = builtin_algebra("golden_u_1pi").unwrap();
    let q = BaseElement::parse(a.base(), "1+i").unwrap();
    let code = OuterCode::first_coefficient(&a, &q, FieldCodeKind::Parity, 3).unwrap();
    let t = Instant::now();
    let r = delta_min_search(&code, &SearchOptions::new(1)).unwrap();
    eprintln!(
        "z-code search {:?}, {} evaluations, {} minimizers",
        t.elapsed(),
        r.evaluations,
        r.minimizer_count
    );
    assert_eq!(r.bound_formula, BoundFormula::NilpotentU);
    assert_eq!(r.lower_bound, 2.0);
    assert!((r.search_min.unwrap() - 2.0).abs() < 1e-6);
    let target = vec![a.zero(), a.zero(), a.z()];
    assert!(r.minimizers.iter().any(|c| c.components == target));
    assert!(r.consistent());
}

#[test]
fn searches_agree_across_execution_modes() {
    let a = builtin_algebra("golden_u_1pi").unwrap();
    let q = BaseElement::parse(a.base(), "1+i").unwrap();
    let code = OuterCode::first_coefficient(&a, &q, FieldCodeKind::Parity, 2).unwrap();
    let s = delta_min_search(&code, &SearchOptions::new(1).exec(Execution::Sequential)).unwrap();
    let p = delta_min_search(&code, &SearchOptions::new(1).exec(Execution::Parallel)).unwrap();
    assert_eq!(serde_json::to_string(&s).unwrap(), serde_json::to_string(&p).unwrap());
}

#[test]
fn lifted_parity_codeword_has_the_displayed_shape() {
    let a = builtin_algebra("golden_u_i").unwrap();
    let q = IdealSpec::parse(a.base(), "1+i").unwrap();
    let code = OuterCode::parity(&a, &q, 3).unwrap();
    let OuterCode::ParityOverRing { quotient, .. } = &code else { unreachable!() };
    let (m1, m2) = (quotient.from_index(6), quotient.from_index(13));
    let w = encode(&code, &OuterWord::Ring(vec![m1, m2])).unwrap();
    let lift = lift_codeword(&code, &w, LiftStrategy::CanonicalZero).unwrap();
    let x: &[OrderElement] = &lift.components;
    let sum = a.add(&x[0], &x[1]);
    // canonical representatives of x̄_3 = x̄_1 + x̄_2 agree with x_1 + x_2 mod J
    assert_eq!(quotient.reduce(&sum), quotient.reduce(&x[2]));
    let m = |y: &OrderElement| a.matrix_embedding(y);
    let m3 = m(&x[2]);
    let ms = m(&sum);
    for r in 0..2 {
        for c in 0..2 {
            let diff = a.extension().sub(&m3.entries[r][c], &ms.entries[r][c]);
            let d = quotient.ring().from_ok(&diff);
            assert!(quotient.ring().is_zero(&d));
        }
    }
}
