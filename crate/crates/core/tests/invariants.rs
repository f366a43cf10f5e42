//! Algebraic invariants, checked on random inputs.

use num_complex::Complex64;
use proptest::prelude::*;

use cyclic_orders::base::{local_reduce, BaseElement, BaseRing, LocalBaseRing};
use cyclic_orders::coding::det_inequality_check;
use cyclic_orders::extension::{IdealSpec, OkElement};
use cyclic_orders::io::{builtin_algebra, builtin_names};
use cyclic_orders::linalg::CMatrix;
use cyclic_orders::order::{AlgebraSpec, OrderElement};
use cyclic_orders::residue::{CrtDecomposition, QuotientRing};

const RINGS: [BaseRing; 3] = [
    BaseRing::RationalIntegers,
    BaseRing::GaussianIntegers,
    BaseRing::EisensteinIntegers,
];

fn elem(ring: BaseRing, (a, b): (i64, i64)) -> BaseElement {
    let b = if ring == BaseRing::RationalIntegers { 0 } else { b };
    BaseElement::new(ring, a, b)
}

fn pair(r: i64) -> impl Strategy<Value = (i64, i64)> {
    (-r..=r, -r..=r)
}

fn algebra(i: usize) -> AlgebraSpec {
    let names = builtin_names();
    builtin_algebra(names[i % names.len()]).unwrap()
}

/// Fills an order element from a flat coordinate list.
fn order_elem(a: &AlgebraSpec, flat: &[(i64, i64)]) -> OrderElement {
    let n = a.degree();
    OrderElement {
        zcoords: (0..n)
            .map(|j| OkElement::new((0..n).map(|k| elem(a.base(), flat[j * n + k])).collect()))
            .collect(),
    }
}

fn flat() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec(pair(4), 16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn base_ring_laws(r in 0usize..3, x in pair(1000), y in pair(1000), w in pair(1000)) {
        let ring = RINGS[r];
        let (x, y, w) = (elem(ring, x), elem(ring, y), elem(ring, w));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
        prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(&(&x - &y) + &y, x);
    }

    #[test]
    fn euclidean_division(r in 0usize..3, x in pair(10_000), m in pair(50)) {
        let ring = RINGS[r];
        let (x, m) = (elem(ring, x), elem(ring, m));
        prop_assume!(!m.is_zero());
        let (q, rem) = x.euclidean_divmod(&m).unwrap();
        prop_assert_eq!(&(&q * &m) + &rem, x.clone());
        prop_assert!(rem.norm() < m.norm());
        prop_assert_eq!(x.rem(&m).unwrap(), rem);
    }

    #[test]
    fn local_reduction_is_a_ring_map(which in 0usize..4, s in 1u32..4, x in pair(500), y in pair(500)) {
        let (ring, alpha) = [
            (BaseRing::GaussianIntegers, (1, 1)),
            (BaseRing::GaussianIntegers, (3, 0)),
            (BaseRing::EisensteinIntegers, (2, 1)),
            (BaseRing::RationalIntegers, (5, 0)),
        ][which];
        let r = LocalBaseRing::new(&elem(ring, alpha), s).unwrap();
        let (x, y) = (elem(ring, x), elem(ring, y));
        let red = |v: &BaseElement| local_reduce(v, &r);
        prop_assert_eq!(red(&(&x + &y)), red(&(&red(&x) + &red(&y))));
        prop_assert_eq!(red(&(&x * &y)), red(&(&red(&x) * &red(&y))));
        prop_assert!(r.alpha().pow(s as u64).divides(&(&x - &red(&x))));
        prop_assert_eq!(red(&red(&x)), red(&x));
    }

    #[test]
    fn sigma_is_an_automorphism_of_order_n(i in 0usize..8, x in flat(), y in flat()) {
        let a = algebra(i);
        let e = a.extension();
        let (x, y) = (order_elem(&a, &x).zcoords[0].clone(), order_elem(&a, &y).zcoords[0].clone());
        prop_assert_eq!(e.apply_sigma(&e.mul(&x, &y), 1), e.mul(&e.apply_sigma(&x, 1), &e.apply_sigma(&y, 1)));
        prop_assert_eq!(e.apply_sigma(&e.add(&x, &y), 1), e.add(&e.apply_sigma(&x, 1), &e.apply_sigma(&y, 1)));
        prop_assert_eq!(e.apply_sigma(&x, a.degree() as i64), x.clone());
        prop_assert_eq!(e.apply_sigma(&e.apply_sigma(&x, 1), -1), x);
    }

    #[test]
    fn embedding_reverses_products(i in 0usize..8, x in flat(), y in flat()) {
        let a = algebra(i);
        let (x, y) = (order_elem(&a, &x), order_elem(&a, &y));
        let xy = a.mul(&x, &y);
        prop_assert_eq!(
            a.matrix_embedding(&xy),
            a.matrix_mul(&a.matrix_embedding(&y), &a.matrix_embedding(&x))
        );
    }

    #[test]
    fn reduced_norm_is_multiplicative(i in 0usize..8, x in flat(), y in flat()) {
        let a = algebra(i);
        let (x, y) = (order_elem(&a, &x), order_elem(&a, &y));
        let dx = a.reduced_det(&x).unwrap();
        let dy = a.reduced_det(&y).unwrap();
        prop_assert_eq!(a.reduced_det(&a.mul(&x, &y)).unwrap(), &dx * &dy);
    }

    #[test]
    fn charpoly_lies_over_the_base(i in 0usize..8, x in flat()) {
        let a = algebra(i);
        let x = order_elem(&a, &x);
        let n = a.degree();
        let c = a.charpoly(&x).unwrap();
        prop_assert_eq!(c.len(), n + 1);
        prop_assert!(c[n].is_one());
        let det = a.reduced_det(&x).unwrap();
        let signed = if n.is_multiple_of(2) { det } else { -&det };
        prop_assert_eq!(&c[0], &signed);
    }

    #[test]
    fn reduction_is_a_ring_map_with_a_section(which in 0usize..4, x in flat(), y in flat()) {
        let (name, ideal) = [
            ("golden_u_i", "1+i"),
            ("golden_u_1pi", "1+i:2"),
            ("gauss_over_Q", "5"),
            ("q7_cubic", "2"),
        ][which];
        let a = builtin_algebra(name).unwrap();
        let q = QuotientRing::new(&a, &IdealSpec::parse(a.base(), ideal).unwrap()).unwrap();
        let (x, y) = (order_elem(&a, &x), order_elem(&a, &y));
        let (px, py) = (q.reduce(&x), q.reduce(&y));
        prop_assert_eq!(q.reduce(&a.mul(&x, &y)), q.mul(&px, &py));
        prop_assert_eq!(q.reduce(&a.add(&x, &y)), q.add(&px, &py));
        prop_assert_eq!(q.reduce(&q.lift(&px)), px);
    }

    #[test]
    fn crt_round_trips(x in flat()) {
        let a = builtin_algebra("golden_u_i").unwrap();
        let parts = [
            IdealSpec::parse(a.base(), "1+i").unwrap(),
            IdealSpec::parse(a.base(), "3").unwrap(),
        ];
        let crt = CrtDecomposition::new(&a, &parts).unwrap();
        let whole = crt.whole().reduce(&order_elem(&a, &x));
        let split = crt.decompose(&whole);
        prop_assert_eq!(crt.recombine(&split).unwrap(), whole);
        prop_assert_eq!(crt.decompose(&crt.recombine(&split).unwrap()), split);
    }

    #[test]
    fn determinant_inequality(
        n in 2usize..5,
        entries in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 48),
        k in 1usize..4,
    ) {
        let ms: Vec<CMatrix> = (0..k)
            .map(|t| {
                let mut m = CMatrix::zeros(n);
                for (i, v) in m.a.iter_mut().enumerate() {
                    let (re, im) = entries[(t * 16 + i) % 48];
                    *v = Complex64::new(re + t as f64, im);
                }
                m
            })
            .collect();
        match det_inequality_check(&ms) {
            Ok(r) => {
                prop_assert!(r.holds, "lhs {} < rhs {}", r.lhs, r.rhs);
                if k == 1 {
                    prop_assert!((r.lhs - r.rhs).abs() <= 1e-12 * r.rhs);
                }
            }
            Err(e) => prop_assert_eq!(e.name(), "SingularInput"),
        }
    }
}
