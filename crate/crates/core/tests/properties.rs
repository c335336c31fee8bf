use coherent_realize::algebra::derived_matrix;
use coherent_realize::orbit::covector_at;
use coherent_realize::*;
use num_complex::Complex64 as C;
use num_rational::Ratio;
use proptest::prelude::*;

type Q = Ratio<i64>;
type QPoly = MultiPoly<Q>;
type QOp = DiffOp1<Q>;

const VARS: usize = 2;

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), -5i64..=5, 1i64..=3), 0..5).prop_map(|terms| {
        QPoly::from_terms(VARS, terms.into_iter().map(|((a, b), n, d)| (vec![a, b], Q::new(n, d)))).unwrap()
    })
}

fn qop() -> impl Strategy<Value = QOp> {
    (qpoly(), qpoly(), qpoly()).prop_map(|(p, q1, q2)| QOp::new(p, vec![q1, q2]).unwrap())
}

fn cpx() -> impl Strategy<Value = C> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_hold_exactly(a in qpoly(), b in qpoly(), c in qpoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, QPoly::zero(VARS));
        prop_assert_eq!(&a * &QPoly::one(VARS), a.clone());
    }

    #[test]
    fn partial_derivatives_commute(a in qpoly()) {
        prop_assert_eq!(a.derivative(0).derivative(1), a.derivative(1).derivative(0));
    }

    #[test]
    fn leibniz_rule(a in qpoly(), b in qpoly()) {
        let lhs = (&a * &b).derivative(0);
        let rhs = &(&a.derivative(0) * &b) + &(&a * &b.derivative(0));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_is_antisymmetric_and_satisfies_jacobi(x in qop(), y in qop(), z in qop()) {
        let xy = x.commutator(&y).unwrap();
        let yx = y.commutator(&x).unwrap();
        prop_assert!(xy.try_add(&yx).unwrap().is_zero());
        let a = x.commutator(&y.commutator(&z).unwrap()).unwrap();
        let b = y.commutator(&z.commutator(&x).unwrap()).unwrap();
        let c = z.commutator(&x.commutator(&y).unwrap()).unwrap();
        prop_assert!(a.try_add(&b).unwrap().try_add(&c).unwrap().is_zero());
    }

    #[test]
    fn commutator_matches_operator_composition(x in qop(), y in qop(), f in qpoly()) {
        let lhs = x.commutator(&y).unwrap().apply(&f).unwrap();
        let rhs = &x.apply(&y.apply(&f).unwrap()).unwrap() - &y.apply(&x.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_is_linear(d in qop(), f in qpoly(), g in qpoly(), n in -4i64..4) {
        let s = Q::from_integer(n);
        let lhs = d.apply(&(&f + &g.scale(&s))).unwrap();
        let rhs = &d.apply(&f).unwrap() + &d.apply(&g).unwrap().scale(&s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn su3_extraction_round_trip(z0 in prop::collection::vec(cpx(), 3), r in 0.3f64..3.0, th in 0.0f64..std::f64::consts::TAU) {
        let m: Model = catalog::su3(1, 1).unwrap();
        let mu0 = C::from_polar(r, th);
        let v: Vec<C> = covector_at(&m, &z0).unwrap().iter().map(|x| x * mu0).collect();
        let (mu, z) = extract_coordinates(&m, &v).unwrap();
        prop_assert!((mu - mu0).norm() < 1e-12 * r.max(1.0));
        for (a, b) in z.iter().zip(&z0) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn derived_matrix_is_complex_linear(a in cpx(), b in cpx(), i in 0usize..3, k in 0usize..3) {
        let m: Model = catalog::su2(1.5).unwrap();
        let x = AlgebraElement::basis(3, i);
        let y = AlgebraElement::basis(3, k);
        let lhs = derived_matrix(&m, &x.scale(a).add(&y.scale(b))).unwrap();
        let rhs = derived_matrix(&m, &x).unwrap() * a + derived_matrix(&m, &y).unwrap() * b;
        prop_assert!((lhs - rhs).camax() < 1e-14);
    }

    #[test]
    fn realization_is_complex_linear(a in cpx(), b in cpx()) {
        let m: Model = catalog::su11(1.5, 12, 3).unwrap();
        let cfg = SolverConfig::default();
        let x = AlgebraElement::basis(3, 0);
        let y = AlgebraElement::basis(3, 2);
        let dxy = realize_generator(&m, &x.scale(a).add(&y.scale(b)), &cfg).unwrap().op;
        let dx = realize_generator(&m, &x, &cfg).unwrap().op;
        let dy = realize_generator(&m, &y, &cfg).unwrap().op;
        let combo = dx.scale(&a).try_add(&dy.scale(&b)).unwrap();
        prop_assert!(dxy.distance(&combo).unwrap() < 1e-10);
    }

    #[test]
    fn symbol_is_linear(p in prop::collection::vec(cpx(), 4), q in prop::collection::vec(cpx(), 4), a in cpx()) {
        let m: Model = catalog::su2(1.5).unwrap();
        let sum: Vec<C> = p.iter().zip(&q).map(|(x, y)| x + a * y).collect();
        let lhs = symbol(&m, &sum).unwrap();
        let rhs = &symbol(&m, &p).unwrap() + &symbol(&m, &q).unwrap().scale(&a);
        prop_assert!(lhs.distance(&rhs).unwrap() < 1e-13);
    }
}
