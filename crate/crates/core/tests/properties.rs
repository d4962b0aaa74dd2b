use proptest::prelude::*;

use conformal_core::algebra::skew_image;
use conformal_core::classify::{apply_gauge, inverse_moves, GaugeMove};
use conformal_core::cohomology::{d1, d2, semidirect_coefficients, Cochain1, Rank1Action};
use conformal_core::{dsl, zoo, ExactMatrix, Gen, LinComb, Monomial, MultiPoly, Scalar, Var};

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn poly_in(vars: Vec<Var>, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let n = vars.len();
    prop::collection::vec((small_scalar(), prop::collection::vec(0..=max_exp, n)), 0..=max_terms).prop_map(move |terms| {
        let mut p = MultiPoly::zero();
        for (c, exps) in terms {
            let m = Monomial::from_pairs(vars.iter().cloned().zip(exps).collect());
            p.add_term(m, c);
        }
        p
    })
}

fn ldm() -> impl Strategy<Value = MultiPoly> {
    poly_in(vec![Var::L, Var::D, Var::M], 3, 4)
}

fn mixed() -> impl Strategy<Value = MultiPoly> {
    poly_in(vec![Var::L1, Var::L2, Var::D, Var::sym("b")], 2, 4)
}

fn in_d() -> impl Strategy<Value = MultiPoly> {
    poly_in(vec![Var::D], 2, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(p in ldm(), q in ldm(), r in ldm()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &MultiPoly::one(), p.clone());
    }

    #[test]
    fn elimination_is_a_ring_map(p in mixed(), q in mixed()) {
        let vs = [Var::L1, Var::L2];
        let e = |x: &MultiPoly| x.eliminate_partial(&vs).unwrap();
        prop_assert_eq!(e(&(&p * &q)), &e(&p) * &e(&q));
        prop_assert_eq!(e(&(&p + &q)), &e(&p) + &e(&q));
        prop_assert!(!e(&p).contains_var(&Var::D));
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..=4)) {
        let m = ExactMatrix::from_rows(5, rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect());
        let k = m.kernel();
        prop_assert_eq!(k.dim() + m.rank(), 5);
        for v in &k.basis {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn skew_flip_is_an_involution(p in ldm(), q in ldm()) {
        let v = LinComb::from_terms([(Gen::named("L"), p), (Gen::Index(2), q)]);
        prop_assert_eq!(skew_image(&skew_image(&v)), v);
    }

    #[test]
    fn d_squared_vanishes_on_vir(delta in small_scalar(), alpha in small_scalar(), q in poly_in(vec![Var::L], 4, 3)) {
        let alg = zoo::vir();
        let act = Rank1Action::from_module(&alg, &zoo::module_m(&delta, &alpha)).unwrap();
        let f = Cochain1::single(Gen::named("L"), q);
        prop_assert!(d2(&d1(&f, &alg, &act).unwrap(), &alg, &act).unwrap().is_empty());
    }

    #[test]
    fn d_squared_vanishes_on_semidirect(a in small_scalar(), b in small_scalar(), q in poly_in(vec![Var::L], 3, 3), r in poly_in(vec![Var::L], 3, 3)) {
        let alg = zoo::semidirect(&a);
        let act = Rank1Action::from_module(&alg, &semidirect_coefficients(&b)).unwrap();
        let mut f = Cochain1::single(Gen::named("L"), q);
        f.q.insert(Gen::named("J"), r);
        prop_assert!(d2(&d1(&f, &alg, &act).unwrap(), &alg, &act).unwrap().is_empty());
    }

    #[test]
    fn poly_text_round_trip(p in mixed()) {
        prop_assert_eq!(dsl::parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn algebra_text_round_trip(a in small_scalar(), n in 1i64..=3) {
        for alg in [zoo::semidirect(&a), zoo::gc1(n), zoo::grgc1(n)] {
            let text = dsl::serialize_algebra(&alg);
            prop_assert_eq!(dsl::parse_algebra(&text).unwrap(), alg);
        }
    }

    #[test]
    fn gauge_then_inverse(s in small_scalar().prop_filter("nonzero", |s| !s.is_zero()), p in in_d(), q in in_d(), r in in_d()) {
        let alg = zoo::gc1(2);
        let moves = vec![
            GaugeMove::shift(1, vec![(0, p), (-1, q)]),
            GaugeMove::shift(2, vec![(1, r)]),
            GaugeMove::rescale(0, s),
        ];
        let moved = apply_gauge(&alg, &moves).unwrap();
        let back = apply_gauge(&moved, &inverse_moves(&alg, &moves).unwrap()).unwrap();
        prop_assert_eq!(back, alg);
    }
}
