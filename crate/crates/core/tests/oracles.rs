use conformal_core::algebra::axiom_sweep;
use conformal_core::cohomology::{d1, d2, h2_graded, plj_homogeneous, theorem32_dim, vir_h2, Cochain1, Cochain2, Rank1Action};
use conformal_core::zoo;
use conformal_core::{Check, Gen, LinComb, MultiPoly, Scalar, Var};

fn j(i: i64) -> Gen {
    Gen::Index(i)
}

fn big_l() -> Gen {
    Gen::named("L")
}

fn s(x: &str) -> Scalar {
    x.parse().unwrap()
}

#[test]
fn sesquilinear_extension() {
    let vir = zoo::vir();
    let dl = LinComb::term(MultiPoly::d(), big_l());
    let lg = LinComb::gen(big_l());
    assert_eq!(vir.bracket(&dl, &lg).unwrap().to_string(), "(-2*l^2 - l*d) L");
    // [L_l dL] = (d + l)[L_l L]
    assert_eq!(vir.bracket(&lg, &dl).unwrap().to_string(), "(2*l^2 + 3*l*d + d^2) L");
    assert!(zoo::grgc1(3).bracket_gens(&j(-1), &j(-1)).unwrap().is_zero());
}

#[test]
fn mutated_virasoro_skew_witness() {
    let mut vir = zoo::vir();
    let three_l = &MultiPoly::d() + &MultiPoly::l().scale(&Scalar::int(3));
    vir.set_bracket(big_l(), big_l(), LinComb::term(three_l, big_l()));
    match vir.check_skew(&big_l(), &big_l()).unwrap() {
        Check::Witness(w) => assert_eq!(w.coeff(&big_l()).monic(), MultiPoly::d()),
        Check::Pass => panic!("mutated rule passed"),
    }
}

#[test]
fn perturbed_graded_bracket_fails_jacobi() {
    let g = zoo::grgc1(4);
    let perturbed = g.map_table(|x, y, v| {
        let (i, k) = (x.level().unwrap(), y.level().unwrap());
        if v.is_zero() {
            return v.clone();
        }
        // d-coefficient (i+1) replaced by (i+2)
        v.add(&LinComb::term(MultiPoly::d(), j(i + k)))
    });
    assert!(axiom_sweep(&g).passed());
    assert!(!axiom_sweep(&perturbed).jacobi_failures.is_empty());
}

#[test]
fn module_checks() {
    let vir = zoo::vir();
    for (delta, alpha) in [("1", "0"), ("-3/2", "2"), ("7", "-1/3")] {
        let m = zoo::module_m(&s(delta), &s(alpha));
        assert!(m.check_all(&vir).unwrap().is_empty());
    }
    let m = zoo::module_m(&Scalar::one(), &Scalar::zero());
    let v = m.basis()[0].clone();
    assert_eq!(m.action_rule(&big_l(), &v).unwrap().to_string(), format!("(l + d) {v}"));

    // a quadratic term in l
    let broken = {
        let mut b = zoo::module_m(&Scalar::int(2), &Scalar::zero());
        let w = b.basis()[0].clone();
        b.set_action(big_l(), w.clone(), LinComb::term(&MultiPoly::d() + &MultiPoly::l().pow(2), w));
        b
    };
    assert!(!broken.check_all(&vir).unwrap().is_empty());
}

#[test]
fn zoo_brackets() {
    let sd = zoo::semidirect(&Scalar::int(4));
    assert_eq!(sd.bracket_gens(&big_l(), &Gen::named("J")).unwrap().to_string(), "(4*l + d) J");
    assert!(sd.bracket_gens(&Gen::named("J"), &Gen::named("J")).unwrap().is_zero());

    let gc = zoo::gc1(4);
    assert_eq!(gc.bracket_gens(&j(0), &j(0)).unwrap().to_string(), "(2*l + d) J[0]");
    assert_eq!(gc.bracket_gens(&j(1), &j(1)).unwrap().to_string(), "(4*l + 2*d) J[2] + (2*l*d + d^2) J[1]");
    assert!(gc.bracket_gens(&j(-1), &j(-1)).unwrap().is_zero());

    let gr = zoo::grgc1(4);
    assert_eq!(gr.bracket_gens(&j(-1), &j(0)).unwrap().to_string(), "l J[-1]");
    assert_eq!(gr.bracket_gens(&j(1), &j(1)).unwrap().to_string(), "(4*l + 2*d) J[2]");

    let m2 = zoo::gcn(2, 1);
    let e = |r, c| Gen::Unit { power: 0, row: r, col: c };
    assert_eq!(m2.bracket_gens(&e(1, 1), &e(1, 2)).unwrap(), LinComb::gen(e(1, 2)));
    assert!(m2.bracket_gens(&e(1, 1), &e(1, 1)).unwrap().is_zero());
}

#[test]
fn graded_is_its_own_associated_graded() {
    let g = zoo::grgc1(4);
    let gr = zoo::associated_graded(&g, &zoo::FiltrationSpec::by_level(&g)).unwrap();
    assert_eq!(gr.table(), g.table());
}

#[test]
fn differential_examples() {
    let a = Scalar::int(3);
    let b = Scalar::int(1);
    let alg = zoo::semidirect(&a);
    let act = Rank1Action::from_module(&alg, &conformal_core::cohomology::semidirect_coefficients(&b)).unwrap();
    let f = Cochain1::single(Gen::named("J"), MultiPoly::one());
    let df = d1(&f, &alg, &act).unwrap();
    // (b - a) l1
    assert_eq!(df.get(&big_l(), &Gen::named("J")), MultiPoly::var(Var::L1).scale(&Scalar::int(-2)));
    assert!(d1(&Cochain1::default(), &alg, &act).unwrap().is_zero());

    let vir = zoo::vir();
    let m10 = Rank1Action::from_module(&vir, &zoo::module_m(&Scalar::one(), &Scalar::zero())).unwrap();
    let phi = Cochain2::new([((big_l(), big_l()), &MultiPoly::var(Var::L1) - &MultiPoly::var(Var::L2))]).unwrap();
    assert!(d2(&phi, &vir, &m10).unwrap().is_empty());

    let two = Scalar::int(2);
    let sd2 = zoo::semidirect(&two);
    let act2 = Rank1Action::from_module(&sd2, &conformal_core::cohomology::semidirect_coefficients(&two)).unwrap();
    let cube = &MultiPoly::var(Var::L1).pow(3) - &MultiPoly::var(Var::L2).pow(3);
    let psi = Cochain2::new([((Gen::named("J"), Gen::named("J")), cube)]).unwrap();
    assert!(!d2(&psi, &sd2, &act2).unwrap().is_empty());
}

#[test]
fn graded_pieces() {
    let vir = zoo::vir();
    let total = |d: &str, a: &str| -> usize {
        let m = zoo::module_m(&s(d), &s(a));
        (0..=8).map(|k| h2_graded(&vir, &m, k).unwrap().quotient_basis.len()).sum()
    };
    assert_eq!(total("1", "0"), 1);
    assert_eq!(total("0", "0"), 2);
    let m11 = zoo::module_m(&Scalar::one(), &Scalar::one());
    assert!(h2_graded(&vir, &m11, 1).is_err());
    assert_eq!(vir_h2(&Scalar::one(), &Scalar::one(), 8).unwrap().dim, 0);
    assert_eq!(theorem32_dim(&Scalar::int(2), &Scalar::int(2), 10).unwrap(), 3);
    assert_eq!(theorem32_dim(&Scalar::int(3), &Scalar::int(3), 10).unwrap(), 2);
}

#[test]
fn homogeneous_lj_solutions() {
    assert_eq!(plj_homogeneous(&Scalar::int(2), &Scalar::int(2), 0).unwrap().len(), 1);
    let r = plj_homogeneous(&Scalar::int(1), &Scalar::int(-3), 5).unwrap();
    let (l1, l2) = (MultiPoly::var(Var::L1), MultiPoly::var(Var::L2));
    let shape = &(&l1.pow(2) * &l2.pow(2)) * &(&l1 + &l2);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].monic(), shape.monic());
    let b = s("-5/2+1/2*sqrt(19)");
    assert_eq!(plj_homogeneous(&(&b + &Scalar::int(6)), &b, 7).unwrap().len(), 1);
    assert!(plj_homogeneous(&Scalar::int(10), &Scalar::int(2), 8).unwrap().is_empty());
}
