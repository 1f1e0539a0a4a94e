use algebroid_core::calculus::{
    anchor_multivector, base_tangent, d_rho, lie_by_multivector, lie_form, lie_multivector,
    schouten, schouten_via_operators,
};
use algebroid_core::graded::{graded_commutator_apply, interior, pairing, Covectors, Vectors};
use algebroid_core::random::{random_exterior, random_poly, random_section};
use algebroid_core::scalars::int;
use algebroid_core::{library, Algebroid, Form, Multivector, Section};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn form(rng: &mut StdRng, a: &Algebroid, degree: Option<usize>) -> Form {
    random_exterior::<Covectors, _>(rng, a.rank(), a.context(), degree, 2, 2)
}

fn mv(rng: &mut StdRng, a: &Algebroid, degree: usize) -> Multivector {
    random_exterior::<Vectors, _>(rng, a.rank(), a.context(), Some(degree), 1, 2)
}

fn section(rng: &mut StdRng, a: &Algebroid) -> Section {
    random_section(rng, a.rank(), a.context(), 1, 2)
}

fn sign(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn d(a: &Algebroid, eta: &Form) -> Form {
    d_rho(a, eta).unwrap()
}

fn iv(v: &Section, eta: &Form) -> Form {
    interior(&v.to_multivector(), eta).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn d_squares_to_zero_and_is_a_derivation(seed: u64, p in 0usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        for (name, a) in library::verified() {
            let eta = form(&mut rng, &a, None);
            prop_assert!(d(&a, &d(&a, &eta)).is_zero(), "{}", name);
            let x = form(&mut rng, &a, Some(p));
            let y = form(&mut rng, &a, None);
            let lhs = d(&a, &x.wedge(&y).unwrap());
            let rhs = d(&a, &x).wedge(&y).unwrap()
                .try_add(&x.wedge(&d(&a, &y)).unwrap().scale(&int(sign(p)))).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", name);
        }
    }

    #[test]
    fn cartan_formula_and_commutation(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        for (name, a) in library::verified() {
            let v = section(&mut rng, &a);
            let eta = form(&mut rng, &a, None);
            let l = lie_form(&a, &v, &eta).unwrap();
            let cartan = iv(&v, &d(&a, &eta)).try_add(&d(&a, &iv(&v, &eta))).unwrap();
            prop_assert_eq!(&l, &cartan, "{}", name);
            prop_assert_eq!(lie_form(&a, &v, &d(&a, &eta)).unwrap(), d(&a, &l), "{}", name);
            prop_assert_eq!(lie_by_multivector(&a, &v.to_multivector(), &eta).unwrap(), l, "{}", name);
        }
    }

    #[test]
    fn lie_derivative_identities(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        for (name, a) in library::verified() {
            let v = section(&mut rng, &a);
            let w = section(&mut rng, &a);
            let eta = form(&mut rng, &a, None);
            let vw = a.bracket_sections(&v, &w).unwrap();
            let lv = |e: &Form| lie_form(&a, &v, e).unwrap();
            let lw = |e: &Form| lie_form(&a, &w, e).unwrap();
            // i({V,W}) = [L_V, i(W)]
            let rhs = lv(&iv(&w, &eta)).try_sub(&iv(&w, &lv(&eta))).unwrap();
            prop_assert_eq!(iv(&vw, &eta), rhs, "{}", name);
            // L_{V,W} = [L_V, L_W] on forms
            let rhs = lv(&lw(&eta)).try_sub(&lw(&lv(&eta))).unwrap();
            prop_assert_eq!(lie_form(&a, &vw, &eta).unwrap(), rhs, "{}", name);
            // ... and on multivectors
            let p = mv(&mut rng, &a, 2.min(a.rank()));
            let mv_v = |q: &Multivector| lie_multivector(&a, &v, q).unwrap();
            let mv_w = |q: &Multivector| lie_multivector(&a, &w, q).unwrap();
            let rhs = mv_v(&mv_w(&p)).try_sub(&mv_w(&mv_v(&p))).unwrap();
            prop_assert_eq!(lie_multivector(&a, &vw, &p).unwrap(), rhs, "{}", name);
            // L_{fV} η = f L_V η + d f ∧ i(V) η
            let f = random_poly(&mut rng, a.context(), 2, 2);
            let fv = v.mul_poly(&f);
            let df = d(&a, &Form::scalar(a.rank(), f.clone()));
            let rhs = lv(&eta).mul_poly(&f).try_add(&df.wedge(&iv(&v, &eta)).unwrap()).unwrap();
            prop_assert_eq!(lie_form(&a, &fv, &eta).unwrap(), rhs, "{}", name);
        }
    }

    #[test]
    fn lie_multivector_is_dual_to_lie_form(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        for (name, a) in library::verified() {
            let v = section(&mut rng, &a);
            for deg in 0..=a.rank().min(3) {
                let p = mv(&mut rng, &a, deg);
                let eta = form(&mut rng, &a, Some(deg));
                let lhs = pairing(&eta, &lie_multivector(&a, &v, &p).unwrap()).unwrap();
                let rv = a.anchor_apply(&v).unwrap();
                let rhs = rv.apply(&pairing(&eta, &p).unwrap())
                    .sub(&pairing(&lie_form(&a, &v, &eta).unwrap(), &p).unwrap());
                prop_assert_eq!(lhs, rhs, "{}", name);
            }
            if a.rank() >= 1 {
                prop_assert_eq!(
                    lie_multivector(&a, &v, &section(&mut rng, &a).to_multivector()).is_ok(),
                    true
                );
            }
        }
    }

    #[test]
    fn schouten_matches_operator_definition(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        for (name, a) in library::verified() {
            for p in 0..=3.min(a.rank()) {
                for q in 0..=3.min(a.rank()) {
                    let pp = mv(&mut rng, &a, p);
                    let qq = mv(&mut rng, &a, q);
                    prop_assert_eq!(
                        schouten(&a, &pp, &qq).unwrap(),
                        schouten_via_operators(&a, &pp, &qq).unwrap(),
                        "{} p={} q={}", name, p, q
                    );
                }
            }
        }
    }

    #[test]
    fn schouten_graded_lie_axioms(seed: u64, p in 0usize..4, q in 0usize..4, r in 0usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        for (name, a) in library::verified() {
            let k = a.rank();
            let (p, q, r) = (p.min(k), q.min(k), r.min(k));
            let (pp, qq, rr) = (mv(&mut rng, &a, p), mv(&mut rng, &a, q), mv(&mut rng, &a, r));
            let br = |x: &Multivector, y: &Multivector| schouten(&a, x, y).unwrap();
            let anti = br(&qq, &pp).scale(&int(-sign((p + 1) * (q + 1))));
            prop_assert_eq!(br(&pp, &qq), anti, "{}", name);
            let s = |m: usize, n: usize| int(sign((m + 1) * (n + 1)));
            let jac = br(&pp, &br(&qq, &rr)).scale(&s(p, r))
                .try_add(&br(&qq, &br(&rr, &pp)).scale(&s(q, p))).unwrap()
                .try_add(&br(&rr, &br(&pp, &qq)).scale(&s(r, q))).unwrap();
            prop_assert!(jac.is_zero(), "{}", name);
        }
    }

    #[test]
    fn schouten_leibniz(seed: u64, p in 0usize..3, q1 in 0usize..3, q2 in 0usize..2) {
        let mut rng = StdRng::seed_from_u64(seed);
        for (name, a) in library::verified() {
            let k = a.rank();
            let (pp, x, y) = (mv(&mut rng, &a, p.min(k)), mv(&mut rng, &a, q1.min(k)), mv(&mut rng, &a, q2.min(k)));
            let br = |u: &Multivector, v: &Multivector| schouten(&a, u, v).unwrap();
            let lhs = br(&pp, &x.wedge(&y).unwrap());
            let s = int(sign((p.min(k) + 1) * q1.min(k)));
            let rhs = br(&pp, &x).wedge(&y).unwrap()
                .try_add(&x.wedge(&br(&pp, &y)).unwrap().scale(&s)).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", name);
        }
    }

    #[test]
    fn lie_by_multivector_operator_identities(seed: u64, p in 0usize..3, q in 0usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        for (name, a) in library::verified() {
            let k = a.rank();
            let (p, q) = (p.min(k), q.min(k));
            let (pp, qq) = (mv(&mut rng, &a, p), mv(&mut rng, &a, q));
            let eta = form(&mut rng, &a, None);
            let lp = |e: &Form| lie_by_multivector(&a, &pp, e).unwrap();
            let lq = |e: &Form| lie_by_multivector(&a, &qq, e).unwrap();
            let dd = |e: &Form| d(&a, e);
            let (dp, dq) = (1 - p as i32, 1 - q as i32);
            prop_assert!(graded_commutator_apply(&lp, &dd, dp, 1, &eta).is_zero(), "{}", name);
            let pq = schouten(&a, &pp, &qq).unwrap();
            prop_assert_eq!(
                graded_commutator_apply(&lp, &lq, dp, dq, &eta),
                lie_by_multivector(&a, &pq, &eta).unwrap(),
                "{}", name
            );
            if p == 2 {
                let f = Form::scalar(k, random_poly(&mut rng, a.context(), 2, 2));
                prop_assert!(lp(&f).is_zero());
            }
        }
    }

    #[test]
    fn anchor_is_a_schouten_homomorphism(seed: u64, p in 0usize..3, q in 0usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        for (name, a) in library::verified() {
            let k = a.rank();
            let (pp, qq) = (mv(&mut rng, &a, p.min(k)), mv(&mut rng, &a, q.min(k)));
            let tm = base_tangent(&a);
            let lhs = anchor_multivector(&a, &schouten(&a, &pp, &qq).unwrap()).unwrap();
            let rhs = schouten(
                &tm,
                &anchor_multivector(&a, &pp).unwrap(),
                &anchor_multivector(&a, &qq).unwrap(),
            ).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", name);
        }
    }
}
