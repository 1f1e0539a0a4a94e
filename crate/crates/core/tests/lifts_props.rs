use algebroid_core::duality::{
    algebroid_from_dual_poisson, dual_poisson, euler_homogeneity_check, DualChart,
};
use algebroid_core::lifts::{
    complete_lift_section, dot, tangent_lift_algebroid, tangent_lift_poisson,
};
use algebroid_core::poisson::{cotangent_algebroid, is_poisson};
use algebroid_core::random::random_section;
use algebroid_core::{library, Algebroid};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn dotted(names: &[String]) -> Vec<String> {
    names.iter().map(|v| dot(v)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complete_lift_is_a_bracket_morphism(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        for (name, a) in library::verified() {
            let t = tangent_lift_algebroid(&a).unwrap();
            let x = random_section(&mut rng, a.rank(), a.context(), 2, 2);
            let y = random_section(&mut rng, a.rank(), a.context(), 2, 2);
            let tx = complete_lift_section(&a, &x).unwrap();
            let ty = complete_lift_section(&a, &y).unwrap();
            let lhs = t.bracket_sections(&tx, &ty).unwrap();
            let rhs = complete_lift_section(&a, &a.bracket_sections(&x, &y).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", name);
        }
    }
}

#[test]
fn lifted_algebroids_are_valid() {
    for (name, a) in library::verified() {
        let t = tangent_lift_algebroid(&a).unwrap();
        assert!(t.check_axioms().is_valid(), "{name}");
    }
}

#[test]
fn lifted_poisson_structures_stay_poisson() {
    let mut cases = library::poisson_structures();
    for (name, a) in library::verified() {
        cases.push((name, dual_poisson(&a).unwrap().0));
    }
    for (name, l) in cases {
        let (lift, _) = tangent_lift_poisson(&l).unwrap();
        assert!(is_poisson(&lift).is_valid(), "{name}");
    }
    assert!(tangent_lift_poisson(&library::non_jacobi_bivector()).is_err());
}

#[test]
fn lifted_dual_is_homogeneous_for_both_fibrations() {
    for (name, a) in library::verified() {
        let (l, chart) = dual_poisson(&a).unwrap();
        let (lift, _) = tangent_lift_poisson(&l).unwrap();
        let xi = chart.fiber().to_vec();
        let tangent_fibers: Vec<String> =
            dotted(a.coords()).into_iter().chain(dotted(&xi)).collect();
        let bundle_fibers: Vec<String> = xi.iter().cloned().chain(dotted(&xi)).collect();
        assert!(
            euler_homogeneity_check(&lift, &tangent_fibers)
                .unwrap()
                .is_valid(),
            "{name}"
        );
        assert!(
            euler_homogeneity_check(&lift, &bundle_fibers)
                .unwrap()
                .is_valid(),
            "{name}"
        );
    }
}

// Reading the lifted dual along the tangent fibration (xdot, xidot) over
// E* must give the cotangent algebroid of the dual structure.
#[test]
fn tangent_fibration_recovers_the_cotangent_algebroid() {
    for (name, a) in library::verified() {
        let (l, _) = dual_poisson(&a).unwrap();
        let (lift, tchart) = tangent_lift_poisson(&l).unwrap();
        let cot = cotangent_algebroid(&l).unwrap();
        let chart = DualChart::new(
            tchart.base().to_vec(),
            tchart.lifted().to_vec(),
            cot.section_names().to_vec(),
        )
        .unwrap();
        let read: Algebroid = algebroid_from_dual_poisson(&lift, &chart).unwrap();
        let (n, k) = (cot.base_dim(), cot.rank());
        assert_eq!(read.coords(), cot.coords(), "{name}");
        for r in 0..k {
            for b in 0..n {
                assert_eq!(read.anchor(r, b), cot.anchor(r, b), "{name} anchor {r} {b}");
            }
            for s in 0..k {
                for m in 0..k {
                    assert_eq!(
                        read.structure(r, s, m),
                        cot.structure(r, s, m),
                        "{name} c {r} {s} {m}"
                    );
                }
            }
        }
    }
}
