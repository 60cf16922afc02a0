mod common;

use common::*;
use etensor::cohomology::{class_equals, partial_t, Limits};
use etensor::deformation::{
    check_linear_deformation, check_nijenhuis_element, conjugation_probe, DeformationDirection, NijenhuisCandidate,
};
use etensor::fixtures::heisenberg_adjoint;
use etensor::graded::{balavoine, GradedContext, MultiMap};
use etensor::leibniz_lie::check_leibniz_lie;
use etensor::rational::{qi, Rational};
use etensor::tensor::check_net;
use etensor::workspace::Workspace;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d))
}

fn multimap(arity: usize, n: usize) -> impl Strategy<Value = MultiMap> {
    proptest::collection::vec(small_rational(), n.pow(arity as u32) * n)
        .prop_map(move |c| MultiMap::new(arity, n, n, c).unwrap())
}

fn degree_sign(p: usize, q: usize) -> Rational {
    Rational::sign((p - 1) * (q - 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn balavoine_is_graded_antisymmetric(p in multimap(2, 2), q in multimap(1, 2)) {
        let pq = balavoine(&p, &q).unwrap();
        let qp = balavoine(&q, &p).unwrap();
        prop_assert_eq!(pq, qp.scale(&degree_sign(2, 1)).scale(&qi(-1)));
    }

    #[test]
    fn balavoine_satisfies_graded_jacobi(p in multimap(1, 2), q in multimap(2, 2), r in multimap(1, 2)) {
        let lhs = balavoine(&p, &balavoine(&q, &r).unwrap()).unwrap();
        let first = balavoine(&balavoine(&p, &q).unwrap(), &r).unwrap();
        let second = balavoine(&q, &balavoine(&p, &r).unwrap()).unwrap().scale(&degree_sign(1, 2));
        prop_assert_eq!(lhs, first.add(&second).unwrap());
    }

    #[test]
    fn d_m_squares_to_zero(seed in any::<u64>(), arity in 1usize..=2) {
        let mut rng = rng(seed);
        for action in [heisenberg_adjoint(), coherent_fixture()] {
            let ctx = GradedContext::new(action.clone());
            let (dg, dh) = (action.source().dim(), action.target().dim());
            let f = MultiMap::new(arity, dh, dg, (0..dh.pow(arity as u32) * dg).map(|_| rational(&mut rng)).collect()).unwrap();
            prop_assert!(ctx.d_m(&ctx.d_m(&f).unwrap()).unwrap().is_zero());
            prop_assert_eq!(ctx.d_m(&f).unwrap(), ctx.d_m_nested(&f).unwrap());
        }
    }

    #[test]
    fn coboundaries_are_cocycles_in_the_same_class(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let t = random_family_i(&mut rng);
        let theta = MultiMap::new(1, 3, 3, (0..9).map(|_| rational(&mut rng)).collect()).unwrap();
        let b = partial_t(&t, &theta).unwrap();
        prop_assert!(partial_t(&t, &b).unwrap().is_zero());
        prop_assert!(class_equals(&t, &b, &MultiMap::zero(2, 3, 3), 3, Limits::default()).unwrap());
    }

    #[test]
    fn deformation_routes_agree(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let t = random_family_i(&mut rng);
        let d = DeformationDirection::new(t, random_matrix(&mut rng, 3, 3, true)).unwrap();
        let r = check_linear_deformation(&d).unwrap();
        prop_assert!(r.routes_agree);
        prop_assert_eq!(r.coefficients.passed(), r.probes.iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn nijenhuis_elements_conjugate_to_the_trivial_deformation(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let t = random_family_i(&mut rng);
        let x: Vec<Rational> = (0..3).map(|_| rational(&mut rng)).collect();
        let c = NijenhuisCandidate::new(t, x).unwrap();
        prop_assert!(check_nijenhuis_element(&c).unwrap().passed());
        for s in [qi(1), qi(2), Rational::new(-1, 2)] {
            let probe = conjugation_probe(&c, &s).unwrap();
            prop_assert!(probe.invertible && probe.matches_deformation && probe.conjugated_is_tensor);
        }
    }

    #[test]
    fn transported_leibniz_lie_algebras_stay_valid(seed in any::<u64>()) {
        let mut rng = rng(seed);
        prop_assert!(check_leibniz_lie(&random_leibniz_lie(&mut rng)).passed());
    }

    #[test]
    fn family_membership_matches_checker(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let t = random_heisenberg_candidate(&mut rng);
        prop_assert_eq!(check_net(&t).passed(), in_heisenberg_families(t.matrix()));
    }

    #[test]
    fn bareiss_rank_matches_rref(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6) {
        let mut rng = rng(seed);
        let m = random_matrix(&mut rng, rows, cols, true);
        prop_assert_eq!(bareiss_rank(&m), m.rank());
    }
}

#[test]
fn workspace_json_round_trips() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/heisenberg.json");
    let ws = Workspace::load(&path).unwrap();
    let again = Workspace::parse(&ws.to_json().to_string()).unwrap();
    assert_eq!(again.to_json(), ws.to_json());
}
