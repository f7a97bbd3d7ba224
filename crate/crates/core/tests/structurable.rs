use minrep::jordan::*;
use minrep::polycore::*;
use minrep::structurable::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;

fn all_hold(v: &StructVerdict) -> bool {
    v.identity_holds
        && v.antiautomorphism_holds
        && v.skew_dim == 1
        && v.s0_skew
        && v.star_involutive
        && v.e_star_is_e
        && v.t_a_formula
        && v.heisenberg_skew
}

#[test]
fn scalar_fifty_samples() {
    let v = verify_structurable(&build_case("case1:n=1").unwrap(), 50, 1);
    assert!(all_hold(&v), "{v:?}");
    assert_eq!(v.w_dim, 2);
}

#[test]
fn spin_pair_twenty_samples() {
    let v = verify_structurable(&build_case("case2:p=2").unwrap(), 20, 2);
    assert!(all_hold(&v), "{v:?}");
    assert_eq!(v.w_dim, 8);
}

#[test]
fn every_algebra_up_to_dimension_32() {
    for id in case_ids() {
        let vq = build_case(&id).unwrap();
        if 2 * vq.nvars > 32 {
            continue;
        }
        let v = verify_structurable(&vq, 20, 5);
        assert!(all_hold(&v), "{id}: {v:?}");
    }
}

#[test]
fn unit_pair_is_idempotent() {
    for id in ["case1:n=1", "case1:n=3", "case2:p=3", "mixed:2x3"] {
        let vq = build_case(id).unwrap();
        let w = WAlgebra::new(&vq);
        let e = w.unit_e();
        assert_eq!(w.mul(&e, &e), e, "{id}");
    }
}

#[test]
fn s0_is_skew() {
    let vq = build_case("case3:sym4").unwrap();
    let w = WAlgebra::new(&vq);
    let s0 = w.s0();
    assert_eq!(w.conj(&s0), s0.scale(&ri(-1)));
}

#[test]
fn zero_arguments() {
    let vq = build_case("case2:p=2").unwrap();
    let w = WAlgebra::new(&vq);
    let z = WElem::zero(vq.nvars);
    assert!(w.v_ab(&z, &z, &z).is_zero());
}

#[test]
fn heisenberg_anchor_scalar() {
    // On V = C the star is the identity, so (0,1) conj(1,0) = (0,1) and
    // (1,0) conj(0,1) = (0,-1): the difference is 2 s0.
    assert_eq!(heisenberg_anchor(&build_case("case1:n=1").unwrap()).unwrap(), "2");
}

#[test]
fn grading_dimensions() {
    let cases: [(&str, usize, [usize; 5]); 6] = [
        ("case1:n=1", 5, [1, 1, 1, 1, 1]),
        ("case1:n=2", 9, [1, 2, 3, 2, 1]),
        ("case2:p=2", 16, [1, 4, 6, 4, 1]),
        ("case3:sym4", 42, [1, 10, 20, 10, 1]),
        ("case3:full4", 70, [1, 16, 36, 16, 1]),
        ("case3:skew8", 128, [1, 28, 70, 28, 1]),
    ];
    for (id, dim, p) in cases {
        let g = grading_dims(&build_case(id).unwrap());
        assert_eq!((g.dim_w, g.p), (dim, p), "{id}");
        assert!(g.outer_as_expected);
    }
}

#[test]
fn translates_of_z4_span_all_quartics() {
    // The five coefficients of (z - a)^4 in a are independent.
    let g = grading_dims(&build_case("case1:n=1").unwrap());
    assert_eq!(g.dim_w, 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn triple_product_is_linear_in_z(seed in any::<u64>(), c in -7i64..8) {
        let vq = build_case("case1:n=3").unwrap();
        let w = WAlgebra::new(&vq);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (a, b, z1, z2) = (w.random(&mut rng, 4), w.random(&mut rng, 4), w.random(&mut rng, 4), w.random(&mut rng, 4));
        let c = ri(c);
        let lhs = w.v_ab(&a, &b, &z1.add(&z2.scale(&c)));
        let rhs = w.v_ab(&a, &b, &z1).add(&w.v_ab(&a, &b, &z2).scale(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn heisenberg_form_is_bilinear_and_skew(seed in any::<u64>()) {
        let vq = build_case("case2:p=2").unwrap();
        let w = WAlgebra::new(&vq);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (w.random(&mut rng, 4), w.random(&mut rng, 4), w.random(&mut rng, 4));
        let ab = w.heisenberg(&a, &b).unwrap();
        prop_assert_eq!(&ab, &-w.heisenberg(&b, &a).unwrap());
        prop_assert!(w.heisenberg(&a, &a).unwrap().is_zero());
        let lin = w.heisenberg(&a.add(&c), &b).unwrap();
        prop_assert_eq!(lin, ab + w.heisenberg(&c, &b).unwrap());
    }

    #[test]
    fn involution_is_an_antiautomorphism(seed in any::<u64>(), id in prop::sample::select(vec!["case1:n=2", "case3:sym4", "mixed:z3z"])) {
        let vq = build_case(id).unwrap();
        let w = WAlgebra::new(&vq);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (w.random(&mut rng, 5), w.random(&mut rng, 5));
        prop_assert_eq!(w.conj(&w.mul(&a, &b)), w.mul(&w.conj(&b), &w.conj(&a)));
        prop_assert_eq!(w.conj(&w.conj(&a)), a);
    }
}
