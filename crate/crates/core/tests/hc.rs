use minrep::hc::*;
use minrep::jordan::*;
use minrep::polycore::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn scalar() -> VQPair {
    build_case("case1:n=1").unwrap()
}

/// `(l - 4a)(l - 4a - 1)(l - 4a - 2)(l - 4a - 3)`, written out independently.
fn falling4(x: &Rat) -> Rat {
    x * (x - ri(1)) * (x - ri(2)) * (x - ri(3))
}

#[test]
fn maass_examples() {
    assert_eq!(maass_rank1_oracle(&ri(0), &ri(4)), ri(24));
    assert_eq!(maass_rank1_oracle(&ri(-1), &ri(0)), ri(24));
    for a in [rat(1, 3), ri(-2), rat(5, 4)] {
        assert!(maass_rank1_oracle(&a, &(ri(4) * &a)).is_zero());
    }
}

#[test]
fn symbol_agrees_with_rank_one_oracle_on_grid() {
    let vq = scalar();
    for i in 0..10 {
        let a = rat(i - 5, 3);
        let g = gamma_alpha(&vq, &a).poly;
        for j in 0..10 {
            let l = rat(2 * j - 7, 4);
            let v = g.eval(std::slice::from_ref(&l));
            assert_eq!(v, maass_rank1_oracle(&a, &l), "a={a} l={l}");
            assert_eq!(v, falling4(&(&l - ri(4) * &a)));
        }
    }
}

#[test]
fn full4_symbol_at_zero() {
    let vq = build_case("case3:full4").unwrap();
    let g = gamma_alpha(&vq, &ri(0)).poly;
    let want = (0..4).fold(MPoly::one(4), |acc, j| &acc * &(&MPoly::var(4, j) + &MPoly::constant(4, rat(3, 2))));
    assert_eq!(g, want);
}

#[test]
fn grade_zero_symbol() {
    let vq = build_case("case2:p=2").unwrap();
    let d0 = rat(3, 7);
    let p0 = p_m_symbol(&vq, 0, &d0, &ri(99)).poly;
    let g = gamma_alpha(&vq, &ri(-1)).poly;
    let r = g.nvars();
    let neg: Vec<MPoly> = (0..r).map(|i| -&MPoly::var(r, i)).collect();
    assert_eq!(p0, (&g - &g.compose(&neg).unwrap()).scale(&d0));
}

#[test]
fn scalar_grade_one_symbol() {
    let vq = scalar();
    let sol = solve_delta(&vq, 3);
    let p1 = p_m_symbol(&vq, 1, &sol.deltas[1], &sol.deltas[0]).poly;
    assert_eq!(p1, &MPoly::var(1, 0) - &MPoly::constant(1, ri(2)));
}

#[test]
fn scalar_anchor() {
    let sol = solve_delta(&scalar(), 6);
    assert!(sol.feasible && sol.closed_form_holds);
    assert_eq!(sol.a_const, Some(rat(1, 256)));
    let want: Vec<Rat> = (0..=6).map(|m| rat(1, 256) / ((ri(m) + rat(1, 4)) * (ri(m) + rat(5, 4)))).collect();
    assert_eq!(sol.deltas, want);
    assert_eq!(sol.deltas[0], rat(1, 80));
}

#[test]
fn feasible_iff_property_t() {
    for id in case_ids() {
        let vq = build_case(&id).unwrap();
        let sol = solve_delta(&vq, 4);
        assert_eq!(sol.feasible, vq.eta.is_some(), "{id}");
        if sol.feasible {
            assert!(sol.closed_form_holds, "{id}");
            let r = vq.total_rank();
            for m in 1..=4u32 {
                let p = p_m_symbol(&vq, m, &sol.deltas[m as usize], &sol.deltas[m as usize - 1]).poly;
                assert_eq!(p, euler_target(r, m), "{id} m={m}");
            }
        } else {
            let w = sol.witness.expect("witness");
            assert_ne!(w.value, "0");
            assert_eq!(w.certificate.len(), w.monomials.len());
        }
    }
}

#[test]
fn constructed_mixed_pairs_are_infeasible() {
    for spec in [
        vec![(Kind::Spin(2), 1), (Kind::Spin(3), 1)],
        vec![(Kind::Spin(4), 1), (Kind::Spin(5), 1)],
        vec![(Kind::Scalar, 2), (Kind::Spin(3), 1)],
    ] {
        let vq = build_vq("constructed", &spec).unwrap();
        assert!(vq.eta.is_none());
        assert!(!solve_delta(&vq, 3).feasible);
    }
}

#[test]
fn four_variable_identity() {
    let v = verify_four_variable_identity(&ri(1));
    assert!(v.holds && v.matches_closed_form);
    assert_eq!(v.solution.unwrap(), ["1/6".to_string(), "1/2".into(), "-2".into()]);
    let v = verify_four_variable_identity(&rat(3, 4));
    assert!(v.holds && v.matches_closed_form);
    let v = verify_four_variable_identity(&ri(3));
    assert_eq!(v.solution.unwrap(), ["1/20".to_string(), "1/12".into(), "-6".into()]);
    let neg = verify_four_variable_identity_negative(&[ri(1), ri(1), ri(1), ri(2)]);
    assert!(!neg.holds && neg.witness.is_some());
}

#[test]
fn partition_identities() {
    // (1,1,1,1) with no shifts is the four-variable identity.
    let b = rat(5, 2);
    let all_ones = verify_partition_identity(&[1, 1, 1, 1], &vec![vec![]; 4], &vec![b.clone(); 4], true);
    assert_eq!(all_ones.solution, verify_four_variable_identity(&b).solution);
    let v = verify_partition_identity(&[2, 2], &[vec![rat(-1, 2)], vec![rat(-1, 2)]], &[ri(1), ri(2)], true);
    assert!(!v.holds);
    // Single part 4 with the scalar shifts, b = eta - 1 + m at m = 1.
    let (parts, gammas) = partition_of(&scalar());
    assert_eq!(parts, vec![4]);
    let v = verify_partition_identity(&parts, &gammas, &[rat(1, 4)], true);
    assert!(v.holds && v.matches_closed_form, "{v:?}");
}

#[test]
fn partition_identities_need_the_weighted_target() {
    let b = [ri(2)];
    let g = |k: i64| (1..k).map(|j| -rat(j, k)).collect::<Vec<_>>();
    for (parts, gammas) in [(vec![3u32, 1], vec![g(3), g(1)]), (vec![2, 1, 1], vec![g(2), g(1), g(1)])] {
        let bs = vec![b[0].clone(); parts.len()];
        assert!(verify_partition_identity(&parts, &gammas, &bs, true).matches_closed_form);
        assert!(!verify_partition_identity(&parts, &gammas, &bs, false).holds);
    }
}

#[test]
fn operator_scale_of_scalar() {
    // B leading 256 over 4^4.
    assert!(operator_scale(&scalar(), &ri(256)).is_one());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn four_variable_identity_for_any_b(n in -40i64..40, d in 1i64..9) {
        let b = rat(n, d);
        prop_assume!(b != ri(0) && b != ri(-1) && b != ri(-2));
        let v = verify_four_variable_identity(&b);
        prop_assert!(v.holds && v.matches_closed_form);
    }

    #[test]
    fn unequal_b_is_infeasible(b in prop::collection::vec(-6i64..7, 4)) {
        prop_assume!(b.windows(2).any(|w| w[0] != w[1]));
        let bs = [ri(b[0]), ri(b[1]), ri(b[2]), ri(b[3])];
        prop_assert!(!verify_four_variable_identity_negative(&bs).holds);
    }

    #[test]
    fn symbol_is_a_falling_product(a in -12i64..12, l in -12i64..12) {
        let (a, l) = (rat(a, 4), rat(l, 2));
        let g = gamma_alpha(&scalar(), &a).poly.eval(std::slice::from_ref(&l));
        prop_assert_eq!(g, falling4(&(l - ri(4) * a)));
    }
}
