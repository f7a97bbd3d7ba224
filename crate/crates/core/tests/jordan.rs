use minrep::jordan::*;
use minrep::polycore::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

#[test]
fn scalar_product() {
    let a = JordanAlgebra::new(Kind::Scalar).unwrap();
    assert_eq!(a.product(&[ri(3)], &[ri(5)]), vec![ri(15)]);
    assert_eq!(a.inverse_at(&[ri(4)]).unwrap(), vec![rat(1, 4)]);
    assert_eq!(a.quadratic_rep(&[ri(3)]), vec![vec![ri(9)]]);
}

#[test]
fn full4_matrix_units() {
    let a = JordanAlgebra::new(Kind::Full4).unwrap();
    // Row-major: E12 is coordinate 1, E21 is coordinate 4.
    let p = a.product(&unit(16, 1), &unit(16, 4));
    let mut want = vec![Rat::zero(); 16];
    want[0] = rat(1, 2);
    want[5] = rat(1, 2);
    assert_eq!(p, want);
}

#[test]
fn full4_diagonal_inverse() {
    let a = JordanAlgebra::new(Kind::Full4).unwrap();
    let mut x = vec![Rat::zero(); 16];
    for i in 0..4 {
        x[5 * i] = ri(i as i64 + 1);
    }
    let inv = a.inverse_at(&x).unwrap();
    for (i, v) in inv.iter().enumerate() {
        let want = if i % 5 == 0 { rat(1, i as i64 / 5 + 1) } else { Rat::zero() };
        assert_eq!(*v, want);
    }
}

#[test]
fn unit_law_and_identity_quadratic_rep() {
    for kind in [Kind::Scalar, Kind::Spin(3), Kind::Spin(5), Kind::Sym4, Kind::Full4, Kind::Skew8] {
        let a = JordanAlgebra::new(kind).unwrap();
        let x: Vec<Rat> = (0..a.dim).map(|i| rat(i as i64 - 3, 2)).collect();
        assert_eq!(a.product(&a.e, &x), x, "{kind:?}");
        assert_eq!(a.quadratic_rep(&a.e), linalg::identity(a.dim), "{kind:?}");
        assert!(a.det.eval(&a.e).is_one(), "{kind:?}");
    }
}

#[test]
fn spin_inverse_at_random_points() {
    let vq = build_vq("spin4", &[(Kind::Spin(4), 2)]).unwrap();
    let r = check_axioms(&vq, 20, 11);
    assert!(r.inverse && r.unit_law, "{r:?}");
}

#[test]
fn build_examples() {
    let c = build_vq("C", &[(Kind::Scalar, 4)]).unwrap();
    assert_eq!(c.q, MPoly::var(1, 0).pow(4));
    assert_eq!(c.eta, Some(rat(1, 4)));
    for p in [2usize, 3] {
        let vq = build_vq("spin2", &[(Kind::Spin(p), 1), (Kind::Spin(p), 1)]).unwrap();
        assert_eq!(vq.eta, Some(rat(p as i64, 2)));
    }
    let mixed = build_vq("mixed", &[(Kind::Spin(2), 1), (Kind::Spin(3), 1)]).unwrap();
    assert_eq!(mixed.eta, None);
    assert!(matches!(build_vq("bad", &[(Kind::Scalar, 3)]), Err(JordanError::Degree(3))));
}

#[test]
fn q_is_quartic_everywhere() {
    for id in case_ids() {
        let vq = build_case(&id).unwrap();
        assert_eq!(vq.q.degree(), Some(4), "{id}");
        assert_eq!(vq.q.homogeneous_part(4), vq.q, "{id}");
    }
}

#[test]
fn unknown_case_is_an_error() {
    assert!(matches!(build_case("case9:x"), Err(JordanError::UnknownCase(_))));
}

#[test]
fn case_aliases_resolve() {
    for (alias, id) in [("case3:d=1", "case3:sym4"), ("case3:d=2", "case3:full4"), ("case3:d=4", "case3:skew8")] {
        assert_eq!(resolve_case(alias).unwrap().id, id);
    }
}

#[test]
fn table_rows() {
    let rows = emit_table(&|_| None).unwrap();
    assert!(rows.len() >= 10);
    let full4 = rows.iter().find(|r| r.case == "case3:full4").unwrap();
    assert_eq!((full4.k_lie.as_str(), full4.g.as_str(), full4.g_real.as_str()), ("sl(8)", "e7", "e7(7)"));
    for r in rows.iter().filter(|r| r.case.starts_with("case1:")) {
        let n: usize = r.case.trim_start_matches("case1:n=").parse().unwrap();
        assert_eq!(r.g, format!("sl({})", n + 2));
    }
    let g2 = rows.iter().find(|r| r.g == "g2").unwrap();
    assert_eq!((g2.v.as_str(), g2.q.as_str()), ("C+C", "z^3*z'"));
    let e8 = rows.iter().find(|r| r.g_real == "e8(-24)").unwrap();
    assert_eq!(e8.note, "metadata only; not property (T) case");
}

#[test]
fn property_t_flags() {
    let t: Vec<String> = case_ids().into_iter().filter(|id| build_case(id).unwrap().eta.is_some()).collect();
    assert!(t.iter().all(|id| id.starts_with("case")));
    assert_eq!(t.len(), 11);
}

#[test]
fn log_derivative_scalar() {
    // d/dt log (1 + t x)^4 at t = 0 is 4x.
    let vq = build_case("case1:n=1").unwrap();
    let grad = vq.q.gradient();
    let e = vq.e();
    for x in [ri(1), rat(-3, 7), ri(5)] {
        let d = grad[0].eval(&e) * &x / vq.q.eval(&e);
        assert_eq!(d, ri(4) * x);
    }
}

#[test]
fn axioms_hold_for_every_algebra() {
    for id in case_ids() {
        let vq = build_case(&id).unwrap();
        let r = check_axioms(&vq, 50, 3);
        assert!(r.all_hold(), "{id}: {r:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn axioms_for_any_seed(seed in any::<u64>(), id in prop::sample::select(vec!["case1:n=3", "case2:p=2", "case3:sym4", "mixed:2x3"])) {
        let vq = build_case(id).unwrap();
        prop_assert!(check_axioms(&vq, 4, seed).all_hold());
    }

    #[test]
    fn property_t_matches_ratio(n1 in 1usize..9, r1 in 1u32..5, k1 in 1u32..5, n2 in 1usize..9, r2 in 1u32..5, k2 in 1u32..5) {
        let eta = property_t(&[(n1, r1, k1), (n2, r2, k2)]);
        let a = rat(n1 as i64, (r1 * k1) as i64);
        let b = rat(n2 as i64, (r2 * k2) as i64);
        prop_assert_eq!(eta, if a == b { Some(a) } else { None });
    }
}
