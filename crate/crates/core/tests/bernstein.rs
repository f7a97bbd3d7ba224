use minrep::bernstein::*;
use minrep::jordan::*;
use minrep::polycore::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn sorted(mut v: Vec<Rat>) -> Vec<Rat> {
    v.sort();
    v
}

/// Root multisets `{0, alpha_1, alpha_2, alpha_3}` of the three families.
fn expected_roots(id: &str) -> Option<Vec<Rat>> {
    let (fam, x) = id.split_once(':')?;
    let v: Vec<Rat> = match fam {
        "case1" => {
            let n: i64 = x.trim_start_matches("n=").parse().ok()?;
            vec![-rat(n - 4, 4), rat(1, 2), -rat(n - 2, 4)]
        }
        "case2" => {
            let p: i64 = x.trim_start_matches("p=").parse().ok()?;
            vec![-rat(p - 2, 2), ri(0), -rat(p - 2, 2)]
        }
        "case3" => {
            let d = match x {
                "sym4" => ri(1),
                "full4" => ri(2),
                "skew8" => ri(4),
                _ => return None,
            };
            vec![-&d * rat(3, 2), -&d / ri(2), -d]
        }
        _ => return None,
    };
    Some(sorted([vec![ri(0)], v].concat()))
}

#[test]
fn scalar_quartic() {
    let vq = build_case("case1:n=1").unwrap();
    let rep = by_interpolation(&vq, 4).unwrap();
    for a in -5..6 {
        let a = ri(a);
        let four_a = ri(4) * &a;
        let want = &four_a * (&four_a - ri(1)) * (&four_a - ri(2)) * (&four_a - ri(3));
        assert_eq!(rep.poly.eval(&a), want);
    }
    assert_eq!(rep.poly.eval(&ri(1)), ri(24));
    assert_eq!(sorted(rep.poly.roots.clone().unwrap()), vec![ri(0), rat(1, 4), rat(1, 2), rat(3, 4)]);
}

#[test]
fn spin_pair_b1() {
    let vq = build_case("case2:p=2").unwrap();
    let b = by_product_formula(&vq).unwrap();
    assert_eq!(b.eval(&ri(1)), ri(16));
    assert_eq!(b.roots.clone().unwrap(), vec![ri(0); 4]);
}

#[test]
fn full4_roots() {
    let vq = build_case("case3:full4").unwrap();
    let b = by_product_formula(&vq).unwrap();
    assert_eq!(sorted(b.roots.unwrap()), vec![ri(-3), ri(-2), ri(-1), ri(0)]);
}

#[test]
fn oracle_matches_direct_derivative() {
    // Q(d) Q^m computed here by hand for V = C: (d/dz)^4 z^{4m}.
    let vq = build_case("case1:n=1").unwrap();
    for m in 1..=4u32 {
        let qm = vq.q.pow(m);
        let qm1 = vq.q.pow(m - 1);
        let k = 4 * m as i64;
        let want = ri(k * (k - 1) * (k - 2) * (k - 3));
        assert_eq!(oracle_value(&vq, &qm, &qm1, m).unwrap(), want);
    }
}

#[test]
fn root_multisets_match_the_families() {
    for id in case_ids().into_iter().filter(|id| id.starts_with("case")) {
        let vq = build_case(&id).unwrap();
        let b = by_product_formula(&vq).unwrap();
        assert_eq!(sorted(b.roots.unwrap()), expected_roots(&id).unwrap(), "{id}");
    }
}

#[test]
fn product_formula_agrees_with_interpolation() {
    for id in case_ids() {
        let vq = build_case(&id).unwrap();
        if vq.nvars > 6 {
            continue;
        }
        let prod = by_product_formula(&vq).unwrap();
        let oracle = by_interpolation(&vq, 4).unwrap();
        assert_eq!(prod, oracle.poly, "{id}");
    }
}

#[test]
fn positive_at_positive_integers() {
    for id in case_ids() {
        let vq = build_case(&id).unwrap();
        let b = by_product_formula(&vq).unwrap();
        assert!(b.eval(&ri(0)).is_zero(), "{id}");
        for m in 1..=12 {
            assert!(b.eval(&ri(m)).is_positive(), "{id} m={m}");
        }
    }
}

#[test]
fn kernel_identity_scalar() {
    let vq = build_case("case1:n=1").unwrap();
    let b = by_product_formula(&vq).unwrap();
    // (d/dz)^4 (1+zw)^{-4k} = (-4k)(-4k-1)(-4k-2)(-4k-3) w^4 (1+zw)^{-4k-4}.
    for (k, want) in [(1u32, "840"), (2, "7920")] {
        let v = verify_on_h(&vq, k, &b).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(v.b_at_minus_k, want);
    }
}

#[test]
fn kernel_identity_spin2() {
    let vq = build_case("case1:n=2").unwrap();
    let b = by_product_formula(&vq).unwrap();
    for k in 1..=2 {
        assert!(verify_on_h(&vq, k, &b).unwrap().holds);
    }
}

#[test]
fn kernel_identity_fails_with_wrong_b() {
    let vq = build_case("case1:n=1").unwrap();
    let mut b = by_product_formula(&vq).unwrap();
    b.coeffs[0] += ri(1);
    let v = verify_on_h(&vq, 1, &b).unwrap();
    assert!(!v.holds && v.difference_terms > 0);
}

#[test]
fn quoted_leading_constants_are_reported() {
    assert_eq!(reference_leading("case1:n=1"), Some(ri(256)));
    assert_eq!(reference_leading("case1:n=3"), Some(ri(16)));
    assert_eq!(reference_leading("case2:p=2"), Some(ri(1)));
    assert_eq!(reference_leading("mixed:2x3"), None);
    // Computed constants: 256 across case (1), 16 for case (2).
    for (id, lead) in [("case1:n=1", 256), ("case1:n=3", 256), ("case2:p=3", 16), ("case3:sym4", 1)] {
        assert_eq!(by_product_formula(&build_case(id).unwrap()).unwrap().leading, ri(lead), "{id}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn from_roots_round_trip(r in prop::collection::vec((-8i64..9, 1i64..5), 4), lead in 1i64..50) {
        let roots: Vec<Rat> = r.iter().map(|&(n, d)| rat(n, d)).collect();
        // B(a) = lead * prod (a - r_i), rebuilt from coefficients.
        let mut coeffs = vec![ri(lead)];
        for x in &roots {
            let mut next = vec![Rat::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * x;
            }
            coeffs = next;
        }
        let p = BernsteinPoly::from_coeffs(coeffs);
        prop_assert_eq!(sorted(p.roots.clone().unwrap()), sorted(roots.clone()));
        prop_assert_eq!(p.leading.clone(), ri(lead));
        for x in &roots {
            prop_assert!(p.eval(x).is_zero());
        }
    }

    #[test]
    fn interpolation_reproduces_the_oracle_points(id in prop::sample::select(vec!["case1:n=1", "case1:n=2", "case2:p=2", "mixed:z3z", "mixed:z2zz"])) {
        let vq = build_case(id).unwrap();
        let rep = by_interpolation(&vq, 4).unwrap();
        for (m, v) in &rep.points {
            prop_assert_eq!(&rep.poly.eval(&ri(*m as i64)), v);
        }
    }
}
