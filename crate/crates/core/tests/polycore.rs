use minrep::polycore::*;
use num_traits::One;
use proptest::prelude::*;

fn z(n: usize, i: usize) -> MPoly {
    MPoly::var(n, i)
}

fn poly3() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u16..4, 0u16..4, 0u16..4), -6i64..7, 1i64..4), 0..6).prop_map(|ts| {
        let mut p = MPoly::zero(3);
        for ((a, b, c), n, d) in ts {
            p = &p + &MPoly::monomial(&[a, b, c], rat(n, d));
        }
        p
    })
}

fn point3() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-9i64..10, 1i64..5).prop_map(|(n, d)| rat(n, d)), 3)
}

#[test]
fn binomial_square() {
    let s = &z(2, 0) + &z(2, 1);
    let want = &(&z(2, 0).pow(2) + &(&z(2, 0) * &z(2, 1)).scale(&ri(2))) + &z(2, 1).pow(2);
    assert_eq!(s.pow(2), want);
}

#[test]
fn product_with_zero_is_empty() {
    let p = &z(2, 0) + &MPoly::one(2);
    let q = &p * &MPoly::zero(2);
    assert!(q.is_zero());
    assert_eq!(q.len(), 0);
}

#[test]
fn monomial_power() {
    assert_eq!(z(1, 0).pow(4).pow(3), MPoly::monomial(&[12], ri(1)));
}

#[test]
fn fourth_derivative_of_z4() {
    let d = DiffOp::new(z(1, 0).pow(4));
    assert_eq!(d.apply(&z(1, 0).pow(4)).unwrap(), MPoly::constant(1, ri(24)));
}

#[test]
fn product_of_laplacians() {
    let n = 4;
    let q1 = &z(n, 0).pow(2) + &z(n, 1).pow(2);
    let q2 = &z(n, 2).pow(2) + &z(n, 3).pow(2);
    let q = &q1 * &q2;
    assert_eq!(DiffOp::new(q.clone()).apply(&q).unwrap(), MPoly::constant(n, ri(16)));
}

#[test]
fn diffop_kills_constants() {
    let d = DiffOp::new(&z(2, 0).pow(2) + &z(2, 1));
    assert!(d.apply(&MPoly::constant(2, ri(7))).unwrap().is_zero());
}

#[test]
fn derivative_of_reciprocal() {
    let f = RatFn::new(MPoly::one(1), z(1, 0)).unwrap();
    let g = DiffOp::new(z(1, 0)).apply_ratfn(&f).unwrap();
    let want = RatFn::new(MPoly::constant(1, ri(-1)), z(1, 0).pow(2)).unwrap();
    assert!(g.equals(&want));
}

#[test]
fn fourth_derivative_of_kernel_inverse() {
    // Variables (z, w); the operator acts on z only.
    let h = &MPoly::one(2) + &(&z(2, 0) * &z(2, 1));
    let f = RatFn::new(MPoly::one(2), h.clone()).unwrap();
    let g = DiffOp::new(z(2, 0).pow(4)).apply_ratfn(&f).unwrap();
    let want = RatFn::new(z(2, 1).pow(4).scale(&ri(24)), h.pow(5)).unwrap();
    assert!(g.equals(&want));
}

#[test]
fn zero_symbol_gives_zero() {
    let f = RatFn::new(MPoly::one(1), &MPoly::one(1) + &z(1, 0)).unwrap();
    assert!(DiffOp::new(MPoly::zero(1)).apply_ratfn(&f).unwrap().is_zero());
}

#[test]
fn euler_examples() {
    let m = &z(2, 0).pow(2) * &z(2, 1);
    assert_eq!(euler_apply(&m), m.scale(&ri(3)));
    assert!(euler_apply(&MPoly::constant(2, ri(5))).is_zero());
    let p = &z(1, 0).pow(4) + &z(1, 0);
    assert_eq!(euler_apply(&p), &z(1, 0).pow(4).scale(&ri(4)) + &z(1, 0));
}

#[test]
fn substitution_examples() {
    let inv = RatFn::new(MPoly::constant(1, ri(-1)), z(1, 0)).unwrap();
    let r = z(1, 0).substitute(std::slice::from_ref(&inv)).unwrap();
    assert!(r.equals(&inv));
    let r4 = z(1, 0).pow(4).substitute(&[inv]).unwrap();
    assert!(r4.equals(&RatFn::new(MPoly::one(1), z(1, 0).pow(4)).unwrap()));
    let swap = [RatFn::from_poly(z(2, 1)), RatFn::from_poly(z(2, 0))];
    let p = &z(2, 0) * &z(2, 1);
    assert!(p.substitute(&swap).unwrap().equals(&RatFn::from_poly(p)));
}

#[test]
fn json_wire_format() {
    let p = &MPoly::monomial(&[2, 0], rat(3, 4)) + &MPoly::monomial(&[0, 1], ri(-2));
    let s = p.to_json();
    assert!(s.contains("\"nvars\":2"));
    assert!(s.contains("\"c\":\"3/4\""));
    assert_eq!(MPoly::from_json(&s).unwrap(), p);
}

#[test]
fn rational_formatting() {
    assert_eq!(fmt_rat(&rat(-6, 8)), "-3/4");
    assert_eq!(fmt_rat(&ri(5)), "5");
    assert_eq!(parse_rat("10/4").unwrap(), rat(5, 2));
    assert_eq!(rising(&rat(1, 2), 3), rat(15, 8));
    assert_eq!(falling(&ri(5), 3), ri(60));
}

/// Symbol of degree `d` in three variables, homogeneous.
fn homogeneous_symbol(d: u32) -> MPoly {
    let n = 3;
    match d {
        2 => &(&z(n, 0).pow(2) - &z(n, 1).pow(2)) + &(&z(n, 1) * &z(n, 2)).scale(&ri(3)),
        4 => {
            &(&z(n, 0).pow(4) + &(&z(n, 0) * &z(n, 1).pow(3)).scale(&rat(1, 2))) - &(&z(n, 1).pow(2) * &z(n, 2).pow(2))
        }
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly3(), b in poly3(), c in poly3()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly3(), b in poly3(), x in point3()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn commutator_with_euler(p in poly3(), d in prop::sample::select(vec![2u32, 4])) {
        let op = DiffOp::new(homogeneous_symbol(d));
        let lhs = &op.apply(&euler_apply(&p)).unwrap() - &euler_apply(&op.apply(&p).unwrap());
        prop_assert_eq!(lhs, op.apply(&p).unwrap().scale(&ri(d as i64)));
    }

    #[test]
    fn diffop_is_bilinear(p in poly3(), q in poly3(), s in poly3(), c in -5i64..6) {
        let c = ri(c);
        let op = DiffOp::new(s.clone());
        let lin = op.apply(&(&p + &q.scale(&c))).unwrap();
        prop_assert_eq!(lin, &op.apply(&p).unwrap() + &op.apply(&q).unwrap().scale(&c));
        let sym = DiffOp::new(&s + &homogeneous_symbol(2).scale(&c)).apply(&p).unwrap();
        let split = &op.apply(&p).unwrap() + &DiffOp::new(homogeneous_symbol(2)).apply(&p).unwrap().scale(&c);
        prop_assert_eq!(sym, split);
    }

    #[test]
    fn substitute_round_trip(p in poly3(), a in 1i64..4, b in -3i64..4) {
        // z0 -> a z0 + b z1 is invertible with z0 -> (z0 - b z1)/a.
        let n = 3;
        let fwd = [
            RatFn::from_poly(&z(n, 0).scale(&ri(a)) + &z(n, 1).scale(&ri(b))),
            RatFn::from_poly(z(n, 1)),
            RatFn::from_poly(z(n, 2)),
        ];
        let back = [
            RatFn::from_poly((&z(n, 0) - &z(n, 1).scale(&ri(b))).scale(&rat(1, a))),
            RatFn::from_poly(z(n, 1)),
            RatFn::from_poly(z(n, 2)),
        ];
        let f = RatFn::from_poly(p.clone());
        let r = f.compose(&fwd).unwrap().compose(&back).unwrap();
        prop_assert!(r.equals(&f));
    }

    #[test]
    fn inversion_is_an_involution(p in poly3()) {
        let n = 3;
        let inv: Vec<RatFn> = (0..n).map(|i| RatFn::new(MPoly::one(n), z(n, i)).unwrap()).collect();
        let f = RatFn::from_poly(p);
        prop_assert!(f.compose(&inv).unwrap().compose(&inv).unwrap().equals(&f));
    }

    #[test]
    fn json_round_trip(p in poly3()) {
        prop_assert_eq!(MPoly::from_json(&p.to_json()).unwrap(), p.clone());
        let v = serde_json::to_value(&p).unwrap();
        prop_assert_eq!(serde_json::from_value::<MPoly>(v).unwrap(), p);
    }

    #[test]
    fn one_is_neutral(p in poly3()) {
        prop_assert_eq!(&p * &MPoly::one(3), p.clone());
        prop_assert!(MPoly::one(3).constant_term().is_one());
    }
}
