//! Sampled checks of the Jordan axioms and of the determinant identities.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::VQPair;
use crate::polycore::linalg::mat_vec;
use crate::polycore::{random_vec, Rat};

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub case: String,
    pub samples: usize,
    pub commutative: bool,
    /// `x^2 (x y) = x (x^2 y)`.
    pub jordan_identity: bool,
    /// `<x y, z> = <x, y z>`.
    pub trace_associative: bool,
    pub unit_law: bool,
    pub q_at_e_is_one: bool,
    /// `Q(P(x) y) = Q(x)^2 Q(y)`.
    pub semi_invariance: bool,
    /// `x x^{-1} = e` at nonsingular samples.
    pub inverse: bool,
    /// `d/dt log Q(e + t x)` at 0 equals `<x, e>`.
    pub log_derivative: bool,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.commutative
            && self.jordan_identity
            && self.trace_associative
            && self.unit_law
            && self.q_at_e_is_one
            && self.semi_invariance
            && self.inverse
            && self.log_derivative
    }
}

/// Checks every axiom on `samples` seeded random rational points.
pub fn check_axioms(vq: &VQPair, samples: usize, seed: u64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = vq.nvars;
    let e = vq.e();
    let grad_e: Vec<Rat> = vq.q.gradient().iter().map(|g| g.eval(&e)).collect();
    let mut r = AxiomReport {
        case: vq.label.clone(),
        samples,
        commutative: true,
        jordan_identity: true,
        trace_associative: true,
        unit_law: true,
        q_at_e_is_one: vq.q.eval(&e) == Rat::from_integer(1.into()),
        semi_invariance: true,
        inverse: true,
        log_derivative: true,
    };
    for _ in 0..samples {
        let (x, y, z) = (random_vec(&mut rng, n, 5), random_vec(&mut rng, n, 5), random_vec(&mut rng, n, 5));
        let xy = vq.product(&x, &y);
        let x2 = vq.product(&x, &x);
        r.commutative &= xy == vq.product(&y, &x);
        r.jordan_identity &= vq.product(&x2, &xy) == vq.product(&x, &vq.product(&x2, &y));
        r.trace_associative &= vq.trace_form(&xy, &z) == vq.trace_form(&x, &vq.product(&y, &z));
        r.unit_law &= vq.product(&e, &x) == x;
        let px_y = mat_vec(&vq.quadratic_rep(&x), &y);
        let qx = vq.q.eval(&x);
        r.semi_invariance &= vq.q.eval(&px_y) == &qx * &qx * vq.q.eval(&y);
        if let Ok(inv) = vq.inverse_at(&x) {
            r.inverse &= vq.product(&x, &inv) == e;
        }
        let dlog = grad_e.iter().zip(&x).fold(Rat::from_integer(0.into()), |acc, (g, v)| acc + g * v);
        r.log_derivative &= dlog == vq.trace_form(&x, &e);
    }
    r
}
