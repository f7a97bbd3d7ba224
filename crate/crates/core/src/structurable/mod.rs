//! The doubled algebra `W = V + V`, its involution, the triple operators
//! `V_{a,b}`, and the grading bookkeeping of the Lie algebra built on `W`.

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::jordan::VQPair;
use crate::polycore::linalg::rank;
use crate::polycore::{fmt_rat, random_vec, ri, Rat};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructError {
    #[error("w1 conj(w2) - w2 conj(w1) is not a multiple of s0")]
    NotHeisenberg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WElem {
    pub x: Vec<Rat>,
    pub y: Vec<Rat>,
}

fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(u, v)| u + v).collect()
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(u, v)| u - v).collect()
}

fn scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|u| u * c).collect()
}

impl WElem {
    pub fn zero(n: usize) -> Self {
        WElem { x: vec![Rat::zero(); n], y: vec![Rat::zero(); n] }
    }

    pub fn add(&self, o: &WElem) -> WElem {
        WElem { x: add(&self.x, &o.x), y: add(&self.y, &o.y) }
    }

    pub fn sub(&self, o: &WElem) -> WElem {
        WElem { x: sub(&self.x, &o.x), y: sub(&self.y, &o.y) }
    }

    pub fn scale(&self, c: &Rat) -> WElem {
        WElem { x: scale(&self.x, c), y: scale(&self.y, c) }
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.y).all(|v| v.is_zero())
    }

    fn flat(&self) -> Vec<Rat> {
        self.x.iter().chain(&self.y).cloned().collect()
    }
}

/// Cayley-Dickson double of a pair.
#[derive(Clone, Debug)]
pub struct WAlgebra<'a> {
    pub vq: &'a VQPair,
    e: Vec<Rat>,
}

impl<'a> WAlgebra<'a> {
    pub fn new(vq: &'a VQPair) -> Self {
        WAlgebra { e: vq.e(), vq }
    }

    pub fn dim(&self) -> usize {
        2 * self.vq.nvars
    }

    /// `x* = <x, e> e / 2 - x`, the symmetry about the line through `e`.
    pub fn star(&self, x: &[Rat]) -> Vec<Rat> {
        let t = self.vq.trace_form(x, &self.e) / ri(2);
        sub(&scale(&self.e, &t), x)
    }

    /// `x = x1 x2 - (y1 y2*)*`, `y = x1* y2 + (y1* x2*)*`.
    pub fn mul(&self, a: &WElem, b: &WElem) -> WElem {
        let p = |u: &[Rat], v: &[Rat]| self.vq.product(u, v);
        let x = sub(&p(&a.x, &b.x), &self.star(&p(&a.y, &self.star(&b.y))));
        let y = add(&p(&self.star(&a.x), &b.y), &self.star(&p(&self.star(&a.y), &self.star(&b.x))));
        WElem { x, y }
    }

    /// `conj(x, y) = (x, -y*)`.
    pub fn conj(&self, z: &WElem) -> WElem {
        WElem { x: z.x.clone(), y: scale(&self.star(&z.y), &-Rat::one()) }
    }

    /// `{a, b, z} = (a conj b) z + (z conj b) a - (z conj a) b`.
    pub fn v_ab(&self, a: &WElem, b: &WElem, z: &WElem) -> WElem {
        let (ab, aa) = (self.conj(b), self.conj(a));
        self.mul(&self.mul(a, &ab), z).add(&self.mul(&self.mul(z, &ab), a)).sub(&self.mul(&self.mul(z, &aa), b))
    }

    /// `s0 = (0, e)`.
    pub fn s0(&self) -> WElem {
        WElem { x: vec![Rat::zero(); self.vq.nvars], y: self.e.clone() }
    }

    pub fn unit_e(&self) -> WElem {
        WElem { x: self.e.clone(), y: vec![Rat::zero(); self.vq.nvars] }
    }

    /// `psi` with `w1 conj(w2) - w2 conj(w1) = psi s0`.
    pub fn heisenberg(&self, w1: &WElem, w2: &WElem) -> Result<Rat, StructError> {
        let d = self.mul(w1, &self.conj(w2)).sub(&self.mul(w2, &self.conj(w1)));
        if d.x.iter().any(|v| !v.is_zero()) {
            return Err(StructError::NotHeisenberg);
        }
        // Proportional to e: read the factor off the first nonzero entry of e.
        let i = self.e.iter().position(|v| !v.is_zero()).expect("nonzero unit");
        let psi = &d.y[i] / &self.e[i];
        if scale(&self.e, &psi) != d.y {
            return Err(StructError::NotHeisenberg);
        }
        Ok(psi)
    }

    pub fn random<R: Rng>(&self, rng: &mut R, bound: i64) -> WElem {
        let n = self.vq.nvars;
        WElem { x: random_vec(rng, n, bound), y: random_vec(rng, n, bound) }
    }

    /// Dimension of `{z : conj z = -z}` as the nullity of `z -> conj z + z`.
    pub fn skew_dim(&self) -> usize {
        let n = self.dim();
        let cols: Vec<Vec<Rat>> = (0..n)
            .map(|k| {
                let mut f = vec![Rat::zero(); n];
                f[k] = Rat::one();
                let z = WElem { x: f[..n / 2].to_vec(), y: f[n / 2..].to_vec() };
                self.conj(&z).add(&z).flat()
            })
            .collect();
        n - rank(&cols)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StructVerdict {
    pub case: String,
    pub w_dim: usize,
    pub samples: usize,
    /// Identity `[V_ab, V_cd] = V_{V_ab c, d} - V_{c, V_ba d}` on probes.
    pub identity_holds: bool,
    pub antiautomorphism_holds: bool,
    pub skew_dim: usize,
    pub s0_skew: bool,
    pub star_involutive: bool,
    pub e_star_is_e: bool,
    pub t_a_formula: bool,
    pub heisenberg_skew: bool,
}

/// Runs every sampled check with a seeded generator.
pub fn verify_structurable(vq: &VQPair, samples: usize, seed: u64) -> StructVerdict {
    use rand::SeedableRng;
    let w = WAlgebra::new(vq);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<[WElem; 5]> = (0..samples).map(|_| std::array::from_fn(|_| w.random(&mut rng, 3))).collect();
    let identity_holds = draws.par_iter().all(|[a, b, c, d, z]| {
        let lhs = w.v_ab(a, b, &w.v_ab(c, d, z)).sub(&w.v_ab(c, d, &w.v_ab(a, b, z)));
        let rhs = w.v_ab(&w.v_ab(a, b, c), d, z).sub(&w.v_ab(c, &w.v_ab(b, a, d), z));
        lhs == rhs
    });
    let antiautomorphism_holds =
        draws.par_iter().all(|[a, b, ..]| w.conj(&w.mul(a, b)) == w.mul(&w.conj(b), &w.conj(a)));
    let star_involutive = draws.iter().all(|[a, ..]| w.star(&w.star(&a.x)) == a.x);
    let e = w.unit_e();
    let t_a_formula = draws.par_iter().all(|[a, _, _, _, z]| {
        let lhs = w.v_ab(a, &e, z);
        let rhs = w.mul(a, z).add(&w.mul(z, &a.sub(&w.conj(a))));
        lhs == rhs
    });
    let heisenberg_skew = draws.iter().all(|[a, b, ..]| match (w.heisenberg(a, b), w.heisenberg(b, a)) {
        (Ok(p), Ok(q)) => p == -q && w.heisenberg(a, a) == Ok(Rat::zero()),
        _ => false,
    });
    let s0 = w.s0();
    StructVerdict {
        case: vq.label.clone(),
        w_dim: w.dim(),
        samples,
        identity_holds,
        antiautomorphism_holds,
        skew_dim: w.skew_dim(),
        s0_skew: w.conj(&s0) == s0.scale(&-Rat::one()),
        star_involutive,
        e_star_is_e: w.star(&w.e) == w.e,
        t_a_formula,
        heisenberg_skew,
    }
}

/// Dimensions of the grading `p_{-2} + ... + p_2` with `p_j` the degree
/// `j + 2` part of `W = span{Q(z - a)}`.
#[derive(Clone, Debug, Serialize)]
pub struct GradingDims {
    pub case: String,
    pub dim_w: usize,
    /// `dim p_j` for `j = -2..=2`.
    pub p: [usize; 5],
    /// `dim p_{+-2} = 1` and `dim p_{+-1} = dim V`.
    pub outer_as_expected: bool,
}

pub fn grading_dims(vq: &VQPair) -> GradingDims {
    let basis = crate::sl2rep::w_basis(vq);
    let mut p = [0usize; 5];
    for b in &basis {
        let d = b.degree().unwrap_or(0) as usize;
        p[d] += 1;
    }
    let n = vq.nvars;
    GradingDims {
        case: vq.label.clone(),
        dim_w: basis.len(),
        p,
        outer_as_expected: p[0] == 1 && p[4] == 1 && p[1] == n && p[3] == n,
    }
}

/// Regression anchor: `psi((0,1),(1,0))` on `V = C`.
pub fn heisenberg_anchor(vq: &VQPair) -> Result<String, StructError> {
    let w = WAlgebra::new(vq);
    let n = vq.nvars;
    let mut a = WElem::zero(n);
    a.y[0] = Rat::one();
    let mut b = WElem::zero(n);
    b.x[0] = Rat::one();
    w.heisenberg(&a, &b).map(|r| fmt_rat(&r))
}
