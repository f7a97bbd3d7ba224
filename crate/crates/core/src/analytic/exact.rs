//! Exact layer: the Hermitian kernel polynomial, the sequences `a_m`, `c_m`,
//! and the parameters of the Meijer weight.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bernstein::{self, BernsteinError, BernsteinPoly};
use crate::jordan::VQPair;
use crate::polycore::{fmt_rat, rat, rat_to_f64, ri, rising, MPoly, PolyError, Rat, RatFn};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticError {
    #[error("pair lacks property (T)")]
    NotT,
    #[error("Bernstein roots do not split as expected")]
    Roots,
    #[error("nonpositive Pochhammer base {0}")]
    NonPositive(String),
    #[error("series did not converge within {0} terms (partial sum {1})")]
    NoConvergence(usize, f64),
    #[error("{0} requires distinct non-integer beta gaps")]
    Refused(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Bernstein(#[from] BernsteinError),
}

/// `H(z, w) = Q(w) Q(w^{-1} + z)` on `2n` variables (`z` first, then `w`).
pub fn hermitian_kernel(vq: &VQPair) -> Result<MPoly, PolyError> {
    let n = vq.nvars;
    let n2 = 2 * n;
    let inv = vq.inverse_map();
    let images: Vec<RatFn> = inv
        .iter()
        .enumerate()
        .map(|(a, f)| {
            let den = f.den.embed(n2, n);
            let num = &f.num.embed(n2, n) + &(&MPoly::var(n2, a) * &den);
            RatFn { num, den }
        })
        .collect();
    let qs = vq.q.substitute(&images)?;
    let qw = vq.q.embed(n2, n);
    (&qs.num * &qw).div_exact(&qs.den)
}

/// The Bernstein data every downstream formula needs.
#[derive(Clone, Debug)]
pub struct BData {
    pub b: BernsteinPoly,
    pub eta: Rat,
    pub alpha1: Rat,
    pub alpha2: Rat,
    pub alpha3: Rat,
}

pub fn bdata(vq: &VQPair, b: &BernsteinPoly) -> Result<BData, AnalyticError> {
    let eta = vq.eta.clone().ok_or(AnalyticError::NotT)?;
    let (alpha1, alpha2, alpha3) = b.alphas(&eta).ok_or(AnalyticError::Roots)?;
    Ok(BData { b: b.clone(), eta, alpha1, alpha2, alpha3 })
}

/// `a_m` from the recurrence `a_{m+1}/a_m = B(-m-eta)/B(-m-2 eta)`, `a_0 = 1`.
pub fn seq_a_recurrence(d: &BData, mmax: usize) -> Vec<Rat> {
    let mut a = vec![Rat::one()];
    for m in 0..mmax {
        let mm = ri(m as i64);
        let num = d.b.eval(&(-&mm - &d.eta));
        let den = d.b.eval(&(-&mm - ri(2) * &d.eta));
        let next = &a[m] * num / den;
        a.push(next);
    }
    a
}

/// `a_m` from the Gindikin gamma ratios. Within each quotient the gamma
/// arguments differ by the integer `m k_i`, so every ratio is a quotient of
/// rising factorials and the result is exact. Works without property (T).
pub fn seq_a_gindikin(vq: &VQPair, mmax: usize) -> Vec<Rat> {
    (0..=mmax)
        .map(|m| {
            let mut acc = Rat::one();
            for f in &vq.factors {
                let nr = Rat::new((f.alg.dim as i64).into(), (f.alg.rank as i64).into());
                let steps = (m as u32) * f.k;
                for j in 0..f.alg.rank {
                    let shift = ri(j as i64) * &f.alg.peirce / ri(2);
                    let c1 = &nr - &shift;
                    let c2 = ri(2) * &nr - &shift;
                    acc *= rising(&c1, steps) / rising(&c2, steps);
                }
            }
            acc
        })
        .collect()
}

/// `c_m = (eta+1)_m / ((eta+a2)_m (eta+a3)_m m!)` with rising factorials.
pub fn seq_c(d: &BData, mmax: usize) -> Result<Vec<Rat>, AnalyticError> {
    let b2 = &d.eta + &d.alpha2;
    let b3 = &d.eta + &d.alpha3;
    for b in [&b2, &b3] {
        if !b.is_positive() {
            return Err(AnalyticError::NonPositive(fmt_rat(b)));
        }
    }
    let top = &d.eta + ri(1);
    Ok((0..=mmax as u32).map(|m| rising(&top, m) / (rising(&b2, m) * rising(&b3, m) * rising(&ri(1), m))).collect())
}

/// Right-hand side of the moment identity, `(2eta)_m (2eta+a2)_m (2eta+a3)_m / (eta)_m`.
pub fn inv_ac_closed(d: &BData, m: u32) -> Rat {
    let two_eta = ri(2) * &d.eta;
    rising(&two_eta, m) * rising(&(&two_eta + &d.alpha2), m) * rising(&(&two_eta + &d.alpha3), m) / rising(&d.eta, m)
}

/// Exact partial sum `sum_{m<=n} c_m x^m`.
pub fn kernel_partial_sum(c: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    let mut p = Rat::one();
    for cm in c {
        acc += cm * &p;
        p *= x;
    }
    acc
}

/// Floating evaluation of the kernel series `1F2(eta+1; eta+a2, eta+a3; x)`
/// with the term-ratio recurrence and compensated summation.
pub fn kernel_1f2(d: &BData, x: f64) -> Result<f64, AnalyticError> {
    let e = rat_to_f64(&d.eta);
    let (a2, a3) = (rat_to_f64(&d.alpha2), rat_to_f64(&d.alpha3));
    let mut term = 1.0f64;
    let (mut sum, mut comp) = (1.0f64, 0.0f64);
    for m in 0..100_000usize {
        let mf = m as f64;
        term *= (mf + e + 1.0) / ((mf + e + a2) * (mf + e + a3) * (mf + 1.0)) * x;
        // Neumaier summation.
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if mf > x.abs().cbrt() + 2.0 && term.abs() <= 1e-18 * (sum + comp).abs() {
            return Ok(sum + comp);
        }
    }
    Err(AnalyticError::NoConvergence(100_000, sum + comp))
}

/// Kernel at `(w, z; w', z')` for real sample points: `1F2(H(z, z') w w')`.
pub fn kernel_eval(d: &BData, h: &MPoly, z: &[f64], w: f64, z2: &[f64], w2: f64) -> Result<f64, AnalyticError> {
    let mut pt = z.to_vec();
    pt.extend_from_slice(z2);
    kernel_1f2(d, h.eval_f64(&pt) * w * w2)
}

/// Parameters of the Meijer `G^{3,0}_{1,3}` weight.
#[derive(Clone, Debug, Serialize)]
pub struct MeijerParams {
    pub alpha: f64,
    pub beta: [f64; 3],
    pub sigma: f64,
    /// Exponent as stated: `sum beta - alpha - 1/2`.
    pub theta: f64,
    /// Exponent of the standard large-argument expansion,
    /// `(sum beta - alpha)/2 - 1/4`.
    pub theta_asymptotic: f64,
    #[serde(skip)]
    pub exact: (Rat, [Rat; 3]),
}

impl MeijerParams {
    pub fn from_exact(alpha: Rat, beta: [Rat; 3]) -> Self {
        let bf = [rat_to_f64(&beta[0]), rat_to_f64(&beta[1]), rat_to_f64(&beta[2])];
        let af = rat_to_f64(&alpha);
        let sb: Rat = beta.iter().fold(Rat::zero(), |acc, b| acc + b);
        let theta = rat_to_f64(&(&sb - &alpha - rat(1, 2)));
        let theta_asymptotic = rat_to_f64(&((&sb - &alpha) / ri(2) - rat(1, 4)));
        let sigma = -bf.iter().cloned().fold(f64::INFINITY, f64::min);
        MeijerParams { alpha: af, beta: bf, sigma, theta, theta_asymptotic, exact: (alpha, beta) }
    }

    /// True when all pairwise beta gaps are non-integers, so the residue
    /// expansion has only simple poles.
    pub fn series_applicable(&self) -> bool {
        let b = &self.exact.1;
        (0..3).all(|i| (i + 1..3).all(|j| !(&b[i] - &b[j]).is_integer()))
    }
}

/// `alpha = eta - 1`, `beta = (2eta - 1, 2eta + a2 - 1, 2eta + a3 - 1)`.
pub fn meijer_params(d: &BData) -> MeijerParams {
    let one = ri(1);
    let two_eta = ri(2) * &d.eta;
    MeijerParams::from_exact(&d.eta - &one, [&two_eta - &one, &two_eta + &d.alpha2 - &one, &two_eta + &d.alpha3 - &one])
}

/// Convenience: Bernstein data straight from a pair (uses the product
/// formula, which is exact and cheap).
pub fn bdata_for(vq: &VQPair) -> Result<BData, AnalyticError> {
    let b = bernstein::by_product_formula(vq)?;
    bdata(vq, &b)
}
