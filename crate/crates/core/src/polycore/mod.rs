//! Exact sparse polynomial calculus over the rationals.
//!
//! Everything downstream (determinants, Bernstein identities, graded
//! function spaces) is expressed through [`MPoly`], [`RatFn`] and [`DiffOp`].

mod diffop;
pub mod linalg;
mod mpoly;
mod ratfn;
pub mod univariate;

pub use diffop::{euler_apply, partial_power, DiffOp};
pub use mpoly::{MPoly, Mono};
pub use ratfn::RatFn;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: {0} vs {1} variables")]
    Dimension(usize, usize),
    #[error("exponent overflow")]
    Overflow,
    #[error("not exactly divisible")]
    NotDivisible,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parse error: {0}")]
    Parse(String),
}

/// `n/d` as a rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat, PolyError> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| PolyError::Parse(s.to_string()))?;
    let d: BigInt = d.parse().map_err(|_| PolyError::Parse(s.to_string()))?;
    if d.is_zero() {
        return Err(PolyError::ZeroDenominator);
    }
    Ok(Rat::new(n, d))
}

/// Canonical `"p/q"` text (integers print as `"p"`).
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest binary64 value.
pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Rescale huge operands before dividing.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Absolute value helper that reads better at call sites.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

/// Rising factorial `(x)_k = x(x+1)...(x+k-1)`.
pub fn rising(x: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    let mut t = x.clone();
    for _ in 0..k {
        acc *= &t;
        t += Rat::one();
    }
    acc
}

/// Falling factorial `[x]_k = x(x-1)...(x-k+1)`.
pub fn falling(x: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    let mut t = x.clone();
    for _ in 0..k {
        acc *= &t;
        t -= Rat::one();
    }
    acc
}

/// Binomial coefficient as a rational.
pub fn binomial(n: u64, k: u64) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(acc)
}

/// Small random rational `p/q` with `|p| <= bound`, `1 <= q <= bound`.
pub fn random_rat<R: rand::Rng>(rng: &mut R, bound: i64) -> Rat {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    rat(p, q)
}

pub fn random_vec<R: rand::Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Rat> {
    (0..n).map(|_| random_rat(rng, bound)).collect()
}
