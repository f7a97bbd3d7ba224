//! Dense univariate polynomials over the rationals (coefficients ascending).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rat;

pub fn eval(c: &[Rat], x: &Rat) -> Rat {
    c.iter().rev().fold(Rat::zero(), |acc, a| acc * x + a)
}

pub fn trim(mut c: Vec<Rat>) -> Vec<Rat> {
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    c
}

pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// `prod (x - r)` scaled by `lead`.
pub fn from_roots(lead: &Rat, roots: &[Rat]) -> Vec<Rat> {
    let mut p = vec![lead.clone()];
    for r in roots {
        p = mul(&p, &[-r.clone(), Rat::one()]);
    }
    p
}

/// Lagrange interpolation through `(x_i, y_i)`, distinct abscissae.
pub fn interpolate(points: &[(Rat, Rat)]) -> Vec<Rat> {
    let mut acc: Vec<Rat> = vec![];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = mul(&basis, &[-xj.clone(), Rat::one()]);
                denom *= xi - xj;
            }
        }
        let s = yi / denom;
        if acc.len() < basis.len() {
            acc.resize(basis.len(), Rat::zero());
        }
        for (a, b) in acc.iter_mut().zip(basis) {
            *a += &s * b;
        }
    }
    trim(acc)
}

/// Synthetic division by `(x - r)`; returns quotient and remainder.
pub fn deflate(c: &[Rat], r: &Rat) -> (Vec<Rat>, Rat) {
    let n = c.len();
    if n == 0 {
        return (vec![], Rat::zero());
    }
    let mut q = vec![Rat::zero(); n - 1];
    let mut carry = Rat::zero();
    for i in (0..n).rev() {
        let v = &c[i] + &carry * r;
        if i == 0 {
            return (q, v);
        }
        q[i - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if d > 10_000_000 {
            return None;
        }
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Extracts all rational roots with multiplicity (ascending). Returns the
/// roots and the remaining cofactor.
pub fn rational_roots(c: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut p = trim(c.to_vec());
    let mut roots = Vec::new();
    while p.len() > 1 && p[0].is_zero() {
        roots.push(Rat::zero());
        p.remove(0);
    }
    loop {
        if p.len() <= 1 {
            break;
        }
        // Clear denominators to get integer coefficients.
        let l = p.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = p.iter().map(|v| (v * Rat::from_integer(l.clone())).to_integer()).collect();
        let (Some(a0), Some(an)) = (divisors(&ints[0]), divisors(&ints[ints.len() - 1])) else { break };
        let mut found = None;
        'search: for q in &an {
            for pp in &a0 {
                for s in [1, -1] {
                    let cand = Rat::new(pp * s, q.clone());
                    if eval(&p, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                p = deflate(&p, &r).0;
                roots.push(r);
            }
            None => break,
        }
    }
    roots.sort();
    (roots, p)
}
