use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::{MPoly, PolyError, Rat, RatFn};

/// Constant-coefficient differential operator; variable `i` of the symbol
/// stands for the partial derivative in `z_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    pub symbol: MPoly,
}

impl DiffOp {
    pub fn new(symbol: MPoly) -> Self {
        DiffOp { symbol }
    }

    pub fn nvars(&self) -> usize {
        self.symbol.nvars()
    }

    /// Exact application to a polynomial, monomial by monomial.
    pub fn apply(&self, p: &MPoly) -> Result<MPoly, PolyError> {
        if p.nvars() != self.nvars() {
            return Err(PolyError::Dimension(self.nvars(), p.nvars()));
        }
        let mut out = MPoly::zero(p.nvars());
        for (a, ca) in self.symbol.terms() {
            for (b, cb) in p.terms() {
                if !a.divides(b) {
                    continue;
                }
                let mut f = BigInt::one();
                for (&ai, &bi) in a.exps().iter().zip(b.exps()) {
                    for t in 0..ai {
                        f *= BigInt::from(bi - t);
                    }
                }
                out.add_term(a.quotient_of(b), ca * cb * Rat::from_integer(f));
            }
        }
        Ok(out)
    }

    /// Applies the operator to `num / base^k`, returning `(num', k')` with the
    /// result equal to `num' / base^k'`. Partial derivatives are memoised by
    /// multi-index so shared prefixes are differentiated once.
    pub fn apply_pow_frac(&self, num: &MPoly, base: &MPoly, k: u32) -> Result<(MPoly, u32), PolyError> {
        let n = self.nvars();
        if num.nvars() != n || base.nvars() != n {
            return Err(PolyError::Dimension(n, num.nvars()));
        }
        let order = self.symbol.degree().unwrap_or(0);
        let grad = base.gradient();
        let mut memo: HashMap<Vec<u16>, MPoly> = HashMap::new();
        memo.insert(vec![0; n], num.clone());
        fn get(alpha: &[u16], memo: &mut HashMap<Vec<u16>, MPoly>, base: &MPoly, grad: &[MPoly], k: u32) -> MPoly {
            if let Some(v) = memo.get(alpha) {
                return v.clone();
            }
            let i = alpha.iter().position(|&e| e > 0).unwrap();
            let mut prev = alpha.to_vec();
            prev[i] -= 1;
            let p = get(&prev, memo, base, grad, k);
            let j: u32 = prev.iter().map(|&e| e as u32).sum();
            // d/dz_i (P / B^(k+j)) = (P_i B - (k+j) P B_i) / B^(k+j+1)
            let kj = Rat::from_integer(BigInt::from(k + j));
            let r = &(&p.deriv(i) * base) - &(&p * &grad[i]).scale(&kj);
            memo.insert(alpha.to_vec(), r.clone());
            r
        }
        let mut out = MPoly::zero(n);
        let bpows: Vec<MPoly> = {
            let mut v = vec![MPoly::one(n)];
            for _ in 0..order {
                let next = &v[v.len() - 1] * base;
                v.push(next);
            }
            v
        };
        for (a, c) in self.symbol.terms() {
            let d = get(a.exps(), &mut memo, base, &grad, k);
            let lift = order - a.degree();
            out = &out + &(&d * &bpows[lift as usize]).scale(c);
        }
        Ok((out, k + order))
    }

    /// Applies the operator to a rational function, cancelling powers of the
    /// input denominator afterwards.
    pub fn apply_ratfn(&self, f: &RatFn) -> Result<RatFn, PolyError> {
        if self.symbol.is_zero() {
            return Ok(RatFn::from_poly(MPoly::zero(f.nvars())));
        }
        if f.den.is_constant() {
            let c = f.den.constant_term();
            return Ok(RatFn::from_poly(self.apply(&f.num)?.scale(&(Rat::one() / c))));
        }
        let (num, k) = self.apply_pow_frac(&f.num, &f.den, 1)?;
        let den = f.den.pow(k);
        Ok(RatFn { num, den }.cancel_factor(&f.den))
    }
}

/// Euler operator: each homogeneous component scaled by its degree.
pub fn euler_apply(p: &MPoly) -> MPoly {
    let mut out = MPoly::zero(p.nvars());
    for (m, c) in p.terms() {
        if m.degree() > 0 {
            out.add_term(m.clone(), c * Rat::from_integer(BigInt::from(m.degree())));
        }
    }
    out
}

/// `(d/dz_i)^k`.
pub fn partial_power(nvars: usize, i: usize, k: u16) -> DiffOp {
    let mut e = vec![0u16; nvars];
    e[i] = k;
    DiffOp::new(MPoly::monomial(&e, Rat::one()))
}
