//! `G^{3,0}_{1,3}(u | alpha; beta_1, beta_2, beta_3)` by two independent
//! methods: the residue series (double-double) and Mellin-Barnes quadrature.

use num_complex::Complex64;

use super::exact::{AnalyticError, MeijerParams};
use super::special::{gamma_dd, gauss_legendre, ln_gamma, ln_gamma_c, rgamma_dd, Dd};

/// Residue expansion `sum_i C_i u^{b_i} 1F2(1 - a + b_i; 1 + b_i - b_j, 1 + b_i - b_l; u)`.
/// Valid only when every pairwise beta gap is a non-integer.
pub fn meijer_series(p: &MeijerParams, u: f64) -> Result<f64, AnalyticError> {
    if !p.series_applicable() {
        return Err(AnalyticError::Refused("residue series"));
    }
    let a = Dd::from_rat(&p.exact.0);
    let b: Vec<Dd> = p.exact.1.iter().map(Dd::from_rat).collect();
    let ud = Dd::new(u);
    let lnu = ud.ln();
    let mut total = Dd::ZERO;
    for i in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        let mut coef = rgamma_dd(a - b[i]);
        for &j in &others {
            coef = coef * gamma_dd(b[j] - b[i]);
        }
        let top = Dd::ONE - a + b[i];
        let (d1, d2) = (Dd::ONE + b[i] - b[others[0]], Dd::ONE + b[i] - b[others[1]]);
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        let mut k = 0usize;
        loop {
            let kd = Dd::new(k as f64);
            term = term * (top + kd) / ((d1 + kd) * (d2 + kd) * Dd::new(k as f64 + 1.0)) * ud;
            sum = sum + term;
            k += 1;
            if k as f64 > u.cbrt() + 5.0 && term.abs().hi <= 1e-34 * sum.abs().hi {
                break;
            }
            if k > 20_000 {
                return Err(AnalyticError::NoConvergence(k, sum.to_f64()));
            }
        }
        total = total + coef * (b[i] * lnu).exp() * sum;
    }
    Ok(total.to_f64())
}

/// Outcome of one contour quadrature.
#[derive(Clone, Copy, Debug)]
pub struct QuadOutcome {
    pub value: f64,
    /// Abscissa `Re s = c` of the contour.
    pub c: f64,
    /// Truncation point along the imaginary axis.
    pub t_max: f64,
    pub nodes: usize,
}

fn ln_integrand(p: &MeijerParams, s: Complex64, lnu: f64) -> Complex64 {
    let mut acc = -ln_gamma_c(s + p.alpha) - s * lnu;
    for b in p.beta {
        acc += ln_gamma_c(s + b);
    }
    acc
}

fn ln_integrand_real(p: &MeijerParams, c: f64, lnu: f64) -> f64 {
    p.beta.iter().map(|b| ln_gamma(b + c)).sum::<f64>() - ln_gamma(p.alpha + c) - c * lnu
}

/// Abscissa minimizing the real integrand (saddle point), kept at least a
/// quarter unit right of `sigma`.
pub fn saddle_abscissa(p: &MeijerParams, u: f64) -> f64 {
    let lnu = u.ln();
    let lo0 = p.sigma + 0.25;
    let (mut lo, mut hi) = (lo0, lo0 + 20.0 + 4.0 * u.sqrt());
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (ln_integrand_real(p, x1, lnu), ln_integrand_real(p, x2, lnu));
    for _ in 0..200 {
        if hi - lo < 1e-6 {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = ln_integrand_real(p, x1, lnu);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = ln_integrand_real(p, x2, lnu);
        }
    }
    (0.5 * (lo + hi)).max(lo0)
}

/// `G(u) = (1/pi) int_0^inf Re I(c + it) dt` where `I` is the Mellin-Barnes
/// integrand; conjugate symmetry folds the line onto the half-axis.
pub fn meijer_quad(p: &MeijerParams, u: f64) -> Result<QuadOutcome, AnalyticError> {
    let rule = gauss_legendre(16);
    let c = saddle_abscissa(p, u);
    let lnu = u.ln();
    let scale = ln_integrand(p, Complex64::new(c, 0.0), lnu).re;
    let h = (4.0 / (1.0 + lnu.abs())).min(0.5);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut peak = 0.0f64;
    let mut quiet = 0;
    let mut t0 = 0.0;
    let mut nodes = 0usize;
    while quiet < 2 {
        let mut panel = 0.0;
        let mut pmax = 0.0f64;
        for (x, w) in rule.0.iter().zip(&rule.1) {
            let t = t0 + 0.5 * h * (x + 1.0);
            let v = (ln_integrand(p, Complex64::new(c, t), lnu) - scale).exp();
            pmax = pmax.max(v.norm());
            panel += w * v.re;
        }
        nodes += rule.0.len();
        panel *= 0.5 * h;
        let y = panel - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        peak = peak.max(pmax);
        quiet = if pmax < 1e-17 * peak { quiet + 1 } else { 0 };
        t0 += h;
        if t0 > 1e5 {
            return Err(AnalyticError::NoConvergence(nodes, sum));
        }
    }
    Ok(QuadOutcome { value: sum * scale.exp() / std::f64::consts::PI, c, t_max: t0, nodes })
}

/// Method used to produce a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Method {
    Series,
    Quadrature,
}

/// Preferred evaluation: residue series for moderate `u` when applicable,
/// otherwise quadrature.
pub fn meijer_g(p: &MeijerParams, u: f64) -> Result<(f64, Method), AnalyticError> {
    if p.series_applicable() && u <= 50.0 {
        return meijer_series(p, u).map(|v| (v, Method::Series));
    }
    meijer_quad(p, u).map(|q| (q.value, Method::Quadrature))
}

/// Mellin transform `prod Gamma(beta_i + s) / Gamma(alpha + s)` at real `s`.
pub fn mellin(p: &MeijerParams, s: f64) -> f64 {
    let num: Dd = p.beta.iter().fold(Dd::ONE, |acc, b| acc * gamma_dd(Dd::new(b + s)));
    (num * rgamma_dd(Dd::new(p.alpha + s))).to_f64()
}

/// `sqrt(pi) u^theta e^{-2 sqrt(u)}`.
pub fn asymptotic(theta: f64, u: f64) -> f64 {
    std::f64::consts::PI.sqrt() * (theta * u.ln() - 2.0 * u.sqrt()).exp()
}
