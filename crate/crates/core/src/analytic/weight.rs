//! Checks on the Meijer pseudo-weight: moment identity, sign change,
//! integrability at the origin, large-argument behaviour, and the rank-one
//! reproducing property.

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::exact::{inv_ac_closed, meijer_params, AnalyticError, BData, MeijerParams};
use super::meijer::{asymptotic, meijer_g, mellin};
use super::special::{gauss_legendre, gl_panel};
use crate::polycore::{rat_to_f64, Rat};

#[derive(Clone, Debug, Serialize)]
pub struct MomentRow {
    pub m: u32,
    /// Quadrature ratio `int G u^m / int G`.
    pub lhs: f64,
    /// Exact `(1/(a_m c_m)) / (1/(a_0 c_0))`.
    pub rhs: f64,
    pub relerr: f64,
    /// Quadrature moment against the Mellin gamma ratio.
    pub mellin_relerr: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignChange {
    /// A point where `G < 0`, if any was found.
    pub u_neg: Option<f64>,
    pub g_at_u_neg: Option<f64>,
    /// Last sign change; `G > 0` on the sampled grid beyond it.
    pub u0: Option<f64>,
    pub positive_beyond_u0: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Asymptotic {
    pub u: f64,
    /// Ratio with the stated exponent.
    pub ratio: f64,
    pub within_10pct: bool,
    /// Ratio with the standard large-argument exponent.
    pub ratio_corrected: f64,
    pub corrected_within_10pct: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Integrability {
    pub sigma: f64,
    pub sigma_below_one: bool,
    /// `int_0^eps |G|` for `eps = 1e-2, 1e-4, 1e-6`.
    pub tail_integrals: Vec<f64>,
    pub shrinking: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightReport {
    pub params: MeijerParams,
    /// Normalizing constant `C` fixed by `m = 0`.
    pub c_const: f64,
    pub moments: Vec<MomentRow>,
    pub sign_change: SignChange,
    pub asymptotic: Asymptotic,
    pub integrability: Integrability,
    pub minus_alpha_exceeds_sigma: bool,
}

fn lcm_of_denominators(p: &MeijerParams) -> u64 {
    let mut l = 2u64;
    for b in &p.exact.1 {
        let d: u64 = b.denom().try_into().unwrap_or(1);
        l = l.lcm(&d);
    }
    l
}

/// `int_0^inf G(u) u^m du` for `m = 0..=mmax`, substituting `u = v^p` so that
/// the fractional powers at the origin become integral.
pub fn moments(p: &MeijerParams, mmax: u32) -> Result<Vec<f64>, AnalyticError> {
    let pw = lcm_of_denominators(p) as f64;
    let rule = gauss_legendre(20);
    let mut panels: Vec<(f64, f64)> = (0..24).rev().map(|k| (0.5f64.powi(k + 1), 0.5f64.powi(k))).collect();
    // Panels uniform in sqrt(u) beyond v = 1.
    let mut s = 1.0f64;
    let v_of = |s: f64| s.powf(2.0 / pw);
    let mut totals = vec![0.0f64; mmax as usize + 1];
    let eval_panels = |ps: &[(f64, f64)]| -> Result<Vec<Vec<f64>>, AnalyticError> {
        ps.par_iter()
            .map(|&(a, b)| {
                let h = 0.5 * (b - a);
                let mid = 0.5 * (a + b);
                let mut out = vec![0.0; mmax as usize + 1];
                for (x, w) in rule.0.iter().zip(&rule.1) {
                    let v = mid + h * x;
                    let u = v.powf(pw);
                    let g = meijer_g(p, u)?.0;
                    let base = g * pw * v.powf(pw - 1.0) * w * h;
                    let mut um = 1.0;
                    for o in out.iter_mut() {
                        *o += base * um;
                        um *= u;
                    }
                }
                Ok(out)
            })
            .collect()
    };
    for row in eval_panels(&panels)? {
        for (t, r) in totals.iter_mut().zip(row) {
            *t += r;
        }
    }
    // March outward in batches until the contributions are negligible.
    let mut quiet = 0;
    while quiet < 2 {
        panels.clear();
        for _ in 0..8 {
            panels.push((v_of(s), v_of(s + 0.5)));
            s += 0.5;
        }
        let rows = eval_panels(&panels)?;
        let mut small = true;
        for row in rows {
            for (t, r) in totals.iter_mut().zip(&row) {
                *t += r;
            }
            for (t, r) in totals.iter().zip(&row) {
                if r.abs() > 1e-16 * t.abs() {
                    small = false;
                }
            }
        }
        quiet = if small && s > 4.0 { quiet + 1 } else { 0 };
        if s > 1e4 {
            return Err(AnalyticError::NoConvergence(panels.len(), totals[0]));
        }
    }
    Ok(totals)
}

pub fn moment_rows(d: &BData, p: &MeijerParams, mmax: u32) -> Result<(f64, Vec<MomentRow>), AnalyticError> {
    let mom = moments(p, mmax)?;
    let inv0 = rat_to_f64(&inv_ac_closed(d, 0));
    let rows = (0..=mmax)
        .map(|m| {
            let lhs = mom[m as usize] / mom[0];
            let rhs = rat_to_f64(&(inv_ac_closed(d, m) / inv_ac_closed(d, 0)));
            let mel = mellin(p, m as f64 + 1.0);
            MomentRow {
                m,
                lhs,
                rhs,
                relerr: ((lhs - rhs) / rhs).abs(),
                mellin_relerr: ((mom[m as usize] - mel) / mel).abs(),
            }
        })
        .collect();
    Ok((inv0 / mom[0], rows))
}

/// Samples `G` on a log grid, brackets the last sign change, bisects.
pub fn sign_change(p: &MeijerParams) -> Result<SignChange, AnalyticError> {
    let grid: Vec<f64> = (0..=160).map(|i| 10f64.powf(-8.0 + 0.075 * i as f64)).collect();
    let vals: Vec<f64> = grid.par_iter().map(|&u| meijer_g(p, u).map(|r| r.0)).collect::<Result<_, _>>()?;
    let neg = vals.iter().position(|v| *v < 0.0);
    let last_change = (0..vals.len() - 1).rev().find(|&i| (vals[i] < 0.0) != (vals[i + 1] < 0.0));
    let u0 = match last_change {
        Some(i) => {
            let (mut lo, mut hi) = (grid[i], grid[i + 1]);
            let lo_neg = vals[i] < 0.0;
            for _ in 0..60 {
                let mid = (lo * hi).sqrt();
                if (meijer_g(p, mid)?.0 < 0.0) == lo_neg {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Some(hi)
        }
        None => None,
    };
    let positive_beyond_u0 = match (last_change, u0) {
        (Some(i), Some(_)) => vals[i + 1..].iter().all(|v| *v > 0.0),
        _ => vals.iter().all(|v| *v > 0.0),
    };
    Ok(SignChange { u_neg: neg.map(|i| grid[i]), g_at_u_neg: neg.map(|i| vals[i]), u0, positive_beyond_u0 })
}

pub fn asymptotic_check(p: &MeijerParams, u: f64) -> Result<Asymptotic, AnalyticError> {
    let g = meijer_g(p, u)?.0;
    let ratio = g / asymptotic(p.theta, u);
    let ratio_corrected = g / asymptotic(p.theta_asymptotic, u);
    Ok(Asymptotic {
        u,
        ratio,
        within_10pct: (0.9..=1.1).contains(&ratio),
        ratio_corrected,
        corrected_within_10pct: (0.9..=1.1).contains(&ratio_corrected),
    })
}

/// `int_0^eps |G|` in the variable `u = v^p`.
pub fn integrability(p: &MeijerParams) -> Result<Integrability, AnalyticError> {
    let pw = lcm_of_denominators(p) as f64;
    let rule = gauss_legendre(20);
    let tails = [1e-2f64, 1e-4, 1e-6]
        .iter()
        .map(|&eps| {
            let vmax = eps.powf(1.0 / pw);
            let mut acc = 0.0;
            let mut err = None;
            for k in 0..30 {
                let (a, b) = (vmax * 0.5f64.powi(k + 1), vmax * 0.5f64.powi(k));
                acc += gl_panel(&rule, a, b, |v| match meijer_g(p, v.powf(pw)) {
                    Ok((g, _)) => g.abs() * pw * v.powf(pw - 1.0),
                    Err(e) => {
                        err = Some(e);
                        0.0
                    }
                });
            }
            match err {
                Some(e) => Err(e),
                None => Ok(acc),
            }
        })
        .collect::<Result<Vec<f64>, _>>()?;
    let shrinking = tails.windows(2).all(|w| w[1] < w[0]) && tails.iter().all(|t| t.is_finite());
    Ok(Integrability { sigma: p.sigma, sigma_below_one: p.sigma < 1.0, tail_integrals: tails, shrinking })
}

pub fn weight_report(d: &BData, mmax: u32) -> Result<WeightReport, AnalyticError> {
    let params = meijer_params(d);
    let (c_const, moments) = moment_rows(d, &params, mmax)?;
    Ok(WeightReport {
        sign_change: sign_change(&params)?,
        asymptotic: asymptotic_check(&params, 1e4)?,
        integrability: integrability(&params)?,
        minus_alpha_exceeds_sigma: -params.alpha > params.sigma,
        c_const,
        moments,
        params,
    })
}

/// Rank-one reproducing check: `(psi | H(., z')^m)_m = psi(z')` for `V = C`,
/// with `(f|g)_m = (4m+1)/pi int f conj(g) (1+|z|^2)^{-4m-2} dx dy`.
/// Returns the relative error.
pub fn reproduce_rank1(m: u32, coeffs: &[Complex64], zp: Complex64) -> f64 {
    let deg = 4 * m as usize;
    assert!(coeffs.len() <= deg + 1);
    let psi = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let n_theta = 2 * deg + 4;
    let rule = gauss_legendre(24);
    // conj(H(z, z')^m) = (1 + conj(z) z')^{4m}; the radial weight is
    // (1/2)(1-t)^{4m} dt and dt = dx/2 on the Gauss-Legendre interval.
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n_theta {
        let th = 2.0 * std::f64::consts::PI * k as f64 / n_theta as f64;
        let ph = Complex64::from_polar(1.0, th);
        for (x, w) in rule.0.iter().zip(&rule.1) {
            let t = 0.5 * (x + 1.0);
            let r = (t / (1.0 - t)).sqrt();
            let z = ph * r;
            let kern = (Complex64::new(1.0, 0.0) + z.conj() * zp).powu(deg as u32);
            let wt = 0.25 * (1.0 - t).powi(deg as i32) * w;
            acc += psi(z) * kern * wt;
        }
    }
    let dtheta = 2.0 * std::f64::consts::PI / n_theta as f64;
    let val = acc * dtheta * (4 * m + 1) as f64 / std::f64::consts::PI;
    let exact = psi(zp);
    (val - exact).norm() / exact.norm()
}

/// Exact rational weight of the `m`-th moment, for reports.
pub fn exact_inv_ac(d: &BData, m: u32) -> Rat {
    inv_ac_closed(d, m)
}
