//! Floating-point special functions: a double-double type for the
//! cancellation-heavy residue sums, complex log-gamma for contour
//! quadrature, and Gauss-Legendre rules.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use crate::polycore::Rat;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, about 32 digits.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub const DD_PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.224_646_799_147_353_2e-16 };
const DD_LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 };

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Exact-rational input rounded to double-double.
    pub fn from_rat(r: &Rat) -> Dd {
        fn big(n: &num_bigint::BigInt) -> Dd {
            let hi = n.to_f64().unwrap_or(f64::NAN);
            if !hi.is_finite() {
                return Dd::new(hi);
            }
            let rest = n - num_bigint::BigInt::from(hi as i128);
            Dd::from_parts(hi, rest.to_f64().unwrap_or(0.0))
        }
        if r.numer().abs().bits() < 100 && r.denom().bits() < 100 {
            big(r.numer()) / big(r.denom())
        } else {
            Dd::new(crate::polycore::rat_to_f64(r))
        }
    }

    fn from_parts(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn mul_pow2(self, k: i32) -> Dd {
        let f = 2f64.powi(k);
        Dd { hi: self.hi * f, lo: self.lo * f }
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::new(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / DD_LN2.hi).round();
        let r = (self - DD_LN2 * Dd::new(k)).mul_pow2(-10);
        // Taylor series on |r| < 2^-11.
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for i in 1..25 {
            term = term * r / Dd::new(i as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            sum = sum * sum;
        }
        sum.mul_pow2(k as i32)
    }

    /// Natural logarithm by Newton steps on `exp`.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "log of nonpositive value");
        let mut y = Dd::new(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    pub fn powd(self, e: Dd) -> Dd {
        (e * self.ln()).exp()
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let (hi, lo) = quick_two_sum(p, e + self.hi * b.lo + self.lo * b.hi);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::new(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

/// `B_{2k}` for `k = 1..=12` as `(numerator, denominator)`.
const BERNOULLI: [(f64, f64); 12] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
];

/// `ln Gamma(x)` for real `x >= 40` by the Stirling series.
fn ln_gamma_stirling(x: Dd) -> Dd {
    let half_ln_2pi = (DD_PI * Dd::new(2.0)).ln().mul_pow2(-1);
    let mut s = (x - Dd::new(0.5)) * x.ln() - x + half_ln_2pi;
    let x2 = x * x;
    let mut xp = x;
    for (k, (n, d)) in BERNOULLI.iter().enumerate() {
        let kk = 2.0 * (k as f64 + 1.0);
        s = s + Dd::new(*n) / (Dd::new(*d) * Dd::new(kk * (kk - 1.0)) * xp);
        xp = xp * x2;
    }
    s
}

/// `Gamma(x)` for real non-pole `x`, double-double.
pub fn gamma_dd(x: Dd) -> Dd {
    let mut shift = 0usize;
    let mut prod = Dd::ONE;
    let mut y = x;
    while y.hi < 40.0 {
        prod = prod * y;
        y = y + Dd::ONE;
        shift += 1;
    }
    let _ = shift;
    ln_gamma_stirling(y).exp() / prod
}

/// `1/Gamma(x)`, zero at the poles.
pub fn rgamma_dd(x: Dd) -> Dd {
    if x.hi <= 0.0 && x.lo == 0.0 && x.hi.fract() == 0.0 {
        return Dd::ZERO;
    }
    Dd::ONE / gamma_dd(x)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex `ln Gamma` (branch immaterial for exponentiation) via Lanczos.
pub fn ln_gamma_c(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = std::f64::consts::PI;
        return Complex64::new(pi.ln(), 0.0) - (z * pi).sin().ln() - ln_gamma_c(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Real `ln |Gamma(x)|` in binary64.
pub fn ln_gamma(x: f64) -> f64 {
    ln_gamma_c(Complex64::new(x, 0.0)).re
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm = p0;
            dp = n as f64 * (z * p - pm) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Composite rule: integrate `f` over `[a, b]` with a fixed rule.
pub fn gl_panel<F: FnMut(f64) -> f64>(rule: &(Vec<f64>, Vec<f64>), a: f64, b: f64, mut f: F) -> f64 {
    let h = 0.5 * (b - a);
    let m = 0.5 * (a + b);
    rule.0.iter().zip(&rule.1).map(|(x, w)| w * f(m + h * x)).sum::<f64>() * h
}
