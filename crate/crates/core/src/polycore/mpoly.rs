use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{fmt_rat, parse_rat, rat_to_f64, PolyError, Rat};

/// Exponent vector. The derived ordering compares total degree first and
/// then the exponents lexicographically, i.e. graded lex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono {
    deg: u32,
    exps: Box<[u16]>,
}

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono { deg: 0, exps: vec![0; nvars].into_boxed_slice() }
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Mono { deg, exps: exps.into() }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0u16; nvars];
        e[i] = 1;
        Mono { deg: 1, exps: e.into_boxed_slice() }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Product of monomials; panics if an exponent leaves `u16`.
    pub fn mul(&self, o: &Mono) -> Mono {
        let exps: Box<[u16]> =
            self.exps.iter().zip(o.exps.iter()).map(|(a, b)| a.checked_add(*b).expect("exponent overflow")).collect();
        Mono { deg: self.deg + o.deg, exps }
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let exps: Box<[u16]> = o.exps.iter().zip(self.exps.iter()).map(|(b, a)| b - a).collect();
        Mono { deg: o.deg - self.deg, exps }
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", fmt_rat(c))?;
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*z{}", i)?,
                    _ => write!(f, "*z{}^{}", i, e)?,
                }
            }
        }
        Ok(())
    }
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Mono::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = Self::zero(nvars);
        p.terms.insert(Mono::var(nvars, i), Rat::one());
        p
    }

    pub fn monomial(exps: &[u16], c: Rat) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(Mono::from_exps(exps), c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(nvars: usize, it: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u16>, Rat)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            if e.len() != nvars {
                return Err(PolyError::Dimension(nvars, e.len()));
            }
            p.add_term(Mono::from_exps(&e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u16]) -> Rat {
        self.terms.get(&Mono::from_exps(exps)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rat {
        self.terms.get(&Mono::one(self.nvars)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds `c * m` in place, keeping the no-zero-coefficient invariant.
    pub fn add_term(&mut self, m: Mono, c: Rat) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, o: &MPoly) -> Result<(), PolyError> {
        if self.nvars == o.nvars {
            Ok(())
        } else {
            Err(PolyError::Dimension(self.nvars, o.nvars))
        }
    }

    pub fn try_add(&self, o: &MPoly) -> Result<MPoly, PolyError> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &MPoly) -> Result<MPoly, PolyError> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &MPoly) -> Result<MPoly, PolyError> {
        self.check(o)?;
        let mut r = MPoly::zero(self.nvars);
        if self.is_zero() || o.is_zero() {
            return Ok(r);
        }
        // Integer-coefficient fast path: accumulate numerators as BigInt.
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut acc: std::collections::HashMap<Mono, Rat> = std::collections::HashMap::new();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        r.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(r)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut result = MPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative in variable `i`.
    pub fn deriv(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exps().to_vec();
            ex[i] -= 1;
            r.terms.insert(Mono::from_exps(&ex), c * Rat::from_integer(BigInt::from(e)));
        }
        r
    }

    /// Gradient as a vector of polynomials.
    pub fn gradient(&self) -> Vec<MPoly> {
        (0..self.nvars).map(|i| self.deriv(i)).collect()
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.nvars, "evaluation point has wrong length");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(m.exps()) {
                if e > 0 {
                    t *= num_traits::pow(xi.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars);
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat_to_f64(c);
            for (xi, &e) in x.iter().zip(m.exps()) {
                if e > 0 {
                    t *= xi.powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_c64(&self, x: &[Complex64]) -> Complex64 {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(rat_to_f64(c), 0.0);
            for (xi, &e) in x.iter().zip(m.exps()) {
                if e > 0 {
                    t *= xi.powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Polynomial composition `p(images[0], ..., images[n-1])`.
    pub fn compose(&self, images: &[MPoly]) -> Result<MPoly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::Dimension(self.nvars, images.len()));
        }
        let target = images.first().map_or(0, |p| p.nvars);
        for im in images {
            if im.nvars != target {
                return Err(PolyError::Dimension(target, im.nvars));
            }
        }
        // Cache powers of each image.
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(target), p.clone()]).collect();
        let mut r = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            r = &r + &t;
        }
        Ok(r)
    }

    /// Re-embeds into `total` variables starting at `offset`.
    pub fn embed(&self, total: usize, offset: usize) -> MPoly {
        assert!(offset + self.nvars <= total);
        let mut r = MPoly::zero(total);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; total];
            e[offset..offset + self.nvars].copy_from_slice(m.exps());
            r.terms.insert(Mono::from_exps(&e), c.clone());
        }
        r
    }

    /// Restricts to variables `offset..offset+n`; panics if other variables occur.
    pub fn restrict(&self, offset: usize, n: usize) -> MPoly {
        let mut r = MPoly::zero(n);
        for (m, c) in &self.terms {
            let e = m.exps();
            assert!(
                e[..offset].iter().chain(&e[offset + n..]).all(|&x| x == 0),
                "polynomial uses variables outside the block"
            );
            r.terms.insert(Mono::from_exps(&e[offset..offset + n]), c.clone());
        }
        r
    }

    /// Exact quotient `self / d`; fails if the remainder is nonzero.
    pub fn div_exact(&self, d: &MPoly) -> Result<MPoly, PolyError> {
        self.check(d)?;
        if d.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let inv_lc = Rat::one() / lc;
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return Err(PolyError::NotDivisible);
            }
            let tm = lm.quotient_of(&m);
            let tc = c * &inv_lc;
            for (dm, dc) in &d.terms {
                r.add_term(dm.mul(&tm), -(dc * &tc));
            }
            q.add_term(tm, tc);
        }
        Ok(q)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut e: Option<Vec<u16>> = None;
        for m in self.terms.keys() {
            match &mut e {
                None => e = Some(m.exps().to_vec()),
                Some(v) => {
                    for (a, b) in v.iter_mut().zip(m.exps()) {
                        *a = (*a).min(*b);
                    }
                }
            }
        }
        e.map(|v| Mono::from_exps(&v)).unwrap_or_else(|| Mono::one(self.nvars))
    }

    /// Divides every term by the monomial `m` (which must divide each term).
    pub fn div_mono(&self, m: &Mono) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(t, c)| (m.quotient_of(t), c.clone())).collect() }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(t, v)| (t.mul(m), v * c)).collect() }
    }

    /// Returns `Some(c)` when `self == c * o` for a rational `c`.
    pub fn ratio_to(&self, o: &MPoly) -> Option<Rat> {
        if self.nvars != o.nvars {
            return None;
        }
        if o.is_zero() {
            return if self.is_zero() { Some(Rat::zero()) } else { None };
        }
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.len() != o.len() {
            return None;
        }
        let (m0, c0) = o.leading().unwrap();
        let c = self.terms.get(m0)? / c0;
        for (m, v) in &o.terms {
            if self.terms.get(m)? != &(v * &c) {
                return None;
            }
        }
        Some(c)
    }

    /// Canonical JSON: `{"nvars":n,"terms":[{"e":[...],"c":"p/q"}]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<MPoly, PolyError> {
        let w: WirePoly = serde_json::from_str(s).map_err(|e| PolyError::Parse(e.to_string()))?;
        MPoly::from_wire(&w)
    }

    pub fn to_wire(&self) -> WirePoly {
        WirePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| WireTerm { e: m.exps().to_vec(), c: fmt_rat(c) }).collect(),
        }
    }

    pub fn from_wire(w: &WirePoly) -> Result<MPoly, PolyError> {
        let mut p = MPoly::zero(w.nvars);
        for t in &w.terms {
            if t.e.len() != w.nvars {
                return Err(PolyError::Dimension(w.nvars, t.e.len()));
            }
            p.add_term(Mono::from_exps(&t.e), parse_rat(&t.c)?);
        }
        Ok(p)
    }
}

/// Serialised polynomial.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct WirePoly {
    pub nvars: usize,
    pub terms: Vec<WireTerm>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct WireTerm {
    pub e: Vec<u16>,
    pub c: String,
}

impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = WirePoly::deserialize(d)?;
        MPoly::from_wire(&w).map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        self.try_add(o).expect("polynomial dimension mismatch")
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self.try_sub(o).expect("polynomial dimension mismatch")
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        self.try_mul(o).expect("polynomial dimension mismatch")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}
