use num_traits::{One, Zero};

use super::{MPoly, Mono, PolyError, Rat};

/// Quotient of two polynomials, kept free of common monomial factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    pub num: MPoly,
    pub den: MPoly,
}

impl RatFn {
    pub fn new(num: MPoly, den: MPoly) -> Result<RatFn, PolyError> {
        if num.nvars() != den.nvars() {
            return Err(PolyError::Dimension(num.nvars(), den.nvars()));
        }
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(RatFn { num, den }.reduced())
    }

    pub fn from_poly(p: MPoly) -> RatFn {
        let n = p.nvars();
        RatFn { num: p, den: MPoly::one(n) }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels the common monomial content and normalises the denominator's
    /// leading coefficient to one.
    pub fn reduced(mut self) -> RatFn {
        let n = self.num.nvars();
        if self.num.is_zero() {
            return RatFn { num: MPoly::zero(n), den: MPoly::one(n) };
        }
        let a = self.num.monomial_content();
        let b = self.den.monomial_content();
        let common: Vec<u16> = a.exps().iter().zip(b.exps()).map(|(x, y)| *x.min(y)).collect();
        let common = Mono::from_exps(&common);
        if common.degree() > 0 {
            self.num = self.num.div_mono(&common);
            self.den = self.den.div_mono(&common);
        }
        let lc = self.den.leading().map(|(_, c)| c.clone()).unwrap();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        self
    }

    /// Removes every power of `f` dividing both numerator and denominator.
    /// This is the on-demand stronger reduction used when the caller knows
    /// the only possible common factor (e.g. a determinant).
    pub fn cancel_factor(mut self, f: &MPoly) -> RatFn {
        if f.is_constant() {
            return self;
        }
        while let (Ok(n), Ok(d)) = (self.num.div_exact(f), self.den.div_exact(f)) {
            self.num = n;
            self.den = d;
        }
        self.reduced()
    }

    /// Returns the polynomial if the denominator divides the numerator.
    pub fn to_poly(&self) -> Result<MPoly, PolyError> {
        self.num.div_exact(&self.den)
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn { num: &self.num + &o.num, den: self.den.clone() }.reduced();
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFn { num, den: &self.den * &o.den }.reduced()
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        RatFn { num: &self.num * &o.num, den: &self.den * &o.den }.reduced()
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        RatFn { num: self.num.scale(c), den: self.den.clone() }.reduced()
    }

    /// Cross-multiplication equality.
    pub fn equals(&self, o: &RatFn) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Rat, PolyError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Partial derivative by the quotient rule.
    pub fn deriv(&self, i: usize) -> RatFn {
        let num = &(&self.num.deriv(i) * &self.den) - &(&self.num * &self.den.deriv(i));
        RatFn { num, den: &self.den * &self.den }.reduced()
    }

    /// Composition `self(images)` with common-denominator clearing.
    pub fn compose(&self, images: &[RatFn]) -> Result<RatFn, PolyError> {
        let n = self.num.substitute(images)?;
        let d = self.den.substitute(images)?;
        if d.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(n.mul(&RatFn { num: d.den, den: d.num }.reduced()))
    }
}

impl MPoly {
    /// Substitutes rational functions for the variables. Images sharing a
    /// denominator are grouped so the cleared denominator stays small.
    pub fn substitute(&self, images: &[RatFn]) -> Result<RatFn, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::Dimension(self.nvars(), images.len()));
        }
        let target = images.first().map_or(0, |f| f.nvars());
        if images.iter().any(|f| f.nvars() != target) {
            return Err(PolyError::Dimension(target, 0));
        }
        if self.is_zero() {
            return Ok(RatFn::from_poly(MPoly::zero(target)));
        }
        // Group variables by denominator.
        let mut dens: Vec<MPoly> = Vec::new();
        let mut group: Vec<usize> = Vec::with_capacity(images.len());
        for f in images {
            match dens.iter().position(|d| d == &f.den) {
                Some(k) => group.push(k),
                None => {
                    group.push(dens.len());
                    dens.push(f.den.clone());
                }
            }
        }
        let mut max_pow = vec![0u32; dens.len()];
        for (m, _) in self.terms() {
            let mut per = vec![0u32; dens.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                per[group[i]] += e as u32;
            }
            for (a, b) in max_pow.iter_mut().zip(per) {
                *a = (*a).max(b);
            }
        }
        let mut num_pows: Vec<Vec<MPoly>> = images.iter().map(|f| vec![MPoly::one(target), f.num.clone()]).collect();
        let mut den_pows: Vec<Vec<MPoly>> = dens.iter().map(|d| vec![MPoly::one(target), d.clone()]).collect();
        fn power(cache: &mut Vec<MPoly>, e: usize) -> MPoly {
            while cache.len() <= e {
                let next = &cache[cache.len() - 1] * &cache[1];
                cache.push(next);
            }
            cache[e].clone()
        }
        let mut num = MPoly::zero(target);
        for (m, c) in self.terms() {
            let mut t = MPoly::constant(target, c.clone());
            let mut per = vec![0u32; dens.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                per[group[i]] += e as u32;
                t = &t * &power(&mut num_pows[i], e as usize);
            }
            for (k, p) in per.iter().enumerate() {
                let gap = max_pow[k] - p;
                if gap > 0 {
                    t = &t * &power(&mut den_pows[k], gap as usize);
                }
            }
            num = &num + &t;
        }
        let mut den = MPoly::one(target);
        for (k, &e) in max_pow.iter().enumerate() {
            if e > 0 {
                den = &den * &power(&mut den_pows[k], e as usize);
            }
        }
        if num.is_zero() {
            return Ok(RatFn::from_poly(num));
        }
        Ok(RatFn { num, den }.reduced())
    }
}

impl Zero for RatFn {
    fn zero() -> Self {
        RatFn::from_poly(MPoly::zero(0))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl std::ops::Add for RatFn {
    type Output = RatFn;
    fn add(self, o: RatFn) -> RatFn {
        RatFn::add(&self, &o)
    }
}
