//! Exact model of the graded spaces `O_m` and of the operators `M`, `D`,
//! `pi(sigma)`, `rho(E)`, `rho(F)`, `rho(H)`.
//!
//! Grade `m` is realized as the span of `m`-fold products of a homogeneous
//! basis of `W = span{Q(z - a)}`. On these spaces `sigma` acts by
//! `psi -> Q(-z)^m psi(-z^{-1})`, which is multiplicative, so it is computed
//! once by substitution on `W` and extended through products.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::jordan::VQPair;
use crate::polycore::linalg::Echelon;
use crate::polycore::{euler_apply, fmt_rat, ri, DiffOp, MPoly, PolyError, Rat, RatFn};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Sl2Error {
    #[error("Q(-z)^m psi(-1/z) is not a polynomial at grade {0}")]
    NotPolynomial(u32),
    #[error("element left the modelled space at grade {0}")]
    OutsideSpace(u32),
    #[error("grade {0} is beyond the precomputed range")]
    GradeRange(u32),
    #[error("delta sequence too short for grade {0}")]
    DeltaRange(u32),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `w^m psi(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedFn {
    pub m: u32,
    pub psi: MPoly,
}

impl GradedFn {
    pub fn new(m: u32, psi: MPoly) -> Self {
        GradedFn { m, psi }
    }

    /// `deg psi <= 4m`.
    pub fn degree_ok(&self) -> bool {
        self.psi.degree().is_none_or(|d| d <= 4 * self.m)
    }
}

/// Finite sum over grades.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GradedSum {
    pub components: BTreeMap<u32, MPoly>,
}

impl GradedSum {
    pub fn single(f: GradedFn) -> Self {
        let mut s = GradedSum::default();
        s.add(f.m, &f.psi);
        s
    }

    pub fn add(&mut self, m: u32, p: &MPoly) {
        let e = self.components.entry(m).or_insert_with(|| MPoly::zero(p.nvars()));
        *e = &*e + p;
        if e.is_zero() {
            self.components.remove(&m);
        }
    }

    pub fn add_sum(&mut self, o: &GradedSum, c: &Rat) {
        for (m, p) in &o.components {
            self.add(*m, &p.scale(c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = GradedFn> + '_ {
        self.components.iter().map(|(m, p)| GradedFn::new(*m, p.clone()))
    }
}

/// `M`: multiplication by `w`.
pub fn op_m(f: &GradedFn) -> GradedFn {
    GradedFn::new(f.m + 1, f.psi.clone())
}

/// `D = w^{-1} Q(d)`; zero on grade 0.
pub fn op_d(vq: &VQPair, f: &GradedFn) -> Result<GradedFn, Sl2Error> {
    if f.m == 0 {
        return Ok(GradedFn::new(0, MPoly::zero(vq.nvars)));
    }
    Ok(GradedFn::new(f.m - 1, DiffOp::new(vq.q_dual.clone()).apply(&f.psi)?))
}

/// `pi(sigma)` by exact substitution through the Jordan inversion:
/// `psi -> Q(-z)^m psi(-z^{-1})`, with a divisibility check.
pub fn op_sigma(vq: &VQPair, f: &GradedFn) -> Result<GradedFn, Sl2Error> {
    let images: Vec<RatFn> = vq.inverse_map().into_iter().map(|r| r.neg()).collect();
    let s = f.psi.substitute(&images)?;
    let q_neg = vq.q.compose(&(0..vq.nvars).map(|i| -&MPoly::var(vq.nvars, i)).collect::<Vec<_>>())?;
    let num = &q_neg.pow(f.m) * &s.num;
    let psi = num.div_exact(&s.den).map_err(|_| Sl2Error::NotPolynomial(f.m))?;
    Ok(GradedFn::new(f.m, psi))
}

/// `rho(H) = E - 2m`.
pub fn rho_h(f: &GradedFn) -> GradedFn {
    GradedFn::new(f.m, &euler_apply(&f.psi) - &f.psi.scale(&ri(2 * f.m as i64)))
}

/// Homogeneous basis of `W`: the coefficients in `a` of `Q(z - a)`.
pub fn w_basis(vq: &VQPair) -> Vec<MPoly> {
    let n = vq.nvars;
    let shifted =
        vq.q.compose(&(0..n).map(|i| &MPoly::var(2 * n, i) - &MPoly::var(2 * n, n + i)).collect::<Vec<_>>())
            .expect("matching dimensions");
    let mut groups: BTreeMap<Vec<u16>, MPoly> = BTreeMap::new();
    for (mono, c) in shifted.terms() {
        let (z, a) = mono.exps().split_at(n);
        let g = groups.entry(a.to_vec()).or_insert_with(|| MPoly::zero(n));
        let mut zs = z.to_vec();
        zs.truncate(n);
        g.add_term(crate::polycore::Mono::from_exps(&zs), c.clone());
    }
    let mut ech = Echelon::new(n);
    let mut basis = Vec::new();
    // Degree-descending so the basis lists Q first and 1 last.
    let mut cands: Vec<MPoly> = groups.into_values().collect();
    cands.sort_by_key(|p| std::cmp::Reverse(p.degree().unwrap_or(0)));
    for p in cands {
        if ech.insert(&p, basis.len()) {
            basis.push(p);
        }
    }
    basis
}

/// One grade of the model: basis, its sigma images, and an echelon form
/// for coordinates.
#[derive(Clone, Debug)]
pub struct Grade {
    pub m: u32,
    pub basis: Vec<MPoly>,
    pub sigma: Vec<MPoly>,
    ech: Echelon,
}

impl Grade {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, p: &MPoly) -> Option<BTreeMap<usize, Rat>> {
        self.ech.coords(p)
    }
}

/// The precomputed graded model up to a top grade.
#[derive(Clone, Debug)]
pub struct Sl2Model {
    pub vq: VQPair,
    pub grades: Vec<Grade>,
    /// Operator-level `delta_m`.
    pub delta: Vec<Rat>,
}

impl Sl2Model {
    /// Builds grades `0..=top`. `delta` must cover `0..=top`.
    pub fn new(vq: &VQPair, top: u32, delta: Vec<Rat>) -> Result<Self, Sl2Error> {
        let n = vq.nvars;
        let mut ech0 = Echelon::new(n);
        ech0.insert(&MPoly::one(n), 0);
        let mut grades = vec![Grade { m: 0, basis: vec![MPoly::one(n)], sigma: vec![MPoly::one(n)], ech: ech0 }];
        if top >= 1 {
            let wb = w_basis(vq);
            let sig: Vec<MPoly> = wb
                .par_iter()
                .map(|p| op_sigma(vq, &GradedFn::new(1, p.clone())).map(|g| g.psi))
                .collect::<Result<_, _>>()?;
            let mut ech = Echelon::new(n);
            for (i, p) in wb.iter().enumerate() {
                ech.insert(p, i);
            }
            grades.push(Grade { m: 1, basis: wb, sigma: sig, ech });
        }
        for m in 2..=top {
            let (prev, one) = (&grades[m as usize - 1], &grades[1]);
            let mut ech = Echelon::new(n);
            let mut basis = Vec::new();
            let mut sigma = Vec::new();
            for (b, sb) in prev.basis.iter().zip(&prev.sigma) {
                for (w, sw) in one.basis.iter().zip(&one.sigma) {
                    let p = b * w;
                    if ech.insert(&p, basis.len()) {
                        basis.push(p);
                        sigma.push(sb * sw);
                    }
                }
            }
            grades.push(Grade { m, basis, sigma, ech });
        }
        Ok(Sl2Model { vq: vq.clone(), grades, delta })
    }

    pub fn top(&self) -> u32 {
        self.grades.len() as u32 - 1
    }

    fn delta_at(&self, m: u32) -> Result<&Rat, Sl2Error> {
        self.delta.get(m as usize).ok_or(Sl2Error::DeltaRange(m))
    }

    /// `sigma` on grade `m <= top` via coordinates.
    pub fn sigma(&self, f: &GradedFn) -> Result<GradedFn, Sl2Error> {
        let g = self.grades.get(f.m as usize).ok_or(Sl2Error::GradeRange(f.m))?;
        let c = g.coords(&f.psi).ok_or(Sl2Error::OutsideSpace(f.m))?;
        let mut out = MPoly::zero(self.vq.nvars);
        for (i, v) in c {
            out = &out + &g.sigma[i].scale(&v);
        }
        Ok(GradedFn::new(f.m, out))
    }

    /// `sigma` on an element of grade `m` that already lies in grade `m - 1`:
    /// `sigma_m psi = Q sigma_{m-1} psi`. Falls back to the grade-`m` basis.
    fn sigma_lifted(&self, f: &GradedFn) -> Result<GradedFn, Sl2Error> {
        if (f.m as usize) < self.grades.len() {
            return self.sigma(f);
        }
        let lower = self.sigma(&GradedFn::new(f.m - 1, f.psi.clone()))?;
        Ok(GradedFn::new(f.m, &self.vq.q * &lower.psi))
    }

    pub fn d(&self, f: &GradedFn) -> Result<GradedFn, Sl2Error> {
        op_d(&self.vq, f)
    }

    /// `rho(F) = M - delta o D`.
    pub fn rho_f(&self, f: &GradedFn) -> Result<GradedSum, Sl2Error> {
        let mut s = GradedSum::single(op_m(f));
        if f.m > 0 {
            let d = self.d(f)?;
            s.add(d.m, &d.psi.scale(&-self.delta_at(f.m - 1)?.clone()));
        }
        Ok(s)
    }

    /// `rho(E) = sigma rho(F) sigma`: `M^sigma psi = Q psi` one grade up, and
    /// `-delta_{m-1} sigma D sigma psi` one grade down.
    pub fn rho_e(&self, f: &GradedFn) -> Result<GradedSum, Sl2Error> {
        let mut s = GradedSum::single(GradedFn::new(f.m + 1, &self.vq.q * &f.psi));
        if f.m > 0 {
            let sf = self.sigma_lifted(f)?;
            let d = self.d(&sf)?;
            let back = self.sigma(&d)?;
            s.add(back.m, &back.psi.scale(&-self.delta_at(f.m - 1)?.clone()));
        }
        Ok(s)
    }

    pub fn rho_h(&self, f: &GradedFn) -> GradedSum {
        GradedSum::single(rho_h(f))
    }

    fn apply_sum(&self, op: Op, s: &GradedSum) -> Result<GradedSum, Sl2Error> {
        let mut out = GradedSum::default();
        for f in s.terms() {
            let r = match op {
                Op::E => self.rho_e(&f)?,
                Op::F => self.rho_f(&f)?,
                Op::H => self.rho_h(&f),
            };
            out.add_sum(&r, &Rat::one());
        }
        Ok(out)
    }

    /// `[X, Y] f - target f` for one basis element.
    fn bracket_defect(&self, x: Op, y: Op, target: &GradedSum, f: &GradedFn) -> Result<GradedSum, Sl2Error> {
        let single = GradedSum::single(f.clone());
        let xy = self.apply_sum(x, &self.apply_sum(y, &single)?)?;
        let yx = self.apply_sum(y, &self.apply_sum(x, &single)?)?;
        let mut d = xy;
        d.add_sum(&yx, &-Rat::one());
        d.add_sum(target, &-Rat::one());
        Ok(d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    E,
    F,
    H,
}

/// Outcome for one identity on one grade.
#[derive(Clone, Debug, Serialize)]
pub struct BracketRow {
    pub identity: String,
    pub m: u32,
    pub basis_size: usize,
    pub holds: bool,
    /// First failing basis index.
    pub first_failure: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2Verdict {
    pub rows: Vec<BracketRow>,
    pub all_hold: bool,
    pub sigma_involution: bool,
    pub degree_bound: bool,
    pub grade_dims: Vec<usize>,
}

/// Checks the three brackets on every basis element of grades `0..=mmax`.
/// The model must be built with `top >= mmax`.
pub fn verify_sl2(model: &Sl2Model, mmax: u32) -> Result<Sl2Verdict, Sl2Error> {
    let mut rows = Vec::new();
    let names = ["[H,E]=2E", "[H,F]=-2F", "[E,F]=H"];
    for m in 0..=mmax {
        let g = &model.grades[m as usize];
        let results: Vec<[bool; 3]> = g
            .basis
            .par_iter()
            .map(|b| {
                let f = GradedFn::new(m, b.clone());
                let mut e2 = model.rho_e(&f)?;
                e2 = {
                    let mut t = GradedSum::default();
                    t.add_sum(&e2, &ri(2));
                    t
                };
                let mut f2 = GradedSum::default();
                f2.add_sum(&model.rho_f(&f)?, &ri(-2));
                let h = model.rho_h(&f);
                Ok([
                    model.bracket_defect(Op::H, Op::E, &e2, &f)?.is_zero(),
                    model.bracket_defect(Op::H, Op::F, &f2, &f)?.is_zero(),
                    model.bracket_defect(Op::E, Op::F, &h, &f)?.is_zero(),
                ])
            })
            .collect::<Result<_, Sl2Error>>()?;
        for (k, name) in names.iter().enumerate() {
            let first_failure = results.iter().position(|r| !r[k]);
            rows.push(BracketRow {
                identity: name.to_string(),
                m,
                basis_size: g.dim(),
                holds: first_failure.is_none(),
                first_failure,
            });
        }
    }
    let mut sigma_involution = true;
    let mut degree_bound = true;
    for m in 0..=mmax {
        for (b, s) in model.grades[m as usize].basis.iter().zip(&model.grades[m as usize].sigma) {
            let back = model.sigma(&GradedFn::new(m, s.clone()))?;
            sigma_involution &= back.psi == *b;
            degree_bound &= GradedFn::new(m, s.clone()).degree_ok() && GradedFn::new(m, b.clone()).degree_ok();
        }
    }
    Ok(Sl2Verdict {
        all_hold: rows.iter().all(|r| r.holds),
        rows,
        sigma_involution,
        degree_bound,
        grade_dims: model.grades.iter().map(|g| g.dim()).collect(),
    })
}

/// Operator-level deltas from the symbol solver: `delta_hc / kappa`.
pub fn operator_deltas(vq: &VQPair, count: u32) -> Option<Vec<Rat>> {
    let sol = crate::hc::solve_delta(vq, count.max(1));
    if !sol.feasible {
        return None;
    }
    let b = crate::bernstein::by_product_formula(vq).ok()?;
    let kappa = crate::hc::operator_scale(vq, &b.leading);
    Some(sol.deltas.iter().map(|d| d / &kappa).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderRow {
    pub m: u32,
    pub up_ok: bool,
    pub b_m: String,
    pub down_ok: bool,
}

/// Up: `rho(F) w^m = w^{m+1}`. Down: the grade `m-1` part of `rho(F)(Q^m w^m)`
/// equals `-delta_{m-1} B(m) Q^{m-1}` with `B(m) != 0`.
pub fn verify_ladder(
    model: &Sl2Model,
    b: &crate::bernstein::BernsteinPoly,
    mmax: u32,
) -> Result<Vec<LadderRow>, Sl2Error> {
    let n = model.vq.nvars;
    (0..=mmax)
        .map(|m| {
            let up = model.rho_f(&GradedFn::new(m, MPoly::one(n)))?;
            let mut expect_up = GradedSum::default();
            expect_up.add(m + 1, &MPoly::one(n));
            let up_ok = up == expect_up;
            let bm = b.eval(&ri(m as i64));
            let down_ok = if m == 0 {
                true
            } else {
                let r = model.rho_f(&GradedFn::new(m, model.vq.q.pow(m)))?;
                let want = model.vq.q.pow(m - 1).scale(&(-model.delta_at(m - 1)? * &bm));
                !bm.is_zero() && r.components.get(&(m - 1)) == Some(&want)
            };
            Ok(LadderRow { m, up_ok, b_m: fmt_rat(&bm), down_ok })
        })
        .collect()
}

/// Generators for the reachability check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Generator {
    E,
    F,
    Sigma,
    /// Translations: `d/dz_i`.
    Partial,
    /// Dilations: the Euler operator.
    Euler,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reach {
    pub generators: Vec<Generator>,
    /// Dimension reached per grade.
    pub reached: Vec<usize>,
    pub full: Vec<usize>,
    pub spans: bool,
}

/// Breadth-first closure of one vector under the generators, with grade
/// projection, truncated at `mmax`.
pub fn reachability(model: &Sl2Model, start: &GradedFn, gens: &[Generator], mmax: u32) -> Result<Reach, Sl2Error> {
    let n = model.vq.nvars;
    let mut echs: Vec<Echelon> = (0..=mmax).map(|_| Echelon::new(n)).collect();
    let mut queue = vec![start.clone()];
    let mut counter = 0usize;
    echs[start.m as usize].insert(&start.psi, counter);
    while let Some(f) = queue.pop() {
        let mut outs: Vec<GradedFn> = Vec::new();
        for g in gens {
            match g {
                Generator::E => outs.extend(model.rho_e(&f)?.terms()),
                Generator::F => outs.extend(model.rho_f(&f)?.terms()),
                Generator::Sigma => outs.push(model.sigma(&f)?),
                Generator::Partial => outs.extend((0..n).map(|i| GradedFn::new(f.m, f.psi.deriv(i)))),
                Generator::Euler => outs.push(GradedFn::new(f.m, euler_apply(&f.psi))),
            }
        }
        for o in outs {
            if o.m > mmax || o.psi.is_zero() {
                continue;
            }
            counter += 1;
            if echs[o.m as usize].insert(&o.psi, counter) {
                queue.push(o);
            }
        }
    }
    let reached: Vec<usize> = echs.iter().map(|e| e.dim()).collect();
    let full: Vec<usize> = (0..=mmax).map(|m| model.grades[m as usize].dim()).collect();
    Ok(Reach { generators: gens.to_vec(), spans: reached == full, reached, full })
}

/// Rank-one inner product `<f, g> = sum_m (1/c_m) sum_j f_j g_j / C(4m, j)`.
pub fn inner_rank1(c: &[Rat], f: &GradedSum, g: &GradedSum) -> Rat {
    let mut acc = Rat::zero();
    for (m, p) in &f.components {
        let Some(q) = g.components.get(m) else { continue };
        let mut s = Rat::zero();
        for (mono, a) in p.terms() {
            let j = mono.exps()[0] as u64;
            let b = q.coeff(mono.exps());
            if !b.is_zero() {
                s += a * b / crate::polycore::binomial(4 * *m as u64, j);
            }
        }
        acc += s / &c[*m as usize];
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointVerdict {
    pub pairs_checked: usize,
    pub holds: bool,
    pub first_failure: Option<(u32, u32, u32, u32)>,
}

/// `<rho(E) f, g> = -<f, rho(F) g>` on all pairs of monomials `z^j w^m`
/// through grade `mmax` for `V = C`.
pub fn verify_adjointness_rank1(model: &Sl2Model, c: &[Rat], mmax: u32) -> Result<AdjointVerdict, Sl2Error> {
    let basis: Vec<GradedFn> = (0..=mmax)
        .flat_map(|m| (0..=4 * m).map(move |j| GradedFn::new(m, MPoly::monomial(&[j as u16], Rat::one()))))
        .collect();
    let mut pairs = 0;
    for f in &basis {
        let ef = model.rho_e(f)?;
        for g in &basis {
            let fg = model.rho_f(g)?;
            let lhs = inner_rank1(c, &ef, &GradedSum::single(g.clone()));
            let rhs = -inner_rank1(c, &GradedSum::single(f.clone()), &fg);
            pairs += 1;
            if lhs != rhs {
                let jf = f.psi.degree().unwrap_or(0);
                let jg = g.psi.degree().unwrap_or(0);
                return Ok(AdjointVerdict {
                    pairs_checked: pairs,
                    holds: false,
                    first_failure: Some((f.m, jf, g.m, jg)),
                });
            }
        }
    }
    Ok(AdjointVerdict { pairs_checked: pairs, holds: true, first_failure: None })
}
