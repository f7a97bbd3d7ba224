//! Simple complex Jordan algebras, composite pairs `(V, Q)` with `deg Q = 4`,
//! and the property-(T) classifier.

mod axioms;
mod catalog;

pub use axioms::{check_axioms, AxiomReport};
pub use catalog::{build_case, case_ids, emit_table, resolve_case, table_meta, CaseSpec, TableRow};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::polycore::linalg::{self, Matrix};
use crate::polycore::{rat, ri, MPoly, PolyError, Rat, RatFn};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JordanError {
    #[error("element is singular (determinant vanishes)")]
    Singular,
    #[error("deg Q must be 4, got {0}")]
    Degree(u32),
    #[error("unknown case id `{0}`")]
    UnknownCase(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The five families of simple algebras used here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Scalar,
    /// Spin factor of dimension `n`, hyperbolic coordinates.
    Spin(usize),
    Sym4,
    Full4,
    Skew8,
}

impl Kind {
    pub fn name(&self) -> String {
        match self {
            Kind::Scalar => "C".into(),
            Kind::Spin(n) => format!("Spin({n})"),
            Kind::Sym4 => "Sym(4)".into(),
            Kind::Full4 => "M(4)".into(),
            Kind::Skew8 => "Skew(8)".into(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Kind::Scalar => 1,
            Kind::Spin(n) => *n,
            Kind::Sym4 => 10,
            Kind::Full4 => 16,
            Kind::Skew8 => 28,
        }
    }

    pub fn rank(&self) -> u32 {
        match self {
            Kind::Scalar => 1,
            Kind::Spin(_) => 2,
            Kind::Sym4 | Kind::Full4 | Kind::Skew8 => 4,
        }
    }

    /// Peirce constant; `n - 2` for Spin factors, 0 for the scalar algebra.
    pub fn peirce(&self) -> Rat {
        match self {
            Kind::Scalar => ri(0),
            Kind::Spin(n) => ri(*n as i64 - 2),
            Kind::Sym4 => ri(1),
            Kind::Full4 => ri(2),
            Kind::Skew8 => ri(4),
        }
    }
}

/// Sparse bilinear structure constants: `b_a o b_b = sum c * b_k`.
type Table = Vec<Vec<Vec<(usize, Rat)>>>;

/// A simple Jordan algebra in explicit coordinates.
#[derive(Clone)]
pub struct JordanAlgebra {
    pub kind: Kind,
    pub dim: usize,
    pub rank: u32,
    pub peirce: Rat,
    pub e: Vec<Rat>,
    /// Determinant polynomial, normalised so that `det(e) = 1`.
    pub det: MPoly,
    table: Table,
    /// Gram matrix of the generic trace form `(a, b) -> grad det(e) . (a o b)`.
    pub gram: Matrix,
    gram_inv: Matrix,
}

impl fmt::Debug for JordanAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JordanAlgebra({})", self.kind.name())
    }
}

/// Coordinate layout of the matrix models.
fn matrix_slots(kind: Kind) -> (usize, Vec<(usize, usize)>) {
    match kind {
        Kind::Sym4 => (4, (0..4).flat_map(|i| (i..4).map(move |j| (i, j))).collect()),
        Kind::Full4 => (4, (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).collect()),
        Kind::Skew8 => (8, (0..8).flat_map(|i| (i + 1..8).map(move |j| (i, j))).collect()),
        _ => (0, vec![]),
    }
}

fn to_matrix(kind: Kind, x: &[Rat]) -> Matrix {
    let (n, slots) = matrix_slots(kind);
    let mut m = vec![vec![Rat::zero(); n]; n];
    for (v, &(i, j)) in x.iter().zip(&slots) {
        m[i][j] = v.clone();
        match kind {
            Kind::Sym4 => m[j][i] = v.clone(),
            Kind::Skew8 => m[j][i] = -v.clone(),
            _ => {}
        }
    }
    m
}

fn from_matrix(kind: Kind, m: &Matrix) -> Vec<Rat> {
    matrix_slots(kind).1.iter().map(|&(i, j)| m[i][j].clone()).collect()
}

/// Standard symplectic block matrix `diag([[0,1],[-1,0]], ...)`.
fn block_j(n: usize) -> Matrix {
    let mut j = vec![vec![Rat::zero(); n]; n];
    for b in 0..n / 2 {
        j[2 * b][2 * b + 1] = ri(1);
        j[2 * b + 1][2 * b] = ri(-1);
    }
    j
}

fn matrix_product(kind: Kind, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    let a = to_matrix(kind, x);
    let b = to_matrix(kind, y);
    let half = rat(1, 2);
    let sym = |p: Matrix, q: Matrix| -> Matrix {
        p.iter().zip(&q).map(|(r, s)| r.iter().zip(s).map(|(u, v)| (u + v) * &half).collect()).collect()
    };
    let m = match kind {
        Kind::Skew8 => {
            let j = block_j(8);
            let ajb = linalg::mat_mul(&linalg::mat_mul(&a, &j), &b);
            let bja = linalg::mat_mul(&linalg::mat_mul(&b, &j), &a);
            sym(ajb, bja)
        }
        _ => sym(linalg::mat_mul(&a, &b), linalg::mat_mul(&b, &a)),
    };
    from_matrix(kind, &m)
}

fn direct_product(kind: Kind, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    match kind {
        Kind::Scalar => vec![&x[0] * &y[0]],
        Kind::Spin(n) => {
            let mut out = vec![Rat::zero(); n];
            out[0] = (0..n).fold(Rat::zero(), |acc, i| acc + &x[i] * &y[i]);
            for i in 1..n {
                out[i] = &x[0] * &y[i] + &y[0] * &x[i];
            }
            out
        }
        _ => matrix_product(kind, x, y),
    }
}

fn identity_of(kind: Kind) -> Vec<Rat> {
    match kind {
        Kind::Scalar => vec![ri(1)],
        Kind::Spin(n) => {
            let mut e = vec![Rat::zero(); n];
            e[0] = ri(1);
            e
        }
        Kind::Sym4 | Kind::Full4 => from_matrix(kind, &linalg::identity(4)),
        Kind::Skew8 => {
            let j = block_j(8);
            let neg: Matrix = j.iter().map(|r| r.iter().map(|v| -v.clone()).collect()).collect();
            from_matrix(kind, &neg)
        }
    }
}

/// Determinant of a matrix of polynomials by fraction-free elimination.
pub fn det_bareiss(mut m: Vec<Vec<MPoly>>) -> Result<MPoly, PolyError> {
    let n = m.len();
    let nv = m[0][0].nvars();
    let mut sign = 1i64;
    let mut prev = MPoly::one(nv);
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(MPoly::zero(nv));
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(m[n - 1][n - 1].scale(&ri(sign)))
}

/// Pfaffian by expansion along the first row.
pub fn pfaffian(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one(0);
    }
    let nv = m[0][0].nvars();
    if n % 2 == 1 {
        return MPoly::zero(nv);
    }
    fn rec(m: &[Vec<MPoly>], idx: &[usize], nv: usize) -> MPoly {
        if idx.is_empty() {
            return MPoly::one(nv);
        }
        let i = idx[0];
        let mut acc = MPoly::zero(nv);
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            if m[i][j].is_zero() {
                continue;
            }
            let rest: Vec<usize> =
                idx.iter().enumerate().filter(|&(p, _)| p != 0 && p != pos).map(|(_, &v)| v).collect();
            let sub = &m[i][j] * &rec(m, &rest, nv);
            acc = if pos % 2 == 1 { &acc + &sub } else { &acc - &sub };
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    rec(m, &idx, nv)
}

fn symbolic_det(kind: Kind) -> Result<MPoly, PolyError> {
    let dim = kind.dim();
    Ok(match kind {
        Kind::Scalar => MPoly::var(1, 0),
        Kind::Spin(n) => {
            let mut p = MPoly::var(n, 0).pow(2);
            for i in 1..n {
                p = &p - &MPoly::var(n, i).pow(2);
            }
            p
        }
        Kind::Sym4 | Kind::Full4 | Kind::Skew8 => {
            let (sz, slots) = matrix_slots(kind);
            let mut m = vec![vec![MPoly::zero(dim); sz]; sz];
            for (a, &(i, j)) in slots.iter().enumerate() {
                m[i][j] = MPoly::var(dim, a);
                match kind {
                    Kind::Sym4 => m[j][i] = MPoly::var(dim, a),
                    Kind::Skew8 => m[j][i] = -&MPoly::var(dim, a),
                    _ => {}
                }
            }
            if kind == Kind::Skew8 {
                pfaffian(&m)
            } else {
                det_bareiss(m)?
            }
        }
    })
}

impl JordanAlgebra {
    pub fn new(kind: Kind) -> Result<Self, JordanError> {
        let dim = kind.dim();
        let basis = |a: usize| -> Vec<Rat> { (0..dim).map(|i| if i == a { ri(1) } else { ri(0) }).collect() };
        let table: Table = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| {
                        direct_product(kind, &basis(a), &basis(b))
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let e = identity_of(kind);
        let mut det = symbolic_det(kind)?;
        let de = det.eval(&e);
        if de.is_zero() {
            return Err(JordanError::Singular);
        }
        det = det.scale(&(Rat::one() / de));
        let grad_e: Vec<Rat> = det.gradient().iter().map(|g| g.eval(&e)).collect();
        let gram: Matrix = (0..dim)
            .map(|a| {
                (0..dim).map(|b| table[a][b].iter().fold(Rat::zero(), |acc, (k, c)| acc + c * &grad_e[*k])).collect()
            })
            .collect();
        let gram_inv = linalg::inverse(&gram).ok_or(JordanError::Singular)?;
        Ok(JordanAlgebra { kind, dim, rank: kind.rank(), peirce: kind.peirce(), e, det, table, gram, gram_inv })
    }

    /// Jordan product from structure constants.
    pub fn product(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for (k, c) in &self.table[a][b] {
                    out[*k] += &s * c;
                }
            }
        }
        out
    }

    /// Generic trace form `grad det(e) . (x o y)`.
    pub fn trace_form(&self, x: &[Rat], y: &[Rat]) -> Rat {
        linalg::mat_vec(&self.gram, y).iter().zip(x).fold(Rat::zero(), |acc, (u, v)| acc + u * v)
    }

    /// Symbolic inverse `x^{-1} = G^{-1} grad det(x) / det(x)`: returns the
    /// numerator polynomials; the common denominator is `self.det`.
    pub fn inverse_numerators(&self) -> Vec<MPoly> {
        let grad = self.det.gradient();
        (0..self.dim)
            .map(|a| {
                let mut p = MPoly::zero(self.dim);
                for (b, g) in grad.iter().enumerate() {
                    let c = &self.gram_inv[a][b];
                    if !c.is_zero() {
                        p = &p + &g.scale(c);
                    }
                }
                p
            })
            .collect()
    }

    /// Inverse at a point.
    pub fn inverse_at(&self, x: &[Rat]) -> Result<Vec<Rat>, JordanError> {
        let d = self.det.eval(x);
        if d.is_zero() {
            return Err(JordanError::Singular);
        }
        Ok(self.inverse_numerators().iter().map(|p| p.eval(x) / &d).collect())
    }

    /// Quadratic representation `P(x) = 2 T_x^2 - T_{x^2}` as a matrix.
    pub fn quadratic_rep(&self, x: &[Rat]) -> Matrix {
        let x2 = self.product(x, x);
        let mut m = vec![vec![Rat::zero(); self.dim]; self.dim];
        for a in 0..self.dim {
            let ba: Vec<Rat> = (0..self.dim).map(|i| if i == a { ri(1) } else { ri(0) }).collect();
            let t = self.product(x, &self.product(x, &ba));
            let u = self.product(&x2, &ba);
            for ((row, ti), ui) in m.iter_mut().zip(&t).zip(&u) {
                row[a] = ri(2) * ti - ui;
            }
        }
        m
    }

    /// Linear change making `det(D)` the dual differential operator: the
    /// Gram matrix rescaled by its first nonzero entry, inverted.
    fn dual_map(&self) -> Matrix {
        let s = self.gram[0].iter().find(|v| !v.is_zero()).map(|v| v.abs()).expect("nondegenerate form");
        let p: Matrix = self.gram.iter().map(|r| r.iter().map(|v| v / &s).collect()).collect();
        linalg::inverse(&p).expect("nondegenerate form")
    }
}

/// One simple factor of a pair: algebra, multiplicity and coordinate offset.
#[derive(Clone, Debug)]
pub struct Factor {
    pub alg: Arc<JordanAlgebra>,
    pub k: u32,
    pub offset: usize,
    /// `det` composed with the dual change of variables (block-local).
    pub dual_det: MPoly,
}

/// A semisimple pair `(V, Q)` with `Q = prod det_i^{k_i}` of degree 4.
#[derive(Clone, Debug)]
pub struct VQPair {
    pub label: String,
    pub factors: Vec<Factor>,
    pub nvars: usize,
    pub q: MPoly,
    /// Symbol of the constant-coefficient operator `Q(d/dz)`.
    pub q_dual: MPoly,
    pub eta: Option<Rat>,
}

/// Property (T) from a profile of `(n_i, r_i, k_i)`: returns the common `eta`
/// with `n_i / r_i = eta * k_i` when it exists.
pub fn property_t(profile: &[(usize, u32, u32)]) -> Option<Rat> {
    let mut eta: Option<Rat> = None;
    for &(n, r, k) in profile {
        let v = Rat::new(BigInt::from(n), BigInt::from(r as u64 * k as u64));
        match &eta {
            None => eta = Some(v),
            Some(e) if *e != v => return None,
            _ => {}
        }
    }
    eta
}

/// Assembles `(V, Q)` from `(kind, multiplicity)` pairs.
pub fn build_vq(label: &str, spec: &[(Kind, u32)]) -> Result<VQPair, JordanError> {
    let deg: u32 = spec.iter().map(|(kd, k)| kd.rank() * k).sum();
    if deg != 4 {
        return Err(JordanError::Degree(deg));
    }
    let nvars: usize = spec.iter().map(|(kd, _)| kd.dim()).sum();
    let mut factors = Vec::new();
    let mut offset = 0;
    let mut q = MPoly::one(nvars);
    let mut q_dual = MPoly::one(nvars);
    for &(kind, k) in spec {
        let alg = Arc::new(JordanAlgebra::new(kind)?);
        let d = alg.det.embed(nvars, offset);
        q = &q * &d.pow(k);
        let pinv = alg.dual_map();
        let images: Vec<MPoly> = (0..alg.dim)
            .map(|a| {
                let mut p = MPoly::zero(alg.dim);
                for (b, c) in pinv[a].iter().enumerate() {
                    if !c.is_zero() {
                        p = &p + &MPoly::var(alg.dim, b).scale(c);
                    }
                }
                p
            })
            .collect();
        let dual_det = alg.det.compose(&images)?;
        q_dual = &q_dual * &dual_det.embed(nvars, offset).pow(k);
        offset += alg.dim;
        factors.push(Factor { alg, k, offset: offset - kind.dim(), dual_det });
    }
    let profile: Vec<(usize, u32, u32)> = spec.iter().map(|(kd, k)| (kd.dim(), kd.rank(), *k)).collect();
    Ok(VQPair { label: label.to_string(), factors, nvars, q, q_dual, eta: property_t(&profile) })
}

impl VQPair {
    pub fn profile(&self) -> Vec<(usize, u32, u32)> {
        self.factors.iter().map(|f| (f.alg.dim, f.alg.rank, f.k)).collect()
    }

    /// Total rank `sum r_i` (number of Harish-Chandra variables).
    pub fn total_rank(&self) -> usize {
        self.factors.iter().map(|f| f.alg.rank as usize).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn e(&self) -> Vec<Rat> {
        self.factors.iter().flat_map(|f| f.alg.e.clone()).collect()
    }

    fn split<'a>(&self, x: &'a [Rat]) -> Vec<&'a [Rat]> {
        self.factors.iter().map(|f| &x[f.offset..f.offset + f.alg.dim]).collect()
    }

    /// Blockwise Jordan product.
    pub fn product(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        self.split(x)
            .into_iter()
            .zip(self.split(y))
            .zip(&self.factors)
            .flat_map(|((a, b), f)| f.alg.product(a, b))
            .collect()
    }

    /// Trace form `<x, y> = grad Q(e) . (x o y)`, so that `<e, e> = 4`.
    pub fn trace_form(&self, x: &[Rat], y: &[Rat]) -> Rat {
        self.split(x)
            .into_iter()
            .zip(self.split(y))
            .zip(&self.factors)
            .fold(Rat::zero(), |acc, ((a, b), f)| acc + f.alg.trace_form(a, b) * ri(f.k as i64))
    }

    pub fn inverse_at(&self, x: &[Rat]) -> Result<Vec<Rat>, JordanError> {
        let mut out = Vec::with_capacity(self.nvars);
        for (blk, f) in self.split(x).into_iter().zip(&self.factors) {
            out.extend(f.alg.inverse_at(blk)?);
        }
        Ok(out)
    }

    /// The inversion `z -> z^{-1}` as rational functions on all of `V`; the
    /// images of a block share the denominator `det_i`.
    pub fn inverse_map(&self) -> Vec<RatFn> {
        let mut out = Vec::with_capacity(self.nvars);
        for f in &self.factors {
            let den = f.alg.det.embed(self.nvars, f.offset);
            for p in f.alg.inverse_numerators() {
                out.push(RatFn::new(p.embed(self.nvars, f.offset), den.clone()).expect("nonzero determinant"));
            }
        }
        out
    }

    /// Block-diagonal quadratic representation.
    pub fn quadratic_rep(&self, x: &[Rat]) -> Matrix {
        let mut m = vec![vec![Rat::zero(); self.nvars]; self.nvars];
        for (blk, f) in self.split(x).into_iter().zip(&self.factors) {
            let p = f.alg.quadratic_rep(blk);
            for i in 0..f.alg.dim {
                for j in 0..f.alg.dim {
                    m[f.offset + i][f.offset + j] = p[i][j].clone();
                }
            }
        }
        m
    }
}
