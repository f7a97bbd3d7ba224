//! Exact linear algebra over the rationals: dense solves with certificates of
//! inconsistency, and an incremental echelon form for spans of polynomials.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::{MPoly, Mono, Rat};

pub type Matrix = Vec<Vec<Rat>>;

/// Certificate that `A x = b` has no solution: `y` with `yA = 0`, `yb != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Inconsistent {
    pub certificate: Vec<Rat>,
    pub value: Rat,
}

/// Solves `A x = b` exactly. Free variables are set to zero.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Result<Vec<Rat>, Inconsistent> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "right-hand side length mismatch");
    let cols = a.first().map_or(0, |r| r.len());
    // Augmented [A | b | I] so row operations also track the certificate.
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut r = a[i].clone();
            r.push(b[i].clone());
            r.extend((0..rows).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rat::one() / m[r][c].clone();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (src, dst) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d -= &f * s;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    for row in m.iter().skip(r) {
        if !row[cols].is_zero() {
            return Err(Inconsistent { certificate: row[cols + 1..].to_vec(), value: row[cols].clone() });
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Ok(x)
}

/// Rank by exact elimination.
pub fn rank(a: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = m[i][c].clone() / m[r][c].clone();
                let pivot_row = m[r].clone();
                for (d, s) in m[i].iter_mut().zip(pivot_row.iter()) {
                    *d -= &f * s;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn mat_vec(a: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    a.iter().map(|row| row.iter().zip(x).fold(Rat::zero(), |acc, (u, v)| acc + u * v)).collect()
}

pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(Rat::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(a: &[Vec<Rat>]) -> Option<Matrix> {
    let n = a.len();
    let mut cols = vec![vec![Rat::zero(); n]; n];
    for j in 0..n {
        let e: Vec<Rat> = (0..n).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect();
        let x = solve(a, &e).ok()?;
        // solve() zeroes free variables; confirm we really hit e_j.
        if mat_vec(a, &x) != e {
            return None;
        }
        for (row, xi) in cols.iter_mut().zip(x) {
            row[j] = xi;
        }
    }
    Some(cols)
}

/// Incremental echelon basis of a span of polynomials. Each stored row
/// remembers which inserted generators it is built from, so membership
/// queries can return coordinates in terms of the independent generators.
#[derive(Clone, Debug)]
pub struct Echelon {
    nvars: usize,
    rows: Vec<(MPoly, BTreeMap<usize, Rat>)>,
    pivot_of: HashMap<Mono, usize>,
    /// Generator indices that were accepted as independent, in order.
    pub independent: Vec<usize>,
}

impl Echelon {
    pub fn new(nvars: usize) -> Self {
        Echelon { nvars, rows: Vec::new(), pivot_of: HashMap::new(), independent: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `p` against the rows; returns remainder and the combination
    /// of generators subtracted, i.e. `p = remainder + sum combo_g * gen_g`.
    fn reduce(&self, p: &MPoly) -> (MPoly, BTreeMap<usize, Rat>) {
        let mut rem = p.clone();
        let mut combo: BTreeMap<usize, Rat> = BTreeMap::new();
        let mut cursor: Option<Mono> = None;
        loop {
            let hit = {
                let it: Box<dyn Iterator<Item = (&Mono, &Rat)>> = match &cursor {
                    None => Box::new(rem.terms().rev()),
                    Some(c) => Box::new(rem.terms().rev().skip_while(move |(m, _)| *m >= c)),
                };
                let mut found = None;
                for (m, c) in it {
                    if let Some(&r) = self.pivot_of.get(m) {
                        found = Some((m.clone(), c.clone(), r));
                        break;
                    }
                }
                found
            };
            let Some((m, c, r)) = hit else { break };
            let (row, rc) = &self.rows[r];
            rem = &rem - &row.scale(&c);
            for (g, v) in rc {
                let e = combo.entry(*g).or_insert_with(Rat::zero);
                *e += &c * v;
                if e.is_zero() {
                    combo.remove(g);
                }
            }
            cursor = Some(m);
        }
        (rem, combo)
    }

    /// Adds generator `p` with label `gen`. Returns true when independent.
    pub fn insert(&mut self, p: &MPoly, gen: usize) -> bool {
        assert_eq!(p.nvars(), self.nvars);
        let (rem, combo) = self.reduce(p);
        if rem.is_zero() {
            return false;
        }
        let (lm, lc) = rem.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let inv = Rat::one() / lc;
        let mut rc: BTreeMap<usize, Rat> = combo.into_iter().map(|(g, v)| (g, -v * &inv)).collect();
        rc.insert(gen, inv.clone());
        self.pivot_of.insert(lm, self.rows.len());
        self.rows.push((rem.scale(&inv), rc));
        self.independent.push(gen);
        true
    }

    pub fn contains(&self, p: &MPoly) -> bool {
        self.reduce(p).0.is_zero()
    }

    /// Coordinates of `p` in terms of generator labels, or `None` if outside.
    pub fn coords(&self, p: &MPoly) -> Option<BTreeMap<usize, Rat>> {
        let (rem, combo) = self.reduce(p);
        if rem.is_zero() {
            Some(combo)
        } else {
            None
        }
    }
}
