//! Reference tables and their CSV reproductions: the classification
//! catalog, the nonzero Bernstein roots, and the Meijer parameters.

use serde::Serialize;
use thiserror::Error;

use crate::analytic::{bdata, meijer_params, AnalyticError};
use crate::bernstein::{self, BernsteinError};
use crate::jordan::{build_case, case_ids, emit_table, resolve_case, JordanError, Kind, VQPair};
use crate::polycore::{fmt_rat, rat, ri, Rat};

#[derive(Debug, Error)]
pub enum TableError {
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error(transparent)]
    Bernstein(#[from] BernsteinError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("csv output is not utf-8")]
    Utf8,
}

/// Which of the three (T) families a case belongs to, with its parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `C^n` with `Q = phi_n^2` (and `z^4` at `n = 1`).
    One(i64),
    /// `C^p + C^p` with `Q = phi_p phi_p'`.
    Two(i64),
    /// Rank-4 simple algebra with Peirce constant `d`.
    Three(i64),
}

pub fn family_of(vq: &VQPair) -> Option<Family> {
    let f = &vq.factors;
    match (f.len(), f[0].alg.kind) {
        (1, Kind::Scalar) if f[0].k == 4 => Some(Family::One(1)),
        (1, Kind::Spin(n)) if f[0].k == 2 => Some(Family::One(n as i64)),
        (2, Kind::Spin(p)) if f[1].alg.kind == Kind::Spin(p) => Some(Family::Two(p as i64)),
        (1, k @ (Kind::Sym4 | Kind::Full4 | Kind::Skew8)) => {
            Some(Family::Three(k.peirce().to_integer().try_into().expect("small")))
        }
        _ => None,
    }
}

/// Reference `(eta, a1, a2, a3)` of the root table.
pub fn reference_alphas(fam: Family) -> (Rat, [Rat; 3]) {
    match fam {
        Family::One(n) => (rat(n, 4), [-rat(n - 4, 4), rat(1, 2), -rat(n - 2, 4)]),
        Family::Two(p) => (rat(p, 2), [-rat(p - 2, 2), ri(0), -rat(p - 2, 2)]),
        Family::Three(d) => (ri(1) + rat(3 * d, 2), [-rat(3 * d, 2), -rat(d, 2), -ri(d)]),
    }
}

/// Reference `(alpha, beta1, beta2, beta3)` of the Meijer parameter table.
pub fn reference_meijer(fam: Family) -> (Rat, [Rat; 3]) {
    match fam {
        Family::One(n) => (rat(n, 4) - ri(1), [rat(n - 2, 2), rat(n - 1, 2), rat(n - 2, 4)]),
        Family::Two(p) => (rat(p, 2) - ri(1), [ri(p - 1), ri(p - 1), rat(p, 2)]),
        Family::Three(d) => (rat(3 * d, 2), [ri(3 * d + 1), rat(5 * d, 2) + ri(1), ri(2 * d + 1)]),
    }
}

/// Leading constant quoted next to the root table.
pub fn reference_leading(fam: Family) -> Rat {
    match fam {
        Family::One(1) => ri(256),
        Family::One(_) => ri(16),
        Family::Two(_) | Family::Three(_) => ri(1),
    }
}

fn sorted(mut v: Vec<Rat>) -> Vec<Rat> {
    v.sort();
    v
}

fn join(v: &[Rat]) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(";")
}

#[derive(Clone, Debug, Serialize)]
pub struct RootRow {
    pub case: String,
    pub method: String,
    pub eta: String,
    pub alpha1: String,
    pub alpha2: String,
    pub alpha3: String,
    pub ref_eta: String,
    pub ref_alpha1: String,
    pub ref_alpha2: String,
    pub ref_alpha3: String,
    pub roots_match: bool,
    pub leading: String,
    pub ref_leading: String,
    pub note: String,
}

/// Root table from the interpolation oracle (reduced oracle above the
/// dimension guard), against the reference rows.
pub fn root_rows() -> Result<Vec<RootRow>, TableError> {
    let mut out = Vec::new();
    for id in case_ids() {
        let vq = build_case(&id)?;
        let (Some(eta), Some(fam)) = (vq.eta.clone(), family_of(&vq)) else { continue };
        let rep = bernstein::compute(&vq)?;
        let (a1, a2, a3) = rep.poly.alphas(&eta).ok_or(AnalyticError::Roots)?;
        let (reta, ra) = reference_alphas(fam);
        let computed = sorted(vec![ri(0), a1.clone(), a2.clone(), a3.clone()]);
        let reference = sorted(vec![ri(0), ra[0].clone(), ra[1].clone(), ra[2].clone()]);
        let roots_match = computed == reference && eta == reta;
        let rl = reference_leading(fam);
        let note = if rl == rep.poly.leading {
            String::new()
        } else {
            format!("leading constant differs: computed {} vs quoted {}", fmt_rat(&rep.poly.leading), fmt_rat(&rl))
        };
        out.push(RootRow {
            case: id,
            method: rep.method,
            eta: fmt_rat(&eta),
            alpha1: fmt_rat(&a1),
            alpha2: fmt_rat(&a2),
            alpha3: fmt_rat(&a3),
            ref_eta: fmt_rat(&reta),
            ref_alpha1: fmt_rat(&ra[0]),
            ref_alpha2: fmt_rat(&ra[1]),
            ref_alpha3: fmt_rat(&ra[2]),
            roots_match,
            leading: fmt_rat(&rep.poly.leading),
            ref_leading: fmt_rat(&rl),
            note,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MeijerRow {
    pub case: String,
    pub alpha: String,
    pub beta1: String,
    pub beta2: String,
    pub beta3: String,
    pub ref_alpha: String,
    pub ref_beta: String,
    pub matches: bool,
    pub sigma: String,
    pub minus_alpha_exceeds_sigma: bool,
}

pub fn meijer_rows() -> Result<Vec<MeijerRow>, TableError> {
    let mut out = Vec::new();
    for id in case_ids() {
        let vq = build_case(&id)?;
        let Some(fam) = family_of(&vq).filter(|_| vq.eta.is_some()) else { continue };
        let b = bernstein::by_product_formula(&vq)?;
        let p = meijer_params(&bdata(&vq, &b)?);
        let (alpha, beta) = p.exact.clone();
        let (ra, rb) = reference_meijer(fam);
        let sigma = -beta.iter().min().expect("three").clone();
        out.push(MeijerRow {
            case: id,
            alpha: fmt_rat(&alpha),
            beta1: fmt_rat(&beta[0]),
            beta2: fmt_rat(&beta[1]),
            beta3: fmt_rat(&beta[2]),
            ref_alpha: fmt_rat(&ra),
            ref_beta: join(&rb),
            matches: alpha == ra && beta == rb,
            minus_alpha_exceeds_sigma: -&alpha > sigma,
            sigma: fmt_rat(&sigma),
        });
    }
    Ok(out)
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, TableError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| TableError::Csv(e.into_error().into()))?;
    String::from_utf8(bytes).map_err(|_| TableError::Utf8)
}

/// Catalog rows with the computed nonzero Bernstein roots.
pub fn catalog_csv() -> Result<String, TableError> {
    let rows = emit_table(&|vq| bernstein::by_product_formula(vq).ok().and_then(|b| b.nonzero_roots()))?;
    to_csv(&rows)
}

pub fn roots_csv() -> Result<String, TableError> {
    to_csv(&root_rows()?)
}

pub fn meijer_csv() -> Result<String, TableError> {
    to_csv(&meijer_rows()?)
}

/// Machine-readable catalog.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub case: String,
    pub kinds: Vec<String>,
    pub dims: Vec<usize>,
    pub ranks: Vec<u32>,
    pub multiplicities: Vec<u32>,
    pub eta: Option<String>,
    pub property_t: bool,
    pub v: String,
    pub q: String,
    pub k_lie: String,
    pub g: String,
    pub g_real: String,
}

pub fn catalog_entries() -> Result<Vec<CatalogEntry>, TableError> {
    case_ids()
        .into_iter()
        .map(|id| {
            let spec = resolve_case(&id)?;
            let vq = build_case(&id)?;
            Ok(CatalogEntry {
                kinds: vq.factors.iter().map(|f| f.alg.kind.name()).collect(),
                dims: vq.factors.iter().map(|f| f.alg.dim).collect(),
                ranks: vq.factors.iter().map(|f| f.alg.rank).collect(),
                multiplicities: vq.factors.iter().map(|f| f.k).collect(),
                eta: vq.eta.as_ref().map(fmt_rat),
                property_t: vq.eta.is_some(),
                case: id,
                v: spec.v,
                q: spec.q,
                k_lie: spec.k_lie,
                g: spec.g,
                g_real: spec.g_real,
            })
        })
        .collect()
}
