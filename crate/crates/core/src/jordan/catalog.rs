//! Named cases and the static Lie-algebra metadata of the classification table.

use serde::Serialize;

use super::{build_vq, property_t, JordanError, Kind, VQPair};
use crate::polycore::{fmt_rat, Rat};

/// A resolvable catalog entry.
#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub id: String,
    pub factors: Vec<(Kind, u32)>,
    pub v: String,
    pub q: String,
    pub k_lie: String,
    pub g: String,
    pub g_real: String,
}

fn spin_or_scalar(n: usize) -> Kind {
    if n == 1 {
        Kind::Scalar
    } else {
        Kind::Spin(n)
    }
}

fn case1(n: usize) -> CaseSpec {
    let k = if n == 1 { 4 } else { 2 };
    CaseSpec {
        id: format!("case1:n={n}"),
        factors: vec![(spin_or_scalar(n), k)],
        v: format!("C^{n}"),
        q: format!("phi_{n}^2"),
        k_lie: format!("so({})", n + 2),
        g: format!("sl({})", n + 2),
        g_real: format!("sl({},R)", n + 2),
    }
}

fn two_spins(id: String, p: usize, q: usize) -> CaseSpec {
    CaseSpec {
        id,
        factors: vec![(Kind::Spin(p), 1), (Kind::Spin(q), 1)],
        v: format!("C^{p}+C^{q}"),
        q: format!("phi_{p}*phi_{q}"),
        k_lie: format!("so({})+so({})", p + 2, q + 2),
        g: format!("so({})", p + q + 4),
        g_real: format!("so({},{})", p + 2, q + 2),
    }
}

fn case3(kind: Kind) -> CaseSpec {
    let (tag, v, q, k, g, gr) = match kind {
        Kind::Sym4 => ("sym4", "Sym(4)", "det", "sp(8)", "e6", "e6(6)"),
        Kind::Full4 => ("full4", "M(4)", "det", "sl(8)", "e7", "e7(7)"),
        _ => ("skew8", "Skew(8)", "Pfaff", "so(16)", "e8", "e8(8)"),
    };
    CaseSpec {
        id: format!("case3:{tag}"),
        factors: vec![(kind, 1)],
        v: v.into(),
        q: q.into(),
        k_lie: k.into(),
        g: g.into(),
        g_real: gr.into(),
    }
}

fn plain(id: &str, factors: Vec<(Kind, u32)>, v: &str, q: &str, k: &str, g: &str, gr: &str) -> CaseSpec {
    CaseSpec { id: id.into(), factors, v: v.into(), q: q.into(), k_lie: k.into(), g: g.into(), g_real: gr.into() }
}

/// Canonical ids of every computable catalog entry, in table order.
pub fn case_ids() -> Vec<String> {
    all_cases().into_iter().map(|c| c.id).collect()
}

fn all_cases() -> Vec<CaseSpec> {
    let mut v: Vec<CaseSpec> = (1..=6).map(case1).collect();
    v.push(two_spins("case2:p=2".into(), 2, 2));
    v.push(two_spins("case2:p=3".into(), 3, 3));
    v.push(case3(Kind::Sym4));
    v.push(case3(Kind::Full4));
    v.push(case3(Kind::Skew8));
    v.push(plain(
        "mixed:z3z",
        vec![(Kind::Scalar, 3), (Kind::Scalar, 1)],
        "C+C",
        "z^3*z'",
        "sl(2)+sl(2)",
        "g2",
        "g2(2)",
    ));
    v.push(two_spins("mixed:2x3".into(), 2, 3));
    v.push(two_spins("mixed:2x4".into(), 2, 4));
    v.push(plain("mixed:z2spin3", vec![(Kind::Scalar, 2), (Kind::Spin(3), 1)], "C+C^3", "z^2*phi_3", "-", "-", "-"));
    v.push(plain(
        "mixed:z2zz",
        vec![(Kind::Scalar, 2), (Kind::Scalar, 1), (Kind::Scalar, 1)],
        "C+C+C",
        "z^2*z'*z''",
        "-",
        "-",
        "-",
    ));
    v
}

/// Resolves an id (or alias) to its specification.
pub fn resolve_case(id: &str) -> Result<CaseSpec, JordanError> {
    let id = id.trim();
    let unknown = || JordanError::UnknownCase(id.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    if let Some(n) = id.strip_prefix("case1:n=") {
        let n = num(n)?;
        return if (1..=12).contains(&n) { Ok(case1(n)) } else { Err(unknown()) };
    }
    if let Some(p) = id.strip_prefix("case2:p=") {
        let p = num(p)?;
        return if (2..=8).contains(&p) { Ok(two_spins(format!("case2:p={p}"), p, p)) } else { Err(unknown()) };
    }
    let alias = match id {
        "case3:d=1" => "case3:sym4",
        "case3:d=2" => "case3:full4",
        "case3:d=4" => "case3:skew8",
        other => other,
    };
    all_cases().into_iter().find(|c| c.id == alias).ok_or_else(unknown)
}

/// Builds the pair for a case id.
pub fn build_case(id: &str) -> Result<VQPair, JordanError> {
    let spec = resolve_case(id)?;
    build_vq(&spec.id, &spec.factors)
}

/// One row of the emitted classification table.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub case: String,
    pub v: String,
    pub q: String,
    pub k_lie: String,
    pub g: String,
    pub g_real: String,
    /// `n:r:k` per simple factor, `;`-separated.
    pub profile: String,
    pub eta: String,
    /// Nonzero Bernstein roots (exact), `;`-separated, when (T) holds.
    pub roots: String,
    pub note: String,
}

/// Table columns plus `(dim, rank, multiplicity)` per factor.
pub type MetaRow = (String, String, String, String, String, Vec<(usize, u32, u32)>);

/// Rows that exist only as metadata (no arithmetic model is built).
pub fn table_meta() -> Vec<MetaRow> {
    let z = (1usize, 1u32, 1u32);
    vec![
        ("Sym(3)+C".into(), "det*z'".into(), "sp(6)+sl(2)".into(), "f4".into(), "f4(4)".into(), vec![(6, 3, 1), z]),
        ("M(3)+C".into(), "det*z'".into(), "sl(6)+sl(2)".into(), "e6".into(), "e6(2)".into(), vec![(9, 3, 1), z]),
        (
            "Skew(6)+C".into(),
            "Pfaff*z'".into(),
            "so(12)+sl(2)".into(),
            "e7".into(),
            "e7(-5)".into(),
            vec![(15, 3, 1), z],
        ),
        ("Herm(3,O)+C".into(), "det*z'".into(), "e7+sl(2)".into(), "e8".into(), "e8(-24)".into(), vec![(27, 3, 1), z]),
    ]
}

fn profile_str(p: &[(usize, u32, u32)]) -> String {
    p.iter().map(|(n, r, k)| format!("{n}:{r}:{k}")).collect::<Vec<_>>().join(";")
}

fn eta_str(e: &Option<Rat>) -> String {
    e.as_ref().map(fmt_rat).unwrap_or_else(|| "not (T)".into())
}

/// The full table: computed catalog rows followed by metadata-only rows.
/// `roots` supplies the nonzero Bernstein roots for (T) pairs.
pub fn emit_table(roots: &dyn Fn(&VQPair) -> Option<Vec<Rat>>) -> Result<Vec<TableRow>, JordanError> {
    let mut rows = Vec::new();
    for spec in all_cases() {
        let vq = build_vq(&spec.id, &spec.factors)?;
        let r = if vq.eta.is_some() { roots(&vq) } else { None };
        rows.push(TableRow {
            case: spec.id.clone(),
            v: spec.v,
            q: spec.q,
            k_lie: spec.k_lie,
            g: spec.g,
            g_real: spec.g_real,
            profile: profile_str(&vq.profile()),
            eta: eta_str(&vq.eta),
            roots: r.map(|v| v.iter().map(fmt_rat).collect::<Vec<_>>().join(";")).unwrap_or_default(),
            note: String::new(),
        });
    }
    for (v, q, k, g, gr, prof) in table_meta() {
        rows.push(TableRow {
            case: "-".into(),
            v,
            q,
            k_lie: k,
            g,
            g_real: gr,
            profile: profile_str(&prof),
            eta: eta_str(&property_t(&prof)),
            roots: String::new(),
            note: "metadata only; not property (T) case".into(),
        });
    }
    Ok(rows)
}
