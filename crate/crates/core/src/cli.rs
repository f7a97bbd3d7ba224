//! Command-line front end. Every command prints a human summary by default
//! and a versioned JSON document with `--json`.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analytic::{self, meijer, weight, BData};
use crate::bernstein;
use crate::hc;
use crate::jordan::{build_case, check_axioms, JordanError, VQPair};
use crate::polycore::{fmt_rat, rat_to_f64, ri, MPoly, Rat};
use crate::sl2rep::{self, Sl2Model};
use crate::structurable;
use crate::tables;

pub const SCHEMA: u32 = 1;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const BUDGET: i32 = 3;
}

#[derive(Parser, Debug)]
#[command(name = "minrep", version, about = "Exact checks for quartic Jordan pairs and their minimal representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CaseArgs {
    /// Case id, e.g. `case1:n=3`, `case2:p=2`, `case3:sym4`, `mixed:2x3`.
    #[arg(long)]
    pub case: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the catalog.
    Catalog {
        #[arg(long)]
        json: bool,
        /// Only pairs with property (T).
        #[arg(long)]
        only_t: bool,
    },
    /// Run every module check on one case.
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 2)]
        mmax: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 600)]
        budget_secs: u64,
    },
    /// Write the catalog, root and Meijer-parameter tables.
    Tables {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Bernstein polynomial by both methods.
    Bernstein {
        #[command(flatten)]
        case: CaseArgs,
    },
    /// Solve for the delta sequence.
    DeltaSolve {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 6)]
        mmax: u32,
    },
    /// Check the sl2 brackets on the graded model.
    Sl2Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 2)]
        mmax: u32,
    },
    /// Sampled checks on the doubled algebra.
    Structurable {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Evaluate the reproducing kernel series at `x`.
    Kernel {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
    },
    /// Pseudo-weight report.
    Weight {
        #[command(flatten)]
        case: CaseArgs,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        mmax: u32,
    },
}

/// Outcome of a command: exit code plus the document to print.
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

fn with_schema<T: Serialize>(v: &T) -> Value {
    let mut out = json!({ "schema": SCHEMA });
    if let (Some(o), Value::Object(m)) = (out.as_object_mut(), serde_json::to_value(v).expect("serializable")) {
        o.extend(m);
    }
    out
}

fn load(id: &str) -> Result<VQPair, Outcome> {
    build_case(id).map_err(|e| {
        let code = if matches!(e, JordanError::UnknownCase(_)) { exit::USAGE } else { exit::FAIL };
        Outcome { code, json: json!({ "schema": SCHEMA, "error": e.to_string() }), text: format!("error: {e}") }
    })
}

fn fail(msg: String) -> Outcome {
    Outcome { code: exit::FAIL, json: json!({ "schema": SCHEMA, "error": msg }), text: format!("error: {msg}") }
}

/// Dispatches a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Catalog { only_t, .. } => cmd_catalog(*only_t),
        Command::Verify { case, mmax, seed, budget_secs } => cmd_verify(&case.case, *mmax, *seed, *budget_secs),
        Command::Tables { out } => cmd_tables(out),
        Command::Bernstein { case } => cmd_bernstein(&case.case),
        Command::DeltaSolve { case, mmax } => cmd_delta(&case.case, *mmax),
        Command::Sl2Verify { case, mmax } => cmd_sl2(&case.case, *mmax),
        Command::Structurable { case, samples, seed } => cmd_structurable(&case.case, *samples, *seed),
        Command::Kernel { case, x } => cmd_kernel(&case.case, *x),
        Command::Weight { case, report, mmax } => cmd_weight(&case.case, report.as_deref(), *mmax),
    }
}

/// Whether the command asked for JSON output.
pub fn wants_json(cli: &Cli) -> bool {
    match &cli.command {
        Command::Catalog { json, .. } => *json,
        Command::Tables { .. } => false,
        Command::Verify { case, .. }
        | Command::Bernstein { case }
        | Command::DeltaSolve { case, .. }
        | Command::Sl2Verify { case, .. }
        | Command::Structurable { case, .. }
        | Command::Kernel { case, .. } => case.json,
        Command::Weight { case, report, .. } => case.json || report.is_none(),
    }
}

pub fn cmd_catalog(only_t: bool) -> Outcome {
    let rows = match tables::catalog_entries() {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let rows: Vec<_> = rows.into_iter().filter(|r| !only_t || r.property_t).collect();
    let text = rows
        .iter()
        .map(|r| {
            format!(
                "{:<16} {:<14} {:<12} eta={:<8} {}",
                r.case,
                r.v,
                r.q,
                r.eta.clone().unwrap_or_else(|| "-".into()),
                r.g
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    Outcome { code: exit::PASS, json: json!({ "schema": SCHEMA, "rows": rows }), text }
}

pub fn cmd_tables(out: &Path) -> Outcome {
    let files = (|| -> Result<Vec<(&str, String)>, tables::TableError> {
        let cat = serde_json::to_string_pretty(&json!({ "schema": SCHEMA, "rows": tables::catalog_entries()? }))
            .expect("serializable");
        Ok(vec![
            ("catalog.csv", tables::catalog_csv()?),
            ("roots.csv", tables::roots_csv()?),
            ("meijer_params.csv", tables::meijer_csv()?),
            ("catalog.json", cat + "\n"),
        ])
    })();
    let files = match files {
        Ok(f) => f,
        Err(e) => return fail(e.to_string()),
    };
    if let Err(e) = std::fs::create_dir_all(out) {
        return fail(e.to_string());
    }
    let mut written = Vec::new();
    for (name, body) in files {
        let p = out.join(name);
        if let Err(e) = std::fs::write(&p, body) {
            return fail(format!("{}: {e}", p.display()));
        }
        written.push(p.display().to_string());
    }
    Outcome { code: exit::PASS, text: written.join("\n"), json: json!({ "schema": SCHEMA, "written": written }) }
}

#[derive(Serialize)]
struct BernsteinDoc {
    case: String,
    method: String,
    coeffs: Vec<String>,
    roots: Option<Vec<String>>,
    leading: String,
    oracle_points: Vec<(u32, String)>,
    product_roots: Option<Vec<String>>,
    product_leading: String,
    method_agreement: bool,
    reference_leading: Option<String>,
}

pub fn cmd_bernstein(id: &str) -> Outcome {
    let vq = match load(id) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let (rep, prod) = match (bernstein::compute(&vq), bernstein::by_product_formula(&vq)) {
        (Ok(r), Ok(p)) => (r, p),
        (Err(e), _) | (_, Err(e)) => return fail(e.to_string()),
    };
    let strs = |v: &Option<Vec<Rat>>| v.as_ref().map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>());
    let doc = BernsteinDoc {
        case: vq.label.clone(),
        method: rep.method.clone(),
        coeffs: rep.poly.coeff_strings(),
        roots: strs(&rep.poly.roots),
        leading: fmt_rat(&rep.poly.leading),
        oracle_points: rep.points.iter().map(|(m, b)| (*m, fmt_rat(b))).collect(),
        product_roots: strs(&prod.roots),
        product_leading: fmt_rat(&prod.leading),
        method_agreement: rep.poly == prod,
        reference_leading: tables::family_of(&vq).map(|f| fmt_rat(&tables::reference_leading(f))),
    };
    let text = format!(
        "{}: roots {} leading {} ({}); product formula agrees: {}",
        doc.case,
        doc.roots.clone().map(|r| r.join(", ")).unwrap_or_else(|| "irrational".into()),
        doc.leading,
        doc.method,
        doc.method_agreement
    );
    let code = if doc.method_agreement { exit::PASS } else { exit::FAIL };
    Outcome { code, json: with_schema(&doc), text }
}

pub fn cmd_delta(id: &str, mmax: u32) -> Outcome {
    let vq = match load(id) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let sol = hc::solve_delta(&vq, mmax);
    let expected = sol.feasible == vq.eta.is_some();
    let text = if sol.feasible {
        format!(
            "{}: feasible, eta = {}, A = {}, deltas = [{}], closed form holds: {}",
            vq.label,
            sol.eta.as_ref().map(fmt_rat).unwrap_or_default(),
            sol.a_const.as_ref().map(fmt_rat).unwrap_or_default(),
            sol.deltas.iter().map(fmt_rat).collect::<Vec<_>>().join(", "),
            sol.closed_form_holds
        )
    } else {
        format!(
            "{}: infeasible at m = {} (EXPECTED: {})",
            vq.label,
            sol.witness.as_ref().map_or(0, |w| w.m),
            !vq.eta.is_some()
        )
    };
    let code = if expected && (!sol.feasible || sol.closed_form_holds) { exit::PASS } else { exit::FAIL };
    Outcome {
        code,
        json: with_schema(&json!({ "case": vq.label, "property_t": vq.eta.is_some(), "solution": sol })),
        text,
    }
}

#[derive(Serialize)]
struct Sl2Doc {
    case: String,
    mmax: u32,
    deltas: Vec<String>,
    verdict: sl2rep::Sl2Verdict,
    perturbed_detected: bool,
    ladder: Vec<sl2rep::LadderRow>,
    seconds: f64,
}

/// Solved model plus verdict; the perturbed-delta control must break `[E,F]`.
fn sl2_doc(vq: &VQPair, mmax: u32) -> Result<Sl2Doc, String> {
    let t = Instant::now();
    let deltas = sl2rep::operator_deltas(vq, mmax + 1).ok_or("no delta sequence: pair lacks property (T)")?;
    let model = Sl2Model::new(vq, mmax, deltas.clone()).map_err(|e| e.to_string())?;
    let verdict = sl2rep::verify_sl2(&model, mmax).map_err(|e| e.to_string())?;
    let mut bad = deltas.clone();
    bad[1] += ri(1);
    let perturbed = Sl2Model::new(vq, mmax, bad).map_err(|e| e.to_string())?;
    let pv = sl2rep::verify_sl2(&perturbed, mmax).map_err(|e| e.to_string())?;
    let perturbed_detected = pv.rows.iter().any(|r| r.identity == "[E,F]=H" && !r.holds);
    let b = bernstein::by_product_formula(vq).map_err(|e| e.to_string())?;
    let ladder = sl2rep::verify_ladder(&model, &b, mmax).map_err(|e| e.to_string())?;
    Ok(Sl2Doc {
        case: vq.label.clone(),
        mmax,
        deltas: deltas.iter().map(fmt_rat).collect(),
        verdict,
        perturbed_detected,
        ladder,
        seconds: t.elapsed().as_secs_f64(),
    })
}

impl Sl2Doc {
    fn passed(&self) -> bool {
        self.verdict.all_hold
            && self.verdict.sigma_involution
            && self.verdict.degree_bound
            && self.perturbed_detected
            && self.ladder.iter().all(|r| r.up_ok && r.down_ok)
    }
}

pub fn cmd_sl2(id: &str, mmax: u32) -> Outcome {
    let vq = match load(id) {
        Ok(v) => v,
        Err(o) => return o,
    };
    match sl2_doc(&vq, mmax) {
        Ok(doc) => {
            let mut text: Vec<String> = doc
                .verdict
                .rows
                .iter()
                .map(|r| {
                    format!(
                        "m={} {:<10} basis {:>4}: {}",
                        r.m,
                        r.identity,
                        r.basis_size,
                        if r.holds { "ok" } else { "FAIL" }
                    )
                })
                .collect();
            text.push(format!("perturbed delta_1 detected: {}", doc.perturbed_detected));
            let code = if doc.passed() { exit::PASS } else { exit::FAIL };
            Outcome { code, json: with_schema(&doc), text: text.join("\n") }
        }
        Err(e) => fail(e),
    }
}

fn structurable_ok(v: &structurable::StructVerdict) -> bool {
    v.identity_holds
        && v.antiautomorphism_holds
        && v.skew_dim == 1
        && v.s0_skew
        && v.star_involutive
        && v.e_star_is_e
        && v.t_a_formula
        && v.heisenberg_skew
}

pub fn cmd_structurable(id: &str, samples: usize, seed: u64) -> Outcome {
    let vq = match load(id) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let v = structurable::verify_structurable(&vq, samples, seed);
    let g = structurable::grading_dims(&vq);
    let ok = structurable_ok(&v) && g.outer_as_expected;
    let text = format!(
        "{}: identity {} antiautomorphism {} dim S {} grading {:?} (dim W = {})",
        vq.label, v.identity_holds, v.antiautomorphism_holds, v.skew_dim, g.p, g.dim_w
    );
    Outcome {
        code: if ok { exit::PASS } else { exit::FAIL },
        json: with_schema(&json!({ "verdict": v, "grading": g })),
        text,
    }
}

fn bdata_or_fail(vq: &VQPair) -> Result<BData, Outcome> {
    analytic::bdata_for(vq).map_err(|e| fail(e.to_string()))
}

pub fn cmd_kernel(id: &str, x: f64) -> Outcome {
    let vq = match load(id) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let d = match bdata_or_fail(&vq) {
        Ok(d) => d,
        Err(o) => return o,
    };
    match analytic::kernel_1f2(&d, x) {
        Ok(v) => {
            let exact = Rat::from_float(x)
                .zip(analytic::seq_c(&d, 60).ok())
                .map(|(xr, c)| rat_to_f64(&analytic::kernel_partial_sum(&c, &xr)));
            Outcome {
                code: exit::PASS,
                json: json!({ "schema": SCHEMA, "case": vq.label, "x": x, "value": v, "exact_partial_sum_60": exact }),
                text: format!("{v:.17e}"),
            }
        }
        Err(e) => fail(e.to_string()),
    }
}

pub fn cmd_weight(id: &str, report: Option<&Path>, mmax: u32) -> Outcome {
    let vq = match load(id) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let d = match bdata_or_fail(&vq) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let rep = match weight::weight_report(&d, mmax) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let mut body = serde_json::to_value(&rep).expect("serializable");
    body["case"] = json!(vq.label);
    let doc = with_schema(&body);
    let mut text = format!(
        "{}: max moment relerr {:.2e}, sign change u0 {:?}, asymptotic ratio {:.4} (standard exponent {:.4})",
        vq.label,
        rep.moments.iter().map(|r| r.relerr).fold(0.0, f64::max),
        rep.sign_change.u0,
        rep.asymptotic.ratio,
        rep.asymptotic.ratio_corrected
    );
    if let Some(p) = report {
        let body = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        if let Err(e) = std::fs::write(p, body) {
            return fail(format!("{}: {e}", p.display()));
        }
        text.push_str(&format!("\nreport written to {}", p.display()));
    }
    let ok = rep.moments.iter().all(|r| r.relerr <= 1e-6) && rep.integrability.shrinking;
    Outcome { code: if ok { exit::PASS } else { exit::FAIL }, json: doc, text }
}

/// Status of one verification stage.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    /// Negative outcome that the pair's type predicts.
    Expected,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub name: String,
    pub status: Status,
    pub seconds: f64,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub case: String,
    pub mmax: u32,
    pub seed: u64,
    pub property_t: bool,
    pub stages: Vec<Stage>,
    pub budget_exceeded: bool,
    pub passed: bool,
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Largest grade the sl2 stage runs at for a given dimension.
pub fn sl2_grade_cap(nvars: usize) -> u32 {
    match nvars {
        0..=4 => 3,
        5..=9 => 2,
        _ => 1,
    }
}

fn stage_jordan(vq: &VQPair, seed: u64) -> (Status, Value) {
    let r = check_axioms(vq, 50, seed);
    (pass_if(r.all_hold()), serde_json::to_value(&r).expect("serializable"))
}

fn stage_bernstein(vq: &VQPair) -> (Status, Value) {
    let (rep, prod) = match (bernstein::compute(vq), bernstein::by_product_formula(vq)) {
        (Ok(r), Ok(p)) => (r, p),
        (Err(e), _) | (_, Err(e)) => return (Status::Fail, json!({ "error": e.to_string() })),
    };
    let positive = (1..=4).all(|m| prod.eval(&ri(m)).is_positive());
    let zero = prod.eval(&ri(0)).is_zero();
    let agree = rep.poly == prod;
    let mut h = Vec::new();
    if vq.nvars <= 2 {
        for k in 1..=2 {
            match bernstein::verify_on_h(vq, k, &prod) {
                Ok(v) => h.push(v),
                Err(e) => return (Status::Fail, json!({ "error": e.to_string() })),
            }
        }
    }
    let ok = positive && zero && agree && h.iter().all(|v| v.holds);
    (
        pass_if(ok),
        json!({
            "method": rep.method,
            "roots": prod.roots.as_ref().map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>()),
            "leading": fmt_rat(&prod.leading),
            "methods_agree": agree,
            "positive_at_1_to_4": positive,
            "h_identity": h,
        }),
    )
}

fn stage_delta(vq: &VQPair, mmax: u32) -> (Status, Value) {
    let sol = hc::solve_delta(vq, mmax.max(3));
    let status = match (vq.eta.is_some(), sol.feasible) {
        (true, true) => pass_if(sol.closed_form_holds),
        (false, false) if sol.witness.is_some() => Status::Expected,
        _ => Status::Fail,
    };
    (status, serde_json::to_value(&sol).expect("serializable"))
}

fn stage_sl2(vq: &VQPair, mmax: u32) -> (Status, Value) {
    if vq.eta.is_none() {
        return (Status::Expected, json!({ "reason": "no delta sequence without property (T)" }));
    }
    if vq.nvars > 16 {
        return (Status::Skipped, json!({ "reason": "grade 1 on more than 16 variables exceeds the stage budget" }));
    }
    let m = mmax.min(sl2_grade_cap(vq.nvars));
    match sl2_doc(vq, m) {
        Ok(doc) => (pass_if(doc.passed()), serde_json::to_value(&doc).expect("serializable")),
        Err(e) => (Status::Fail, json!({ "error": e })),
    }
}

fn stage_structurable(vq: &VQPair, seed: u64) -> (Status, Value) {
    let g = structurable::grading_dims(vq);
    if 2 * vq.nvars > 32 {
        return (Status::Skipped, json!({ "reason": "dim W > 32", "grading": g }));
    }
    let v = structurable::verify_structurable(vq, 20, seed);
    (pass_if(structurable_ok(&v) && g.outer_as_expected), json!({ "verdict": v, "grading": g }))
}

/// `H(x, x) = Q(e + x^2)` and `H(z, 0) = 1` on rational samples.
pub fn hermitian_checks(vq: &VQPair, h: &MPoly, samples: usize, seed: u64) -> (bool, bool) {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = vq.nvars;
    let e = vq.e();
    let mut diag = true;
    let mut origin = true;
    for _ in 0..samples {
        let x = crate::polycore::random_vec(&mut rng, n, 4);
        let mut xx = x.clone();
        xx.extend(x.iter().cloned());
        let x2 = vq.product(&x, &x);
        let ex2: Vec<Rat> = e.iter().zip(&x2).map(|(a, b)| a + b).collect();
        diag &= h.eval(&xx) == vq.q.eval(&ex2);
        let mut z0 = x.clone();
        z0.extend(std::iter::repeat_n(Rat::zero(), n));
        origin &= h.eval(&z0) == ri(1);
    }
    (diag, origin)
}

fn stage_analytic(vq: &VQPair, seed: u64) -> (Status, Value) {
    if vq.eta.is_none() {
        return (Status::Expected, json!({ "reason": "weight formulas need property (T)" }));
    }
    let d = match analytic::bdata_for(vq) {
        Ok(d) => d,
        Err(e) => return (Status::Fail, json!({ "error": e.to_string() })),
    };
    let a_rec = analytic::seq_a_recurrence(&d, 10);
    let a_gin = analytic::seq_a_gindikin(vq, 10);
    let c = match analytic::seq_c(&d, 10) {
        Ok(c) => c,
        Err(e) => return (Status::Fail, json!({ "error": e.to_string() })),
    };
    let chain = (0..=10u32).all(|m| (&a_rec[m as usize] * &c[m as usize]).recip() == analytic::inv_ac_closed(&d, m));
    let hermitian = if vq.nvars <= 10 {
        match analytic::hermitian_kernel(vq) {
            Ok(h) => Some(hermitian_checks(vq, &h, 30, seed)),
            Err(e) => return (Status::Fail, json!({ "error": e.to_string() })),
        }
    } else {
        None
    };
    let p = analytic::meijer_params(&d);
    let mut dual = Vec::new();
    if p.series_applicable() {
        for u in [0.1, 1.0, 10.0, 100.0] {
            match (meijer::meijer_series(&p, u), meijer::meijer_quad(&p, u)) {
                (Ok(s), Ok(q)) => dual.push((u, ((s - q.value) / s).abs())),
                (Err(e), _) | (_, Err(e)) => return (Status::Fail, json!({ "error": e.to_string() })),
            }
        }
    }
    let rep = match weight::weight_report(&d, 6) {
        Ok(r) => r,
        Err(e) => return (Status::Fail, json!({ "error": e.to_string() })),
    };
    // Large Meijer parameters converge slowly; accept a ratio that moves
    // toward 1 and is within 10% one decade further out.
    let far = match weight::asymptotic_check(&rep.params, 1e5) {
        Ok(a) => a,
        Err(e) => return (Status::Fail, json!({ "error": e.to_string() })),
    };
    let asym_ok = rep.asymptotic.corrected_within_10pct
        || (far.corrected_within_10pct
            && (far.ratio_corrected - 1.0).abs() < (rep.asymptotic.ratio_corrected - 1.0).abs());
    let ok = a_rec == a_gin
        && chain
        && hermitian.is_none_or(|(a, b)| a && b)
        && dual.iter().all(|(_, r)| *r <= 1e-6)
        && rep.moments.iter().all(|r| r.relerr <= 1e-6)
        && rep.integrability.shrinking
        && rep.minus_alpha_exceeds_sigma
        && asym_ok;
    (
        pass_if(ok),
        json!({
            "a_methods_agree": a_rec == a_gin,
            "a": a_rec.iter().map(fmt_rat).collect::<Vec<_>>(),
            "c": c.iter().map(fmt_rat).collect::<Vec<_>>(),
            "inverse_ac_identity": chain,
            "hermitian_diagonal_and_origin": hermitian,
            "meijer_dual_relerr": dual,
            "weight": rep,
            "asymptotic_far": far,
            "asymptotic_note": "the stated exponent is reported alongside; only the standard exponent gates this stage",
        }),
    )
}

/// Runs the stages in order, stopping once the budget is spent.
pub fn verify_case(vq: &VQPair, mmax: u32, seed: u64, budget_secs: u64) -> VerifyReport {
    let start = Instant::now();
    type StageFn<'a> = Box<dyn Fn() -> (Status, Value) + 'a>;
    let stages: Vec<(&str, StageFn)> = vec![
        ("jordan", Box::new(|| stage_jordan(vq, seed))),
        ("bernstein", Box::new(|| stage_bernstein(vq))),
        ("delta", Box::new(|| stage_delta(vq, mmax))),
        ("sl2", Box::new(|| stage_sl2(vq, mmax))),
        ("structurable", Box::new(|| stage_structurable(vq, seed))),
        ("analytic", Box::new(|| stage_analytic(vq, seed))),
    ];
    let mut done = Vec::new();
    let mut budget_exceeded = false;
    for (name, f) in stages {
        if start.elapsed().as_secs() >= budget_secs {
            budget_exceeded = true;
            break;
        }
        let t = Instant::now();
        let (status, detail) = f();
        done.push(Stage { name: name.to_string(), status, seconds: t.elapsed().as_secs_f64(), detail });
    }
    budget_exceeded |= start.elapsed().as_secs() > budget_secs;
    let passed = !budget_exceeded && done.iter().all(|s| s.status != Status::Fail);
    VerifyReport {
        case: vq.label.clone(),
        mmax,
        seed,
        property_t: vq.eta.is_some(),
        stages: done,
        budget_exceeded,
        passed,
    }
}

pub fn cmd_verify(id: &str, mmax: u32, seed: u64, budget_secs: u64) -> Outcome {
    let vq = match load(id) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let rep = verify_case(&vq, mmax, seed, budget_secs);
    let mut text: Vec<String> = rep
        .stages
        .iter()
        .map(|s| format!("{:<13} {:<8} {:>8.2}s", s.name, format!("{:?}", s.status).to_uppercase(), s.seconds))
        .collect();
    if rep.budget_exceeded {
        text.push(format!("budget of {budget_secs}s exceeded; report is partial"));
    }
    let code = if rep.budget_exceeded {
        exit::BUDGET
    } else if rep.passed {
        exit::PASS
    } else {
        exit::FAIL
    };
    Outcome { code, json: with_schema(&rep), text: text.join("\n") }
}
