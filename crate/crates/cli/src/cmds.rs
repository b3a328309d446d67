//! One function per subcommand; each returns the rendered report.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;

use ccwb_core::constacode::{count_codes, DistStatus, DistanceRecord, FamilyCtx, LinearCode};
use ccwb_core::constructions::{
    construction_x, construction_x_optimized, construction_xx, quantum_params, ConstructionKind,
    ConstructionRecord, QuantumParams,
};
use ccwb_core::distance::{brute_distance, bz_distance, weight_enumerator, BzOptions, DistanceResult};
use ccwb_core::equivalence::{
    apply_isometry, build_witness, check_bierbrauer, check_corollaries, check_equal_order,
    check_main_theorem, classify, verify_witness, EquivCriterion, EquivWitness,
};
use ccwb_core::field::{Fe, FieldSpec};
use ccwb_core::search::{run_search, BklcTable, SearchJob, Store};
use ccwb_core::Error;

use crate::matrix;
use crate::{Engine, FamilyArgs, Output};

fn family(fam: &FamilyArgs) -> Result<FamilyCtx, Error> {
    let field = Arc::new(FieldSpec::of_order(fam.q)?);
    let a = field.parse_elem(&fam.a)?;
    FamilyCtx::new(field, fam.n, a)
}

/// Coset labels `Z10,Z19` (bare numbers accepted) -> closed defining set.
fn defining_from_labels(ctx: &FamilyCtx, labels: &[String]) -> Result<Vec<u64>, Error> {
    let mut leaders = Vec::new();
    for label in labels {
        let body = label
            .trim()
            .trim_start_matches(['Z', 'z'])
            .parse::<u64>()
            .map_err(|_| Error::parse(format!("bad coset label {label:?}")))?;
        leaders.push(body);
    }
    ctx.close_under_cosets(&leaders)
}

fn no_dot(out: Output) -> Result<(), Error> {
    if out == Output::Dot {
        return Err(Error::precondition("dot output is only available for `graph`"));
    }
    Ok(())
}

fn poly_str(ctx: &FamilyCtx, p: &ccwb_core::poly::Poly<FieldSpec>) -> String {
    p.render(&ctx.field, |c| ctx.field.fmt_elem(*c))
}

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value).map_err(Error::from)?)
}

// ---------------------------------------------------------------------------
// cosets / factor
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CosetReport {
    label: String,
    members: Vec<u64>,
    min_poly: String,
}

#[derive(Serialize)]
struct CosetsReport {
    q: u32,
    n: u64,
    a: String,
    t: u64,
    tn: u64,
    cosets: Vec<CosetReport>,
    code_count: u128,
    product_ok: bool,
}

fn cosets_report(ctx: &FamilyCtx) -> anyhow::Result<CosetsReport> {
    let mut cosets = Vec::new();
    let mut product = ccwb_core::poly::Poly::one(ctx.field.as_ref());
    for c in &ctx.cosets {
        let mp = ctx.coset_factor(c)?;
        product = ccwb_core::poly::Poly::mul(ctx.field.as_ref(), &product, &mp);
        cosets.push(CosetReport {
            label: c.label(),
            members: c.members.clone(),
            min_poly: poly_str(ctx, &mp),
        });
    }
    Ok(CosetsReport {
        q: ctx.field.q,
        n: ctx.n,
        a: ctx.field.fmt_elem(ctx.a),
        t: ctx.omega.t,
        tn: ctx.omega.tn,
        cosets,
        code_count: count_codes(&ctx.field, ctx.n, ctx.a)?,
        product_ok: product == ctx.ring_modulus(),
    })
}

pub fn cosets(fam: &FamilyArgs, out: Output) -> anyhow::Result<String> {
    no_dot(out)?;
    let ctx = family(fam)?;
    let report = cosets_report(&ctx)?;
    if out == Output::Json {
        return json(&report);
    }
    let mut s = format!(
        "GF({}), n = {}, a = {} (ord(a) = {}, residues mod {})\n",
        report.q, report.n, report.a, report.t, report.tn
    );
    let width = report.cosets.iter().map(|c| c.label.len()).max().unwrap_or(1);
    for c in &report.cosets {
        let members: Vec<String> = c.members.iter().map(u64::to_string).collect();
        s += &format!(
            "  {:width$} = {{{}}}  min poly {}\n",
            c.label,
            members.join(", "),
            c.min_poly,
        );
    }
    s += &format!(
        "{} cosets, {} {}-constacyclic codes\nproduct of minimal polynomials == x^{} - {}: {}\n",
        report.cosets.len(),
        report.code_count,
        report.a,
        report.n,
        report.a,
        if report.product_ok { "ok" } else { "MISMATCH" },
    );
    Ok(s)
}

pub fn factor(fam: &FamilyArgs, out: Output) -> anyhow::Result<String> {
    no_dot(out)?;
    let ctx = family(fam)?;
    let report = cosets_report(&ctx)?;
    if !report.product_ok {
        return Err(Error::internal("minimal polynomials do not multiply back to x^n - a").into());
    }
    if out == Output::Json {
        return json(&report);
    }
    let mut factors: Vec<(usize, String)> = report
        .cosets
        .iter()
        .map(|c| (c.members.len(), c.min_poly.clone()))
        .collect();
    factors.sort();
    let rhs: Vec<String> = factors.into_iter().map(|(_, f)| format!("({f})")).collect();
    Ok(format!("x^{} - {} = {}\n", report.n, report.a, rhs.concat()))
}

// ---------------------------------------------------------------------------
// equiv / graph
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CriterionHit {
    name: &'static str,
    condition: String,
}

#[derive(Serialize)]
struct EquivReport {
    q: u32,
    n: u64,
    a: String,
    b: String,
    criteria: Vec<CriterionHit>,
    code_count_a: u128,
    code_count_b: u128,
    witness: Option<EquivWitness>,
    /// Family members the witness was checked on, when --verify is given.
    verified_members: Option<u64>,
}

pub fn equiv(
    fam: &FamilyArgs,
    b: &str,
    want_witness: bool,
    verify: bool,
    out: Output,
) -> anyhow::Result<String> {
    no_dot(out)?;
    let ctx = family(fam)?;
    let field = &ctx.field;
    let (a, b) = (ctx.a, field.parse_elem(b)?);
    let n = ctx.n;

    let mut criteria: Vec<EquivCriterion> = Vec::new();
    if check_equal_order(field, a, b)? {
        criteria.push(EquivCriterion::EqualOrder { ord: field.element_order(a)? });
    }
    if b == Fe::ONE && check_bierbrauer(field, n, a)? {
        criteria.push(EquivCriterion::Bierbrauer { ord_a: field.element_order(a)? });
    }
    if a == Fe::ONE && b != Fe::ONE && check_bierbrauer(field, n, b)? {
        criteria.push(EquivCriterion::Bierbrauer { ord_a: field.element_order(b)? });
    }
    if let Some(cert) = check_main_theorem(field, n, a, b)? {
        criteria.push(EquivCriterion::MainTheorem { s: cert.s, m: cert.m });
    }
    if let Some(c) = check_corollaries(field, n, a, b)? {
        criteria.push(c);
    }

    let count_a = count_codes(field, n, a)?;
    let count_b = count_codes(field, n, b)?;

    if criteria.is_empty() {
        let verdict = if count_a != count_b {
            format!(
                "code counts differ ({count_a} vs {count_b}), so the families are \
                 not monomially equivalent"
            )
        } else {
            format!("code counts agree ({count_a}); equivalence undecided")
        };
        return Err(Error::NoCriterion(format!(
            "no criterion applies to a = {}, b = {} at n = {n} over GF({}); {verdict}",
            field.fmt_elem(a),
            field.fmt_elem(b),
            field.q
        ))
        .into());
    }

    let witness = if want_witness || verify {
        let w = build_witness(field, n, a, b)?;
        verify_witness(field, &w)?;
        Some(w)
    } else {
        None
    };

    let mut verified_members = None;
    if verify {
        let w = witness.as_ref().expect("witness built above");
        verified_members = Some(verify_on_small_members(&ctx, b, w)?);
    }

    let report = EquivReport {
        q: field.q,
        n,
        a: field.fmt_elem(a),
        b: field.fmt_elem(b),
        criteria: criteria
            .iter()
            .map(|c| CriterionHit { name: c.name(), condition: c.condition_at(n, field.q) })
            .collect(),
        code_count_a: count_a,
        code_count_b: count_b,
        witness,
        verified_members,
    };
    if out == Output::Json {
        return json(&report);
    }

    let mut s = format!(
        "GF({}), n = {}: a = {}, b = {}\n",
        report.q, report.n, report.a, report.b
    );
    for hit in &report.criteria {
        s += &format!("  {} fires: {}\n", hit.name, hit.condition);
    }
    s += "families are monomially equivalent\n";
    if let Some(w) = &report.witness {
        s += &format!(
            "witness: Phi(c)_j = xi^(i*j) * c_j with i = {} (scalar {}); \
             s = {}, m = {}, gamma = {}\n",
            w.i,
            ctx.field.fmt_elem(w.scalar),
            w.s,
            w.m,
            w.gamma,
        );
    }
    if let Some(members) = report.verified_members {
        s += &format!(
            "witness checked on {members} family members (images {}-constacyclic, \
             weights preserved)\n",
            report.b
        );
    }
    Ok(s)
}

/// Apply the witness to every a-constacyclic code with at most two cosets
/// and check the image is b-constacyclic with the same weight enumerator.
fn verify_on_small_members(ctx: &FamilyCtx, b: Fe, w: &EquivWitness) -> anyhow::Result<u64> {
    let m = ctx.cosets.len();
    let mut masks: Vec<u64> = Vec::new();
    for i in 0..m {
        masks.push(1 << i);
        for j in i + 1..m {
            masks.push(1 << i | 1 << j);
        }
    }
    let mut checked = 0;
    for mask in masks {
        let mut defining = Vec::new();
        for (i, c) in ctx.cosets.iter().enumerate() {
            if mask >> i & 1 == 1 {
                defining.extend_from_slice(&c.members);
            }
        }
        defining.sort_unstable();
        let code = ctx.build_code(&defining)?;
        let image = apply_isometry(w, &code)?;
        if !image.is_constacyclic(b) {
            return Err(Error::internal(format!(
                "witness image of defining set {defining:?} is not {}-constacyclic",
                ctx.field.fmt_elem(b)
            ))
            .into());
        }
        // Monomial maps preserve weights; confirm on codes small enough to
        // enumerate outright.
        if (ctx.field.q as u128).saturating_pow(code.k() as u32) <= 1 << 20 {
            let wa = weight_enumerator(&code, None)?;
            let wb = weight_enumerator(&image, None)?;
            if wa.counts != wb.counts {
                return Err(Error::internal(format!(
                    "weight enumerator changed for defining set {defining:?}"
                ))
                .into());
            }
        }
        checked += 1;
    }
    Ok(checked)
}

pub fn graph(q: u32, n: u64, out: Output) -> anyhow::Result<String> {
    let g = classify(q, n)?;
    match out {
        Output::Dot => Ok(g.to_dot()),
        Output::Json => json(&g),
        Output::Human => {
            let field = FieldSpec::of_order(q)?;
            let mut s = format!(
                "GF({q}), n = {n}: {} classes over {} nonzero constants\n",
                g.classes.len(),
                g.nodes.len()
            );
            for (i, class) in g.classes.iter().enumerate() {
                let members: Vec<String> = class.iter().map(|&a| field.fmt_elem(a)).collect();
                s += &format!("  class {}: {{{}}}\n", i + 1, members.join(", "));
            }
            for e in &g.edges {
                s += &format!(
                    "  {} ~ {}  [{}: {}]\n",
                    field.fmt_elem(e.a),
                    field.fmt_elem(e.b),
                    e.criterion.name(),
                    e.criterion.condition_at(n, q)
                );
            }
            Ok(s)
        }
    }
}

// ---------------------------------------------------------------------------
// mindist
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct MindistReport {
    q: u32,
    n: usize,
    k: usize,
    defining: Option<Vec<u64>>,
    engine: &'static str,
    value: u64,
    status: DistStatus,
    enumerated: u64,
    info_sets: u64,
}

fn run_engine(
    code: &LinearCode,
    engine: Engine,
    target: Option<u64>,
    budget: Option<u64>,
    progress: Option<PathBuf>,
) -> Result<DistanceResult, Error> {
    match engine {
        Engine::Brute => brute_distance(code, budget),
        Engine::Bz => bz_distance(
            code,
            &BzOptions { target, max_enumerated: budget, progress, ..Default::default() },
        ),
    }
}

fn describe_distance(r: &DistanceResult) -> String {
    match r.status {
        DistStatus::Exact => format!("d = {} (exact)", r.value),
        DistStatus::Lower => format!("d >= {} (lower bound; enumeration capped)", r.value),
        DistStatus::Upper => format!("d <= {} (upper bound; aborted early)", r.value),
        DistStatus::Unknown => "d unknown".to_string(),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn mindist(
    fam: &FamilyArgs,
    defining: &[String],
    matrix_path: Option<&Path>,
    engine: Engine,
    target: Option<u64>,
    budget: Option<u64>,
    progress: Option<PathBuf>,
    out: Output,
) -> anyhow::Result<String> {
    no_dot(out)?;
    let (code, defining) = match matrix_path {
        Some(path) => (matrix::load(path)?, None),
        None => {
            let ctx = family(fam)?;
            let d = defining_from_labels(&ctx, defining)?;
            (ctx.build_code(&d)?, Some(d))
        }
    };
    if code.k() == 0 {
        return Err(Error::precondition("the zero code has no minimum distance").into());
    }
    let result = run_engine(&code, engine, target, budget, progress)?;
    let report = MindistReport {
        q: code.field.q,
        n: code.n,
        k: code.k(),
        defining,
        engine: match engine {
            Engine::Brute => "brute",
            Engine::Bz => "bz",
        },
        value: result.value,
        status: result.status,
        enumerated: result.enumerated,
        info_sets: result.info_sets,
    };
    if out == Output::Json {
        return json(&report);
    }
    let mut s = format!("[{},{}]_{} code", report.n, report.k, report.q);
    if let Some(d) = &report.defining {
        let labels: Vec<String> = d.iter().map(|r| r.to_string()).collect();
        s += &format!(", defining set {{{}}}", labels.join(", "));
    }
    s += &format!(
        "\n{} — {} codewords enumerated, {} information sets\n",
        describe_distance(&result),
        report.enumerated,
        report.info_sets
    );
    Ok(s)
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

pub fn search(
    job_path: &Path,
    table_path: Option<&Path>,
    store_path: &Path,
    out: Output,
) -> anyhow::Result<String> {
    no_dot(out)?;
    let job: SearchJob =
        serde_json::from_str(&std::fs::read_to_string(job_path).map_err(Error::from)?)
            .map_err(Error::from)?;
    let table = match table_path {
        Some(p) => BklcTable::load(p)?,
        None => {
            eprintln!("note: no table given; every find will be low-confidence");
            BklcTable::empty()
        }
    };
    let store = Store::open(store_path)?;
    let summary = run_search(&job, &table, &store)?;
    if out == Output::Json {
        return json(&summary);
    }
    Ok(format!(
        "visited {} codes, pruned {}, persisted {} ({} record-breaking), {} resumed\nstore: {}\n",
        summary.visited,
        summary.pruned,
        summary.persisted,
        summary.record_breaking,
        summary.resumed,
        store_path.display()
    ))
}

// ---------------------------------------------------------------------------
// constructions
// ---------------------------------------------------------------------------

/// Exact distance via the cheaper engine for the size, stored on the code.
fn ensure_distance(code: &mut LinearCode, what: &str) -> anyhow::Result<DistanceResult> {
    eprintln!("computing d({what}) for [{},{}]_{}", code.n, code.k(), code.field.q);
    let result = if (code.field.q as u128).saturating_pow(code.k() as u32) <= 1 << 16 {
        brute_distance(code, None)?
    } else {
        bz_distance(code, &BzOptions::default())?
    };
    code.distance = Some(result.record());
    Ok(result)
}

fn aux_code(
    path: Option<&Path>,
    field: &Arc<FieldSpec>,
    default_len: usize,
) -> anyhow::Result<LinearCode> {
    let mut aux = match path {
        Some(p) => {
            let code = matrix::load(p)?;
            if code.field.q != field.q {
                return Err(Error::precondition(format!(
                    "auxiliary code is over GF({}), expected GF({})",
                    code.field.q, field.q
                ))
                .into());
            }
            code
        }
        None => LinearCode::full_space(Arc::clone(field), default_len),
    };
    ensure_distance(&mut aux, "auxiliary code")?;
    Ok(aux)
}

#[derive(Serialize)]
struct ConstructReport {
    base_spec: String,
    sub_specs: Vec<String>,
    record: ConstructionRecord,
}

fn spec_string(ctx: &FamilyCtx, defining: &[u64]) -> String {
    ctx.spec(defining.to_vec()).to_string()
}

fn subset(sub: &[u64], sup: &[u64]) -> bool {
    sub.iter().all(|r| sup.contains(r))
}

pub fn constructx(
    fam: &FamilyArgs,
    outer: &[String],
    inner: &[String],
    aux: Option<&Path>,
    optimize: bool,
    verify: bool,
    out: Output,
) -> anyhow::Result<String> {
    no_dot(out)?;
    let ctx = family(fam)?;
    let d_outer = defining_from_labels(&ctx, outer)?;
    let d_inner = defining_from_labels(&ctx, inner)?;
    if !subset(&d_outer, &d_inner) {
        return Err(Error::precondition(
            "inner defining set must contain the outer one (C2 must sit inside C1)",
        )
        .into());
    }
    let mut c1 = ctx.build_code(&d_outer)?;
    let mut c2 = ctx.build_code(&d_inner)?;
    ensure_distance(&mut c1, "C1")?;
    ensure_distance(&mut c2, "C2")?;
    let c3 = aux_code(aux, &ctx.field, c1.k() - c2.k())?;
    let glued = if optimize {
        eprintln!("optimizing the coset-to-auxiliary pairing");
        construction_x_optimized(&c1, &c2, &c3, None)?
    } else {
        construction_x(&c1, &c2, &c3)?
    };
    let mut record = ConstructionRecord::new(ConstructionKind::X, &[&c1, &c2, &c3], None, &glued);
    if verify {
        let exact = run_engine(&glued, Engine::Bz, None, None, None)?;
        record.verify(exact.record());
        if !record.is_consistent() {
            return Err(Error::internal("verified distance fell below the predicted bound").into());
        }
    }
    let report = ConstructReport {
        base_spec: spec_string(&ctx, &d_outer),
        sub_specs: vec![spec_string(&ctx, &d_inner)],
        record,
    };
    if out == Output::Json {
        return json(&report);
    }
    Ok(render_construction(&report))
}

#[allow(clippy::too_many_arguments)]
pub fn constructxx(
    fam: &FamilyArgs,
    base: &[String],
    sub1: &[String],
    sub2: &[String],
    aux1: Option<&Path>,
    aux2: Option<&Path>,
    verify: bool,
    out: Output,
) -> anyhow::Result<String> {
    no_dot(out)?;
    let ctx = family(fam)?;
    let d_base = defining_from_labels(&ctx, base)?;
    let d_sub1 = defining_from_labels(&ctx, sub1)?;
    let d_sub2 = defining_from_labels(&ctx, sub2)?;
    for (name, d) in [("sub1", &d_sub1), ("sub2", &d_sub2)] {
        if !subset(&d_base, d) {
            return Err(Error::precondition(format!(
                "{name} defining set must contain the base one (the subcodes sit inside C)"
            ))
            .into());
        }
    }
    let mut c = ctx.build_code(&d_base)?;
    let mut c1 = ctx.build_code(&d_sub1)?;
    let mut c2 = ctx.build_code(&d_sub2)?;
    ensure_distance(&mut c, "C")?;
    ensure_distance(&mut c1, "C1")?;
    ensure_distance(&mut c2, "C2")?;
    let a1 = aux_code(aux1, &ctx.field, c.k() - c1.k())?;
    let a2 = aux_code(aux2, &ctx.field, c.k() - c2.k())?;
    let glued = construction_xx(&c, &c1, &c2, &a1, &a2)?;
    let mut record =
        ConstructionRecord::new(ConstructionKind::XX, &[&c, &c1, &c2, &a1, &a2], None, &glued);
    if verify {
        let exact = run_engine(&glued, Engine::Bz, None, None, None)?;
        record.verify(exact.record());
        if !record.is_consistent() {
            return Err(Error::internal("verified distance fell below the predicted bound").into());
        }
    }
    let report = ConstructReport {
        base_spec: spec_string(&ctx, &d_base),
        sub_specs: vec![spec_string(&ctx, &d_sub1), spec_string(&ctx, &d_sub2)],
        record,
    };
    if out == Output::Json {
        return json(&report);
    }
    Ok(render_construction(&report))
}

fn params_str(p: &ccwb_core::constructions::CodeParams) -> String {
    match p.d {
        Some(DistanceRecord { value, status: DistStatus::Exact }) => {
            format!("[{},{},{}]", p.n, p.k, value)
        }
        Some(DistanceRecord { value, status: DistStatus::Lower }) => {
            format!("[{},{},>={}]", p.n, p.k, value)
        }
        Some(DistanceRecord { value, status: DistStatus::Upper }) => {
            format!("[{},{},<={}]", p.n, p.k, value)
        }
        Some(DistanceRecord { status: DistStatus::Unknown, .. }) | None => {
            format!("[{},{},?]", p.n, p.k)
        }
    }
}

fn render_construction(report: &ConstructReport) -> String {
    let rec = &report.record;
    let mut s = format!("{}:", rec.kind);
    for p in &rec.inputs {
        s += &format!(" {}", params_str(p));
    }
    s += &format!("\n  base spec: {}\n", report.base_spec);
    for spec in &report.sub_specs {
        s += &format!("  subcode spec: {spec}\n");
    }
    s += &format!("  output: {}\n", params_str(&rec.predicted));
    if let Some(v) = &rec.verified {
        s += &format!("  verified: {}\n", params_str(v));
    }
    s
}

// ---------------------------------------------------------------------------
// quantum
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct QuantumReport {
    classical: Option<ccwb_core::constructions::CodeParams>,
    spec: Option<String>,
    quantum: QuantumParams,
}

pub fn quantum(
    q: Option<u32>,
    n: Option<u64>,
    a: &str,
    defining: &[String],
    params: Option<&str>,
    out: Output,
) -> anyhow::Result<String> {
    no_dot(out)?;
    let report = match params {
        Some(triple) => {
            let parts: Vec<&str> = triple.split(',').map(str::trim).collect();
            if parts.len() != 2 && parts.len() != 3 {
                return Err(Error::parse(format!(
                    "--params wants \"n,k\" or \"n,k,d\", got {triple:?}"
                ))
                .into());
            }
            let num = |s: &str| -> Result<u64, Error> {
                s.parse().map_err(|_| Error::parse(format!("bad number {s:?} in --params")))
            };
            let (pn, pk) = (num(parts[0])? as usize, num(parts[1])? as usize);
            let d = parts.get(2).map(|s| num(s)).transpose()?.map(DistanceRecord::exact);
            QuantumReport {
                classical: Some(ccwb_core::constructions::CodeParams { n: pn, k: pk, d }),
                spec: None,
                quantum: QuantumParams::from_classical(pn, pk, d)?,
            }
        }
        None => {
            let fam = FamilyArgs {
                q: q.expect("clap enforces -q without --params"),
                n: n.expect("clap enforces -n without --params"),
                a: a.to_string(),
            };
            let ctx = family(&fam)?;
            let d = defining_from_labels(&ctx, defining)?;
            let spec = ctx.spec(d.clone());
            let mut code = ctx.build_code(&d)?;
            ensure_distance(&mut code, "the classical code")?;
            let qp = quantum_params(&code)?;
            QuantumReport {
                classical: Some(ccwb_core::constructions::CodeParams::of(&code)),
                spec: Some(spec.to_string()),
                quantum: qp,
            }
        }
    };
    if out == Output::Json {
        return json(&report);
    }
    let mut s = String::new();
    if let Some(c) = &report.classical {
        s += &format!("classical {}", params_str(c));
        if let Some(spec) = &report.spec {
            s += &format!("  (spec {spec}, Hermitian dual-containing)");
        }
        s += "\n";
    }
    s += &format!("quantum {}\n", report.quantum);
    Ok(s)
}

// ---------------------------------------------------------------------------
