//! Equivalence-pruned enumeration of constacyclic codes against a
//! best-known-codes table, with persisted, replayable discoveries.
//!
//! A [`SearchJob`] describes the family sweep; [`enumerate_specs`] expands
//! it into concrete [`CodeSpec`]s, visiting one shift constant per
//! monomial-equivalence class so no two streams are provably equivalent by
//! the classification criteria. [`run_search`] builds each code, computes
//! its distance with early exits keyed to the table, optionally chains
//! Construction X/XX over nested pairs and shortenings over winners, and
//! appends every code meeting or beating the table to an append-only JSONL
//! [`Store`] whose records rebuild verbatim through [`replay`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write as _};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constacode::{
    omega, partition_omega, CodeSpec, DistStatus, DistanceRecord, FamilyCtx, LinearCode,
};
use crate::constructions::{
    construction_x, construction_xx, shorten, ConstructionKind, ConstructionRecord,
};
use crate::distance::{bz_distance, BzOptions};
use crate::equivalence::classify;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldSpec};

// ---------------------------------------------------------------------------
// Job description
// ---------------------------------------------------------------------------

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchJob {
    pub q: u32,
    pub n_min: u64,
    pub n_max: u64,
    /// Shift constants to visit, in element notation ("1", "2", "w", ...).
    /// When absent, one representative per equivalence class is used.
    #[serde(default)]
    pub constants: Option<Vec<String>>,
    /// Largest number of cyclotomic cosets united into a defining set.
    pub max_cosets: usize,
    /// Dimension window (inclusive); absent bounds are unconstrained.
    #[serde(default)]
    pub k_min: Option<usize>,
    #[serde(default)]
    pub k_max: Option<usize>,
    /// Abort distance runs as soon as a code provably cannot meet the
    /// table value.
    #[serde(default = "default_true")]
    pub early_exit: bool,
    /// Cap on codewords enumerated per distance computation; exceeding it
    /// degrades the result to a lower bound.
    #[serde(default)]
    pub max_enumerated: Option<u64>,
    #[serde(default)]
    pub use_construction_x: bool,
    #[serde(default)]
    pub use_construction_xx: bool,
    /// Chain up to this many successive shortenings over persisted codes.
    #[serde(default)]
    pub shorten_depth: usize,
}

impl SearchJob {
    pub fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::precondition(format!(
                "empty length range {}..={}",
                self.n_min, self.n_max
            )));
        }
        if self.max_cosets == 0 {
            return Err(Error::precondition("max_cosets must be positive"));
        }
        if let (Some(lo), Some(hi)) = (self.k_min, self.k_max) {
            if lo > hi {
                return Err(Error::precondition(format!(
                    "empty dimension window {lo}..={hi}"
                )));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Best-known-codes table
// ---------------------------------------------------------------------------

/// Map (q, n, k) -> best known distance, loaded from CSV `q,n,k,d` with a
/// header line. Duplicate keys keep the maximum d.
#[derive(Clone, Debug, Default)]
pub struct BklcTable {
    map: HashMap<(u32, usize, usize), u64>,
}

impl BklcTable {
    pub fn empty() -> BklcTable {
        BklcTable::default()
    }

    pub fn load(path: &Path) -> Result<BklcTable> {
        let file = File::open(path)?;
        BklcTable::from_reader(BufReader::new(file))
    }

    pub fn from_reader(r: impl BufRead) -> Result<BklcTable> {
        let mut map = HashMap::new();
        for (idx, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if lineno == 1 {
                let header: Vec<&str> = trimmed.split(',').map(str::trim).collect();
                if header != ["q", "n", "k", "d"] {
                    return Err(Error::Table {
                        line: 1,
                        msg: format!("expected header q,n,k,d, found {trimmed:?}"),
                    });
                }
                continue;
            }
            let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(Error::Table {
                    line: lineno,
                    msg: format!("expected 4 comma-separated values, found {}", fields.len()),
                });
            }
            let parse = |s: &str, what: &str| -> Result<u64> {
                s.parse().map_err(|_| Error::Table {
                    line: lineno,
                    msg: format!("bad {what} value {s:?}"),
                })
            };
            let q = parse(fields[0], "q")? as u32;
            let n = parse(fields[1], "n")? as usize;
            let k = parse(fields[2], "k")? as usize;
            let d = parse(fields[3], "d")?;
            if d == 0 {
                return Err(Error::Table { line: lineno, msg: "d must be >= 1".into() });
            }
            let entry = map.entry((q, n, k)).or_insert(d);
            *entry = (*entry).max(d);
        }
        Ok(BklcTable { map })
    }

    pub fn get(&self, q: u32, n: usize, k: usize) -> Option<u64> {
        self.map.get(&(q, n, k)).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Store
// ---------------------------------------------------------------------------

/// How a persisted code was obtained; replays to the identical code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Lineage {
    /// A constacyclic code straight from its spec string.
    Base { spec: String },
    /// Construction X over nested family members with a full-space
    /// auxiliary of the given length.
    X { outer: String, inner: String, aux_len: usize },
    /// Construction XX over one family member and two subcodes of it,
    /// with full-space auxiliaries.
    XX { base: String, sub1: String, sub2: String, aux1_len: usize, aux2_len: usize },
    /// Shortening of another lineage at explicit positions.
    Shorten { parent: Box<Lineage>, positions: Vec<usize> },
}

impl Lineage {
    fn key(&self) -> String {
        serde_json::to_string(self).expect("lineage serializes")
    }
}

/// One persisted discovery.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchRecord {
    pub lineage: Lineage,
    pub q: u32,
    /// Shift constant of the originating family, in element notation.
    pub a: String,
    /// Defining set of the originating family member.
    pub defining_set: Vec<u64>,
    pub n: usize,
    pub k: usize,
    pub d: u64,
    pub d_status: DistStatus,
    pub constructions: Vec<ConstructionRecord>,
    /// Provably at least table + 1.
    pub record_breaking: bool,
    /// The table value this was compared against, if any.
    pub table_d: Option<u64>,
    /// No table entry existed for (q, n, k).
    pub low_confidence: bool,
    pub timestamp: u64,
    /// Codewords enumerated while computing the distance.
    pub cost_enumerated: u64,
    pub wall_ms: u64,
}

/// Append-only JSONL persistence; safe to re-open and extend.
pub struct Store {
    path: PathBuf,
}

impl Store {
    pub fn open(path: impl Into<PathBuf>) -> Result<Store> {
        let path = path.into();
        if !path.exists() {
            File::create(&path)?;
        }
        Ok(Store { path })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&self, rec: &SearchRecord) -> Result<()> {
        let mut f = OpenOptions::new().append(true).open(&self.path)?;
        writeln!(f, "{}", serde_json::to_string(rec)?)?;
        Ok(())
    }

    pub fn load(&self) -> Result<Vec<SearchRecord>> {
        let file = File::open(&self.path)?;
        let mut out = Vec::new();
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            out.push(serde_json::from_str(&line)?);
        }
        Ok(out)
    }

    /// Lineage keys already persisted, for resume-skipping.
    pub fn seen(&self) -> Result<HashSet<String>> {
        Ok(self.load()?.into_iter().map(|r| r.lineage.key()).collect())
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// One shift constant per monomial-equivalence class of GF(q)* at length
/// n: the member with the smallest discrete log, in increasing order.
pub fn representative_constants(q: u32, n: u64) -> Result<Vec<Fe>> {
    let graph = classify(q, n)?;
    let field = FieldSpec::of_order(q)?;
    let mut reps: Vec<(u64, Fe)> = graph
        .classes
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|&a| (field.discrete_log(a).expect("nonzero"), a))
                .min()
                .expect("classes are nonempty")
        })
        .collect();
    reps.sort_unstable();
    Ok(reps.into_iter().map(|(_, a)| a).collect())
}

/// Canonical form of a defining set under the Frobenius map r -> qr
/// (mod tn): the lexicographically smallest orbit member. Unions of
/// q-cyclotomic cosets are fixed points, so for sets produced by
/// [`enumerate_specs`] this is the identity; it is kept as a safety net
/// for externally supplied sets.
pub fn frobenius_canonical(tn: u64, q: u32, defining: &[u64]) -> Vec<u64> {
    let mut start: Vec<u64> = defining.to_vec();
    start.sort_unstable();
    if num_integer::gcd(tn, q as u64) != 1 {
        return start; // the map is not a permutation; leave the set alone
    }
    let mut best = start.clone();
    let mut cur = start.clone();
    loop {
        cur = cur.iter().map(|&r| r * q as u64 % tn).collect();
        cur.sort_unstable();
        if cur == start {
            break;
        }
        if cur < best {
            best = cur.clone();
        }
    }
    best
}

/// Expand a job into concrete code specs: every union of at most
/// `max_cosets` cyclotomic cosets whose dimension lands in the window,
/// over the job's constants (or class representatives), in a
/// deterministic order (by n, then constant, then coset-mask).
pub fn enumerate_specs(job: &SearchJob) -> Result<Vec<CodeSpec>> {
    job.validate()?;
    let field = Arc::new(FieldSpec::of_order(job.q)?);
    let mut out = Vec::new();
    for n in job.n_min..=job.n_max {
        if num_integer::gcd(n, job.q as u64) != 1 {
            continue;
        }
        let constants: Vec<Fe> = match &job.constants {
            Some(list) => list
                .iter()
                .map(|s| field.parse_elem(s))
                .collect::<Result<Vec<_>>>()?,
            None => representative_constants(job.q, n)?,
        };
        for a in constants {
            if a.is_zero() {
                return Err(Error::precondition("shift constant must be nonzero"));
            }
            let om = omega(&field, n, a)?;
            let cosets = partition_omega(&om);
            let m = cosets.len();
            if m > 30 {
                return Err(Error::precondition(format!(
                    "family (q={}, n={n}) has {m} cosets; enumeration refused",
                    job.q
                )));
            }
            let a_exp = field.discrete_log(a).expect("nonzero");
            for mask in 0u32..1 << m {
                if (mask.count_ones() as usize) > job.max_cosets {
                    continue;
                }
                let mut defining = Vec::new();
                for (i, c) in cosets.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        defining.extend_from_slice(&c.members);
                    }
                }
                defining.sort_unstable();
                let canon = frobenius_canonical(om.tn, job.q, &defining);
                if canon != defining {
                    continue; // never fires for coset unions; see above
                }
                let k = n as usize - defining.len();
                if job.k_min.is_some_and(|lo| k < lo) || job.k_max.is_some_and(|hi| k > hi) {
                    continue;
                }
                out.push(CodeSpec::new(job.q, n, a_exp, defining));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Search driver
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SearchSummary {
    /// Codes whose distance computation was started.
    pub visited: u64,
    /// Codes discarded by the table early-exit.
    pub pruned: u64,
    /// Codes persisted (meeting or beating the table).
    pub persisted: u64,
    /// Persisted codes provably beating the table.
    pub record_breaking: u64,
    /// Specs skipped because the store already held their lineage.
    pub resumed: u64,
}

struct Evaluated {
    code: LinearCode,
    lineage: Lineage,
    spec: CodeSpec,
    constructions: Vec<ConstructionRecord>,
}

struct SearchCtx<'a> {
    job: &'a SearchJob,
    table: &'a BklcTable,
    store: Mutex<&'a Store>,
    seen: HashSet<String>,
    visited: AtomicU64,
    pruned: AtomicU64,
    persisted: AtomicU64,
    record_breaking: AtomicU64,
    resumed: AtomicU64,
}

impl SearchCtx<'_> {
    /// Compute the distance (with table-keyed early exits), persist when
    /// the code meets or beats the table, and hand back the exact-distance
    /// code for further chaining.
    fn process(&self, mut item: Evaluated) -> Result<Option<Evaluated>> {
        if item.code.k() == 0 {
            return Ok(None);
        }
        if self.seen.contains(&item.lineage.key()) {
            self.resumed.fetch_add(1, Ordering::Relaxed);
            return Ok(None);
        }
        let (n, k) = (item.code.n, item.code.k());
        let table_d = self.table.get(self.job.q, n, k);
        self.visited.fetch_add(1, Ordering::Relaxed);
        let opts = BzOptions {
            abort_when_ub_at_most: match (self.job.early_exit, table_d) {
                (true, Some(t)) => Some(t - 1),
                _ => None,
            },
            max_enumerated: self.job.max_enumerated,
            ..Default::default()
        };
        let started = Instant::now();
        let result = bz_distance(&item.code, &opts)?;
        let wall_ms = started.elapsed().as_millis() as u64;

        let meets = match (result.status, table_d) {
            (DistStatus::Upper, _) => false,
            (DistStatus::Exact | DistStatus::Lower, Some(t)) => result.value >= t,
            (DistStatus::Exact, None) => true,
            _ => false,
        };
        if !meets {
            self.pruned.fetch_add(1, Ordering::Relaxed);
            return Ok(None);
        }
        let breaking = matches!(result.status, DistStatus::Exact | DistStatus::Lower)
            && table_d.is_some_and(|t| result.value >= t + 1);

        item.code.distance = Some(result.record());
        let field = &item.code.field;
        let rec = SearchRecord {
            lineage: item.lineage.clone(),
            q: self.job.q,
            a: field.fmt_elem(field.xi_pow(item.spec.a_exp as i64)),
            defining_set: item.spec.defining.clone(),
            n,
            k,
            d: result.value,
            d_status: result.status,
            constructions: item.constructions.clone(),
            record_breaking: breaking,
            table_d,
            low_confidence: table_d.is_none(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            cost_enumerated: result.enumerated,
            wall_ms,
        };
        self.store.lock().expect("store lock").append(&rec)?;
        self.persisted.fetch_add(1, Ordering::Relaxed);
        if breaking {
            self.record_breaking.fetch_add(1, Ordering::Relaxed);
        }
        if result.status == DistStatus::Exact {
            Ok(Some(item))
        } else {
            Ok(None)
        }
    }

    /// Shorten-chain a winner, persisting each level that still meets the
    /// table.
    fn shorten_chain(&self, winner: &Evaluated) -> Result<()> {
        let mut current = winner.code.clone();
        let mut lineage = winner.lineage.clone();
        for _ in 0..self.job.shorten_depth {
            if current.k() <= 1 || current.n <= 1 {
                break;
            }
            let shortened = shorten(&current, &[0])?;
            lineage = Lineage::Shorten { parent: Box::new(lineage), positions: vec![0] };
            let mut record = ConstructionRecord::new(
                ConstructionKind::Shorten,
                &[&current],
                Some("positions [0]".into()),
                &shortened,
            );
            record.verified = None;
            let mut constructions = winner.constructions.clone();
            constructions.push(record);
            let item = Evaluated {
                code: shortened.clone(),
                lineage: lineage.clone(),
                spec: winner.spec.clone(),
                constructions,
            };
            match self.process(item)? {
                Some(_) => current = shortened,
                None => break,
            }
        }
        Ok(())
    }
}

/// Run a search job against a table, persisting into `store`. Returns the
/// tally of visited/pruned/persisted codes. Safe to re-run after an
/// interruption: already-persisted lineages are skipped.
pub fn run_search(job: &SearchJob, table: &BklcTable, store: &Store) -> Result<SearchSummary> {
    job.validate()?;
    let specs = enumerate_specs(job)?;
    let sctx = SearchCtx {
        job,
        table,
        store: Mutex::new(store),
        seen: store.seen()?,
        visited: AtomicU64::new(0),
        pruned: AtomicU64::new(0),
        persisted: AtomicU64::new(0),
        record_breaking: AtomicU64::new(0),
        resumed: AtomicU64::new(0),
    };

    // Group specs by family so the root-fixing work is shared.
    let mut groups: BTreeMap<(u64, u64), Vec<CodeSpec>> = BTreeMap::new();
    for spec in specs {
        groups.entry((spec.n, spec.a_exp)).or_default().push(spec);
    }

    for group in groups.values() {
        let ctx = FamilyCtx::from_spec(&group[0])?;

        // Base codes, distances in parallel.
        let winners: Vec<Evaluated> = group
            .par_iter()
            .map(|spec| {
                let code = ctx.build_code(&spec.defining)?;
                let item = Evaluated {
                    code,
                    lineage: Lineage::Base { spec: spec.to_string() },
                    spec: spec.clone(),
                    constructions: Vec::new(),
                };
                sctx.process(item)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();

        for winner in &winners {
            sctx.shorten_chain(winner)?;
        }

        if job.use_construction_x {
            run_x_chain(&sctx, &ctx, &winners)?;
        }
        if job.use_construction_xx {
            run_xx_chain(&sctx, &ctx, &winners)?;
        }
    }

    Ok(SearchSummary {
        visited: sctx.visited.load(Ordering::Relaxed),
        pruned: sctx.pruned.load(Ordering::Relaxed),
        persisted: sctx.persisted.load(Ordering::Relaxed),
        record_breaking: sctx.record_breaking.load(Ordering::Relaxed),
        resumed: sctx.resumed.load(Ordering::Relaxed),
    })
}

/// Nesting inside one family is defining-set containment (equivalently,
/// divisibility of the generator polynomials).
fn nested(inner_of_larger: &CodeSpec, larger: &CodeSpec) -> bool {
    larger.defining.iter().all(|r| inner_of_larger.defining.contains(r))
        && inner_of_larger.defining.len() > larger.defining.len()
}

fn run_x_chain(sctx: &SearchCtx<'_>, ctx: &FamilyCtx, winners: &[Evaluated]) -> Result<()> {
    let field = &ctx.field;
    for outer in winners {
        for inner in winners {
            if !nested(&inner.spec, &outer.spec) {
                continue;
            }
            let k3 = outer.code.k() - inner.code.k();
            if k3 == 0 || k3 > 4 {
                continue;
            }
            debug_assert!(outer.code.contains_code(&inner.code));
            let mut aux = LinearCode::full_space(Arc::clone(field), k3);
            aux.distance = Some(DistanceRecord::exact(1));
            let glued = construction_x(&outer.code, &inner.code, &aux)?;
            let record = ConstructionRecord::new(
                ConstructionKind::X,
                &[&outer.code, &inner.code, &aux],
                None,
                &glued,
            );
            let item = Evaluated {
                code: glued,
                lineage: Lineage::X {
                    outer: outer.spec.to_string(),
                    inner: inner.spec.to_string(),
                    aux_len: k3,
                },
                spec: outer.spec.clone(),
                constructions: vec![record],
            };
            if let Some(winner) = sctx.process(item)? {
                sctx.shorten_chain(&winner)?;
            }
        }
    }
    Ok(())
}

fn run_xx_chain(sctx: &SearchCtx<'_>, ctx: &FamilyCtx, winners: &[Evaluated]) -> Result<()> {
    let field = &ctx.field;
    for base in winners {
        for (i, sub1) in winners.iter().enumerate() {
            if !nested(&sub1.spec, &base.spec) {
                continue;
            }
            let a1 = base.code.k() - sub1.code.k();
            if a1 == 0 || a1 > 2 {
                continue;
            }
            for sub2 in winners.iter().skip(i + 1) {
                if !nested(&sub2.spec, &base.spec) {
                    continue;
                }
                let a2 = base.code.k() - sub2.code.k();
                if a2 == 0 || a2 > 2 {
                    continue;
                }
                let mut aux1 = LinearCode::full_space(Arc::clone(field), a1);
                aux1.distance = Some(DistanceRecord::exact(1));
                let mut aux2 = LinearCode::full_space(Arc::clone(field), a2);
                aux2.distance = Some(DistanceRecord::exact(1));
                let glued =
                    construction_xx(&base.code, &sub1.code, &sub2.code, &aux1, &aux2)?;
                let record = ConstructionRecord::new(
                    ConstructionKind::XX,
                    &[&base.code, &sub1.code, &sub2.code, &aux1, &aux2],
                    None,
                    &glued,
                );
                let item = Evaluated {
                    code: glued,
                    lineage: Lineage::XX {
                        base: base.spec.to_string(),
                        sub1: sub1.spec.to_string(),
                        sub2: sub2.spec.to_string(),
                        aux1_len: a1,
                        aux2_len: a2,
                    },
                    spec: base.spec.clone(),
                    constructions: vec![record],
                };
                if let Some(winner) = sctx.process(item)? {
                    sctx.shorten_chain(&winner)?;
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

/// Rebuild the code a lineage describes; persisted records replay to
/// identical parameters.
pub fn replay(lineage: &Lineage) -> Result<LinearCode> {
    match lineage {
        Lineage::Base { spec } => {
            let spec: CodeSpec = spec.parse()?;
            let ctx = FamilyCtx::from_spec(&spec)?;
            ctx.build_code(&spec.defining)
        }
        Lineage::X { outer, inner, aux_len } => {
            let outer = replay(&Lineage::Base { spec: outer.clone() })?;
            let inner = replay(&Lineage::Base { spec: inner.clone() })?;
            let aux = LinearCode::full_space(Arc::clone(&outer.field), *aux_len);
            construction_x(&outer, &inner, &aux)
        }
        Lineage::XX { base, sub1, sub2, aux1_len, aux2_len } => {
            let base = replay(&Lineage::Base { spec: base.clone() })?;
            let sub1 = replay(&Lineage::Base { spec: sub1.clone() })?;
            let sub2 = replay(&Lineage::Base { spec: sub2.clone() })?;
            let aux1 = LinearCode::full_space(Arc::clone(&base.field), *aux1_len);
            let aux2 = LinearCode::full_space(Arc::clone(&base.field), *aux2_len);
            construction_xx(&base, &sub1, &sub2, &aux1, &aux2)
        }
        Lineage::Shorten { parent, positions } => {
            let parent = replay(parent)?;
            shorten(&parent, positions)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::brute_distance;
    use std::io::Cursor;

    fn job(q: u32, n: u64) -> SearchJob {
        SearchJob {
            q,
            n_min: n,
            n_max: n,
            constants: None,
            max_cosets: 3,
            k_min: None,
            k_max: None,
            early_exit: true,
            max_enumerated: None,
            use_construction_x: false,
            use_construction_xx: false,
            shorten_depth: 0,
        }
    }

    #[test]
    fn bklc_table_parsing() {
        let csv = "q,n,k,d\n3,11,6,4\n4,42,27,8\n3,11,6,5\n\n3,10,8,2\n";
        let t = BklcTable::from_reader(Cursor::new(csv)).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.get(3, 11, 6), Some(5)); // duplicate keeps max
        assert_eq!(t.get(4, 42, 27), Some(8));
        assert_eq!(t.get(5, 1, 1), None);

        // Malformed rows carry line numbers.
        match BklcTable::from_reader(Cursor::new("q,n,k,d\n3,11,6\n")) {
            Err(Error::Table { line: 2, .. }) => {}
            other => panic!("expected table error on line 2, got {other:?}"),
        }
        match BklcTable::from_reader(Cursor::new("q,n,k,d\n3,11,six,4\n")) {
            Err(Error::Table { line: 2, .. }) => {}
            other => panic!("expected table error, got {other:?}"),
        }
        match BklcTable::from_reader(Cursor::new("n,q,k,d\n")) {
            Err(Error::Table { line: 1, .. }) => {}
            other => panic!("expected header rejection, got {other:?}"),
        }
        match BklcTable::from_reader(Cursor::new("q,n,k,d\n3,11,6,0\n")) {
            Err(Error::Table { line: 2, .. }) => {}
            other => panic!("expected d >= 1 rejection, got {other:?}"),
        }

        // Empty input -> empty table.
        let t = BklcTable::from_reader(Cursor::new("")).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn representative_constants_examples() {
        let f5 = FieldSpec::of_order(5).unwrap();
        let reps = representative_constants(5, 63).unwrap();
        assert_eq!(reps, vec![Fe(1)]);

        let reps = representative_constants(5, 14).unwrap();
        assert_eq!(reps, vec![Fe(1), Fe(2)]);
        assert_eq!(f5.discrete_log(Fe(2)), Some(1));

        let reps = representative_constants(3, 10).unwrap();
        assert_eq!(reps, vec![Fe(1), Fe(2)]);
    }

    #[test]
    fn enumerate_specs_counts() {
        // (3, 10, a=2): three cosets, unions of <= 3 of them = 8 specs.
        let mut j = job(3, 10);
        j.constants = Some(vec!["2".into()]);
        let specs = enumerate_specs(&j).unwrap();
        assert_eq!(specs.len(), 8);
        // Deterministic and duplicate-free.
        let strings: Vec<String> = specs.iter().map(|s| s.to_string()).collect();
        let mut dedup = strings.clone();
        dedup.dedup();
        assert_eq!(strings, dedup);

        // Dimension window can empty the stream.
        j.k_min = Some(100);
        assert!(enumerate_specs(&j).unwrap().is_empty());

        // (4, 39, w): the 2-coset set Z(10) ∪ Z(19) is present.
        let mut j = job(4, 39);
        j.constants = Some(vec!["w".into()]);
        j.max_cosets = 2;
        let specs = enumerate_specs(&j).unwrap();
        let field = FieldSpec::of_order(4).unwrap();
        let a = field.parse_elem("w").unwrap();
        let ctx = FamilyCtx::new(Arc::new(FieldSpec::of_order(4).unwrap()), 39, a).unwrap();
        let want = ctx.close_under_cosets(&[10, 19]).unwrap();
        assert!(specs.iter().any(|s| s.defining == want));
    }

    #[test]
    fn representative_pruning_ratio() {
        // q=5, n=63: one class of four constants, so the representative
        // stream is a quarter of the all-constants stream.
        let mut j = job(5, 63);
        j.max_cosets = 1;
        let pruned = enumerate_specs(&j).unwrap();
        j.constants = Some(vec!["1".into(), "2".into(), "3".into(), "4".into()]);
        let full = enumerate_specs(&j).unwrap();
        assert_eq!(full.len(), 4 * pruned.len());
    }

    #[test]
    fn frobenius_fixes_coset_unions() {
        let field = Arc::new(FieldSpec::of_order(4).unwrap());
        for n in [5u64, 7, 9, 15] {
            for a in field.elements().skip(1) {
                let om = omega(&field, n, a).unwrap();
                let cosets = partition_omega(&om);
                for mask in 0u32..1 << cosets.len().min(5) {
                    let mut d = Vec::new();
                    for (i, c) in cosets.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            d.extend_from_slice(&c.members);
                        }
                    }
                    d.sort_unstable();
                    assert_eq!(frobenius_canonical(om.tn, 4, &d), d);
                }
            }
        }
    }

    #[test]
    fn store_round_trip_and_resume() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path().join("out.jsonl")).unwrap();

        // Golay hunt: table says the best known [11,6] ternary code has
        // d=4; the search must beat it with the d=5 cyclic code.
        let j = job(3, 11);
        let table =
            BklcTable::from_reader(Cursor::new("q,n,k,d\n3,11,6,4\n")).unwrap();
        let summary = run_search(&j, &table, &store).unwrap();
        assert!(summary.record_breaking >= 1, "{summary:?}");
        let records = store.load().unwrap();
        let golay = records
            .iter()
            .find(|r| r.n == 11 && r.k == 6)
            .expect("the [11,6,5] code is persisted");
        assert_eq!(golay.d, 5);
        assert_eq!(golay.d_status, DistStatus::Exact);
        assert!(golay.record_breaking);
        assert_eq!(golay.table_d, Some(4));
        assert!(!golay.low_confidence);

        // Replays to the same parameters and distance.
        let rebuilt = replay(&golay.lineage).unwrap();
        assert_eq!((rebuilt.n, rebuilt.k()), (golay.n, golay.k));
        assert_eq!(brute_distance(&rebuilt, None).unwrap().value, golay.d);

        // Re-running skips all persisted lineages.
        let before = store.load().unwrap().len();
        let summary2 = run_search(&j, &table, &store).unwrap();
        assert_eq!(summary2.persisted, 0);
        assert!(summary2.resumed >= summary.persisted);
        assert_eq!(store.load().unwrap().len(), before);
    }

    #[test]
    fn inflated_table_yields_no_records() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path().join("out.jsonl")).unwrap();
        let j = job(3, 10);
        // Every (k, d) pair far beyond reach.
        let mut csv = String::from("q,n,k,d\n");
        for k in 1..=10 {
            csv.push_str(&format!("3,10,{k},99\n"));
        }
        let table = BklcTable::from_reader(Cursor::new(csv)).unwrap();
        let summary = run_search(&j, &table, &store).unwrap();
        assert_eq!(summary.persisted, 0);
        assert_eq!(summary.record_breaking, 0);
        assert!(summary.visited > 0);
        assert_eq!(summary.pruned, summary.visited);
        assert!(store.load().unwrap().is_empty());
    }

    #[test]
    fn early_exit_does_not_change_outputs() {
        let table = BklcTable::from_reader(Cursor::new(
            "q,n,k,d\n3,10,8,2\n3,10,6,2\n3,10,4,4\n3,10,2,6\n3,10,1,10\n3,10,5,4\n3,10,9,2\n3,10,10,1\n3,10,3,6\n3,10,7,2\n",
        ))
        .unwrap();
        let mut outputs = Vec::new();
        for early in [true, false] {
            let dir = tempfile::tempdir().unwrap();
            let store = Store::open(dir.path().join("out.jsonl")).unwrap();
            let mut j = job(3, 10);
            j.early_exit = early;
            run_search(&j, &table, &store).unwrap();
            let mut recs: Vec<(String, u64, bool)> = store
                .load()
                .unwrap()
                .into_iter()
                .map(|r| (r.lineage.key(), r.d, r.record_breaking))
                .collect();
            recs.sort();
            outputs.push(recs);
        }
        assert_eq!(outputs[0], outputs[1]);
        assert!(!outputs[0].is_empty());
    }

    #[test]
    fn construction_chains_produce_replayable_records() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path().join("out.jsonl")).unwrap();
        let mut j = job(4, 5);
        j.use_construction_x = true;
        j.use_construction_xx = true;
        j.shorten_depth = 1;
        // Empty table: every exact distance persists as low-confidence.
        let table = BklcTable::empty();
        let summary = run_search(&j, &table, &store).unwrap();
        assert!(summary.persisted > 0);
        let records = store.load().unwrap();
        assert!(records.iter().all(|r| r.low_confidence));

        let mut kinds = HashSet::new();
        for rec in &records {
            match &rec.lineage {
                Lineage::Base { .. } => kinds.insert("base"),
                Lineage::X { .. } => kinds.insert("x"),
                Lineage::XX { .. } => kinds.insert("xx"),
                Lineage::Shorten { .. } => kinds.insert("shorten"),
            };
            let rebuilt = replay(&rec.lineage).unwrap();
            assert_eq!((rebuilt.n, rebuilt.k()), (rec.n, rec.k), "{:?}", rec.lineage);
            let d = brute_distance(&rebuilt, None).unwrap();
            assert_eq!(d.value, rec.d, "{:?}", rec.lineage);
            if !matches!(rec.lineage, Lineage::Base { .. }) {
                assert!(!rec.constructions.is_empty());
                assert!(rec.constructions.iter().all(|c| c.is_consistent()));
            }
        }
        assert!(kinds.contains("base"));
        assert!(kinds.contains("x"));
        assert!(kinds.contains("xx"));
        assert!(kinds.contains("shorten"));
    }

    #[test]
    fn job_validation() {
        let mut j = job(3, 10);
        j.n_min = 11;
        assert!(j.validate().is_err());
        let mut j = job(3, 10);
        j.max_cosets = 0;
        assert!(j.validate().is_err());
        let mut j = job(3, 10);
        j.k_min = Some(5);
        j.k_max = Some(4);
        assert!(j.validate().is_err());

        // Job serialization round-trips with defaults.
        let text = r#"{"q":4,"n_min":39,"n_max":39,"max_cosets":3}"#;
        let parsed: SearchJob = serde_json::from_str(text).unwrap();
        assert!(parsed.early_exit);
        assert!(parsed.constants.is_none());
        assert_eq!(parsed.shorten_depth, 0);
    }
}
