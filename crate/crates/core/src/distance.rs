//! Minimum distance and weight enumerators.
//!
//! Two engines share one enumeration core:
//!
//! * [`brute_distance`] walks all q^k - 1 nonzero messages (refusing when
//!   that exceeds its budget);
//! * [`bz_distance`] runs the information-set lower-bound method: build a
//!   sequence of generator matrices in standard form on greedily disjoint
//!   information sets, enumerate messages of bounded support weight on
//!   each, and stop once the proven lower bound meets the best codeword
//!   found. Early exits: a `target` the caller only needs the bound to
//!   reach, an `abort_when_ub_at_most` threshold for search pruning, and a
//!   codeword budget that degrades the answer to a lower bound instead of
//!   running forever.
//!
//! Codewords are held packed: bit-planes for characteristic 2 (addition is
//! XOR, weight is a popcount of OR-ed planes), byte-per-coordinate digit
//! planes with SWAR modular reduction for odd primes up to 113, and a
//! plain table-driven fallback elsewhere. All enumeration is incremental —
//! one packed row addition per visited codeword.

use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::constacode::{DistStatus, DistanceRecord, LinearCode};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldSpec};
use crate::mat::Mat;

/// Default enumeration budget: refuse brute force beyond 2^26 codewords.
pub const DEFAULT_BRUTE_BUDGET: u64 = 1 << 26;

/// Default enumeration cap for [`low_weight_words`].
pub const DEFAULT_LOW_WEIGHT_BUDGET: u128 = 1 << 36;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DistanceResult {
    pub value: u64,
    pub status: DistStatus,
    /// Codewords visited.
    pub enumerated: u64,
    /// Information sets constructed (zero for brute force).
    pub info_sets: u64,
}

impl DistanceResult {
    pub fn record(&self) -> DistanceRecord {
        DistanceRecord { value: self.value, status: self.status }
    }
}

/// Options for [`bz_distance`].
#[derive(Clone, Debug, Default)]
pub struct BzOptions {
    /// Stop as soon as the proven lower bound reaches this value; the
    /// result then has status `Lower` (unless exactness arrived first).
    pub target: Option<u64>,
    /// Stop as soon as some codeword of weight <= this is found; the result
    /// then has status `Upper`. Used by searches to discard codes that
    /// cannot beat a table entry.
    pub abort_when_ub_at_most: Option<u64>,
    /// Stop after visiting this many codewords, returning the bound proven
    /// so far with status `Lower`.
    pub max_enumerated: Option<u64>,
    /// Append one JSON object per completed enumeration round to this file:
    /// {"block":..., "best":..., "lower":..., "ts":...}.
    pub progress: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// Packed codeword representations
// ---------------------------------------------------------------------------

/// A packed-row representation: how to encode a codeword, add rows, and
/// count nonzero coordinates.
trait Rep: Sync {
    type Row: Clone + Send + Sync;

    fn pack(&self, row: &[Fe]) -> Self::Row;
    fn add_assign(&self, dst: &mut Self::Row, src: &Self::Row);
    fn weight(&self, row: &Self::Row) -> u32;
}

/// Characteristic 2: one bit-plane per base-2 digit of the coefficient.
struct Char2Rep {
    m: usize,
    words: usize,
    n: usize,
}

impl Char2Rep {
    fn new(field: &FieldSpec, n: usize) -> Char2Rep {
        Char2Rep { m: field.m as usize, words: n.div_ceil(64).max(1), n }
    }
}

impl Rep for Char2Rep {
    type Row = Vec<u64>;

    fn pack(&self, row: &[Fe]) -> Vec<u64> {
        debug_assert_eq!(row.len(), self.n);
        let mut out = vec![0u64; self.m * self.words];
        for (j, v) in row.iter().enumerate() {
            for d in 0..self.m {
                if v.0 >> d & 1 == 1 {
                    out[d * self.words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        out
    }

    #[inline]
    fn add_assign(&self, dst: &mut Vec<u64>, src: &Vec<u64>) {
        for (a, b) in dst.iter_mut().zip(src) {
            *a ^= b;
        }
    }

    #[inline]
    fn weight(&self, row: &Vec<u64>) -> u32 {
        let mut total = 0u32;
        for w in 0..self.words {
            let mut acc = row[w];
            for d in 1..self.m {
                acc |= row[d * self.words + w];
            }
            total += acc.count_ones();
        }
        total
    }
}

/// Odd characteristic p <= 113: one byte per coordinate per digit plane,
/// added with SWAR arithmetic (no byte ever exceeds 2(p-1) < 256, and the
/// conditional subtraction of p is branch-free).
struct PrimeSwarRep {
    p: u64,
    m: usize,
    words: usize,
    n: usize,
    /// 0x(128-p) replicated over all bytes: adding it sets a byte's high bit
    /// exactly when the byte is >= p.
    ge_p: u64,
}

const REP_01: u64 = 0x0101_0101_0101_0101;
const REP_7F: u64 = 0x7f7f_7f7f_7f7f_7f7f;
const REP_80: u64 = 0x8080_8080_8080_8080;

impl PrimeSwarRep {
    fn new(field: &FieldSpec, n: usize) -> PrimeSwarRep {
        debug_assert!(field.p % 2 == 1 && field.p <= 113);
        PrimeSwarRep {
            p: field.p as u64,
            m: field.m as usize,
            words: n.div_ceil(8).max(1),
            n,
            ge_p: REP_01 * (128 - field.p as u64),
        }
    }
}

impl Rep for PrimeSwarRep {
    type Row = Vec<u64>;

    fn pack(&self, row: &[Fe]) -> Vec<u64> {
        debug_assert_eq!(row.len(), self.n);
        let mut out = vec![0u64; self.m * self.words];
        for (j, v) in row.iter().enumerate() {
            let mut val = v.0 as u64;
            for d in 0..self.m {
                let digit = val % self.p;
                val /= self.p;
                out[d * self.words + j / 8] |= digit << (8 * (j % 8));
            }
        }
        out
    }

    #[inline]
    fn add_assign(&self, dst: &mut Vec<u64>, src: &Vec<u64>) {
        for (a, b) in dst.iter_mut().zip(src) {
            let t = *a + *b; // bytes <= 2(p-1) <= 224: no inter-byte carry
            let over = (t + self.ge_p) & REP_80; // high bit set where byte >= p
            *a = t - (over >> 7) * self.p;
        }
    }

    #[inline]
    fn weight(&self, row: &Vec<u64>) -> u32 {
        let mut total = 0u32;
        for w in 0..self.words {
            let mut nz = 0u64;
            for d in 0..self.m {
                let word = row[d * self.words + w];
                nz |= (word + REP_7F) & REP_80; // high bit set where byte != 0
            }
            total += nz.count_ones();
        }
        total
    }
}

/// Fallback for large prime characteristic: one u16 per coordinate, added
/// through the field's tables.
struct GenericRep {
    field: std::sync::Arc<FieldSpec>,
    n: usize,
}

impl Rep for GenericRep {
    type Row = Vec<u16>;

    fn pack(&self, row: &[Fe]) -> Vec<u16> {
        debug_assert_eq!(row.len(), self.n);
        row.iter().map(|v| v.0 as u16).collect()
    }

    #[inline]
    fn add_assign(&self, dst: &mut Vec<u16>, src: &Vec<u16>) {
        for (a, b) in dst.iter_mut().zip(src) {
            *a = self.field.add(&Fe(*a as u32), &Fe(*b as u32)).0 as u16;
        }
    }

    #[inline]
    fn weight(&self, row: &Vec<u16>) -> u32 {
        row.iter().filter(|&&v| v != 0).count() as u32
    }
}

/// Generator rows pre-scaled by every nonzero field element, in the packed
/// representation; the enumeration engines only ever add these.
struct PackedGen<R: Rep> {
    /// scaled[i][c-1] = Fe(c) * row_i.
    scaled: Vec<Vec<R::Row>>,
    zero: R::Row,
    k: usize,
    q: u32,
    /// increment_delta[v] = packed delta element taking digit value v to
    /// v+1 in the enumeration order (v in 0..q-1).
    increment_delta: Vec<Fe>,
    /// Delta taking digit value q-1 back to 0.
    wrap_delta: Fe,
}

impl<R: Rep> PackedGen<R> {
    fn new(rep: &R, field: &FieldSpec, gen: &Mat, n: usize) -> PackedGen<R> {
        let q = field.q;
        let scaled: Vec<Vec<R::Row>> = gen
            .rows_iter()
            .map(|row| {
                (1..q)
                    .map(|c| {
                        let scaled_row: Vec<Fe> =
                            row.iter().map(|v| field.mul(&Fe(c), v)).collect();
                        rep.pack(&scaled_row)
                    })
                    .collect()
            })
            .collect();
        let zero = rep.pack(&vec![Fe::ZERO; n]);
        let increment_delta: Vec<Fe> = (0..q - 1)
            .map(|v| field.sub(&Fe(v + 1), &Fe(v)))
            .collect();
        let wrap_delta = field.neg(&Fe(q - 1));
        PackedGen { scaled, zero, k: gen.rows, q, increment_delta, wrap_delta }
    }

    /// The packed row c * row_i for a nonzero scalar c.
    #[inline]
    fn row(&self, i: usize, c: Fe) -> &R::Row {
        &self.scaled[i][c.0 as usize - 1]
    }
}

fn with_rep<T>(
    code: &LinearCode,
    f: impl FnOnce(&dyn RepDispatch) -> T,
) -> T {
    let field = &code.field;
    if field.p == 2 {
        let rep = Char2Rep::new(field, code.n);
        f(&RepHolder { rep, code })
    } else if field.p <= 113 {
        let rep = PrimeSwarRep::new(field, code.n);
        f(&RepHolder { rep, code })
    } else {
        let rep = GenericRep { field: std::sync::Arc::clone(field), n: code.n };
        f(&RepHolder { rep, code })
    }
}

/// Object-safe bridge: the engines are generic over `Rep`, the public
/// functions dispatch once per call through this trait.
trait RepDispatch {
    fn brute(&self, budget: u64) -> Result<DistanceResult>;
    fn bz(&self, opts: &BzOptions) -> Result<DistanceResult>;
    fn enumerate_weights(&self) -> Vec<u128>;
    fn low_weight(&self, wmax: usize) -> Vec<Vec<Fe>>;
}

struct RepHolder<'a, R: Rep> {
    rep: R,
    code: &'a LinearCode,
}

impl<R: Rep> RepDispatch for RepHolder<'_, R> {
    fn brute(&self, budget: u64) -> Result<DistanceResult> {
        brute_impl(&self.rep, self.code, budget)
    }

    fn bz(&self, opts: &BzOptions) -> Result<DistanceResult> {
        bz_impl(&self.rep, self.code, opts)
    }

    fn enumerate_weights(&self) -> Vec<u128> {
        enumerate_weights_impl(&self.rep, self.code)
    }

    fn low_weight(&self, wmax: usize) -> Vec<Vec<Fe>> {
        low_weight_impl(&self.rep, self.code, wmax)
    }
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

/// Exact minimum distance by enumerating every nonzero codeword. Refuses
/// when q^k exceeds the budget (default 2^26); use [`bz_distance`] instead.
pub fn brute_distance(code: &LinearCode, budget: Option<u64>) -> Result<DistanceResult> {
    let budget = budget.unwrap_or(DEFAULT_BRUTE_BUDGET);
    if code.k() == 0 {
        // No nonzero codeword: report the conventional sentinel n + 1.
        return Ok(DistanceResult {
            value: code.n as u64 + 1,
            status: DistStatus::Exact,
            enumerated: 0,
            info_sets: 0,
        });
    }
    let count = (code.field.q as u128).checked_pow(code.k() as u32);
    match count {
        Some(c) if c <= budget as u128 => {}
        _ => {
            return Err(Error::Budget(format!(
                "brute force needs {}^{} codewords, budget is {budget}",
                code.field.q,
                code.k()
            )));
        }
    }
    with_rep(code, |d| d.brute(budget))
}

fn brute_impl<R: Rep>(rep: &R, code: &LinearCode, _budget: u64) -> Result<DistanceResult> {
    let field = &code.field;
    let pg = PackedGen::new(rep, field, code.generator(), code.n);
    let k = pg.k;
    let q = pg.q as u64;

    // Split the message space into q^t prefix blocks for parallelism.
    let mut t = 0usize;
    let mut blocks = 1u64;
    while t < k && blocks < 64 {
        blocks *= q;
        t += 1;
    }
    let suffix_len = k - t;

    let best = AtomicU64::new(u64::MAX);
    let visited = AtomicU64::new(0);

    (0..blocks).into_par_iter().for_each(|block| {
        // Decode the prefix digits and build the base codeword.
        let mut digits = vec![0u32; t];
        let mut b = block;
        for d in digits.iter_mut().rev() {
            *d = (b % q) as u32;
            b /= q;
        }
        let mut base = pg.zero.clone();
        for (i, &dv) in digits.iter().enumerate() {
            if dv != 0 {
                let r = pg.row(i, Fe(dv)).clone();
                rep.add_assign(&mut base, &r);
            }
        }
        let mut local_best = u64::MAX;
        let mut local_count = 0u64;
        let mut visit = |row: &R::Row| {
            let w = rep.weight(row) as u64;
            local_count += 1;
            if w < local_best {
                local_best = w;
            }
        };
        if block != 0 {
            visit(&base);
        }
        // Odometer over the suffix digits.
        let mut suffix = vec![0u32; suffix_len];
        let total = q.pow(suffix_len as u32);
        let mut cur = base;
        for _ in 1..total {
            let mut i = suffix_len;
            loop {
                i -= 1;
                let v = suffix[i];
                if v + 1 < pg.q {
                    suffix[i] = v + 1;
                    let delta = pg.increment_delta[v as usize];
                    rep.add_assign(&mut cur, pg.row(t + i, delta));
                    break;
                }
                suffix[i] = 0;
                rep.add_assign(&mut cur, pg.row(t + i, pg.wrap_delta));
            }
            visit(&cur);
        }
        best.fetch_min(local_best, Ordering::Relaxed);
        visited.fetch_add(local_count, Ordering::Relaxed);
    });

    Ok(DistanceResult {
        value: best.load(Ordering::Relaxed),
        status: DistStatus::Exact,
        enumerated: visited.load(Ordering::Relaxed),
        info_sets: 0,
    })
}

// ---------------------------------------------------------------------------
// Information-set (Brouwer–Zimmermann style) engine
// ---------------------------------------------------------------------------

struct InfoSet {
    /// Standardized generator: identity on this set's pivot columns.
    gen: Mat,
    /// Columns this set reuses from earlier sets (its rank defect).
    defect: u64,
    /// Support weight fully enumerated so far.
    depth: usize,
}

/// Greedy disjoint-as-possible information sets: each round reduces the
/// generator prioritizing columns no earlier set used; pivots landing on
/// fresh columns shrink the next set's defect.
fn build_info_sets(field: &FieldSpec, gen: &Mat) -> Vec<InfoSet> {
    let n = gen.cols;
    let mut used = vec![false; n];
    let mut sets = Vec::new();
    loop {
        let mut order: Vec<usize> = (0..n).filter(|&c| !used[c]).collect();
        let fresh_count = order.len();
        if fresh_count == 0 {
            break;
        }
        order.extend((0..n).filter(|&c| used[c]));
        let r = gen.rref_in_order(field, &order);
        debug_assert_eq!(r.rank(), gen.rows);
        let fresh_pivots: Vec<usize> = r
            .pivots
            .iter()
            .copied()
            .filter(|&p| !used[p])
            .collect();
        if fresh_pivots.is_empty() {
            break;
        }
        for &p in &fresh_pivots {
            used[p] = true;
        }
        let defect = (gen.rows - fresh_pivots.len()) as u64;
        sets.push(InfoSet { gen: r.mat, defect, depth: 0 });
    }
    sets
}

fn lower_bound(sets: &[InfoSet]) -> u64 {
    sets.iter()
        .map(|s| (s.depth as u64 + 1).saturating_sub(s.defect))
        .sum()
}

/// Cost of enumerating support weight exactly w on a k-row set.
fn round_cost(k: usize, w: usize, q: u32) -> u128 {
    let mut c: u128 = 1;
    for i in 0..w {
        c = c * (k - i) as u128 / (i + 1) as u128;
    }
    c * (q as u128 - 1).pow(w as u32)
}

/// Exact minimum distance by the information-set method; see [`BzOptions`]
/// for the early exits. Always terminates: the worst case enumerates the
/// whole message space through the first information set.
pub fn bz_distance(code: &LinearCode, opts: &BzOptions) -> Result<DistanceResult> {
    if code.k() == 0 {
        return Ok(DistanceResult {
            value: code.n as u64 + 1,
            status: DistStatus::Exact,
            enumerated: 0,
            info_sets: 0,
        });
    }
    with_rep(code, |d| d.bz(opts))
}

fn bz_impl<R: Rep>(rep: &R, code: &LinearCode, opts: &BzOptions) -> Result<DistanceResult> {
    let field = &code.field;
    let k = code.k();
    let mut sets = build_info_sets(field, code.generator());
    debug_assert!(!sets.is_empty());
    let packed: Vec<PackedGen<R>> = sets
        .iter()
        .map(|s| PackedGen::new(rep, field, &s.gen, code.n))
        .collect();

    // Initial upper bound: lightest standardized generator row.
    let mut ub: u64 = u64::MAX;
    for s in &sets {
        for row in s.gen.rows_iter() {
            let w = row.iter().filter(|v| !v.is_zero()).count() as u64;
            ub = ub.min(w);
        }
    }
    let mut enumerated: u64 = 0;
    let mut log = ProgressLog::open(opts.progress.as_deref())?;

    loop {
        let lb = lower_bound(&sets);
        if sets.iter().any(|s| s.depth == k) || lb >= ub {
            // Exhausted one full message space, or bound met: exact.
            return Ok(done(ub, DistStatus::Exact, enumerated, sets.len()));
        }
        if let Some(t) = opts.target {
            if lb >= t {
                return Ok(done(lb, DistStatus::Lower, enumerated, sets.len()));
            }
        }
        if let Some(a) = opts.abort_when_ub_at_most {
            if ub <= a {
                return Ok(done(ub, DistStatus::Upper, enumerated, sets.len()));
            }
        }
        if let Some(max) = opts.max_enumerated {
            if enumerated >= max {
                return Ok(done(lb, DistStatus::Lower, enumerated, sets.len()));
            }
        }

        // Pick the cheapest round that raises the lower bound now (the
        // first set always qualifies: its defect is zero).
        let choice = (0..sets.len())
            .filter(|&i| {
                sets[i].depth < k && sets[i].depth as u64 + 2 > sets[i].defect
            })
            .min_by_key(|&i| round_cost(k, sets[i].depth + 1, field.q));
        let Some(si) = choice else {
            // Unreachable: the first set has defect zero, so it always
            // offers a bound-raising round until exhaustion.
            return Err(Error::internal("no information set can raise the bound"));
        };
        let w = sets[si].depth + 1;
        let (round_ub, round_count) =
            enumerate_support(rep, &packed[si], w, ub, opts, enumerated);
        enumerated += round_count;
        let interrupted = round_interrupted(round_count, k, w, field.q, opts, enumerated, round_ub.min(ub));
        ub = ub.min(round_ub);
        if !interrupted {
            sets[si].depth = w;
        }
        log.emit(&format!("set{si}w{w}"), ub, lower_bound(&sets))?;
        if interrupted {
            // A stop condition fired mid-round; loop once more to classify it.
            let lb = lower_bound(&sets);
            if let Some(a) = opts.abort_when_ub_at_most {
                if ub <= a {
                    return Ok(done(ub, DistStatus::Upper, enumerated, sets.len()));
                }
            }
            if lb >= ub {
                return Ok(done(ub, DistStatus::Exact, enumerated, sets.len()));
            }
            return Ok(done(lb, DistStatus::Lower, enumerated, sets.len()));
        }
    }
}

fn done(value: u64, status: DistStatus, enumerated: u64, info_sets: usize) -> DistanceResult {
    DistanceResult { value, status, enumerated, info_sets: info_sets as u64 }
}

fn round_interrupted(
    round_count: u64,
    k: usize,
    w: usize,
    q: u32,
    opts: &BzOptions,
    total: u64,
    ub: u64,
) -> bool {
    let full = round_cost(k, w, q);
    if let Some(max) = opts.max_enumerated {
        if total >= max && (round_count as u128) < full {
            return true;
        }
    }
    if let Some(a) = opts.abort_when_ub_at_most {
        if ub <= a && (round_count as u128) < full {
            return true;
        }
    }
    false
}

/// Enumerate all messages of support weight exactly `w` through one
/// standardized generator; returns (best weight seen, codewords visited).
/// Parallel over the first support position.
fn enumerate_support<R: Rep>(
    rep: &R,
    pg: &PackedGen<R>,
    w: usize,
    ub_in: u64,
    opts: &BzOptions,
    enumerated_before: u64,
) -> (u64, u64) {
    let k = pg.k;
    let best = AtomicU64::new(ub_in);
    let count = AtomicU64::new(0);
    let stop = AtomicBool::new(false);

    (0..=k - w).into_par_iter().for_each(|first| {
        if stop.load(Ordering::Relaxed) {
            return;
        }
        // DFS over support positions first < p2 < ... and nonzero scalars,
        // one packed addition per node, with per-level row buffers.
        let mut bufs: Vec<R::Row> = (0..=w).map(|_| pg.zero.clone()).collect();
        let mut local_best = u64::MAX;
        let mut local_count = 0u64;
        dfs_support(
            rep,
            pg,
            first,
            w,
            0,
            &mut bufs,
            &mut local_best,
            &mut local_count,
            &stop,
        );
        best.fetch_min(local_best, Ordering::Relaxed);
        let total = count.fetch_add(local_count, Ordering::Relaxed) + local_count;
        // Check global stop conditions between subtrees.
        if let Some(a) = opts.abort_when_ub_at_most {
            if best.load(Ordering::Relaxed) <= a {
                stop.store(true, Ordering::Relaxed);
            }
        }
        if let Some(max) = opts.max_enumerated {
            if enumerated_before + total >= max {
                stop.store(true, Ordering::Relaxed);
            }
        }
    });

    (best.load(Ordering::Relaxed), count.load(Ordering::Relaxed))
}

#[allow(clippy::too_many_arguments)]
fn dfs_support<R: Rep>(
    rep: &R,
    pg: &PackedGen<R>,
    pos: usize,
    remaining: usize,
    level: usize,
    bufs: &mut Vec<R::Row>,
    local_best: &mut u64,
    local_count: &mut u64,
    stop: &AtomicBool,
) {
    for c in 1..pg.q {
        // bufs[level + 1] = bufs[level] + c * row_pos.
        let (lo, hi) = bufs.split_at_mut(level + 1);
        hi[0].clone_from(&lo[level]);
        rep.add_assign(&mut hi[0], pg.row(pos, Fe(c)));
        if remaining == 1 {
            let wt = rep.weight(&bufs[level + 1]) as u64;
            *local_count += 1;
            if wt < *local_best {
                *local_best = wt;
            }
            // Cooperative cancellation, checked at leaf granularity.
            if *local_count & 0xfff == 0 && stop.load(Ordering::Relaxed) {
                return;
            }
        } else {
            for next in pos + 1..=pg.k - (remaining - 1) {
                dfs_support(
                    rep,
                    pg,
                    next,
                    remaining - 1,
                    level + 1,
                    bufs,
                    local_best,
                    local_count,
                    stop,
                );
            }
        }
    }
}

struct ProgressLog {
    file: Option<std::fs::File>,
}

impl ProgressLog {
    fn open(path: Option<&std::path::Path>) -> Result<ProgressLog> {
        let file = match path {
            None => None,
            Some(p) => Some(
                OpenOptions::new().create(true).append(true).open(p)?,
            ),
        };
        Ok(ProgressLog { file })
    }

    fn emit(&mut self, block: &str, best: u64, lower: u64) -> Result<()> {
        if let Some(f) = &mut self.file {
            let ts = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let line = serde_json::json!({
                "block": block,
                "best": best,
                "lower": lower,
                "ts": ts,
            });
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Low-weight codeword collection
// ---------------------------------------------------------------------------

/// Every nonzero codeword of weight at most `wmax`, unpacked.
///
/// The generator is kept in reduced row echelon form, so a codeword's
/// restriction to the pivot columns is exactly its message, and the message
/// support weight never exceeds the codeword weight. Enumerating all
/// messages of support weight 1..=wmax through that one generator therefore
/// visits every qualifying codeword exactly once — the same completeness
/// argument the information-set engine uses for its lower bound.
///
/// Refuses with [`Error::Budget`] when sum_w C(k,w)(q-1)^w exceeds `budget`
/// (default 2^36).
pub fn low_weight_words(
    code: &LinearCode,
    wmax: usize,
    budget: Option<u128>,
) -> Result<Vec<Vec<Fe>>> {
    let budget = budget.unwrap_or(DEFAULT_LOW_WEIGHT_BUDGET);
    let k = code.k();
    if k == 0 || wmax == 0 {
        return Ok(Vec::new());
    }
    let cost: u128 = (1..=wmax.min(k))
        .map(|w| round_cost(k, w, code.field.q))
        .sum();
    if cost > budget {
        return Err(Error::Budget(format!(
            "collecting weight <= {wmax} words visits {cost} messages, budget is {budget}"
        )));
    }
    Ok(with_rep(code, |d| d.low_weight(wmax)))
}

fn low_weight_impl<R: Rep>(rep: &R, code: &LinearCode, wmax: usize) -> Vec<Vec<Fe>> {
    let field = &code.field;
    // Work over the reduced basis: there each codeword's coefficient vector
    // is its restriction to the pivot columns, so its support is no larger
    // than the codeword's weight — that is what makes the sweep complete.
    let gen = &code.rref().mat;
    let pg = PackedGen::new(rep, field, gen, code.n);
    let k = pg.k;
    let out = std::sync::Mutex::new(Vec::new());
    for w in 1..=wmax.min(k) {
        (0..=k - w).into_par_iter().for_each(|first| {
            let mut bufs: Vec<R::Row> = (0..=w).map(|_| pg.zero.clone()).collect();
            let mut support = vec![(0usize, Fe::ZERO); w];
            let mut local = Vec::new();
            dfs_collect(
                rep,
                &pg,
                field,
                gen,
                first,
                w,
                0,
                &mut bufs,
                &mut support,
                wmax as u64,
                &mut local,
            );
            if !local.is_empty() {
                out.lock().unwrap().extend(local);
            }
        });
    }
    out.into_inner().unwrap()
}

/// Same walk as [`dfs_support`], but keeping the support stack so hits can
/// be unpacked, and collecting instead of minimizing.
#[allow(clippy::too_many_arguments)]
fn dfs_collect<R: Rep>(
    rep: &R,
    pg: &PackedGen<R>,
    field: &FieldSpec,
    gen: &Mat,
    pos: usize,
    remaining: usize,
    level: usize,
    bufs: &mut Vec<R::Row>,
    support: &mut Vec<(usize, Fe)>,
    wmax: u64,
    out: &mut Vec<Vec<Fe>>,
) {
    for c in 1..pg.q {
        let (lo, hi) = bufs.split_at_mut(level + 1);
        hi[0].clone_from(&lo[level]);
        rep.add_assign(&mut hi[0], pg.row(pos, Fe(c)));
        support[level] = (pos, Fe(c));
        if remaining == 1 {
            if (rep.weight(&bufs[level + 1]) as u64) <= wmax {
                let mut row = vec![Fe::ZERO; gen.cols];
                for &(p, s) in support.iter() {
                    for (dst, v) in row.iter_mut().zip(gen.row(p)) {
                        *dst = field.add(dst, &field.mul(&s, v));
                    }
                }
                out.push(row);
            }
        } else {
            for next in pos + 1..=pg.k - (remaining - 1) {
                dfs_collect(
                    rep,
                    pg,
                    field,
                    gen,
                    next,
                    remaining - 1,
                    level + 1,
                    bufs,
                    support,
                    wmax,
                    out,
                );
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Weight enumerators and MacWilliams
// ---------------------------------------------------------------------------

/// Codeword counts by weight: counts[w] = number of codewords of weight w.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightEnumerator {
    pub counts: Vec<u128>,
}

impl WeightEnumerator {
    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    /// Smallest positive weight with a codeword; None for the zero code.
    pub fn min_distance(&self) -> Option<u64> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w as u64)
    }
}

/// Full weight distribution by enumeration. Refuses if q^k exceeds the
/// budget (default 2^26) — take the dual and transform instead.
pub fn weight_enumerator(code: &LinearCode, budget: Option<u64>) -> Result<WeightEnumerator> {
    let budget = budget.unwrap_or(DEFAULT_BRUTE_BUDGET);
    let count = (code.field.q as u128).checked_pow(code.k() as u32);
    match count {
        Some(c) if c <= budget as u128 => {}
        _ => {
            return Err(Error::Budget(format!(
                "weight enumeration needs {}^{} codewords, budget is {budget}",
                code.field.q,
                code.k()
            )));
        }
    }
    let counts = with_rep(code, |d| d.enumerate_weights());
    Ok(WeightEnumerator { counts })
}

/// Weight distribution through whichever of the code and its dual is
/// smaller, transforming back when the dual was enumerated.
pub fn weight_enumerator_auto(
    code: &LinearCode,
    budget: Option<u64>,
) -> Result<WeightEnumerator> {
    if code.k() * 2 <= code.n {
        weight_enumerator(code, budget)
    } else {
        let dual = code.euclidean_dual();
        let wd = weight_enumerator(&dual, budget)?;
        macwilliams(&wd, code.n, dual.k(), code.field.q)
    }
}

fn enumerate_weights_impl<R: Rep>(rep: &R, code: &LinearCode) -> Vec<u128> {
    let field = &code.field;
    let pg = PackedGen::new(rep, field, code.generator(), code.n);
    let k = pg.k;
    let q = pg.q as u64;
    let mut counts = vec![0u128; code.n + 1];
    counts[0] = 1;
    if k == 0 {
        return counts;
    }
    let mut cur = pg.zero.clone();
    let mut digits = vec![0u32; k];
    let total = q.pow(k as u32);
    for _ in 1..total {
        let mut i = k;
        loop {
            i -= 1;
            let v = digits[i];
            if v + 1 < pg.q {
                digits[i] = v + 1;
                rep.add_assign(&mut cur, pg.row(i, pg.increment_delta[v as usize]));
                break;
            }
            digits[i] = 0;
            rep.add_assign(&mut cur, pg.row(i, pg.wrap_delta));
        }
        counts[rep.weight(&cur) as usize] += 1;
    }
    counts
}

/// MacWilliams transform: from the enumerator of an [n,k]_q code to the
/// enumerator of its dual. Exact integer arithmetic; errors if the input is
/// not a valid enumerator.
pub fn macwilliams(
    w: &WeightEnumerator,
    n: usize,
    k: usize,
    q: u32,
) -> Result<WeightEnumerator> {
    if w.counts.len() != n + 1 {
        return Err(Error::precondition(format!(
            "enumerator has {} entries, expected n + 1 = {}",
            w.counts.len(),
            n + 1
        )));
    }
    let size = BigInt::from(q).pow(k as u32);
    if BigInt::from(w.total()) != size {
        return Err(Error::precondition(
            "enumerator does not sum to q^k".to_string(),
        ));
    }
    // Binomial table up to n.
    let mut binom = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for i in 0..=n {
        binom[i][0] = BigInt::from(1);
        for j in 1..=i {
            binom[i][j] = &binom[i - 1][j - 1]
                + if j <= i - 1 { binom[i - 1][j].clone() } else { BigInt::zero() };
        }
    }
    let q1 = BigInt::from(q - 1);
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = BigInt::zero();
        for (i, &ai) in w.counts.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            // Krawtchouk K_j(i) = sum_l (-1)^l (q-1)^(j-l) C(i,l) C(n-i, j-l).
            let mut kji = BigInt::zero();
            for l in 0..=j.min(i) {
                if j - l > n - i {
                    continue;
                }
                let term = q1.pow((j - l) as u32) * &binom[i][l] * &binom[n - i][j - l];
                if l % 2 == 0 {
                    kji += term;
                } else {
                    kji -= term;
                }
            }
            acc += BigInt::from(ai) * kji;
        }
        let (quot, rem) = num_integer::Integer::div_rem(&acc, &size);
        if !rem.is_zero() || quot.is_negative() {
            return Err(Error::internal(
                "MacWilliams transform produced a non-integral count",
            ));
        }
        let (_, digits) = quot.to_u64_digits();
        let val = match digits.len() {
            0 => 0u128,
            1 => digits[0] as u128,
            2 => digits[0] as u128 | (digits[1] as u128) << 64,
            _ => return Err(Error::internal("dual weight count exceeds u128")),
        };
        out.push(val);
    }
    Ok(WeightEnumerator { counts: out })
}
