//! Equivalence criteria between constacyclic families, explicit isometry
//! witnesses, and equivalence-graph classification.
//!
//! Write a = xi^{i1} and b = xi^{i2} for the canonical generator xi of
//! GF(q)*. The central criterion: if some s in [0, q-2] satisfies
//! i1 ≡ i2·s (mod q-1) and m = gcd(n, q-1) divides i2(s-1), then the
//! a-constacyclic and b-constacyclic codes of length n are monomially
//! equivalent, and the equivalence is realized by the diagonal isometry
//! that multiplies coordinate j by xi^{i·j} for an exponent i computed
//! from the witness data below. Alongside it sit the coarser predicates:
//! equal constant order, gcd(n, ord(a)) = 1 (equivalence with the cyclic
//! family), order divisibility when gcd(n, q-1) = 1, and the power-of-xi^m
//! criterion against the cyclic family.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constacode::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldSpec};

/// Which criterion certified an equivalence, with the parameters that
/// satisfied it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "criterion", rename_all = "snake_case")]
pub enum EquivCriterion {
    /// ord(a) = ord(b); predicate only, no witness map here.
    EqualOrder { ord: u64 },
    /// gcd(n, ord(a)) = 1: a-constacyclic codes are equivalent to cyclic.
    Bierbrauer { ord_a: u64 },
    /// The exponent criterion with its certificate (s, m).
    MainTheorem { s: u64, m: u64 },
    /// ord(a) | ord(b) with gcd(n, q-1) = 1.
    DividesOrderGcd1 { ord_a: u64, ord_b: u64 },
    /// a = xi^{m r} with m = gcd(n, q-1): equivalent to the cyclic family.
    GcdPower { m: u64, r: u64 },
}

impl EquivCriterion {
    pub fn name(&self) -> &'static str {
        match self {
            EquivCriterion::EqualOrder { .. } => "EqualOrder",
            EquivCriterion::Bierbrauer { .. } => "Bierbrauer",
            EquivCriterion::MainTheorem { .. } => "MainTheorem",
            EquivCriterion::DividesOrderGcd1 { .. } => "DividesOrderGcd1",
            EquivCriterion::GcdPower { .. } => "GcdPower",
        }
    }

    /// Human-readable instantiation of the criterion's condition at n.
    pub fn condition_at(&self, n: u64, q: u32) -> String {
        let q1 = q as u64 - 1;
        match self {
            EquivCriterion::EqualOrder { ord } => format!("ord(a) = ord(b) = {ord}"),
            EquivCriterion::Bierbrauer { ord_a } => {
                format!("gcd({n}, {ord_a}) = 1")
            }
            EquivCriterion::MainTheorem { s, m } => {
                format!("s = {s}, m = gcd({n}, {q1}) = {m}")
            }
            EquivCriterion::DividesOrderGcd1 { ord_a, ord_b } => {
                format!("{ord_a} | {ord_b}, gcd({n}, {q1}) = 1")
            }
            EquivCriterion::GcdPower { m, r } => {
                format!("a = xi^({m}*{r}), m = gcd({n}, {q1}) = {m}")
            }
        }
    }
}

/// ord(a) = ord(b)?
pub fn check_equal_order(field: &FieldSpec, a: Fe, b: Fe) -> Result<bool> {
    Ok(field.element_order(a)? == field.element_order(b)?)
}

/// gcd(n, ord(a)) = 1?
pub fn check_bierbrauer(field: &FieldSpec, n: u64, a: Fe) -> Result<bool> {
    check_length(field, n)?;
    Ok(num_integer::gcd(n, field.element_order(a)?) == 1)
}

fn check_length(field: &FieldSpec, n: u64) -> Result<()> {
    if n == 0 || num_integer::gcd(n, field.q as u64) != 1 {
        return Err(Error::precondition(format!(
            "length n = {n} must be positive and coprime to q = {}",
            field.q
        )));
    }
    Ok(())
}

/// Certificate returned by [`check_main_theorem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainCert {
    pub s: u64,
    pub m: u64,
    pub i1: u64,
    pub i2: u64,
}

/// Search for the smallest s in [0, q-2] with i1 ≡ i2·s (mod q-1) and
/// m | i2·(s-1), where m = gcd(n, q-1). Roles: a = xi^{i1} is the source
/// family, b = xi^{i2} the target.
pub fn check_main_theorem(field: &FieldSpec, n: u64, a: Fe, b: Fe) -> Result<Option<MainCert>> {
    check_length(field, n)?;
    let i1 = field
        .discrete_log(a)
        .ok_or_else(|| Error::precondition("shift constant a must be nonzero"))?;
    let i2 = field
        .discrete_log(b)
        .ok_or_else(|| Error::precondition("shift constant b must be nonzero"))?;
    let q1 = field.q as u64 - 1;
    let m = num_integer::gcd(n, q1);
    for s in 0..q1.max(1) {
        if (i2 * s) % q1.max(1) != i1 % q1.max(1) {
            continue;
        }
        // m | i2(s-1); the sign of s-1 does not matter for divisibility.
        let prod = i2 as i64 * (s as i64 - 1);
        if prod.rem_euclid(m as i64) == 0 {
            return Ok(Some(MainCert { s, m, i1, i2 }));
        }
    }
    Ok(None)
}

/// Apply the two corollary criteria in order; first match wins.
pub fn check_corollaries(
    field: &FieldSpec,
    n: u64,
    a: Fe,
    b: Fe,
) -> Result<Option<EquivCriterion>> {
    check_length(field, n)?;
    let q1 = field.q as u64 - 1;
    let ord_a = field.element_order(a)?;
    let ord_b = field.element_order(b)?;
    // ord(a) | ord(b) with gcd(n, q-1) = 1 (gcd(n, q) = 1 already checked).
    if ord_b % ord_a == 0 && num_integer::gcd(n, q1) == 1 {
        return Ok(Some(EquivCriterion::DividesOrderGcd1 { ord_a, ord_b }));
    }
    // a = xi^{m r} against the cyclic family b = 1.
    if b == Fe::ONE {
        let m = num_integer::gcd(n, q1);
        let i1 = field.discrete_log(a).unwrap();
        if i1 % m == 0 {
            return Ok(Some(EquivCriterion::GcdPower { m, r: i1 / m }));
        }
    }
    Ok(None)
}

/// A fully solved diagonal isometry between the a = xi^{i1} and b = xi^{i2}
/// families of length n: coordinate j is scaled by xi^{i·j}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivWitness {
    pub q: u32,
    pub n: u64,
    pub i1: u64,
    pub i2: u64,
    pub s: u64,
    pub m: u64,
    /// Exact integer solution of m·gamma = i2·(s-1); may be negative.
    pub gamma: i64,
    pub theta: u64,
    pub beta: u64,
    pub beta_prime: u64,
    /// The diagonal exponent step, reduced into [0, q-2].
    pub i: u64,
    /// xi^i.
    pub scalar: Fe,
}

impl EquivWitness {
    /// Diagonal exponents (0, i, 2i, ..., (n-1)i) mod (q-1).
    pub fn diagonal_exponents(&self) -> Vec<u64> {
        let q1 = (self.q as u64 - 1).max(1);
        (0..self.n).map(|j| j * self.i % q1).collect()
    }
}

/// Solve the witness data for a pair that passes [`check_main_theorem`].
///
/// theta = (q-1)/m, beta = n/m, beta_prime = beta^{-1} mod theta (zero when
/// theta = 1), gamma = i2(s-1)/m as an exact integer, and
/// i = (gamma·beta_prime + theta) mod (q-1). The final congruence
/// i1 - i·n ≡ i2 (mod q-1) is checked before returning.
pub fn build_witness(field: &FieldSpec, n: u64, a: Fe, b: Fe) -> Result<EquivWitness> {
    let cert = check_main_theorem(field, n, a, b)?.ok_or_else(|| {
        Error::NoCriterion(format!(
            "no s in [0, q-2] certifies equivalence of {} and {} at n = {n} over GF({})",
            field.fmt_elem(a),
            field.fmt_elem(b),
            field.q
        ))
    })?;
    let MainCert { s, m, i1, i2 } = cert;
    let q1 = (field.q as u64 - 1).max(1);
    let theta = q1 / m;
    let beta = n / m;
    if num_integer::gcd(beta, theta) != 1 {
        // The solvability of beta_prime rests on this; it holds for every
        // (n, q) because a common prime divisor of beta and theta would
        // enlarge gcd(n, q-1) past m.
        return Err(Error::internal(format!(
            "gcd(beta, theta) = gcd({beta}, {theta}) != 1"
        )));
    }
    let beta_prime = if theta == 1 {
        0
    } else {
        crate::arith::mod_inverse(beta as i64, theta as i64)
            .ok_or_else(|| Error::internal("beta has no inverse mod theta"))?
            as u64
    };
    let prod = i2 as i64 * (s as i64 - 1);
    debug_assert_eq!(prod.rem_euclid(m as i64), 0);
    let gamma = prod / m as i64;
    let i = (gamma * beta_prime as i64 + theta as i64).rem_euclid(q1 as i64) as u64;
    // Validity gate: the diagonal map lands in the b-constacyclic ring
    // exactly when i1 - i·n ≡ i2 (mod q-1).
    let lhs = (i1 as i64 - (i as i64) * (n as i64)).rem_euclid(q1 as i64) as u64;
    if lhs != i2 % q1 {
        return Err(Error::internal(format!(
            "witness failed its validity gate: i1 - i*n = {lhs} != i2 = {} (mod {q1})",
            i2 % q1
        )));
    }
    let scalar = field.xi_pow(i as i64);
    Ok(EquivWitness {
        q: field.q,
        n,
        i1,
        i2,
        s,
        m,
        gamma,
        theta,
        beta,
        beta_prime,
        i,
        scalar,
    })
}

/// Re-verify every invariant a witness claims. Cheap; used by the CLI and
/// by tests after deserialization.
pub fn verify_witness(field: &FieldSpec, w: &EquivWitness) -> Result<()> {
    if field.q != w.q {
        return Err(Error::precondition("witness is for a different field"));
    }
    let q1 = (w.q as u64 - 1).max(1);
    let fail = |msg: String| Err(Error::precondition(format!("witness invalid: {msg}")));
    if w.m != num_integer::gcd(w.n, q1) {
        return fail(format!("m = {} is not gcd(n, q-1)", w.m));
    }
    if (w.i2 * w.s) % q1 != w.i1 % q1 {
        return fail("i1 != i2*s (mod q-1)".into());
    }
    if w.m * w.theta != q1 || w.m * w.beta != w.n {
        return fail("theta or beta factorization broken".into());
    }
    let prod = w.i2 as i64 * (w.s as i64 - 1);
    if w.gamma * w.m as i64 != prod {
        return fail(format!("m*gamma = {} != i2(s-1) = {prod}", w.gamma * w.m as i64));
    }
    if w.theta == 1 {
        if w.beta_prime != 0 {
            return fail("beta_prime must be 0 when theta = 1".into());
        }
    } else if (w.beta * w.beta_prime) % w.theta != 1 {
        return fail("beta*beta_prime != 1 (mod theta)".into());
    }
    let i = (w.gamma * w.beta_prime as i64 + w.theta as i64).rem_euclid(q1 as i64) as u64;
    if i != w.i {
        return fail(format!("i = {} does not match gamma*beta_prime + theta = {i}", w.i));
    }
    let lhs = (w.i1 as i64 - (w.i as i64) * (w.n as i64)).rem_euclid(q1 as i64) as u64;
    if lhs != w.i2 % q1 {
        return fail("final congruence i1 - i*n = i2 (mod q-1) fails".into());
    }
    if field.xi_pow(w.i as i64) != w.scalar {
        return fail("scalar is not xi^i".into());
    }
    Ok(())
}

/// Apply the witness map to an a-constacyclic code: coordinate j of every
/// codeword is scaled by xi^{i·j}. The image has the same length, dimension
/// and weight distribution, and is b-constacyclic.
pub fn apply_isometry(w: &EquivWitness, code: &LinearCode) -> Result<LinearCode> {
    let field = &code.field;
    if field.q != w.q || code.n as u64 != w.n {
        return Err(Error::precondition(format!(
            "witness is for a length-{} code over GF({}), got [{}]_{}",
            w.n, w.q, code.n, field.q
        )));
    }
    let a = field.xi_pow(w.i1 as i64);
    if !code.is_constacyclic(a) {
        return Err(Error::precondition(format!(
            "code is not {}-constacyclic, so the witness does not apply",
            field.fmt_elem(a)
        )));
    }
    let diag: Vec<Fe> = w
        .diagonal_exponents()
        .into_iter()
        .map(|e| field.xi_pow(e as i64))
        .collect();
    let rows: Vec<Vec<Fe>> = code
        .generator()
        .rows_iter()
        .map(|r| r.iter().zip(&diag).map(|(c, d)| field.mul(c, d)).collect())
        .collect();
    LinearCode::from_rows(Arc::clone(field), code.n, rows)
}

/// One edge of the equivalence graph: the criterion fired for source a and
/// target b (direction matters for MainTheorem witnesses).
#[derive(Clone, Debug, Serialize)]
pub struct EquivEdge {
    pub a: Fe,
    pub b: Fe,
    pub criterion: EquivCriterion,
}

/// Equivalence classes of the nonzero constants of GF(q) at length n.
#[derive(Clone, Debug, Serialize)]
pub struct EquivGraph {
    pub q: u32,
    pub n: u64,
    pub nodes: Vec<Fe>,
    pub edges: Vec<EquivEdge>,
    /// Partition of the nodes, classes and members sorted by representation
    /// rank.
    pub classes: Vec<Vec<Fe>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.0[rx.max(ry)] = rx.min(ry);
        }
    }
}

/// Evaluate every pair of nonzero constants through every criterion and
/// partition them into monomial-equivalence classes.
pub fn classify(q: u32, n: u64) -> Result<EquivGraph> {
    if q > 16 {
        return Err(Error::precondition(
            "classification graphs are limited to q <= 16",
        ));
    }
    let field = Arc::new(FieldSpec::of_order(q)?);
    check_length(&field, n)?;
    let nodes: Vec<Fe> = {
        let mut v: Vec<Fe> = field.elements().skip(1).collect();
        v.sort_by_key(|&a| field.rep_rank(a));
        v
    };
    let idx: BTreeMap<Fe, usize> = nodes.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut uf = UnionFind::new(nodes.len());
    let mut edges = Vec::new();

    for (ia, &a) in nodes.iter().enumerate() {
        for &b in nodes.iter().skip(ia + 1) {
            if let Some(edge) = first_criterion(&field, n, a, b)? {
                uf.union(idx[&edge.a], idx[&edge.b]);
                edges.push(edge);
            }
        }
    }

    let mut by_root: BTreeMap<usize, Vec<Fe>> = BTreeMap::new();
    for (i, &a) in nodes.iter().enumerate() {
        by_root.entry(uf.find(i)).or_default().push(a);
    }
    let classes: Vec<Vec<Fe>> = by_root.into_values().collect();
    Ok(EquivGraph { q, n, nodes, edges, classes })
}

/// Try the criteria in a fixed priority order, both directions; first hit
/// becomes the recorded edge for the pair.
fn first_criterion(field: &FieldSpec, n: u64, a: Fe, b: Fe) -> Result<Option<EquivEdge>> {
    if check_equal_order(field, a, b)? {
        let ord = field.element_order(a)?;
        return Ok(Some(EquivEdge { a, b, criterion: EquivCriterion::EqualOrder { ord } }));
    }
    for (x, y) in [(a, b), (b, a)] {
        if y == Fe::ONE && check_bierbrauer(field, n, x)? {
            let ord_a = field.element_order(x)?;
            return Ok(Some(EquivEdge {
                a: x,
                b: y,
                criterion: EquivCriterion::Bierbrauer { ord_a },
            }));
        }
    }
    for (x, y) in [(a, b), (b, a)] {
        if let Some(cert) = check_main_theorem(field, n, x, y)? {
            return Ok(Some(EquivEdge {
                a: x,
                b: y,
                criterion: EquivCriterion::MainTheorem { s: cert.s, m: cert.m },
            }));
        }
    }
    for (x, y) in [(a, b), (b, a)] {
        if let Some(crit) = check_corollaries(field, n, x, y)? {
            return Ok(Some(EquivEdge { a: x, b: y, criterion: crit }));
        }
    }
    Ok(None)
}

impl EquivGraph {
    /// DOT rendering: one node per equivalence class labeled with its
    /// members; each fired criterion appears as a labeled edge on the class
    /// that absorbed it.
    pub fn to_dot(&self) -> String {
        let field = FieldSpec::of_order(self.q).expect("graph field exists");
        let class_of = |a: Fe| -> usize {
            self.classes
                .iter()
                .position(|c| c.contains(&a))
                .expect("every node is classified")
        };
        let mut out = String::new();
        let _ = writeln!(out, "graph \"equiv q={} n={}\" {{", self.q, self.n);
        let _ = writeln!(out, "  labelloc=\"t\";");
        let _ = writeln!(
            out,
            "  label=\"monomial equivalence classes, q={} n={}\";",
            self.q, self.n
        );
        let _ = writeln!(out, "  node [shape=box];");
        for (ci, class) in self.classes.iter().enumerate() {
            let members: Vec<String> = class.iter().map(|&a| field.fmt_elem(a)).collect();
            let _ = writeln!(out, "  c{ci} [label=\"{}\"];", members.join(", "));
        }
        for e in &self.edges {
            let (ca, cb) = (class_of(e.a), class_of(e.b));
            let _ = writeln!(
                out,
                "  c{ca} -- c{cb} [label=\"{} ~ {}: {} ({})\"];",
                field.fmt_elem(e.a),
                field.fmt_elem(e.b),
                e.criterion.name(),
                e.criterion.condition_at(self.n, self.q)
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constacode::FamilyCtx;

    fn gf(q: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::of_order(q).unwrap())
    }

    /// Weight distribution by full enumeration; test-sized codes only.
    fn enumerate_weights(code: &LinearCode) -> Vec<u64> {
        let mut counts = vec![0u64; code.n + 1];
        for w in code.iter_codewords() {
            let wt = w.iter().filter(|c| !c.is_zero()).count();
            counts[wt] += 1;
        }
        counts
    }

    #[test]
    fn equal_order_examples() {
        let f5 = gf(5);
        assert!(check_equal_order(&f5, Fe(2), Fe(3)).unwrap());
        assert!(!check_equal_order(&f5, Fe(2), Fe(4)).unwrap());
        let f7 = gf(7);
        assert!(check_equal_order(&f7, Fe(2), Fe(4)).unwrap());
        assert!(check_equal_order(&f7, Fe(3), Fe(3)).unwrap());
    }

    #[test]
    fn bierbrauer_examples() {
        let f3 = gf(3);
        for n in [1u64, 5, 7, 11, 25] {
            assert!(check_bierbrauer(&f3, n, Fe(2)).unwrap());
        }
        assert!(!check_bierbrauer(&f3, 10, Fe(2)).unwrap());
        let f5 = gf(5);
        assert!(!check_bierbrauer(&f5, 14, Fe(4)).unwrap());
        assert!(check_bierbrauer(&f5, 14, Fe(1)).unwrap()); // ord 1
        assert!(check_bierbrauer(&f5, 10, Fe(0)).is_err());
    }

    #[test]
    fn main_theorem_examples() {
        let f7 = gf(7);
        let cert = check_main_theorem(&f7, 8, Fe(6), Fe(5)).unwrap().unwrap();
        assert_eq!((cert.s, cert.m), (3, 2));
        assert_eq!((cert.i1, cert.i2), (3, 5));

        let f5 = gf(5);
        let cert = check_main_theorem(&f5, 14, Fe(1), Fe(4)).unwrap().unwrap();
        assert_eq!((cert.s, cert.m, cert.i1, cert.i2), (0, 2, 0, 2));

        // Non-equivalent pair at n = 12 over GF(5), both directions.
        assert!(check_main_theorem(&f5, 12, Fe(2), Fe(4)).unwrap().is_none());
        assert!(check_main_theorem(&f5, 12, Fe(4), Fe(2)).unwrap().is_none());

        assert!(check_main_theorem(&f5, 9, Fe(2), Fe(3)).is_ok());
        assert!(check_main_theorem(&f5, 15, Fe(2), Fe(3)).is_err()); // gcd(15,5)=5
    }

    #[test]
    fn corollary_examples() {
        let f5 = gf(5);
        // ord(4) = 2 divides ord(2) = 4, and gcd(13, 20) = 1.
        let c = check_corollaries(&f5, 13, Fe(4), Fe(2)).unwrap().unwrap();
        assert_eq!(c, EquivCriterion::DividesOrderGcd1 { ord_a: 2, ord_b: 4 });

        // a = 4 = xi^2, m = gcd(14, 4) = 2: power-of-xi^m criterion.
        let c = check_corollaries(&f5, 14, Fe(4), Fe(1)).unwrap().unwrap();
        assert_eq!(c, EquivCriterion::GcdPower { m: 2, r: 1 });

        // gcd(5, 6) = 1 fires order divisibility in the (1, 5) direction.
        let f7 = gf(7);
        let c = check_corollaries(&f7, 5, Fe(1), Fe(5)).unwrap().unwrap();
        assert_eq!(c, EquivCriterion::DividesOrderGcd1 { ord_a: 1, ord_b: 6 });
        // In the (5, 1) direction order divisibility fails but the power
        // criterion fires with m = 1.
        let c = check_corollaries(&f7, 5, Fe(5), Fe(1)).unwrap().unwrap();
        assert_eq!(c, EquivCriterion::GcdPower { m: 1, r: 5 });
    }

    #[test]
    fn witness_gf5_n14() {
        let f5 = gf(5);
        let w = build_witness(&f5, 14, Fe(1), Fe(4)).unwrap();
        assert_eq!(w.s, 0);
        assert_eq!(w.m, 2);
        assert_eq!(w.gamma, -1);
        assert_eq!(w.theta, 2);
        assert_eq!(w.beta, 7);
        assert_eq!(w.beta_prime, 1);
        assert_eq!(w.i, 1);
        assert_eq!(w.scalar, Fe(2));
        verify_witness(&f5, &w).unwrap();
    }

    #[test]
    fn witness_gf7_n8() {
        let f7 = gf(7);
        let w = build_witness(&f7, 8, Fe(6), Fe(5)).unwrap();
        assert_eq!((w.i1, w.i2, w.s, w.m), (3, 5, 3, 2));
        assert_eq!((w.gamma, w.theta, w.beta, w.beta_prime), (5, 3, 4, 1));
        assert_eq!(w.i, 2);
        assert_eq!(w.scalar, Fe(2));
        verify_witness(&f7, &w).unwrap();
        // Final congruence: 3 - 8*2 = -13 = 5 (mod 6).
        assert_eq!((w.i1 as i64 - (w.n * w.i) as i64).rem_euclid(6), w.i2 as i64);
    }

    #[test]
    fn witness_same_constant_is_admissible() {
        let f5 = gf(5);
        let w = build_witness(&f5, 14, Fe(2), Fe(2)).unwrap();
        verify_witness(&f5, &w).unwrap();
        // The map sends the family to itself.
        let ctx = FamilyCtx::new(Arc::clone(&f5), 14, Fe(2)).unwrap();
        let d = ctx.cosets[1].members.clone();
        let code = ctx.build_code(&d).unwrap();
        let image = apply_isometry(&w, &code).unwrap();
        assert!(image.is_constacyclic(Fe(2)));
        assert_eq!(image.k(), code.k());
    }

    #[test]
    fn witness_errors_without_criterion() {
        let f5 = gf(5);
        match build_witness(&f5, 12, Fe(2), Fe(4)) {
            Err(Error::NoCriterion(_)) => {}
            other => panic!("expected NoCriterion, got {other:?}"),
        }
    }

    #[test]
    fn tampered_witness_fails_verification() {
        let f5 = gf(5);
        let good = build_witness(&f5, 14, Fe(1), Fe(4)).unwrap();
        for field in 0..5 {
            let mut w = good.clone();
            match field {
                0 => w.s += 1,
                1 => w.gamma += 2,
                2 => w.i = (w.i + 1) % 4,
                3 => w.scalar = Fe(3),
                _ => w.m = 4,
            }
            assert!(verify_witness(&f5, &w).is_err(), "tamper {field} accepted");
        }
    }

    #[test]
    fn isometry_maps_cyclic_to_constacyclic() {
        let f5 = gf(5);
        let w = build_witness(&f5, 14, Fe(1), Fe(4)).unwrap();
        let ctx = FamilyCtx::new(Arc::clone(&f5), 14, Fe(1)).unwrap();
        let code = ctx.build_code(&[0]).unwrap(); // Z(0): [14,13] cyclic
        assert_eq!(code.k(), 13);
        let image = apply_isometry(&w, &code).unwrap();
        assert_eq!((image.n, image.k()), (14, 13));
        assert!(image.is_constacyclic(Fe(4)));
        assert!(!image.is_constacyclic(Fe(1)) || image.same_code(&code));
    }

    #[test]
    fn isometry_rejects_mismatched_code() {
        let f5 = gf(5);
        let w = build_witness(&f5, 14, Fe(1), Fe(4)).unwrap();
        // Wrong length.
        let short = LinearCode::full_space(Arc::clone(&f5), 7);
        assert!(apply_isometry(&w, &short).is_err());
        // Right length, not 1-constacyclic.
        let mut row = vec![Fe::ZERO; 14];
        row[0] = Fe(1);
        let bad = LinearCode::from_rows(Arc::clone(&f5), 14, vec![row]).unwrap();
        assert!(apply_isometry(&w, &bad).is_err());
    }

    #[test]
    fn soundness_sweep_small() {
        // Every main-criterion pair over small fields and lengths: image is
        // b-constacyclic with an unchanged weight distribution, and distinct
        // defining sets give distinct images.
        for q in [3u32, 4, 5] {
            let f = gf(q);
            for n in 2..=10u64 {
                if num_integer::gcd(n, q as u64) != 1 {
                    continue;
                }
                let consts: Vec<Fe> = f.elements().skip(1).collect();
                for &a in &consts {
                    for &b in &consts {
                        let Some(_) = check_main_theorem(&f, n, a, b).unwrap() else {
                            continue;
                        };
                        let w = build_witness(&f, n, a, b).unwrap();
                        verify_witness(&f, &w).unwrap();
                        let ctx = FamilyCtx::new(Arc::clone(&f), n, a).unwrap();
                        let mut images: Vec<Vec<Vec<Fe>>> = Vec::new();
                        // All defining sets with at most 2 cosets.
                        let mut sets: Vec<Vec<u64>> = vec![Vec::new()];
                        for (i, c1) in ctx.cosets.iter().enumerate() {
                            sets.push(c1.members.clone());
                            for c2 in ctx.cosets.iter().skip(i + 1) {
                                let mut u = c1.members.clone();
                                u.extend_from_slice(&c2.members);
                                u.sort_unstable();
                                sets.push(u);
                            }
                        }
                        for d in sets {
                            let code = ctx.build_code(&d).unwrap();
                            let image = apply_isometry(&w, &code).unwrap();
                            assert!(
                                image.is_constacyclic(b),
                                "q={q} n={n} a={a:?} b={b:?} D={d:?}"
                            );
                            assert_eq!(image.k(), code.k());
                            if (q as u64).pow(code.k() as u32) <= 1 << 12 {
                                assert_eq!(
                                    enumerate_weights(&code),
                                    enumerate_weights(&image)
                                );
                            }
                            let canon: Vec<Vec<Fe>> = image
                                .rref()
                                .mat
                                .rows_iter()
                                .take(image.k())
                                .map(|r| r.to_vec())
                                .collect();
                            assert!(!images.contains(&canon), "images must be distinct");
                            images.push(canon);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bierbrauer_subsumed_by_main_theorem() {
        for q in [3u32, 4, 5, 7, 8, 9] {
            let f = gf(q);
            for n in 1..=40u64 {
                if num_integer::gcd(n, q as u64) != 1 {
                    continue;
                }
                for a in f.elements().skip(1) {
                    if num_integer::gcd(n, f.element_order(a).unwrap()) != 1 {
                        continue;
                    }
                    // Cyclic family maps into the a-constacyclic family.
                    let cert = check_main_theorem(&f, n, Fe::ONE, a).unwrap();
                    assert!(cert.is_some(), "q={q} n={n} a={a:?}");
                    build_witness(&f, n, Fe::ONE, a).unwrap();
                }
            }
        }
    }

    #[test]
    fn classify_partitions() {
        let g = classify(5, 63).unwrap();
        assert_eq!(g.classes, vec![vec![Fe(1), Fe(2), Fe(3), Fe(4)]]);

        let g = classify(5, 14).unwrap();
        assert_eq!(g.classes, vec![vec![Fe(1), Fe(4)], vec![Fe(2), Fe(3)]]);

        let g = classify(3, 10).unwrap();
        assert_eq!(g.classes, vec![vec![Fe(1)], vec![Fe(2)]]);

        let g = classify(5, 12).unwrap();
        assert_eq!(g.classes, vec![vec![Fe(1)], vec![Fe(2), Fe(3)], vec![Fe(4)]]);

        assert!(classify(17, 5).is_err());
        assert!(classify(5, 10).is_err());
    }

    #[test]
    fn classify_classes_share_code_counts() {
        for (q, n) in [(5u32, 14u64), (5, 63), (3, 10), (7, 8), (4, 15)] {
            let f = gf(q);
            let g = classify(q, n).unwrap();
            for class in &g.classes {
                let counts: Vec<u128> = class
                    .iter()
                    .map(|&a| crate::constacode::count_codes(&f, n, a).unwrap())
                    .collect();
                assert!(counts.windows(2).all(|w| w[0] == w[1]), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn dot_output_shape() {
        let g = classify(5, 14).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph"));
        assert!(dot.contains("c0 [label=\"1, 4\"]"));
        assert!(dot.contains("c1 [label=\"2, 3\"]"));
        assert!(dot.contains("EqualOrder"));
        assert!(dot.ends_with("}\n"));
    }
}
