//! Constacyclic code machinery: Omega sets, q-cyclotomic cosets, defining
//! sets, generator polynomials, code construction, counting and duals.
//!
//! An a-constacyclic code of length n over GF(q) (with gcd(n,q) = 1 and
//! a != 0) is an ideal of F_q[x]/(x^n - a), generated by a unique monic
//! divisor of x^n - a. Fixing t = ord(a) and a primitive (tn)-th root of
//! unity alpha with alpha^n = a, the roots of x^n - a are exactly
//! { alpha^r : r in Omega_a } with Omega_a = { kt+1 mod tn : 0 <= k < n },
//! and the monic divisors correspond to unions of q-cyclotomic cosets
//! inside Omega_a — the defining sets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::field::{ExtElem, Fe, FieldSpec, fix_root, Root};
use crate::mat::{Mat, Rref};
use crate::poly::Poly;
use crate::error::{Error, Result};

/// The exponent set Omega_a labeling the roots of x^n - a.
#[derive(Clone, Debug)]
pub struct OmegaSet {
    pub q: u32,
    pub n: u64,
    pub a: Fe,
    /// Multiplicative order of a.
    pub t: u64,
    pub tn: u64,
    /// Sorted residues { kt+1 mod tn }.
    pub residues: Vec<u64>,
}

/// One q-cyclotomic coset modulo tn, members sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloCoset {
    pub modulus: u64,
    pub members: Vec<u64>,
}

impl CycloCoset {
    /// Canonical representative: the smallest member.
    pub fn leader(&self) -> u64 {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn label(&self) -> String {
        format!("Z{}", self.leader())
    }
}

/// Compute Omega_a for the a-constacyclic codes of length n over the field.
pub fn omega(field: &Arc<FieldSpec>, n: u64, a: Fe) -> Result<OmegaSet> {
    if a.is_zero() {
        return Err(Error::precondition("shift constant a must be nonzero"));
    }
    if n == 0 || num_integer::gcd(n, field.q as u64) != 1 {
        return Err(Error::precondition(format!(
            "length n = {n} must be positive and coprime to q = {}",
            field.q
        )));
    }
    let t = field.element_order(a)?;
    let tn = t * n;
    let mut residues: Vec<u64> = (0..n).map(|k| (k * t + 1) % tn).collect();
    residues.sort_unstable();
    debug_assert_eq!(residues.len(), n as usize);
    debug_assert!(residues.iter().all(|r| r % t == 1 % t));
    Ok(OmegaSet { q: field.q, n, a, t, tn, residues })
}

/// Partition Omega_a into q-cyclotomic cosets, ordered by smallest member.
pub fn partition_omega(om: &OmegaSet) -> Vec<CycloCoset> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &s in &om.residues {
        if seen.contains(&s) {
            continue;
        }
        let mut members = Vec::new();
        let mut cur = s;
        loop {
            members.push(cur);
            seen.insert(cur);
            cur = cur * om.q as u64 % om.tn;
            if cur == s {
                break;
            }
        }
        members.sort_unstable();
        out.push(CycloCoset { modulus: om.tn, members });
    }
    out
}

/// Number of a-constacyclic codes of length n: one per union of cosets.
pub fn count_codes(field: &Arc<FieldSpec>, n: u64, a: Fe) -> Result<u128> {
    let om = omega(field, n, a)?;
    let m = partition_omega(&om).len();
    if m >= 128 {
        return Err(Error::precondition(format!(
            "code count 2^{m} overflows u128"
        )));
    }
    Ok(1u128 << m)
}

/// The algebraic identity of a constacyclic code: field order, length,
/// shift constant (as an exponent of the canonical generator xi) and the
/// defining set, stored as sorted residues.
///
/// Text form `q:n:e:r1,r2,...` where a = xi^e; an empty residue list is the
/// full space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeSpec {
    pub q: u32,
    pub n: u64,
    pub a_exp: u64,
    pub defining: Vec<u64>,
}

impl CodeSpec {
    pub fn new(q: u32, n: u64, a_exp: u64, mut defining: Vec<u64>) -> CodeSpec {
        defining.sort_unstable();
        defining.dedup();
        CodeSpec { q, n, a_exp, defining }
    }

    pub fn a(&self, field: &FieldSpec) -> Fe {
        field.pow(&field.xi, self.a_exp)
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.defining.iter().map(|r| r.to_string()).collect();
        write!(f, "{}:{}:{}:{}", self.q, self.n, self.a_exp, ds.join(","))
    }
}

impl FromStr for CodeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<CodeSpec> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::parse(format!(
                "code spec {s:?} must have four colon-separated fields q:n:a:D"
            )));
        }
        let q = parts[0]
            .parse()
            .map_err(|_| Error::parse(format!("bad field order in {s:?}")))?;
        let n = parts[1]
            .parse()
            .map_err(|_| Error::parse(format!("bad length in {s:?}")))?;
        let a_exp = parts[2]
            .parse()
            .map_err(|_| Error::parse(format!("bad constant exponent in {s:?}")))?;
        let defining = if parts[3].is_empty() {
            Vec::new()
        } else {
            parts[3]
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::parse(format!("bad residue {t:?} in {s:?}")))
                })
                .collect::<Result<Vec<u64>>>()?
        };
        Ok(CodeSpec::new(q, n, a_exp, defining))
    }
}

/// Everything fixed by the triple (q, n, a): the field, Omega_a, its coset
/// partition, and the root of unity that labels code roots. Immutable after
/// construction; share freely across threads.
pub struct FamilyCtx {
    pub field: Arc<FieldSpec>,
    pub n: u64,
    pub a: Fe,
    pub omega: OmegaSet,
    pub cosets: Vec<CycloCoset>,
    pub root: Root,
}

impl fmt::Debug for FamilyCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FamilyCtx(q={}, n={}, a={})",
            self.field.q,
            self.n,
            self.field.fmt_elem(self.a)
        )
    }
}

impl FamilyCtx {
    pub fn new(field: Arc<FieldSpec>, n: u64, a: Fe) -> Result<FamilyCtx> {
        let om = omega(&field, n, a)?;
        let cosets = partition_omega(&om);
        let root = fix_root(&field, n, a)?;
        Ok(FamilyCtx { field, n, a, omega: om, cosets, root })
    }

    pub fn from_spec(spec: &CodeSpec) -> Result<FamilyCtx> {
        let field = Arc::new(FieldSpec::of_order(spec.q)?);
        let a = spec.a(&field);
        FamilyCtx::new(field, spec.n, a)
    }

    pub fn spec(&self, defining: Vec<u64>) -> CodeSpec {
        let a_exp = self.field.discrete_log(self.a).expect("a is nonzero");
        CodeSpec::new(self.field.q, self.n, a_exp, defining)
    }

    /// The coset containing residue r, if r lies in Omega_a.
    pub fn coset_of(&self, r: u64) -> Option<&CycloCoset> {
        self.cosets.iter().find(|c| c.members.binary_search(&r).is_ok())
    }

    /// Union of the cosets led by (or containing) the given residues, as a
    /// sorted defining set.
    pub fn close_under_cosets(&self, labels: &[u64]) -> Result<Vec<u64>> {
        let mut out = BTreeSet::new();
        for &r in labels {
            let c = self.coset_of(r).ok_or_else(|| {
                Error::precondition(format!(
                    "residue {r} is not in Omega for this family (mod {})",
                    self.omega.tn
                ))
            })?;
            out.extend(c.members.iter().copied());
        }
        Ok(out.into_iter().collect())
    }

    /// Check D ⊆ Omega_a and closure under multiplication by q.
    pub fn validate_defining(&self, defining: &[u64]) -> Result<()> {
        let set: BTreeSet<u64> = defining.iter().copied().collect();
        for &r in &set {
            if self.omega.residues.binary_search(&r).is_err() {
                return Err(Error::precondition(format!(
                    "defining-set residue {r} is outside Omega (mod {})",
                    self.omega.tn
                )));
            }
            let qr = r * self.field.q as u64 % self.omega.tn;
            if !set.contains(&qr) {
                return Err(Error::precondition(format!(
                    "defining set is not closed under multiplication by q: \
                     {r} is present but {qr} is missing"
                )));
            }
        }
        Ok(())
    }

    /// The coset leaders of the cosets making up D (assumed validated).
    pub fn leaders_of(&self, defining: &[u64]) -> Vec<u64> {
        self.cosets
            .iter()
            .filter(|c| defining.binary_search(&c.leader()).is_ok())
            .map(|c| c.leader())
            .collect()
    }

    /// x^n - a over the base field.
    pub fn ring_modulus(&self) -> Poly<FieldSpec> {
        let f = &*self.field;
        let mut coeffs = vec![Fe::ZERO; self.n as usize + 1];
        coeffs[0] = f.neg(&self.a);
        coeffs[self.n as usize] = Fe::ONE;
        Poly::from_coeffs(f, coeffs)
    }

    /// The irreducible factor of x^n - a attached to one coset:
    /// f_i(x) = prod_{l in Z(b_i)} (x - alpha^l), projected to the base
    /// field.
    pub fn coset_factor(&self, coset: &CycloCoset) -> Result<Poly<FieldSpec>> {
        self.product_over(&coset.members)
    }

    fn product_over(&self, residues: &[u64]) -> Result<Poly<FieldSpec>> {
        let ext = &self.root.ext;
        let mut acc: Poly<crate::field::ExtField> = Poly::one(ext);
        for &r in residues {
            let root_pow: &ExtElem = self.root.alpha_pow(r);
            let lin = Poly::from_coeffs(ext, vec![ext.neg(root_pow), ext.one()]);
            acc = Poly::mul(ext, &acc, &lin);
        }
        // Project down; every coefficient must be a base-field constant.
        let mut coeffs = Vec::with_capacity(acc.coeffs().len());
        for c in acc.coeffs() {
            let base = ext.project(c).ok_or_else(|| {
                Error::internal(
                    "coset product has a coefficient outside the base field",
                )
            })?;
            coeffs.push(base);
        }
        Ok(Poly::from_coeffs(&*self.field, coeffs))
    }

    /// Generator polynomial of the code with defining set D: the monic
    /// divisor of x^n - a of degree |D| whose roots are alpha^r, r in D.
    pub fn generator_poly(&self, defining: &[u64]) -> Result<Poly<FieldSpec>> {
        self.validate_defining(defining)?;
        self.product_over(defining)
    }

    /// Build the a-constacyclic code with defining set D: k = n - |D|,
    /// generator rows x^j g(x) for 0 <= j < k.
    pub fn build_code(&self, defining: &[u64]) -> Result<LinearCode> {
        let g = self.generator_poly(defining)?;
        let n = self.n as usize;
        let deg = g.degree().expect("generator of a constacyclic code is nonzero");
        let k = n - deg;
        let mut rows = Vec::with_capacity(k);
        for j in 0..k {
            let mut row = vec![Fe::ZERO; n];
            for (i, c) in g.coeffs().iter().enumerate() {
                row[j + i] = *c;
            }
            rows.push(row);
        }
        LinearCode::from_rows(Arc::clone(&self.field), n, rows)
    }

    /// Recover the defining set of a code known (or suspected) to be
    /// a-constacyclic in this family: gcd of the row polynomials with
    /// x^n - a, then read off which alpha^r are roots. Errors if the code is
    /// not an ideal of this ring.
    pub fn recover_defining_set(&self, code: &LinearCode) -> Result<Vec<u64>> {
        if code.n as u64 != self.n || code.field.q != self.field.q {
            return Err(Error::precondition(
                "code length or field does not match the family",
            ));
        }
        let f = &*self.field;
        let mut g = self.ring_modulus();
        for row in code.generator().rows_iter() {
            let p = Poly::from_coeffs(f, row.to_vec());
            g = Poly::gcd(f, &g, &p);
        }
        let deg = g.degree().unwrap_or(0);
        if code.k() + deg != code.n {
            return Err(Error::precondition(
                "code is not constacyclic for this family (wrong ideal dimension)",
            ));
        }
        let ext = &self.root.ext;
        let ge = Poly::from_coeffs(
            ext,
            g.coeffs().iter().map(|c| ext.embed(*c)).collect(),
        );
        let defining: Vec<u64> = self
            .omega
            .residues
            .iter()
            .copied()
            .filter(|&r| ext.is_zero(&ge.eval(ext, self.root.alpha_pow(r))))
            .collect();
        if defining.len() != deg {
            return Err(Error::internal(
                "recovered generator has roots outside Omega",
            ));
        }
        self.validate_defining(&defining)?;
        // The recovered ideal must actually contain the rows (gcd could be a
        // proper divisor only if the code were larger than the ideal).
        let ideal = self.build_code(&defining)?;
        if !ideal.contains_code(code) {
            return Err(Error::precondition(
                "code is not contained in the constacyclic ideal it generates",
            ));
        }
        Ok(defining)
    }
}

/// One a-constacyclic shift: (c_0,...,c_{n-1}) -> (a c_{n-1}, c_0,...,c_{n-2}).
pub fn constacyclic_shift(field: &FieldSpec, a: Fe, v: &[Fe]) -> Vec<Fe> {
    if v.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(v.len());
    out.push(field.mul(&a, &v[v.len() - 1]));
    out.extend_from_slice(&v[..v.len() - 1]);
    out
}

/// Distance knowledge attached to a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistStatus {
    Exact,
    Lower,
    Upper,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceRecord {
    pub value: u64,
    pub status: DistStatus,
}

impl DistanceRecord {
    pub fn exact(value: u64) -> DistanceRecord {
        DistanceRecord { value, status: DistStatus::Exact }
    }

    pub fn lower(value: u64) -> DistanceRecord {
        DistanceRecord { value, status: DistStatus::Lower }
    }
}

/// A linear code over GF(q), held as an independent generator basis plus a
/// cached reduced form for membership tests.
#[derive(Clone)]
pub struct LinearCode {
    pub field: Arc<FieldSpec>,
    pub n: usize,
    gen: Mat,
    rref: Rref,
    /// Best distance knowledge so far, if any.
    pub distance: Option<DistanceRecord>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]_{} code", self.n, self.k(), self.field.q)
    }
}

impl LinearCode {
    /// Build from independent generator rows. Errors if the rows are
    /// dependent (use [`LinearCode::from_span`] to reduce arbitrary rows).
    pub fn from_rows(field: Arc<FieldSpec>, n: usize, rows: Vec<Vec<Fe>>) -> Result<LinearCode> {
        let gen = Mat::from_rows(n, rows);
        let rref = gen.rref(&field);
        if rref.rank() != gen.rows {
            return Err(Error::precondition(
                "generator rows are linearly dependent",
            ));
        }
        Ok(LinearCode { field, n, gen, rref, distance: None })
    }

    /// Build from arbitrary spanning rows, reducing to a basis.
    pub fn from_span(field: Arc<FieldSpec>, n: usize, rows: Vec<Vec<Fe>>) -> LinearCode {
        let all = Mat::from_rows(n, rows);
        let rref = all.rref(&field);
        let rank = rref.rank();
        let basis: Vec<Vec<Fe>> = rref
            .mat
            .rows_iter()
            .take(rank)
            .map(|r| r.to_vec())
            .collect();
        let gen = Mat::from_rows(n, basis);
        let rref = gen.rref(&field);
        LinearCode { field, n, gen, rref, distance: None }
    }

    pub fn zero_code(field: Arc<FieldSpec>, n: usize) -> LinearCode {
        LinearCode::from_span(field, n, Vec::new())
    }

    pub fn full_space(field: Arc<FieldSpec>, n: usize) -> LinearCode {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![Fe::ZERO; n];
                r[i] = Fe::ONE;
                r
            })
            .collect();
        LinearCode::from_rows(field, n, rows).expect("identity rows are independent")
    }

    pub fn k(&self) -> usize {
        self.gen.rows
    }

    pub fn generator(&self) -> &Mat {
        &self.gen
    }

    pub fn rref(&self) -> &Rref {
        &self.rref
    }

    pub fn contains(&self, word: &[Fe]) -> bool {
        self.rref.contains_row(&self.field, word)
    }

    pub fn contains_code(&self, other: &LinearCode) -> bool {
        other.k() <= self.k() && self.rref.contains_rows(&self.field, other.generator())
    }

    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.k() == other.k() && self.contains_code(other)
    }

    /// Is the code invariant under the a-constacyclic shift?
    pub fn is_constacyclic(&self, a: Fe) -> bool {
        self.gen.rows_iter().all(|row| {
            let shifted = constacyclic_shift(&self.field, a, row);
            self.rref.contains_row(&self.field, &shifted)
        })
    }

    /// Euclidean dual: all v with sum_i c_i v_i = 0 for every codeword c.
    pub fn euclidean_dual(&self) -> LinearCode {
        if self.k() == 0 {
            return LinearCode::full_space(Arc::clone(&self.field), self.n);
        }
        let ns = self.gen.nullspace(&self.field);
        let rows: Vec<Vec<Fe>> = ns.rows_iter().map(|r| r.to_vec()).collect();
        LinearCode::from_rows(Arc::clone(&self.field), self.n, rows)
            .expect("nullspace basis is independent")
    }

    /// Entrywise conjugation x -> x^s for q = s^2.
    pub fn conjugate(&self) -> Result<LinearCode> {
        let s = self.conj_exponent()?;
        let rows: Vec<Vec<Fe>> = self
            .gen
            .rows_iter()
            .map(|r| r.iter().map(|v| self.field.pow(v, s)).collect())
            .collect();
        LinearCode::from_rows(Arc::clone(&self.field), self.n, rows)
    }

    fn conj_exponent(&self) -> Result<u64> {
        let f = &self.field;
        if f.m % 2 != 0 {
            return Err(Error::precondition(format!(
                "Hermitian operations need a square field order, got {}",
                f.q
            )));
        }
        Ok((f.p as u64).pow(f.m / 2))
    }

    /// Hermitian dual: all v with sum_i c_i v_i^s = 0 (q = s^2). Equals the
    /// Euclidean dual of the entrywise-conjugated code.
    pub fn hermitian_dual(&self) -> Result<LinearCode> {
        let conj = if self.k() == 0 {
            LinearCode::zero_code(Arc::clone(&self.field), self.n)
        } else {
            self.conjugate()?
        };
        self.conj_exponent()?;
        Ok(conj.euclidean_dual())
    }

    /// All q^k codewords, row-major expansion of message space; intended for
    /// small codes in tests and weight enumeration fallbacks.
    pub fn iter_codewords(&self) -> CodewordIter<'_> {
        CodewordIter {
            code: self,
            msg: vec![Fe::ZERO; self.k()],
            current: vec![Fe::ZERO; self.n],
            done: false,
        }
    }
}

/// Odometer over messages; maintains the running codeword incrementally.
pub struct CodewordIter<'a> {
    code: &'a LinearCode,
    msg: Vec<Fe>,
    current: Vec<Fe>,
    done: bool,
}

impl Iterator for CodewordIter<'_> {
    type Item = Vec<Fe>;

    fn next(&mut self) -> Option<Vec<Fe>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let f = &self.code.field;
        let k = self.msg.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            let digit = self.msg[i].0 + 1;
            // Moving message digit i from value v to v+1 adds one copy of
            // generator row i (values enumerate GF(q) in packed order, but
            // the increment is by xi-walk: simply recompute via delta).
            if digit < f.q {
                let old = self.msg[i];
                let new = Fe(digit);
                self.msg[i] = new;
                let delta = f.sub(&new, &old);
                for (c, g) in self.current.iter_mut().zip(self.code.gen.row(i)) {
                    let t = f.mul(&delta, g);
                    *c = f.add(c, &t);
                }
                break;
            }
            // Wrap digit i back to zero: subtract msg[i] * row i.
            let old = self.msg[i];
            self.msg[i] = Fe::ZERO;
            for (c, g) in self.current.iter_mut().zip(self.code.gen.row(i)) {
                let t = f.mul(&old, g);
                *c = f.sub(c, &t);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::of_order(q).unwrap())
    }

    fn poly(f: &FieldSpec, cs: &[u32]) -> Poly<FieldSpec> {
        Poly::from_coeffs(f, cs.iter().map(|&c| Fe(c)).collect())
    }

    #[test]
    fn omega_examples() {
        let f3 = gf(3);
        let om = omega(&f3, 10, Fe(2)).unwrap();
        assert_eq!((om.t, om.tn), (2, 20));
        assert_eq!(om.residues, vec![1, 3, 5, 7, 9, 11, 13, 15, 17, 19]);

        let om1 = omega(&f3, 10, Fe(1)).unwrap();
        assert_eq!((om1.t, om1.tn), (1, 10));
        assert_eq!(om1.residues, (0..10).collect::<Vec<u64>>());

        let f5 = gf(5);
        let om4 = omega(&f5, 3, Fe(4)).unwrap();
        assert_eq!((om4.t, om4.tn), (2, 6));
        assert_eq!(om4.residues, vec![1, 3, 5]);

        assert!(omega(&f3, 9, Fe(1)).is_err()); // gcd(9,3) != 1
        assert!(omega(&f3, 10, Fe(0)).is_err());
    }

    #[test]
    fn partition_examples() {
        let f3 = gf(3);
        let om = omega(&f3, 10, Fe(2)).unwrap();
        let cosets = partition_omega(&om);
        let members: Vec<Vec<u64>> = cosets.iter().map(|c| c.members.clone()).collect();
        assert_eq!(
            members,
            vec![vec![1, 3, 7, 9], vec![5, 15], vec![11, 13, 17, 19]]
        );

        let om1 = omega(&f3, 10, Fe(1)).unwrap();
        let cosets = partition_omega(&om1);
        let members: Vec<Vec<u64>> = cosets.iter().map(|c| c.members.clone()).collect();
        assert_eq!(
            members,
            vec![vec![0], vec![1, 3, 7, 9], vec![2, 4, 6, 8], vec![5]]
        );

        // n = 1: a single coset {1 mod t}.
        let f5 = gf(5);
        let om = omega(&f5, 1, Fe(2)).unwrap();
        let cosets = partition_omega(&om);
        assert_eq!(cosets.len(), 1);
        assert_eq!(cosets[0].members, vec![1]);
    }

    #[test]
    fn coset_sizes_sum_to_n() {
        for q in [3u32, 4, 5, 7, 8, 9] {
            let f = gf(q);
            for n in 1..=60u64 {
                if num_integer::gcd(n, q as u64) != 1 {
                    continue;
                }
                for a in f.elements().skip(1) {
                    let om = omega(&f, n, a).unwrap();
                    let cosets = partition_omega(&om);
                    let total: usize = cosets.iter().map(|c| c.len()).sum();
                    assert_eq!(total, n as usize, "q={q} n={n} a={a:?}");
                    // Closure under multiplication by q.
                    for c in &cosets {
                        for &s in &c.members {
                            let qs = s * q as u64 % om.tn;
                            assert!(c.members.binary_search(&qs).is_ok());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn code_counts() {
        let f3 = gf(3);
        assert_eq!(count_codes(&f3, 10, Fe(1)).unwrap(), 16);
        assert_eq!(count_codes(&f3, 10, Fe(2)).unwrap(), 8);
        let f5 = gf(5);
        assert_eq!(count_codes(&f5, 12, Fe(2)).unwrap(), 8);
        assert_eq!(count_codes(&f5, 12, Fe(4)).unwrap(), 64);
    }

    #[test]
    fn generator_poly_gf3_n10() {
        let ctx = FamilyCtx::new(gf(3), 10, Fe(2)).unwrap();
        let g = ctx.generator_poly(&[5, 15]).unwrap();
        assert_eq!(g, poly(&ctx.field, &[1, 0, 1])); // x^2 + 1

        // Empty defining set -> 1; full Omega -> x^n - a.
        let one = ctx.generator_poly(&[]).unwrap();
        assert_eq!(one, poly(&ctx.field, &[1]));
        let full = ctx.generator_poly(&ctx.omega.residues.clone()).unwrap();
        assert_eq!(full, ctx.ring_modulus());

        // Not coset-closed -> precondition error.
        assert!(ctx.generator_poly(&[5]).is_err());
        assert!(ctx.generator_poly(&[2]).is_err()); // outside Omega
    }

    #[test]
    fn factorizations_match_known_tables() {
        // x^10 - 1 over GF(3) = (x+1)(x+2)(x^4+x^3+x^2+x+1)(x^4+2x^3+x^2+2x+1),
        // cosets {0},{5} give the linear factors and {1,..},{2,..} the quartics.
        let ctx = FamilyCtx::new(gf(3), 10, Fe(1)).unwrap();
        let mut factors: Vec<Vec<u32>> = ctx
            .cosets
            .iter()
            .map(|c| {
                ctx.coset_factor(c)
                    .unwrap()
                    .coeffs()
                    .iter()
                    .map(|x| x.0)
                    .collect()
            })
            .collect();
        factors.sort();
        let mut expect = vec![
            vec![2, 1],             // x - 1 = x + 2
            vec![1, 1],             // x + 1
            vec![1, 1, 1, 1, 1],    // x^4+x^3+x^2+x+1
            vec![1, 2, 1, 2, 1],    // x^4+2x^3+x^2+2x+1
        ];
        expect.sort();
        assert_eq!(factors, expect);

        // x^10 - 2 over GF(3) = (x^2+1)(x^4+x^3+2x+1)(x^4+2x^3+x+1).
        let ctx = FamilyCtx::new(gf(3), 10, Fe(2)).unwrap();
        let mut factors: Vec<Vec<u32>> = ctx
            .cosets
            .iter()
            .map(|c| {
                ctx.coset_factor(c)
                    .unwrap()
                    .coeffs()
                    .iter()
                    .map(|x| x.0)
                    .collect()
            })
            .collect();
        factors.sort();
        let mut expect = vec![
            vec![1, 0, 1],
            vec![1, 2, 0, 1, 1],
            vec![1, 1, 0, 2, 1],
        ];
        expect.sort();
        assert_eq!(factors, expect);
    }

    #[test]
    fn factor_products_reconstruct_ring_modulus() {
        for (q, ns) in [(3u32, vec![1u64, 2, 4, 8, 10, 14]), (4, vec![3, 5, 9, 15]), (5, vec![1, 3, 8, 12])] {
            let f = gf(q);
            for n in ns {
                for a in f.elements().skip(1) {
                    let ctx = FamilyCtx::new(Arc::clone(&f), n, a).unwrap();
                    let mut prod = Poly::one(&*ctx.field);
                    for c in &ctx.cosets {
                        let fac = ctx.coset_factor(c).unwrap();
                        assert_eq!(fac.degree(), Some(c.len()));
                        assert!(fac.is_monic(&*ctx.field));
                        prod = Poly::mul(&*ctx.field, &prod, &fac);
                    }
                    assert_eq!(prod, ctx.ring_modulus(), "q={q} n={n} a={a:?}");
                }
            }
        }
    }

    #[test]
    fn build_code_dimensions() {
        let ctx = FamilyCtx::new(gf(3), 10, Fe(2)).unwrap();
        let c = ctx.build_code(&[5, 15]).unwrap();
        assert_eq!((c.n, c.k()), (10, 8));

        let f4 = gf(4);
        let w = f4.xi;
        let ctx = FamilyCtx::new(f4, 39, w).unwrap();
        let d = ctx.close_under_cosets(&[10, 19]).unwrap();
        let c = ctx.build_code(&d).unwrap();
        assert_eq!((c.n, c.k()), (39, 27));

        // Full defining set -> zero code.
        let ctx = FamilyCtx::new(gf(3), 10, Fe(2)).unwrap();
        let z = ctx.build_code(&ctx.omega.residues.clone()).unwrap();
        assert_eq!(z.k(), 0);
    }

    #[test]
    fn shift_basics() {
        let f3 = gf(3);
        assert_eq!(
            constacyclic_shift(&f3, Fe(1), &[Fe(1), Fe(0), Fe(0)]),
            vec![Fe(0), Fe(1), Fe(0)]
        );
        assert_eq!(
            constacyclic_shift(&f3, Fe(2), &[Fe(0), Fe(0), Fe(1)]),
            vec![Fe(2), Fe(0), Fe(0)]
        );
        // n shifts multiply by a.
        let v = vec![Fe(1), Fe(2), Fe(0), Fe(1)];
        let mut w = v.clone();
        for _ in 0..4 {
            w = constacyclic_shift(&f3, Fe(2), &w);
        }
        let scaled: Vec<Fe> = v.iter().map(|x| f3.mul(&Fe(2), x)).collect();
        assert_eq!(w, scaled);
    }

    #[test]
    fn constacyclic_closure() {
        for q in [3u32, 4, 5] {
            let f = gf(q);
            for n in [4u64, 6, 7, 9].iter().filter(|&&n| num_integer::gcd(n, q as u64) == 1) {
                for a in f.elements().skip(1) {
                    let ctx = FamilyCtx::new(Arc::clone(&f), *n, a).unwrap();
                    // All single-coset defining sets plus empty and full.
                    let mut sets: Vec<Vec<u64>> =
                        ctx.cosets.iter().map(|c| c.members.clone()).collect();
                    sets.push(Vec::new());
                    sets.push(ctx.omega.residues.clone());
                    for d in sets {
                        let code = ctx.build_code(&d).unwrap();
                        assert!(code.is_constacyclic(a), "q={q} n={n} a={a:?} D={d:?}");
                    }
                }
            }
        }

        // Full space is a-constacyclic for every a; a generic 1-dim code is not.
        let f3 = gf(3);
        let full = LinearCode::full_space(Arc::clone(&f3), 5);
        for a in f3.elements().skip(1) {
            assert!(full.is_constacyclic(a));
        }
        let lop =
            LinearCode::from_rows(Arc::clone(&f3), 3, vec![vec![Fe(1), Fe(0), Fe(0)]]).unwrap();
        assert!(!lop.is_constacyclic(Fe(1)));
    }

    #[test]
    fn duals() {
        let f3 = gf(3);
        let full = LinearCode::full_space(Arc::clone(&f3), 6);
        assert_eq!(full.euclidean_dual().k(), 0);
        let zero = LinearCode::zero_code(Arc::clone(&f3), 6);
        assert_eq!(zero.euclidean_dual().k(), 6);

        // Dual of dual is the original row space; dual of a-constacyclic is
        // a^{-1}-constacyclic.
        let ctx = FamilyCtx::new(Arc::clone(&f3), 10, Fe(2)).unwrap();
        for d in [vec![5u64, 15], vec![1, 3, 7, 9], vec![1, 3, 5, 7, 9, 15]] {
            let code = ctx.build_code(&d).unwrap();
            let dual = code.euclidean_dual();
            assert_eq!(dual.k(), 10 - code.k());
            assert!(dual.euclidean_dual().same_code(&code));
            let a_inv = f3.inv(&Fe(2));
            assert!(dual.is_constacyclic(a_inv));
        }
    }

    #[test]
    fn hermitian_duals_gf4() {
        let f4 = gf(4);
        let full = LinearCode::full_space(Arc::clone(&f4), 5);
        assert_eq!(full.hermitian_dual().unwrap().k(), 0);
        let zero = LinearCode::zero_code(Arc::clone(&f4), 5);
        assert_eq!(zero.hermitian_dual().unwrap().k(), 5);

        let w = f4.xi;
        let ctx = FamilyCtx::new(Arc::clone(&f4), 5, Fe(1)).unwrap();
        let d = ctx.close_under_cosets(&[1]).unwrap();
        let code = ctx.build_code(&d).unwrap();
        let hd = code.hermitian_dual().unwrap();
        assert_eq!(hd.k(), 5 - code.k());
        // Check the defining inner product directly.
        for c in code.generator().rows_iter() {
            for v in hd.generator().rows_iter() {
                let dot = c
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (x, y)| {
                        let conj = f4.pow(y, 2);
                        f4.add(&acc, &f4.mul(x, &conj))
                    });
                assert_eq!(dot, Fe::ZERO);
            }
        }
        // Double Hermitian dual returns the original.
        assert!(hd.hermitian_dual().unwrap().same_code(&code));

        // Non-square fields are rejected.
        let f3 = gf(3);
        let c3 = LinearCode::full_space(f3, 4);
        assert!(c3.hermitian_dual().is_err());
        let _ = w;
    }

    #[test]
    fn spec_text_round_trip() {
        let spec = CodeSpec::new(4, 39, 1, vec![19, 37, 10, 40, 34, 25]);
        let s = spec.to_string();
        assert_eq!(s, "4:39:1:10,19,25,34,37,40");
        let back: CodeSpec = s.parse().unwrap();
        assert_eq!(back, spec);

        let empty = CodeSpec::new(3, 10, 0, vec![]);
        let s = empty.to_string();
        assert_eq!(s, "3:10:0:");
        let back: CodeSpec = s.parse().unwrap();
        assert_eq!(back, empty);

        assert!("3:10:0".parse::<CodeSpec>().is_err());
        assert!("3:10:0:a,b".parse::<CodeSpec>().is_err());
        assert!("x:10:0:".parse::<CodeSpec>().is_err());
    }

    #[test]
    fn recover_defining_set_round_trip() {
        let ctx = FamilyCtx::new(gf(3), 10, Fe(2)).unwrap();
        for d in [vec![], vec![5u64, 15], vec![1, 3, 5, 7, 9, 15]] {
            let code = ctx.build_code(&d).unwrap();
            assert_eq!(ctx.recover_defining_set(&code).unwrap(), d);
        }
        // A non-constacyclic code is rejected.
        let f3 = gf(3);
        let bad = LinearCode::from_rows(
            f3,
            10,
            vec![{
                let mut r = vec![Fe::ZERO; 10];
                r[0] = Fe(1);
                r
            }],
        )
        .unwrap();
        assert!(ctx.recover_defining_set(&bad).is_err());
    }

    #[test]
    fn codeword_iterator_counts() {
        let ctx = FamilyCtx::new(gf(3), 4, Fe(1)).unwrap();
        let d = ctx.close_under_cosets(&[1]).unwrap(); // {1,3}
        let code = ctx.build_code(&d).unwrap();
        assert_eq!(code.k(), 2);
        let words: Vec<Vec<Fe>> = code.iter_codewords().collect();
        assert_eq!(words.len(), 9);
        // All distinct, all in the code.
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 9);
        for w in &words {
            assert!(code.contains(w));
        }
    }
}
