//! Small finite fields GF(p^m) with a deterministic construction, plus the
//! extension fields GF(q^z) that host roots of unity.
//!
//! Determinism conventions (they fix every downstream label in the crate):
//!
//! * the modulus of GF(p^m) is the lexicographically smallest monic
//!   irreducible of degree m over GF(p), coefficients compared from the
//!   constant term upward;
//! * the canonical generator `xi` is the smallest element of multiplicative
//!   order q-1 in representation order (plain integers for prime fields,
//!   the same low-degree-first coefficient order otherwise);
//! * extension fields reuse both rules over the base field, and the fixed
//!   primitive root of unity is derived from the first base-ordered element
//!   whose power has the full requested order.
//!
//! Elements are stored as base-p digit strings packed into a `u32`
//! (digit i is the coefficient of x^i). Once a field is built, products and
//! inverses go through log/exp tables; sums go through an addition table for
//! q <= 512 and digit arithmetic above that.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, multiplicative_order};
use crate::error::{Error, Result};

/// A field element, stored as packed base-p digits of its coefficient
/// vector. Only meaningful relative to the [`FieldSpec`] that produced it;
/// arithmetic must go through that owner.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Arithmetic context shared by [`crate::poly::Poly`] so the same polynomial
/// routines run over a base field and over an extension field.
pub trait FieldArith {
    type El: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    /// Multiplicative inverse of a nonzero element. Panics on zero: callers
    /// guard for it (polynomial division checks its divisor explicitly).
    fn inv(&self, a: &Self::El) -> Self::El;
}

/// GF(p^m) for a prime p with p^m <= 2^16, built deterministically.
#[derive(Clone)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    /// Monic modulus coefficients c_0..c_m over GF(p) (c_m = 1, length m+1).
    /// For m = 1 this is the polynomial x, and elements are plain residues.
    pub modulus: Vec<u32>,
    /// Canonical generator of the multiplicative group.
    pub xi: Fe,
    /// exp[j] = xi^j for j in 0..q-1.
    exp: Vec<u32>,
    /// log[v] = j with xi^j = v for nonzero v; log[0] is a sentinel.
    log: Vec<u32>,
    /// Full addition table (q*q entries) when q <= 512, else empty.
    add_table: Vec<u32>,
    /// Prime factorization of q - 1, for order computations.
    factors_q1: Vec<(u64, u32)>,
    /// Elements listed in representation order (rank -> packed value).
    rep_order: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// Digits of `v` in base `p`, least significant first, padded to `m`.
fn digits(v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut v = v;
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn pack(digs: &[u32], p: u32) -> u32 {
    digs.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Packed value of the element whose representation rank is `rank`:
/// the rank reads the coefficient vector c_0..c_{m-1} with c_0 most
/// significant, giving the lexicographic low-degree-first order.
fn packed_from_rank(rank: u32, p: u32, m: u32) -> u32 {
    let mut r = rank;
    let mut coeffs = vec![0u32; m as usize];
    for i in (0..m as usize).rev() {
        // c_0 is the most significant rank digit, so peel upward from c_{m-1}.
        coeffs[i] = r % p;
        r /= p;
    }
    pack(&coeffs, p)
}

/// Raw polynomial arithmetic on packed digit strings, used only while the
/// tables are being bootstrapped.
mod raw {
    use super::digits;

    pub fn add(a: u32, b: u32, p: u32, m: u32) -> u32 {
        let da = digits(a, p, m);
        let db = digits(b, p, m);
        let mut out = 0u32;
        let mut mult = 1u32;
        for i in 0..m as usize {
            out += (da[i] + db[i]) % p * mult;
            mult *= p;
        }
        out
    }

    /// Product of two elements modulo the field modulus (coefficients
    /// c_0..c_m, monic).
    pub fn mul(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
        let da = digits(a, p, m);
        let db = digits(b, p, m);
        let mut prod = vec![0u64; 2 * m as usize];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        // Reduce by the monic modulus: x^m = -(c_0 + c_1 x + ... + c_{m-1} x^{m-1}).
        for d in (m as usize..2 * m as usize).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (j, &mj) in modulus.iter().take(m as usize).enumerate() {
                let sub = c * mj as u64 % p as u64;
                let idx = d - m as usize + j;
                prod[idx] = (prod[idx] + p as u64 - sub) % p as u64;
            }
        }
        let mut out = 0u32;
        let mut mult = 1u32;
        for d in prod.iter().take(m as usize) {
            out += *d as u32 * mult;
            mult *= p;
        }
        out
    }
}

impl FieldSpec {
    /// Build GF(p^m). Errors unless p is prime, m >= 1 and p^m <= 2^16.
    pub fn new(p: u32, m: u32) -> Result<FieldSpec> {
        if !is_prime(p as u64) {
            return Err(Error::precondition(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::precondition("extension degree m must be >= 1"));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= 1 << 16).ok_or_else(|| {
            Error::precondition(format!("field order {p}^{m} exceeds 2^16"))
        })? as u32;

        let modulus = find_modulus(p, m)?;
        let mut field = FieldSpec {
            p,
            m,
            q,
            modulus,
            xi: Fe::ZERO,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
            factors_q1: factorize(q as u64 - 1),
            rep_order: Vec::new(),
        };

        field.rep_order = (0..q).map(|r| packed_from_rank(r, p, m)).collect();
        field.xi = field.find_xi()?;
        field.build_tables();
        Ok(field)
    }

    /// Convenience constructor from the order q = p^m.
    pub fn of_order(q: u32) -> Result<FieldSpec> {
        let (p, m) = crate::arith::prime_power(q as u64)
            .ok_or_else(|| Error::precondition(format!("{q} is not a prime power")))?;
        FieldSpec::new(p as u32, m)
    }

    pub fn shared(p: u32, m: u32) -> Result<Arc<FieldSpec>> {
        Ok(Arc::new(FieldSpec::new(p, m)?))
    }

    fn raw_order(&self, a: u32) -> u64 {
        // Multiplicative order via the factorization of q-1, using raw ops
        // (called before tables exist).
        debug_assert!(a != 0);
        let mut ord = self.q as u64 - 1;
        for &(r, e) in &self.factors_q1 {
            for _ in 0..e {
                let cand = ord / r;
                if self.raw_pow(a, cand) == 1 {
                    ord = cand;
                } else {
                    break;
                }
            }
        }
        ord
    }

    fn raw_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = raw::mul(acc, base, self.p, self.m, &self.modulus);
            }
            base = raw::mul(base, base, self.p, self.m, &self.modulus);
            e >>= 1;
        }
        acc
    }

    fn find_xi(&self) -> Result<Fe> {
        for &v in self.rep_order.iter().skip(1) {
            if self.raw_order(v) == self.q as u64 - 1 {
                return Ok(Fe(v));
            }
        }
        Err(Error::internal(format!(
            "no generator found in GF({})",
            self.q
        )))
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![u32::MAX; q];
        let mut acc = 1u32;
        for j in 0..q - 1 {
            exp.push(acc);
            log[acc as usize] = j as u32;
            acc = raw::mul(acc, self.xi.0, self.p, self.m, &self.modulus);
        }
        debug_assert_eq!(acc, 1, "generator order must be q-1");
        self.exp = exp;
        self.log = log;
        if q <= 512 {
            let mut add = vec![0u32; q * q];
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    add[(a as usize) * q + b as usize] = raw::add(a, b, self.p, self.m);
                }
            }
            self.add_table = add;
        }
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.q
    }

    /// Representation rank of an element (its position in the canonical
    /// element order). For prime fields this is the integer value itself.
    pub fn rep_rank(&self, a: Fe) -> u32 {
        digits(a.0, self.p, self.m)
            .iter()
            .fold(0, |acc, &d| acc * self.p + d)
    }

    /// Elements in representation order.
    pub fn elements_rep_order(&self) -> impl Iterator<Item = Fe> + '_ {
        self.rep_order.iter().map(|&v| Fe(v))
    }

    /// Elements in packed-value order (0 first).
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        digits(a.0, self.p, self.m)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::precondition(format!(
                "coefficient vector {coeffs:?} is not reduced for GF({})",
                self.q
            )));
        }
        Ok(Fe(pack(coeffs, self.p)))
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        if !self.add_table.is_empty() {
            return Fe(self.add_table[(a.0 as usize) * self.q as usize + b.0 as usize]);
        }
        Fe(raw::add(a.0, b.0, self.p, self.m))
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        if a.is_zero() {
            return *a;
        }
        // -(a) = (p-1) * a digitwise.
        let digs: Vec<u32> = digits(a.0, self.p, self.m)
            .iter()
            .map(|&d| (self.p - d) % self.p)
            .collect();
        Fe(pack(&digs, self.p))
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let nb = self.neg(b);
        self.add(a, &nb)
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        let j = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        Fe(self.exp[(j % (self.q as u64 - 1)) as usize])
    }

    pub fn inv(&self, a: &Fe) -> Fe {
        assert!(!a.is_zero(), "inverse of zero in GF({})", self.q);
        let j = self.log[a.0 as usize] as u64;
        Fe(self.exp[((self.q as u64 - 1 - j) % (self.q as u64 - 1)) as usize])
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Fe {
        let ib = self.inv(b);
        self.mul(a, &ib)
    }

    pub fn pow(&self, a: &Fe, e: u64) -> Fe {
        if a.is_zero() {
            return if e == 0 { Fe::ONE } else { Fe::ZERO };
        }
        let j = self.log[a.0 as usize] as u128 * e as u128 % (self.q as u128 - 1);
        Fe(self.exp[j as usize])
    }

    /// xi^e for e reduced mod q-1 (e may be any integer).
    pub fn xi_pow(&self, e: i64) -> Fe {
        let e = e.rem_euclid(self.q as i64 - 1);
        Fe(self.exp[e as usize])
    }

    /// Discrete logarithm base xi; None for zero.
    pub fn discrete_log(&self, a: Fe) -> Option<u64> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize] as u64)
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::precondition("order of zero is undefined"));
        }
        let dlog = self.log[a.0 as usize] as u64;
        let q1 = self.q as u64 - 1;
        Ok(q1 / num_integer::gcd(dlog, q1))
    }

    /// Render an element: integers for prime fields, `0`/`1`/`w`/`w^k`
    /// (powers of the canonical generator) for extension fields.
    pub fn fmt_elem(&self, a: Fe) -> String {
        if self.m == 1 {
            return a.0.to_string();
        }
        match self.discrete_log(a) {
            None => "0".into(),
            Some(0) => "1".into(),
            Some(1) => "w".into(),
            Some(k) => format!("w^{k}"),
        }
    }

    /// Parse an element from the notation produced by `fmt_elem`, plus the
    /// `x^k` form meaning xi^k.
    pub fn parse_elem(&self, s: &str) -> Result<Fe> {
        let s = s.trim();
        let pow_of_xi = |k: u64| self.pow(&self.xi, k);
        if let Some(rest) = s.strip_prefix("w^").or_else(|| s.strip_prefix("x^")) {
            let k: u64 = rest
                .parse()
                .map_err(|_| Error::parse(format!("bad exponent in constant {s:?}")))?;
            return Ok(pow_of_xi(k));
        }
        if s == "w" || s == "x" {
            return Ok(self.xi);
        }
        let v: u32 = s
            .parse()
            .map_err(|_| Error::parse(format!("bad constant {s:?} for GF({})", self.q)))?;
        if self.m == 1 {
            if v >= self.q {
                return Err(Error::parse(format!("constant {v} out of range for GF({})", self.q)));
            }
            Ok(Fe(v))
        } else if v <= 1 {
            Ok(Fe(v))
        } else {
            Err(Error::parse(format!(
                "constants of GF({}) must use w^k notation (got {s:?})",
                self.q
            )))
        }
    }
}

impl FieldArith for FieldSpec {
    type El = Fe;

    fn zero(&self) -> Fe {
        Fe::ZERO
    }
    fn one(&self) -> Fe {
        Fe::ONE
    }
    fn is_zero(&self, a: &Fe) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        FieldSpec::add(self, a, b)
    }
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        FieldSpec::sub(self, a, b)
    }
    fn neg(&self, a: &Fe) -> Fe {
        FieldSpec::neg(self, a)
    }
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        FieldSpec::mul(self, a, b)
    }
    fn inv(&self, a: &Fe) -> Fe {
        FieldSpec::inv(self, a)
    }
}

/// Lexicographically smallest monic irreducible of degree m over GF(p),
/// coefficients compared low-degree-first. Irreducibility by trial division
/// against every monic polynomial of degree 1..=m/2.
fn find_modulus(p: u32, m: u32) -> Result<Vec<u32>> {
    if m == 1 {
        return Ok(vec![0, 1]); // the polynomial x; elements are residues mod p
    }
    let pm = (p as u64).pow(m) as u32;
    'cand: for rank in 0..pm {
        let mut coeffs = digits(packed_from_rank(rank, p, m), p, m);
        coeffs.push(1); // monic
        if coeffs[0] == 0 {
            continue; // divisible by x
        }
        for d in 1..=m / 2 {
            let pd = (p as u64).pow(d) as u32;
            for dv in 0..pd {
                let mut div = digits(dv, p, d);
                div.push(1);
                if poly_divides(&div, &coeffs, p) {
                    continue 'cand;
                }
            }
        }
        return Ok(coeffs);
    }
    Err(Error::internal(format!(
        "no irreducible of degree {m} over GF({p})"
    )))
}

/// Does monic `div` divide monic `f` over GF(p)? (Integer-coefficient
/// helper for modulus bootstrap only.)
fn poly_divides(div: &[u32], f: &[u32], p: u32) -> bool {
    let mut rem: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dd = div.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        let top = rem.len() - 1;
        if lead != 0 {
            for (j, &c) in div.iter().enumerate() {
                let idx = top - dd + j;
                rem[idx] = (rem[idx] + p as u64 * lead - lead * c as u64 % p as u64) % p as u64;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

// ---------------------------------------------------------------------------
// Extension fields
// ---------------------------------------------------------------------------

/// Element of GF(q^z): coefficient vector over the base field, fixed
/// length z.
pub type ExtElem = Vec<Fe>;

/// GF(q^z) over a base [`FieldSpec`], as plain polynomial arithmetic modulo
/// a deterministically chosen irreducible. No log tables at this level.
#[derive(Clone)]
pub struct ExtField {
    pub base: Arc<FieldSpec>,
    pub z: u32,
    /// Monic modulus over the base field, coefficients c_0..c_z (c_z = 1).
    pub modulus: Vec<Fe>,
    /// q^z.
    pub order: BigUint,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.base.q, self.z)
    }
}

impl ExtField {
    pub fn new(base: Arc<FieldSpec>, z: u32) -> Result<ExtField> {
        if z == 0 {
            return Err(Error::precondition("extension degree z must be >= 1"));
        }
        let order = BigUint::from(base.q).pow(z);
        let modulus = find_ext_modulus(&base, z)?;
        Ok(ExtField { base, z, modulus, order })
    }

    pub fn zero(&self) -> ExtElem {
        vec![Fe::ZERO; self.z as usize]
    }

    pub fn one(&self) -> ExtElem {
        let mut e = self.zero();
        e[0] = Fe::ONE;
        e
    }

    /// Embed a base-field constant.
    pub fn embed(&self, a: Fe) -> ExtElem {
        let mut e = self.zero();
        e[0] = a;
        e
    }

    /// Project back to the base field if the element is a constant.
    pub fn project(&self, a: &ExtElem) -> Option<Fe> {
        if a[1..].iter().all(|c| c.is_zero()) {
            Some(a[0])
        } else {
            None
        }
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let z = self.z as usize;
        let f = &*self.base;
        let mut prod = vec![Fe::ZERO; 2 * z - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = f.mul(x, y);
                prod[i + j] = f.add(&prod[i + j], &t);
            }
        }
        // Reduce by the monic modulus.
        for d in (z..2 * z - 1).rev() {
            let c = prod[d];
            if c.is_zero() {
                continue;
            }
            prod[d] = Fe::ZERO;
            for j in 0..z {
                let t = f.mul(&c, &self.modulus[j]);
                prod[d - z + j] = f.sub(&prod[d - z + j], &t);
            }
        }
        prod.truncate(z);
        prod
    }

    pub fn pow_u64(&self, a: &ExtElem, mut e: u64) -> ExtElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &ExtElem, e: &BigUint) -> ExtElem {
        let mut acc = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Inverse of a nonzero element via extended Euclid on coefficient
    /// polynomials.
    pub fn inv(&self, a: &ExtElem) -> ExtElem {
        assert!(!self.is_zero(a), "inverse of zero in {self:?}");
        // xi^(q^z - 2) would need the big order; extended gcd is direct.
        use crate::poly::Poly;
        let f = &*self.base;
        let pa = Poly::from_coeffs(f, a.clone());
        let pm = Poly::from_coeffs(f, self.modulus.clone());
        let (g, u, _) = Poly::extended_gcd(f, &pa, &pm);
        debug_assert_eq!(g.degree(), Some(0), "modulus must be irreducible");
        let scale = f.inv(&g.coeffs()[0]);
        let mut out = self.zero();
        for (i, c) in u.coeffs().iter().enumerate() {
            debug_assert!(i < self.z as usize);
            out[i] = f.mul(c, &scale);
        }
        out
    }

    /// Elements in representation order (odometer over base ranks,
    /// low-degree coefficient most significant).
    pub fn elements_rep_order(&self) -> ExtElemIter<'_> {
        ExtElemIter { ext: self, ranks: vec![0; self.z as usize], done: false }
    }

    /// First element (in representation order) whose
    /// (q^z - 1)/`ord`-th power has multiplicative order exactly `ord`,
    /// raised to that power: the canonical primitive `ord`-th root of unity.
    pub fn root_of_unity(&self, ord: u64) -> Result<ExtElem> {
        let full = &self.order - BigUint::one();
        let (quot, rem) = full.div_rem(&BigUint::from(ord));
        if !rem.is_zero() {
            return Err(Error::precondition(format!(
                "no {ord}-th roots of unity in {self:?}"
            )));
        }
        let fac = factorize(ord);
        for cand in self.elements_rep_order().skip(1) {
            let c = self.pow_big(&cand, &quot);
            if self.is_zero(&c) {
                continue;
            }
            debug_assert!(self.is_zero(&self.sub(&self.pow_u64(&c, ord), &self.one())));
            let primitive = fac
                .iter()
                .all(|&(r, _)| !self.is_zero(&self.sub(&self.pow_u64(&c, ord / r), &self.one())));
            if primitive {
                return Ok(c);
            }
        }
        Err(Error::internal(format!(
            "no primitive {ord}-th root of unity found in {self:?}"
        )))
    }
}

pub struct ExtElemIter<'a> {
    ext: &'a ExtField,
    ranks: Vec<u32>,
    done: bool,
}

impl Iterator for ExtElemIter<'_> {
    type Item = ExtElem;

    fn next(&mut self) -> Option<ExtElem> {
        if self.done {
            return None;
        }
        let base = &self.ext.base;
        let out: ExtElem = self
            .ranks
            .iter()
            .map(|&r| Fe(base.rep_order[r as usize]))
            .collect();
        // Lexicographic odometer: last coefficient spins fastest.
        let mut i = self.ranks.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.ranks[i] += 1;
            if self.ranks[i] < base.q {
                break;
            }
            self.ranks[i] = 0;
        }
        Some(out)
    }
}

impl FieldArith for ExtField {
    type El = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtField::zero(self)
    }
    fn one(&self) -> ExtElem {
        ExtField::one(self)
    }
    fn is_zero(&self, a: &ExtElem) -> bool {
        ExtField::is_zero(self, a)
    }
    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtField::add(self, a, b)
    }
    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtField::sub(self, a, b)
    }
    fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtField::neg(self, a)
    }
    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtField::mul(self, a, b)
    }
    fn inv(&self, a: &ExtElem) -> ExtElem {
        ExtField::inv(self, a)
    }
}

/// Lexicographically smallest monic irreducible of degree z over the base
/// field (same convention as `find_modulus`, with base elements compared in
/// representation order). Irreducibility via x^(q^(z/r)) fixed-point tests.
fn find_ext_modulus(base: &Arc<FieldSpec>, z: u32) -> Result<Vec<Fe>> {
    use crate::poly::Poly;
    if z == 1 {
        return Ok(vec![Fe::ZERO, Fe::ONE]);
    }
    let f = &**base;
    let primes_z = factorize(z as u64);
    // An irreducible of degree >= 2 has a nonzero constant term, so the
    // whole c0 = 0 block can be skipped outright; with c0 as the most
    // significant odometer digit that block is q^(z-1) candidates long.
    let mut ranks = vec![0u32; z as usize];
    ranks[0] = 1;
    loop {
        let mut coeffs: Vec<Fe> = ranks
            .iter()
            .map(|&r| Fe(f.rep_order[r as usize]))
            .collect();
        coeffs.push(Fe::ONE);
        let cand = Poly::from_coeffs(f, coeffs.clone());
        if poly_irreducible(f, &cand, z, &primes_z) {
            return Ok(coeffs);
        }
        // Odometer in lexicographic order, low-degree coefficient primary.
        let mut i = z as usize;
        loop {
            i -= 1;
            ranks[i] += 1;
            if ranks[i] < f.q {
                break;
            }
            if i == 0 {
                return Err(Error::internal(format!(
                    "no irreducible of degree {z} over GF({})",
                    f.q
                )));
            }
            ranks[i] = 0;
        }
    }
}

/// Monic f of degree z is irreducible over GF(q) iff x^(q^z) = x (mod f) and
/// gcd(x^(q^(z/r)) - x, f) = 1 for every prime r | z.
fn poly_irreducible(
    f: &FieldSpec,
    cand: &crate::poly::Poly<FieldSpec>,
    z: u32,
    primes_z: &[(u64, u32)],
) -> bool {
    use crate::poly::Poly;
    let x = Poly::from_coeffs(f, vec![Fe::ZERO, Fe::ONE]);
    let frob = |j: u32| -> Poly<FieldSpec> {
        let e = BigUint::from(f.q).pow(j);
        Poly::pow_mod_big(f, &x, &e, cand)
    };
    let at_top = frob(z);
    if Poly::sub(f, &at_top, &x).degree().is_some() {
        return false;
    }
    for &(r, _) in primes_z {
        let j = z / r as u32;
        let diff = Poly::sub(f, &frob(j), &x);
        let g = Poly::gcd(f, &diff, cand);
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

/// The splitting field GF(q^z) for `ord`-th roots of unity over `base`:
/// z is the multiplicative order of q modulo `ord`.
pub fn make_extension(base: &Arc<FieldSpec>, ord: u64) -> Result<ExtField> {
    if ord == 0 || num_integer::gcd(ord, base.q as u64) != 1 {
        return Err(Error::precondition(format!(
            "root-of-unity order {ord} must be coprime to q = {}",
            base.q
        )));
    }
    let z = multiplicative_order(base.q as u64, ord)? as u32;
    ExtField::new(Arc::clone(base), z)
}

/// The fixed root data for a family of a-constacyclic codes of length n:
/// a primitive (t n)-th root of unity alpha with alpha^n = a, where
/// t = ord(a). Deterministic: alpha = alpha0^i for the canonical alpha0 and
/// the smallest qualifying i (scanned along i0, i0+t, ... subject to
/// gcd(i, tn) = 1).
pub struct Root {
    pub t: u64,
    pub tn: u64,
    pub ext: ExtField,
    pub alpha: ExtElem,
    /// Exponent of alpha relative to the canonical primitive tn-th root.
    pub i: u64,
    powers: Vec<ExtElem>,
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Root(tn={}, ext={:?}, i={})", self.tn, self.ext, self.i)
    }
}

impl Root {
    /// alpha^j for 0 <= j < tn (cached).
    pub fn alpha_pow(&self, j: u64) -> &ExtElem {
        &self.powers[(j % self.tn) as usize]
    }
}

/// Fix the root of x^n - a used for all labeling in the a-constacyclic
/// family of length n over the field of `a`.
pub fn fix_root(field: &Arc<FieldSpec>, n: u64, a: Fe) -> Result<Root> {
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
    let ext = make_extension(field, tn)?;
    let alpha0 = ext.root_of_unity(tn)?;

    // Discrete log of a in <alpha0>.
    let target = ext.embed(a);
    let mut j = None;
    let mut acc = ext.one();
    for e in 0..tn {
        if acc == target {
            j = Some(e);
            break;
        }
        acc = ext.mul(&acc, &alpha0);
    }
    let j = j.ok_or_else(|| Error::internal("shift constant not in the root-of-unity group"))?;
    if j % n != 0 {
        return Err(Error::internal(format!(
            "root-group log {j} of the shift constant is not a multiple of n = {n}"
        )));
    }
    let j_over_n = j / n;
    // Solutions of i*n = j (mod tn) form the arithmetic progression
    // i = j/n (mod t); take the first one coprime to tn.
    let mut i0 = j_over_n % t;
    if i0 == 0 {
        i0 = t; // only happens for t = 1, where every i qualifies
    }
    let mut chosen = None;
    let mut i = i0;
    while i < tn + t {
        if num_integer::gcd(i, tn) == 1 {
            chosen = Some(i % tn);
            break;
        }
        i += t;
    }
    let i = chosen.ok_or_else(|| {
        Error::internal(format!("no unit exponent in progression {i0} + k*{t} mod {tn}"))
    })?;
    let alpha = ext.pow_u64(&alpha0, i);

    // Cache powers and sanity-check the defining properties.
    let mut powers = Vec::with_capacity(tn as usize);
    let mut acc = ext.one();
    for _ in 0..tn {
        powers.push(acc.clone());
        acc = ext.mul(&acc, &alpha);
    }
    if acc != ext.one() || powers[n as usize % tn as usize] != target && tn != 1 {
        // alpha^tn must close the cycle; alpha^n must equal a.
        return Err(Error::internal("fixed root fails its defining equations"));
    }
    if ext.pow_u64(&alpha, n) != target {
        return Err(Error::internal("fixed root does not satisfy alpha^n = a"));
    }
    Ok(Root { t, tn, ext, alpha, i, powers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(FieldSpec::new(4, 1).is_err());
        assert!(FieldSpec::new(2, 0).is_err());
        assert!(FieldSpec::new(2, 17).is_err());
        assert!(FieldSpec::of_order(12).is_err());
        assert!(FieldSpec::of_order(65536).is_ok()); // 2^16 exactly
    }

    #[test]
    fn prime_field_generators() {
        // Smallest primitive roots.
        assert_eq!(gf(3).xi, Fe(2));
        assert_eq!(gf(5).xi, Fe(2));
        assert_eq!(gf(7).xi, Fe(3));
        assert_eq!(gf(2).xi, Fe(1));
    }

    #[test]
    fn gf4_structure() {
        let f = gf(4);
        // Modulus x^2 + x + 1, generator w = x with w^2 = w + 1.
        assert_eq!(f.modulus, vec![1, 1, 1]);
        let w = f.xi;
        assert_eq!(w, Fe(2));
        assert_eq!(f.mul(&w, &w), Fe(3)); // w^2 = w + 1 packs to 1 + 2
        assert_eq!(f.add(&w, &Fe::ONE), Fe(3));
        assert_eq!(f.element_order(w).unwrap(), 3);
        assert_eq!(f.fmt_elem(Fe(3)), "w^2");
    }

    #[test]
    fn gf8_gf9_structure() {
        let f8 = gf(8);
        // Lexicographically (low-degree-first) smallest irreducible cubic
        // over GF(2) is 1 + x^2 + x^3.
        assert_eq!(f8.modulus, vec![1, 0, 1, 1]);
        assert_eq!(f8.element_order(f8.xi).unwrap(), 7);

        let f9 = gf(9);
        assert_eq!(f9.modulus, vec![1, 0, 1]); // x^2 + 1
        assert_eq!(f9.xi, Fe(4)); // 1 + x
        assert_eq!(f9.element_order(f9.xi).unwrap(), 8);
    }

    #[test]
    fn known_element_orders() {
        let f5 = gf(5);
        assert_eq!(f5.element_order(Fe(2)).unwrap(), 4);
        assert_eq!(f5.element_order(Fe(3)).unwrap(), 4);
        assert_eq!(f5.element_order(Fe(4)).unwrap(), 2);
        let f7 = gf(7);
        assert_eq!(f7.element_order(Fe(3)).unwrap(), 6);
        assert_eq!(f7.element_order(Fe(5)).unwrap(), 6);
        assert_eq!(f7.element_order(Fe(2)).unwrap(), 3);
        assert_eq!(f7.element_order(Fe(4)).unwrap(), 3);
        assert_eq!(f7.element_order(Fe(6)).unwrap(), 2);
    }

    #[test]
    fn discrete_logs_round_trip() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49] {
            let f = gf(q);
            assert_eq!(f.discrete_log(Fe::ZERO), None);
            for a in f.elements().skip(1) {
                let d = f.discrete_log(a).unwrap();
                assert_eq!(f.pow(&f.xi, d), a, "GF({q}) log/exp mismatch at {a:?}");
            }
        }
    }

    #[test]
    fn field_axioms_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
        for q in [3u32, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81] {
            let f = gf(q);
            for _ in 0..200 {
                let a = Fe(rng.gen_range(0..q));
                let b = Fe(rng.gen_range(0..q));
                let c = Fe(rng.gen_range(0..q));
                let ab = f.add(&a, &b);
                assert_eq!(ab, f.add(&b, &a));
                assert_eq!(f.add(&ab, &c), f.add(&a, &f.add(&b, &c)));
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                assert_eq!(
                    f.mul(&f.mul(&a, &b), &c),
                    f.mul(&a, &f.mul(&b, &c))
                );
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                assert_eq!(f.sub(&a, &a), Fe::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(&a, &f.inv(&a)), Fe::ONE);
                }
            }
        }
    }

    #[test]
    fn successive_packed_deltas_walk_the_field() {
        // Enumeration kernels step through packed values 0,1,...,q-1 by
        // adding the delta sub(v+1, v); the walk must visit every element.
        for q in [3u32, 4, 5, 7, 9] {
            let f = gf(q);
            let mut acc = Fe::ZERO;
            let mut seen = vec![acc];
            for v in 0..q - 1 {
                let d = f.sub(&Fe(v + 1), &Fe(v));
                assert!(!d.is_zero());
                acc = f.add(&acc, &d);
                seen.push(acc);
            }
            seen.sort();
            assert_eq!(seen, f.elements().collect::<Vec<_>>());
        }
    }

    #[test]
    fn extension_degrees() {
        let f5 = Arc::new(gf(5));
        assert_eq!(make_extension(&f5, 4).unwrap().z, 1); // 4 | 5 - 1
        let f3 = Arc::new(gf(3));
        assert_eq!(make_extension(&f3, 20).unwrap().z, 4); // ord_20(3) = 4
        let f4 = Arc::new(gf(4));
        assert_eq!(make_extension(&f4, 117).unwrap().z, 6);
        assert!(make_extension(&f3, 6).is_err()); // gcd(6,3) != 1
    }

    #[test]
    fn extension_arithmetic_consistent() {
        let f3 = Arc::new(gf(3));
        let ext = make_extension(&f3, 20).unwrap(); // GF(81)
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a: ExtElem = (0..4).map(|_| Fe(rng.gen_range(0..3))).collect();
            let b: ExtElem = (0..4).map(|_| Fe(rng.gen_range(0..3))).collect();
            assert_eq!(ext.mul(&a, &b), ext.mul(&b, &a));
            if !ext.is_zero(&a) {
                let inv = ext.inv(&a);
                assert_eq!(ext.mul(&a, &inv), ext.one());
            }
        }
        // Frobenius fixes exactly the embedded base field: a^q = a iff constant.
        for v in 0..3u32 {
            let e = ext.embed(Fe(v));
            assert_eq!(ext.pow_u64(&e, 3), e);
        }
    }

    #[test]
    fn root_of_unity_has_exact_order() {
        let f3 = Arc::new(gf(3));
        let ext = make_extension(&f3, 20).unwrap();
        let r = ext.root_of_unity(20).unwrap();
        assert_eq!(ext.pow_u64(&r, 20), ext.one());
        for d in [1u64, 2, 4, 5, 10] {
            assert_ne!(ext.pow_u64(&r, d), ext.one());
        }
    }

    #[test]
    fn fix_root_cyclic_gf3_n10() {
        let f3 = Arc::new(gf(3));
        let root = fix_root(&f3, 10, Fe::ONE).unwrap();
        assert_eq!(root.t, 1);
        assert_eq!(root.tn, 10);
        assert_eq!(root.ext.z, 4); // ord_10(3) = 4, so GF(81)
        assert_eq!(root.ext.pow_u64(&root.alpha, 10), root.ext.one());
        for d in [1u64, 2, 5] {
            assert_ne!(root.ext.pow_u64(&root.alpha, d), root.ext.one());
        }
    }

    #[test]
    fn fix_root_gf5_a4_n3() {
        let f5 = Arc::new(gf(5));
        let root = fix_root(&f5, 3, Fe(4)).unwrap();
        assert_eq!((root.t, root.tn), (2, 6));
        assert_eq!(root.ext.z, 2); // 6 divides 25 - 1 but not 5 - 1
        assert_eq!(root.ext.pow_u64(&root.alpha, 3), root.ext.embed(Fe(4)));
        assert_eq!(root.ext.pow_u64(&root.alpha, 6), root.ext.one());
        assert_ne!(root.ext.pow_u64(&root.alpha, 2), root.ext.one());
        assert_ne!(root.ext.pow_u64(&root.alpha, 3), root.ext.one());
    }

    #[test]
    fn fix_root_gf4_omega_n39() {
        let f4 = Arc::new(gf(4));
        let w = f4.xi;
        let root = fix_root(&f4, 39, w).unwrap();
        assert_eq!((root.t, root.tn), (3, 117));
        assert_eq!(root.ext.pow_u64(&root.alpha, 39), root.ext.embed(w));
        // Exact order 117 = 9 * 13.
        assert_eq!(root.ext.pow_u64(&root.alpha, 117), root.ext.one());
        for d in [39u64, 9, 13, 117 / 13] {
            assert_ne!(root.ext.pow_u64(&root.alpha, d), root.ext.one());
        }
        assert_eq!(num_integer::gcd(root.i, 117), 1);
    }

    #[test]
    fn elem_notation_round_trip() {
        let f7 = gf(7);
        assert_eq!(f7.parse_elem("6").unwrap(), Fe(6));
        assert_eq!(f7.parse_elem("x^3").unwrap(), Fe(6)); // 3^3 = 6 mod 7
        let f4 = gf(4);
        assert_eq!(f4.parse_elem("w").unwrap(), f4.xi);
        assert_eq!(f4.parse_elem("w^2").unwrap(), f4.mul(&f4.xi, &f4.xi));
        assert_eq!(f4.fmt_elem(f4.parse_elem("w^2").unwrap()), "w^2");
        assert!(f4.parse_elem("2").is_err());
        assert!(f7.parse_elem("7").is_err());
    }
}
