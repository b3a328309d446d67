//! Dense univariate polynomials over any [`FieldArith`] context.
//!
//! The context is passed explicitly to every operation, so the same code
//! serves GF(q) and its extensions. Coefficients are stored low-degree
//! first with no trailing zeros; the zero polynomial is the empty vector
//! and has degree `None`.

use std::fmt;

use num_bigint::BigUint;

use crate::field::FieldArith;

pub struct Poly<F: FieldArith> {
    coeffs: Vec<F::El>,
}

// Manual impls: deriving would demand `F: Clone` / `F: PartialEq`, but only
// the coefficients matter.
impl<F: FieldArith> Clone for Poly<F> {
    fn clone(&self) -> Self {
        Poly { coeffs: self.coeffs.clone() }
    }
}

impl<F: FieldArith> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: FieldArith> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<F: FieldArith> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(ctx: &F) -> Self {
        Poly { coeffs: vec![ctx.one()] }
    }

    pub fn constant(ctx: &F, c: F::El) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.normalize(ctx);
        p
    }

    /// x^k.
    pub fn x_pow(ctx: &F, k: usize) -> Self {
        let mut coeffs = vec![ctx.zero(); k + 1];
        coeffs[k] = ctx.one();
        Poly { coeffs }
    }

    pub fn from_coeffs(ctx: &F, coeffs: Vec<F::El>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize(ctx);
        p
    }

    fn normalize(&mut self, ctx: &F) {
        while self.coeffs.last().is_some_and(|c| ctx.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[F::El] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero when i exceeds the degree).
    pub fn coeff(&self, ctx: &F, i: usize) -> F::El {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F::El> {
        self.coeffs.last()
    }

    pub fn is_monic(&self, ctx: &F) -> bool {
        self.leading().is_some_and(|c| *c == ctx.one())
    }

    /// Render in descending powers of `x`, e.g. "x^4 + 2x^3 + x + 1".
    /// `fmt_coeff` supplies the element notation; a unit coefficient is
    /// suppressed in front of positive powers.
    pub fn render(&self, ctx: &F, fmt_coeff: impl Fn(&F::El) -> String) -> String {
        if self.is_zero() {
            return fmt_coeff(&ctx.zero());
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if ctx.is_zero(c) {
                continue;
            }
            let coeff = fmt_coeff(c);
            let part = match i {
                0 => coeff,
                _ => {
                    let var = if i == 1 { "x".to_string() } else { format!("x^{i}") };
                    if *c == ctx.one() {
                        var
                    } else {
                        format!("{coeff}{var}")
                    }
                }
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    pub fn add(ctx: &F, a: &Self, b: &Self) -> Self {
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|i| ctx.add(&a.coeff(ctx, i), &b.coeff(ctx, i)))
            .collect();
        Poly::from_coeffs(ctx, coeffs)
    }

    pub fn sub(ctx: &F, a: &Self, b: &Self) -> Self {
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|i| ctx.sub(&a.coeff(ctx, i), &b.coeff(ctx, i)))
            .collect();
        Poly::from_coeffs(ctx, coeffs)
    }

    pub fn neg(ctx: &F, a: &Self) -> Self {
        Poly { coeffs: a.coeffs.iter().map(|c| ctx.neg(c)).collect() }
    }

    pub fn mul(ctx: &F, a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ctx.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if ctx.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = ctx.mul(x, y);
                coeffs[i + j] = ctx.add(&coeffs[i + j], &t);
            }
        }
        Poly::from_coeffs(ctx, coeffs)
    }

    pub fn mul_scalar(ctx: &F, a: &Self, s: &F::El) -> Self {
        let coeffs = a.coeffs.iter().map(|c| ctx.mul(c, s)).collect();
        Poly::from_coeffs(ctx, coeffs)
    }

    /// Quotient and remainder of a / b. Panics if b is zero.
    pub fn divmod(ctx: &F, a: &Self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "polynomial division by zero");
        let db = b.degree().unwrap();
        let lead_inv = ctx.inv(b.leading().unwrap());
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (Poly::zero(), a.clone());
        }
        let mut quot = vec![ctx.zero(); rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = rem[top].clone();
            if ctx.is_zero(&c) {
                continue;
            }
            let qc = ctx.mul(&c, &lead_inv);
            for (j, bc) in b.coeffs.iter().enumerate() {
                let t = ctx.mul(&qc, bc);
                let idx = top - db + j;
                rem[idx] = ctx.sub(&rem[idx], &t);
            }
            quot[top - db] = qc;
        }
        (
            Poly::from_coeffs(ctx, quot),
            Poly::from_coeffs(ctx, rem),
        )
    }

    pub fn rem(ctx: &F, a: &Self, b: &Self) -> Self {
        Poly::divmod(ctx, a, b).1
    }

    /// Does b divide a exactly?
    pub fn divides(ctx: &F, b: &Self, a: &Self) -> bool {
        Poly::rem(ctx, a, b).is_zero()
    }

    /// Scale to leading coefficient 1 (zero polynomial stays zero).
    pub fn monic(ctx: &F, a: &Self) -> Self {
        match a.leading() {
            None => Poly::zero(),
            Some(l) if *l == ctx.one() => a.clone(),
            Some(l) => {
                let inv = ctx.inv(l);
                Poly::mul_scalar(ctx, a, &inv)
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(ctx: &F, a: &Self, b: &Self) -> Self {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        while !r1.is_zero() {
            let r2 = Poly::rem(ctx, &r0, &r1);
            r0 = r1;
            r1 = r2;
        }
        Poly::monic(ctx, &r0)
    }

    /// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
    pub fn extended_gcd(ctx: &F, a: &Self, b: &Self) -> (Self, Self, Self) {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        let mut u0 = Poly::one(ctx);
        let mut u1 = Poly::zero();
        let mut v0 = Poly::zero();
        let mut v1 = Poly::one(ctx);
        while !r1.is_zero() {
            let (q, r2) = Poly::divmod(ctx, &r0, &r1);
            let u2 = Poly::sub(ctx, &u0, &Poly::mul(ctx, &q, &u1));
            let v2 = Poly::sub(ctx, &v0, &Poly::mul(ctx, &q, &v1));
            r0 = r1;
            r1 = r2;
            u0 = u1;
            u1 = u2;
            v0 = v1;
            v1 = v2;
        }
        match r0.leading() {
            None => (Poly::zero(), Poly::zero(), Poly::zero()),
            Some(l) => {
                let inv = ctx.inv(l);
                (
                    Poly::mul_scalar(ctx, &r0, &inv),
                    Poly::mul_scalar(ctx, &u0, &inv),
                    Poly::mul_scalar(ctx, &v0, &inv),
                )
            }
        }
    }

    pub fn eval(&self, ctx: &F, x: &F::El) -> F::El {
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = ctx.mul(&acc, x);
            acc = ctx.add(&acc, c);
        }
        acc
    }

    /// a^e mod m with a big exponent (square-and-multiply).
    pub fn pow_mod_big(ctx: &F, a: &Self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Poly::rem(ctx, &Poly::one(ctx), m);
        let a = Poly::rem(ctx, a, m);
        for i in (0..e.bits()).rev() {
            acc = Poly::rem(ctx, &Poly::mul(ctx, &acc, &acc), m);
            if e.bit(i) {
                acc = Poly::rem(ctx, &Poly::mul(ctx, &acc, &a), m);
            }
        }
        acc
    }

    /// Substitute x -> x^u and reduce mod (x^n - lead), i.e. the image of a
    /// code polynomial under the multiplier map on exponents.
    pub fn subst_power_mod(ctx: &F, a: &Self, u: usize, n: usize, wrap: &F::El) -> Self {
        let mut coeffs = vec![ctx.zero(); n];
        for (i, c) in a.coeffs.iter().enumerate() {
            if ctx.is_zero(c) {
                continue;
            }
            let raw = i * u;
            let (laps, pos) = (raw / n, raw % n);
            // x^n = wrap, applied `laps` times.
            let mut scaled = c.clone();
            for _ in 0..laps {
                scaled = ctx.mul(&scaled, wrap);
            }
            coeffs[pos] = ctx.add(&coeffs[pos], &scaled);
        }
        Poly::from_coeffs(ctx, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fe, FieldSpec};

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    fn poly(f: &FieldSpec, cs: &[u32]) -> Poly<FieldSpec> {
        Poly::from_coeffs(f, cs.iter().map(|&c| Fe(c)).collect())
    }

    #[test]
    fn divmod_gf5() {
        let f = gf(5);
        // (x^3 + 2x + 1) / (x + 2) = x^2 + 3x + 1 remainder 4.
        let a = poly(&f, &[1, 2, 0, 1]);
        let b = poly(&f, &[2, 1]);
        let (q, r) = Poly::divmod(&f, &a, &b);
        assert_eq!(q, poly(&f, &[1, 3, 1]));
        assert_eq!(r, poly(&f, &[4]));
        // Reconstruct.
        let back = Poly::add(&f, &Poly::mul(&f, &q, &b), &r);
        assert_eq!(back, a);
    }

    #[test]
    fn gcd_gf5() {
        let f = gf(5);
        // gcd(x^4 - 1, x^6 - 1) = x^2 - 1 = x^2 + 4.
        let a = poly(&f, &[4, 0, 0, 0, 1]);
        let b = poly(&f, &[4, 0, 0, 0, 0, 0, 1]);
        let g = Poly::gcd(&f, &a, &b);
        assert_eq!(g, poly(&f, &[4, 0, 1]));
    }

    #[test]
    fn extended_gcd_bezout() {
        let f = gf(7);
        let a = poly(&f, &[3, 1, 4, 1]);
        let b = poly(&f, &[2, 6, 1]);
        let (g, u, v) = Poly::extended_gcd(&f, &a, &b);
        let lhs = Poly::add(
            &f,
            &Poly::mul(&f, &u, &a),
            &Poly::mul(&f, &v, &b),
        );
        assert_eq!(lhs, g);
        assert!(g.is_monic(&f) || g.is_zero());
        assert!(Poly::divides(&f, &g, &a));
        assert!(Poly::divides(&f, &g, &b));
    }

    #[test]
    fn eval_and_roots() {
        let f = gf(3);
        // x^2 + 1 has no roots over GF(3).
        let p = poly(&f, &[1, 0, 1]);
        for v in 0..3 {
            assert_ne!(p.eval(&f, &Fe(v)), Fe::ZERO);
        }
        // x^2 + x has roots 0 and 2.
        let p = poly(&f, &[0, 1, 1]);
        assert_eq!(p.eval(&f, &Fe(0)), Fe::ZERO);
        assert_eq!(p.eval(&f, &Fe(2)), Fe::ZERO);
        assert_ne!(p.eval(&f, &Fe(1)), Fe::ZERO);
    }

    #[test]
    fn pow_mod_matches_naive() {
        let f = gf(5);
        let m = poly(&f, &[1, 2, 0, 1]);
        let x = poly(&f, &[0, 1]);
        let mut naive = Poly::one(&f);
        for e in 0u32..30 {
            let fast = Poly::pow_mod_big(&f, &x, &num_bigint::BigUint::from(e), &m);
            assert_eq!(fast, Poly::rem(&f, &naive, &m), "exponent {e}");
            naive = Poly::mul(&f, &naive, &x);
        }
    }

    #[test]
    fn subst_power_wraps_constant() {
        let f = gf(5);
        // c(x) = x^2 over length 3 with x^3 = 4: substitute x -> x^2 gives
        // x^4 = 4 x.
        let c = poly(&f, &[0, 0, 1]);
        let out = Poly::subst_power_mod(&f, &c, 2, 3, &Fe(4));
        assert_eq!(out, poly(&f, &[0, 4]));
    }

    #[test]
    fn zero_polynomial_edge_cases() {
        let f = gf(3);
        let z = Poly::<FieldSpec>::zero();
        assert_eq!(z.degree(), None);
        assert!(Poly::mul(&f, &z, &poly(&f, &[1, 1])).is_zero());
        let g = Poly::gcd(&f, &z, &poly(&f, &[2, 1]));
        assert_eq!(g, poly(&f, &[2, 1]));
        let (q, r) = Poly::divmod(&f, &z, &poly(&f, &[1, 1]));
        assert!(q.is_zero() && r.is_zero());
    }
}
