//! Small integer helpers shared across the crate: primality, factoring,
//! modular exponentiation and multiplicative orders.

use crate::error::{Error, Result};

/// Trial-division primality test; adequate for the q <= 2^16 scope.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, returned as (prime, exponent) pairs
/// in ascending prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// If `q` is a prime power p^m, return (p, m).
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factorize(q);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

pub fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo `n`. Requires gcd(a, n) = 1.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if n == 0 || num_integer::gcd(a, n) != 1 {
        return Err(Error::precondition(format!(
            "multiplicative order of {a} mod {n} undefined (gcd != 1)"
        )));
    }
    if n == 1 {
        return Ok(1);
    }
    let mut acc = a % n;
    for ord in 1..=n {
        if acc == 1 {
            return Ok(ord);
        }
        acc = acc * (a % n) % n;
    }
    Err(Error::internal(format!(
        "order scan for {a} mod {n} did not terminate"
    )))
}

/// Inverse of `a` modulo `m` (m >= 1), if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    use num_integer::Integer;
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(7));
        assert!(is_prime(65521));
        assert!(!is_prime(1));
        assert!(!is_prime(9));
        assert!(!is_prime(65535));
    }

    #[test]
    fn factoring() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(117), vec![(3, 2), (13, 1)]);
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn orders() {
        // 3 has order 4 modulo 10 and order 6 modulo 7.
        assert_eq!(multiplicative_order(3, 10).unwrap(), 4);
        assert_eq!(multiplicative_order(3, 7).unwrap(), 6);
        assert_eq!(multiplicative_order(4, 117).unwrap(), 6);
        assert!(multiplicative_order(2, 10).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(5, 6), Some(5));
        assert_eq!(mod_inverse(4, 3), Some(1));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(-1, 7), Some(6));
    }
}
