//! Prime moduli, prime-field elements and base-`p` digits.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A prime modulus. Construction checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn elem(self, value: u64) -> FpElem {
        FpElem::new(value, self)
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce(self, value: i64) -> u64 {
        (value as i128).rem_euclid(self.0 as i128) as u64
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = u64::deserialize(d)?;
        Prime::new(p).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An element of `F_p`. The modulus travels with the value; mixing moduli
/// panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    modulus: Prime,
}

impl FpElem {
    pub fn new(value: u64, modulus: Prime) -> Self {
        FpElem {
            value: value % modulus.0,
            modulus,
        }
    }

    pub fn zero(modulus: Prime) -> Self {
        FpElem { value: 0, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: FpElem) -> u64 {
        assert_eq!(
            self.modulus, other.modulus,
            "F_p modulus mismatch: {} vs {}",
            self.modulus, other.modulus
        );
        self.modulus.0
    }
}

impl std::ops::Add for FpElem {
    type Output = FpElem;

    fn add(self, other: FpElem) -> FpElem {
        let p = self.check(other);
        FpElem {
            value: add_mod(self.value, other.value, p),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Mul for FpElem {
    type Output = FpElem;

    fn mul(self, other: FpElem) -> FpElem {
        let p = self.check(other);
        FpElem {
            value: mul_mod(self.value, other.value, p),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Neg for FpElem {
    type Output = FpElem;

    fn neg(self) -> FpElem {
        let p = self.modulus.0;
        FpElem {
            value: if self.value == 0 { 0 } else { p - self.value },
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin. The first twelve primes as witnesses decide
/// every `n < 3.3 * 10^24`, which covers all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `q` with `lo <= q < hi`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<Prime> {
    assert!(lo <= hi, "primes_in_range: lo > hi");
    const SIEVE_LIMIT: u64 = 1 << 24;
    if hi <= SIEVE_LIMIT {
        let n = hi as usize;
        let mut composite = vec![false; n.max(2)];
        let mut out = Vec::new();
        for i in 2..n {
            if composite[i] {
                continue;
            }
            if i as u64 >= lo {
                out.push(Prime(i as u64));
            }
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
        out
    } else {
        (lo..hi).filter(|&q| is_prime(q)).map(Prime).collect()
    }
}

/// Canonical base-`p` digits of `n`, least significant first. Zero has no
/// digits.
pub fn digits_u64(mut n: u64, p: Prime) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p.0);
        n /= p.0;
    }
    out
}

/// Arbitrary-precision version of [`digits_u64`].
pub fn digits(n: &BigUint, p: Prime) -> Vec<u64> {
    if let Some(small) = n.to_u64() {
        return digits_u64(small, p);
    }
    let base = BigUint::from(p.0);
    let mut n = n.clone();
    let mut out = Vec::new();
    while !n.is_zero() {
        let r = &n % &base;
        out.push(r.to_u64().expect("digit below p"));
        n /= &base;
    }
    out
}

/// Inverse of [`digits`].
pub fn from_digits(digits: &[u64], p: Prime) -> BigUint {
    let base = BigUint::from(p.0);
    digits
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, &d| acc * &base + BigUint::from(d))
}
