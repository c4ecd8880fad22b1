//! Dense univariate Laurent polynomials over `F_p`.
//!
//! A polynomial is stored as a contiguous coefficient run starting at its
//! lowest exponent. The run is always trimmed, so structural equality and
//! hashing coincide with polynomial equality; automaton states rely on this.

mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

pub use parse::{parse_terms, IntTerm};

use crate::numtheory::{add_mod, mul_mod, FpElem, Prime};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    modulus: Prime,
    /// Exponent of `coeffs[0]`; 0 for the zero polynomial.
    lo: i64,
    coeffs: Vec<u64>,
}

/// JSON shape of a polynomial: `{"lo": int, "coeffs": [ints]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRepr {
    pub lo: i64,
    pub coeffs: Vec<u64>,
}

impl LaurentPoly {
    pub fn zero(p: Prime) -> Self {
        LaurentPoly {
            modulus: p,
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: Prime) -> Self {
        Self::monomial(1, 0, p)
    }

    pub fn monomial(c: u64, e: i64, p: Prime) -> Self {
        Self::from_residues(e, vec![c % p.get()], p)
    }

    /// Builds from a coefficient run starting at exponent `lo`. Entries are
    /// reduced mod `p` and the result is trimmed.
    pub fn from_residues(lo: i64, mut coeffs: Vec<u64>, p: Prime) -> Self {
        let q = p.get();
        for c in &mut coeffs {
            *c %= q;
        }
        let mut poly = LaurentPoly {
            modulus: p,
            lo,
            coeffs,
        };
        poly.trim();
        poly
    }

    /// Builds from `(exponent, integer coefficient)` pairs; duplicate
    /// exponents are summed.
    pub fn from_terms(terms: &[(i64, i64)], p: Prime) -> Self {
        Self::from_reduced(terms.iter().map(|&(e, c)| (e, p.reduce(c))), p)
    }

    /// Like [`from_terms`](Self::from_terms) for arbitrary-precision
    /// coefficients, as produced by the parser.
    pub fn from_int_terms(terms: &[IntTerm], p: Prime) -> Self {
        let modulus = BigInt::from(p.get());
        Self::from_reduced(
            terms.iter().map(|(e, c)| {
                let mut r = c % &modulus;
                if r.is_negative() {
                    r += &modulus;
                }
                (*e, r.to_u64().expect("residue below p"))
            }),
            p,
        )
    }

    fn from_reduced(terms: impl Iterator<Item = (i64, u64)> + Clone, p: Prime) -> Self {
        let (Some(lo), Some(hi)) = (
            terms.clone().map(|(e, _)| e).min(),
            terms.clone().map(|(e, _)| e).max(),
        ) else {
            return Self::zero(p);
        };
        let mut coeffs = vec![0u64; (hi - lo) as usize + 1];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = add_mod(*slot, c, p.get());
        }
        Self::from_residues(lo, coeffs, p)
    }

    /// Parses the polynomial text grammar and reduces mod `p`.
    pub fn parse(s: &str, p: Prime) -> Result<Self> {
        Ok(Self::from_int_terms(&parse_terms(s)?, p))
    }

    pub fn from_repr(repr: &PolyRepr, p: Prime) -> Self {
        Self::from_residues(repr.lo, repr.coeffs.clone(), p)
    }

    pub fn to_repr(&self) -> PolyRepr {
        PolyRepr {
            lo: self.lo,
            coeffs: self.coeffs.clone(),
        }
    }

    fn trim(&mut self) {
        let Some(first) = self.coeffs.iter().position(|&c| c != 0) else {
            self.coeffs.clear();
            self.lo = 0;
            return;
        };
        let last = self.coeffs.iter().rposition(|&c| c != 0).unwrap();
        self.coeffs.truncate(last + 1);
        self.coeffs.drain(..first);
        self.lo += first as i64;
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn lo(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn hi(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.hi_unchecked())
    }

    fn hi_unchecked(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `t^e` as a raw residue.
    pub fn coeff(&self, e: i64) -> u64 {
        let idx = e - self.lo;
        if idx < 0 {
            return 0;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` for every nonzero term, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.lo + i as i64, c))
    }

    /// Largest absolute exponent in the support; 0 for the zero polynomial.
    pub fn radius(&self) -> u64 {
        match (self.lo(), self.hi()) {
            (Some(lo), Some(hi)) => lo.unsigned_abs().max(hi.unsigned_abs()),
            _ => 0,
        }
    }

    /// Symmetric degree `max(|lo|, |hi|)`.
    pub fn degree(&self) -> Result<u64> {
        if self.is_zero() {
            Err(Error::DegreeUndefined)
        } else {
            Ok(self.radius())
        }
    }

    /// The constant term.
    pub fn ct(&self) -> FpElem {
        self.modulus.elem(self.coeff(0))
    }

    fn check(&self, other: &Self) -> u64 {
        assert_eq!(
            self.modulus, other.modulus,
            "Laurent polynomial modulus mismatch"
        );
        self.modulus.get()
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.check(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi_unchecked().max(other.hi_unchecked());
        let coeffs = (lo..=hi)
            .map(|e| add_mod(self.coeff(e), other.coeff(e), p))
            .collect();
        Self::from_residues(lo, coeffs, self.modulus)
    }

    pub fn neg(&self) -> Self {
        let p = self.modulus.get();
        LaurentPoly {
            modulus: self.modulus,
            lo: self.lo,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| if c == 0 { 0 } else { p - c })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.modulus.get();
        Self::from_residues(
            self.lo,
            self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect(),
            self.modulus,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        let coeffs = convolve(&self.coeffs, &other.coeffs, p);
        Self::from_residues(self.lo + other.lo, coeffs, self.modulus)
    }

    /// `self^n` by square-and-multiply; `pow(0)` is 1 for every input.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.modulus);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            modulus: self.modulus,
            lo: self.lo + e,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitutes `t -> t^k` for `k >= 1`.
    pub fn inflate(&self, k: u64) -> Self {
        assert!(k >= 1, "inflate needs k >= 1");
        let k = k as i64;
        let terms: Vec<(i64, u64)> = self.terms().map(|(e, c)| (e * k, c)).collect();
        Self::from_reduced(terms.into_iter(), self.modulus)
    }

    /// The Cartier operator `Λ_r(Σ a_i t^i) = Σ a_{p·i + r} t^i`.
    pub fn cartier(&self, r: u64) -> Self {
        let p = self.modulus.get();
        assert!(r < p, "Cartier digit {r} out of range for p = {p}");
        if self.is_zero() {
            return self.clone();
        }
        let (p, r) = (p as i64, r as i64);
        let first = (self.lo - r).div_euclid(p) + i64::from((self.lo - r).rem_euclid(p) != 0);
        let last = (self.hi_unchecked() - r).div_euclid(p);
        if first > last {
            return Self::zero(self.modulus);
        }
        let coeffs = (first..=last).map(|i| self.coeff(p * i + r)).collect();
        Self::from_residues(first, coeffs, self.modulus)
    }

    /// `Λ_r(self · other)` without materializing the full product.
    pub fn mul_cartier(&self, other: &Self, r: u64) -> Self {
        let q = self.check(other);
        assert!(r < q, "Cartier digit {r} out of range for p = {q}");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        let (p, r) = (q as i64, r as i64);
        let (alo, ahi) = (self.lo, self.hi_unchecked());
        let (blo, bhi) = (other.lo, other.hi_unchecked());
        let lo = alo + blo;
        let first = (lo - r).div_euclid(p) + i64::from((lo - r).rem_euclid(p) != 0);
        let last = (ahi + bhi - r).div_euclid(p);
        if first > last {
            return Self::zero(self.modulus);
        }
        let coeffs = (first..=last)
            .map(|i| {
                let target = p * i + r;
                let j0 = alo.max(target - bhi);
                let j1 = ahi.min(target - blo);
                (j0..=j1).fold(0u64, |acc, j| {
                    let a = self.coeffs[(j - alo) as usize];
                    let b = other.coeffs[(target - j - blo) as usize];
                    add_mod(acc, mul_mod(a, b, q), q)
                })
            })
            .collect();
        Self::from_residues(first, coeffs, self.modulus)
    }
}

/// Dense product of two coefficient runs mod `p`.
fn convolve(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len() + b.len() - 1;
    if p <= u32::MAX as u64 {
        // Each product is below 2^64, so a u128 accumulator cannot overflow.
        let mut acc = vec![0u128; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x as u128 * y as u128;
            }
        }
        acc.into_iter().map(|v| (v % p as u128) as u64).collect()
    } else {
        let mut out = vec![0u64; n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
            }
        }
        out
    }
}

/// `[ct(P^n · Q) for n in 0..count]` by direct expansion, multiplying the
/// running product by `P` once per step. No automaton code is involved.
pub fn ct_pow_sequence(p_poly: &LaurentPoly, q_poly: &LaurentPoly, count: usize) -> Vec<FpElem> {
    let mut out = Vec::with_capacity(count);
    let mut cur = q_poly.clone();
    for n in 0..count {
        out.push(cur.ct());
        if n + 1 < count {
            cur = cur.mul(p_poly);
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    /// Writes the polynomial in the parser's grammar, highest exponent first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<_> = self.terms().collect();
        for (k, &(e, c)) in terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            write_term(f, e, &c.to_string())?;
        }
        Ok(())
    }
}

/// Formats one term `c·t^e` in the polynomial grammar. `c` is a positive
/// decimal string.
pub(crate) fn write_term(f: &mut impl fmt::Write, e: i64, c: &str) -> fmt::Result {
    match (e, c) {
        (0, c) => f.write_str(c),
        (1, "1") => f.write_str("t"),
        (1, c) => write!(f, "{c}t"),
        (e, "1") => write!(f, "t^{e}"),
        (e, c) => write!(f, "{c}t^{e}"),
    }
}
