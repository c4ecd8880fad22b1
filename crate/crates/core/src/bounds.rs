//! Bounds on the first zero of `ct(P^n) mod p`.
//!
//! * worst case `p^(p^((2·deg - 1)^r))`, from counting automaton states;
//! * the conjectured `p^deg` for univariate `P`;
//! * the automaticity interval `[p^(κ-1), p^κ)`.
//!
//! Only the upper end of the automaticity interval is a theorem here;
//! [`BoundReport`] reports the lower end without asserting it.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::dec;
use crate::numtheory::Prime;
use crate::{Error, Result};

/// Results larger than this many bits are kept symbolic.
pub const DEFAULT_WORST_CASE_LIMIT_BITS: u64 = 1_000_000;
/// Largest inner exponent `p^((2deg-1)^r)` we are willing to expand.
const INNER_LIMIT_BITS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WorstCase {
    Exact(BigUint),
    /// `base^exponent`, too large to expand.
    Symbolic {
        base: u64,
        exponent: BigUint,
    },
}

impl WorstCase {
    /// Whether the bound is at least `x`.
    pub fn at_least(&self, x: &BigUint) -> bool {
        match self {
            WorstCase::Exact(v) => v >= x,
            WorstCase::Symbolic { base, exponent } => {
                let e = exponent.to_f64().unwrap_or(f64::INFINITY);
                e * (*base as f64).log2() >= x.bits() as f64
            }
        }
    }
}

impl Serialize for WorstCase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            WorstCase::Exact(v) => s.serialize_str(&v.to_str_radix(10)),
            WorstCase::Symbolic { base, exponent } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("base", &base.to_string())?;
                m.serialize_entry("exponent", &exponent.to_str_radix(10))?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for WorstCase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Exact(String),
            Symbolic {
                #[serde(with = "crate::dec::nat")]
                base: u64,
                exponent: String,
            },
        }
        let parse = |s: &str| {
            BigUint::parse_bytes(s.as_bytes(), 10)
                .ok_or_else(|| D::Error::custom(format!("not a decimal natural: {s:?}")))
        };
        match Repr::deserialize(d)? {
            Repr::Exact(v) => Ok(WorstCase::Exact(parse(&v)?)),
            Repr::Symbolic { base, exponent } => Ok(WorstCase::Symbolic {
                base,
                exponent: parse(&exponent)?,
            }),
        }
    }
}

fn bit_len(x: u64) -> u64 {
    64 - x.leading_zeros() as u64
}

/// `p^(p^((2·deg - 1)^r))`, exact when the result fits in `limit_bits`.
pub fn worst_case_bound(p: Prime, deg: u64, r: u64, limit_bits: u64) -> Result<WorstCase> {
    assert!(
        deg >= 1 && r >= 1,
        "worst_case_bound needs deg >= 1 and r >= 1"
    );
    let too_large = || Error::BoundTooLarge(format!("p={p}, deg={deg}, r={r}"));
    let base = 2 * deg - 1;
    let tower = u32::try_from(r)
        .ok()
        .and_then(|r| base.checked_pow(r))
        .ok_or_else(too_large)?;
    let log_p = bit_len(p.get());
    if tower.saturating_mul(log_p) > INNER_LIMIT_BITS {
        return Err(too_large());
    }
    let inner = BigUint::from(p.get()).pow(tower as u32);
    let log2_p = (p.get() as f64).log2();
    match inner.to_u64() {
        Some(e) if e as f64 * log2_p <= limit_bits as f64 && e <= u32::MAX as u64 => {
            Ok(WorstCase::Exact(BigUint::from(p.get()).pow(e as u32)))
        }
        _ => Ok(WorstCase::Symbolic {
            base: p.get(),
            exponent: inner,
        }),
    }
}

/// `p^deg`.
pub fn conjecture_bound(p: Prime, deg: u64) -> BigUint {
    pow(p, deg)
}

/// `(p^(κ-1), p^κ)`.
pub fn kappa_interval(p: Prime, kappa: u64) -> (BigUint, BigUint) {
    assert!(kappa >= 1, "kappa must be positive");
    (pow(p, kappa - 1), pow(p, kappa))
}

fn pow(p: Prime, e: u64) -> BigUint {
    BigUint::from(p.get()).pow(u32::try_from(e).expect("exponent fits in u32"))
}

/// All three bounds for one `(P, p)`, plus the classification of a first
/// zero when one is known. Naturals serialize as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(with = "dec::nat")]
    pub p: u64,
    #[serde(with = "dec::nat")]
    pub deg: u64,
    #[serde(with = "dec::nat")]
    pub r: u64,
    #[serde(with = "dec::opt_nat")]
    pub kappa: Option<u64>,
    #[serde(with = "dec::opt_big")]
    pub n0: Option<BigUint>,
    #[serde(with = "dec::big")]
    pub conjecture_bound: BigUint,
    pub worst_case: Option<WorstCase>,
    #[serde(with = "dec::opt_big")]
    pub kappa_lower: Option<BigUint>,
    #[serde(with = "dec::opt_big")]
    pub kappa_upper: Option<BigUint>,
    /// `n0 >= p^deg`.
    pub violates_conjecture: Option<bool>,
    /// `n0 > p^deg`, the predicate of the original search loop.
    pub violates_conjecture_strict: Option<bool>,
    #[serde(rename = "kappa_upper_ok")]
    pub satisfies_kappa_upper: Option<bool>,
    #[serde(rename = "kappa_lower_ok")]
    pub satisfies_kappa_lower: Option<bool>,
}

impl BoundReport {
    /// Bounds only; every flag is absent until [`with_first_zero`](Self::with_first_zero).
    /// The worst case is absent for `deg = 0` and when even its exponent is
    /// too large to write down.
    pub fn new(p: Prime, deg: u64, r: u64, kappa: Option<u64>) -> Self {
        let worst_case = if deg >= 1 && r >= 1 {
            worst_case_bound(p, deg, r, DEFAULT_WORST_CASE_LIMIT_BITS).ok()
        } else {
            None
        };
        let (kappa_lower, kappa_upper) = match kappa {
            Some(k) => {
                let (lo, hi) = kappa_interval(p, k);
                (Some(lo), Some(hi))
            }
            None => (None, None),
        };
        BoundReport {
            p: p.get(),
            deg,
            r,
            kappa,
            n0: None,
            conjecture_bound: conjecture_bound(p, deg),
            worst_case,
            kappa_lower,
            kappa_upper,
            violates_conjecture: None,
            violates_conjecture_strict: None,
            satisfies_kappa_upper: None,
            satisfies_kappa_lower: None,
        }
    }

    pub fn with_first_zero(mut self, n0: &BigUint) -> Self {
        self.violates_conjecture = Some(*n0 >= self.conjecture_bound);
        self.violates_conjecture_strict = Some(*n0 > self.conjecture_bound);
        self.satisfies_kappa_upper = self.kappa_upper.as_ref().map(|hi| n0 < hi);
        self.satisfies_kappa_lower = self.kappa_lower.as_ref().map(|lo| n0 >= lo);
        self.n0 = Some(n0.clone());
        self
    }
}

/// Classifies a univariate first zero against all bounds.
pub fn classify(n0: &BigUint, p: Prime, deg: u64, kappa: Option<u64>) -> BoundReport {
    BoundReport::new(p, deg, 1, kappa).with_first_zero(n0)
}
