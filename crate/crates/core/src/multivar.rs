//! Sparse multivariate Laurent polynomials with integer coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::numtheory::{FpElem, Prime};
use crate::{Error, Result};

/// `Σ c_v x^v` over exponent vectors `v ∈ Z^nvars`. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiLaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<i64>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct MultiRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

impl MultiLaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiLaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nvars], BigInt::one());
        MultiLaurentPoly { nvars, terms }
    }

    pub fn from_terms<C: Into<BigInt>>(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<i64>, C)>,
    ) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(Error::NvarsMismatch {
                    expected: nvars,
                    got: exp.len(),
                });
            }
            out.accumulate(exp, c.into());
        }
        Ok(out)
    }

    fn accumulate(&mut self, exp: Vec<i64>, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::NvarsMismatch {
                expected: self.nvars,
                got: other.nvars,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.accumulate(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same nvars");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same nvars");
            }
        }
        acc
    }

    /// Coefficient of `x_1^0 ⋯ x_m^0`.
    pub fn ct(&self) -> BigInt {
        self.coeff(&vec![0; self.nvars])
    }

    /// Reduces every coefficient into `[0, p)`, dropping the ones that vanish.
    pub fn reduce_mod(&self, p: Prime) -> Self {
        let m = BigInt::from(p.get());
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut r = c % &m;
            if r.is_negative() {
                r += &m;
            }
            out.accumulate(e.clone(), r);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let repr = MultiRepr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exp: e.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_value(repr).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let repr: MultiRepr = serde_json::from_value(value.clone())?;
        let terms = repr
            .terms
            .into_iter()
            .map(|t| {
                let c: BigInt = t
                    .coeff
                    .parse()
                    .map_err(|_| Error::Malformed(format!("bad coefficient {:?}", t.coeff)))?;
                Ok((t.exp, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(repr.nvars, terms)
    }
}

/// `[ct(P^n · Q) mod p for n in 0..count]`, reducing mod `p` after every
/// multiplication so coefficients stay small.
pub fn ct_sequence_mod(
    p_poly: &MultiLaurentPoly,
    q_poly: &MultiLaurentPoly,
    p: Prime,
    count: usize,
) -> Result<Vec<FpElem>> {
    p_poly.check(q_poly)?;
    let step = p_poly.reduce_mod(p);
    let mut cur = q_poly.reduce_mod(p);
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        let c = cur.ct().to_u64().expect("reduced coefficient");
        out.push(p.elem(c));
        if n + 1 < count {
            cur = cur.mul(&step)?.reduce_mod(p);
        }
    }
    Ok(out)
}
