//! Matrix form of the constant-term automaton.
//!
//! Coordinates are indexed by the window exponents `-D..=D`; coordinate `i`
//! holds the coefficient of `t^(i - D)`. `M_r` is the matrix of
//! `A ↦ Λ_0(P^r · A)` on that window.

use num_bigint::BigUint;

use super::window_radius;
use crate::laurent::LaurentPoly;
use crate::numtheory::{add_mod, digits, digits_u64, mul_mod, FpElem, Prime};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRepresentation {
    pub p: Prime,
    pub dim: usize,
    /// `matrices[r]` is `M_r`, row-major `dim × dim`.
    pub matrices: Vec<Vec<u64>>,
    pub initial_vector: Vec<u64>,
    pub output_index: usize,
}

pub fn to_linrep(p_poly: &LaurentPoly, q_poly: &LaurentPoly) -> Result<LinearRepresentation> {
    assert_eq!(
        p_poly.modulus(),
        q_poly.modulus(),
        "P and Q over different fields"
    );
    if p_poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let prime = p_poly.modulus();
    let p = prime.get() as i64;
    let window = window_radius(p_poly, q_poly) as i64;
    let dim = (2 * window + 1) as usize;

    let mut matrices = Vec::with_capacity(p as usize);
    let mut power = LaurentPoly::one(prime);
    for r in 0..p {
        if r > 0 {
            power = power.mul(p_poly);
        }
        let mut m = vec![0u64; dim * dim];
        for row in 0..dim {
            let out_exp = row as i64 - window;
            for col in 0..dim {
                let in_exp = col as i64 - window;
                m[row * dim + col] = power.coeff(p * out_exp - in_exp);
            }
        }
        matrices.push(m);
    }

    let initial_vector = (-window..=window).map(|e| q_poly.coeff(e)).collect();
    Ok(LinearRepresentation {
        p: prime,
        dim,
        matrices,
        initial_vector,
        output_index: window as usize,
    })
}

impl LinearRepresentation {
    fn apply(&self, digit: u64, v: &[u64]) -> Vec<u64> {
        let q = self.p.get();
        let m = &self.matrices[digit as usize];
        (0..self.dim)
            .map(|row| {
                m[row * self.dim..(row + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, q), q))
            })
            .collect()
    }

    fn eval_digits(&self, ds: &[u64]) -> FpElem {
        let v = ds
            .iter()
            .fold(self.initial_vector.clone(), |v, &d| self.apply(d, &v));
        self.p.elem(v[self.output_index])
    }

    pub fn eval_u64(&self, n: u64) -> FpElem {
        self.eval_digits(&digits_u64(n, self.p))
    }

    pub fn sequence(&self, count: u64) -> Vec<FpElem> {
        (0..count).map(|n| self.eval_u64(n)).collect()
    }
}

/// Applies `M_{d_0}`, then `M_{d_1}`, … to the initial vector for the
/// least-significant-first digits of `n` and reads the output coordinate.
pub fn linrep_eval(l: &LinearRepresentation, n: &BigUint) -> FpElem {
    l.eval_digits(&digits(n, l.p))
}
