//! The constant-term automaton of Rowland and Zeilberger.
//!
//! Since `P(t)^p ≡ P(t^p)` over `F_p`, writing `n = p·m + r` gives
//! `ct(P^n · A) = ct(P^m · Λ_0(P^r · A))`. The states are therefore the
//! polynomials reachable from `Q` under `A ↦ Λ_0(P^r · A)`, with output
//! `ct(A)`. All of them live in the window `[-D, D]`.

use std::collections::HashMap;

use super::{minimize, MooreMachine};
use crate::laurent::LaurentPoly;
use crate::numtheory::Prime;
use crate::{Error, Result};

pub const DEFAULT_STATE_CAP: usize = 1 << 22;

#[derive(Debug, Clone)]
pub struct RzAutomaton {
    pub machine: MooreMachine,
    /// `state_polys[s]` is the polynomial behind state `s`; state 0 is `Q`.
    pub state_polys: Vec<LaurentPoly>,
    pub p_poly: LaurentPoly,
    pub q_poly: LaurentPoly,
    pub window: u64,
}

impl RzAutomaton {
    pub fn num_states(&self) -> usize {
        self.machine.num_states()
    }

    pub fn state_labels(&self) -> Vec<String> {
        self.state_polys
            .iter()
            .map(LaurentPoly::to_string)
            .collect()
    }

    /// `p^(2D+1)`, saturating.
    pub fn state_bound(&self) -> u128 {
        state_bound(self.machine.p().get(), self.window)
    }
}

/// Support radius `D` of the state window: the largest absolute exponent
/// in `P` or `Q`, and at least 1.
pub fn window_radius(p_poly: &LaurentPoly, q_poly: &LaurentPoly) -> u64 {
    p_poly.radius().max(q_poly.radius()).max(1)
}

fn state_bound(p: u64, window: u64) -> u128 {
    let exp = u32::try_from(2 * window + 1).unwrap_or(u32::MAX);
    (p as u128).checked_pow(exp).unwrap_or(u128::MAX)
}

/// Breadth-first closure of `{Q}` under `A ↦ Λ_0(P^r · A)`.
///
/// Fails with [`Error::StateExplosion`] once more than
/// `min(state_cap, p^(2D+1))` states appear.
pub fn build_rz(
    p_poly: &LaurentPoly,
    q_poly: &LaurentPoly,
    state_cap: usize,
) -> Result<RzAutomaton> {
    assert_eq!(
        p_poly.modulus(),
        q_poly.modulus(),
        "P and Q over different fields"
    );
    if p_poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    assert!(state_cap >= 1, "state_cap must be positive");
    let prime = p_poly.modulus();
    let p = prime.get();
    let window = window_radius(p_poly, q_poly);
    let cap = (state_cap as u128).min(state_bound(p, window)) as usize;

    let mut powers = Vec::with_capacity(p as usize);
    powers.push(LaurentPoly::one(prime));
    for r in 1..p as usize {
        let next = powers[r - 1].mul(p_poly);
        powers.push(next);
    }

    let mut states = vec![q_poly.clone()];
    let mut index = HashMap::from([(q_poly.clone(), 0usize)]);
    let mut transitions = Vec::new();
    let mut k = 0;
    while k < states.len() {
        for power in &powers {
            let image = power.mul_cartier(&states[k], 0);
            let target = match index.get(&image) {
                Some(&t) => t,
                None => {
                    let t = states.len();
                    if t >= cap {
                        return Err(Error::StateExplosion { cap });
                    }
                    index.insert(image.clone(), t);
                    states.push(image);
                    t
                }
            };
            transitions.push(target);
        }
        k += 1;
    }

    let outputs = states.iter().map(|s| s.ct().value()).collect();
    Ok(RzAutomaton {
        machine: MooreMachine::from_flat(prime, 0, transitions, outputs),
        state_polys: states,
        p_poly: p_poly.clone(),
        q_poly: q_poly.clone(),
        window,
    })
}

/// Automaticity: the state count of the minimal machine for `ct(P^n · Q)`.
pub fn kappa(p_poly: &LaurentPoly, q_poly: &LaurentPoly, state_cap: usize) -> Result<usize> {
    Ok(minimize(&build_rz(p_poly, q_poly, state_cap)?.machine).num_states())
}

/// Machine for `P = 0`, where the sequence is `ct(Q), 0, 0, …`. Two states
/// with outputs `[ct(Q), 0]`; [`build_rz`] rejects this case.
pub fn zero_power_machine(p: Prime, ct_q: u64) -> MooreMachine {
    let width = p.get() as usize;
    let mut from_start = vec![1; width];
    from_start[0] = 0;
    MooreMachine::new(
        p,
        0,
        vec![from_start, vec![1; width]],
        vec![ct_q % p.get(), 0],
    )
    .expect("valid machine")
}
