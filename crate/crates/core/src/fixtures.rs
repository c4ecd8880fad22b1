//! Published polynomials and machines, kept as regression fixtures.

use crate::automaton::MooreMachine;
use crate::laurent::LaurentPoly;
use crate::multivar::MultiLaurentPoly;
use crate::numtheory::Prime;

/// The 4-state machine over `F_2` computing `1, 0, 0, 1, 0, …`.
pub fn four_state_machine() -> MooreMachine {
    MooreMachine::new(
        Prime::new(2).expect("prime"),
        0,
        vec![vec![1, 2], vec![0, 3], vec![3, 0], vec![3, 3]],
        vec![1, 1, 0, 0],
    )
    .expect("valid machine")
}

/// `x + 1/x + y + 1/y`: closed lattice walks with unit steps.
pub fn lattice_walk_poly() -> MultiLaurentPoly {
    MultiLaurentPoly::from_terms(
        2,
        [
            (vec![-1, 0], 1),
            (vec![1, 0], 1),
            (vec![0, -1], 1),
            (vec![0, 1], 1),
        ],
    )
    .expect("two variables")
}

/// Number of closed walks of length 0..=6.
pub const LATTICE_WALK_COUNTS: [u64; 7] = [1, 0, 4, 0, 36, 0, 400];

/// Integer form of the first published counterexample, `t^2 .. t^-2`.
pub const COUNTEREXAMPLE_INT_COEFFS: [i64; 5] = [32, 13, 1, 27, 35];
pub const COUNTEREXAMPLE_PRIME: u64 = 7;
/// First zero as published.
pub const COUNTEREXAMPLE_PUBLISHED_N0: u64 = 225;
/// First zero by direct expansion.
pub const COUNTEREXAMPLE_N0: u64 = 81;

/// `4t^2 + 6t + 1 + 6t^-1` over `F_7`.
pub fn counterexample_poly() -> LaurentPoly {
    LaurentPoly::from_terms(
        &symmetric_terms(&COUNTEREXAMPLE_INT_COEFFS),
        prime(COUNTEREXAMPLE_PRIME),
    )
}

/// A published degree-2 counterexample over `F_p`.
#[derive(Debug, Clone, Copy)]
pub struct ListedCounterexample {
    pub name: &'static str,
    /// Coefficients of `t^2, t, 1, t^-1, t^-2`.
    pub coeffs: [i64; 5],
    pub p: u64,
    /// Exact first zero by direct expansion.
    pub n0: u64,
}

impl ListedCounterexample {
    pub fn poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(&symmetric_terms(&self.coeffs), prime(self.p))
    }
}

const fn listed(name: &'static str, coeffs: [i64; 5], p: u64, n0: u64) -> ListedCounterexample {
    ListedCounterexample {
        name,
        coeffs,
        p,
        n0,
    }
}

/// The ten additional published counterexamples with their exact first
/// zeros. Half of them do not exceed `p^2`.
pub const LISTED_COUNTEREXAMPLES: [ListedCounterexample; 10] = [
    listed("P1", [1, 2, 3, 10, 2], 11, 28),
    listed("P2", [3, 0, 2, 3, 3], 5, 43),
    listed("P3", [1, 1, 1, 1, 2], 3, 23),
    listed("P4", [4, 0, 4, 4, 1], 5, 24),
    listed("P5", [0, 3, 3, 6, 1], 7, 3),
    listed("P6", [1, 0, 4, 4, 9], 11, 42),
    listed("P7", [0, 3, 1, 0, 4], 5, 39),
    listed("P8", [2, 2, 1, 2, 1], 3, 23),
    listed("P9", [4, 1, 2, 4, 1], 5, 2),
    listed("P10", [1, 2, 1, 2, 2], 3, 23),
];

/// Pairs `(exponent, coefficient)` for coefficients of `t^d .. t^-d`.
pub fn symmetric_terms(coeffs: &[i64]) -> Vec<(i64, i64)> {
    let d = (coeffs.len() as i64 - 1) / 2;
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| (d - i as i64, c))
        .collect()
}

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("fixture modulus is prime")
}
