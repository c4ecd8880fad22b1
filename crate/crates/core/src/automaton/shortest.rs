//! First zero of an automatic sequence.

use num_bigint::BigUint;

use super::MooreMachine;
use crate::numtheory::from_digits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShortestZeroOutcome {
    Found(BigUint),
    /// No state with output 0 is reachable.
    NoneExists,
    /// A zero state is reachable but enumeration stopped at the cap.
    CapExceeded(u64),
}

impl ShortestZeroOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            ShortestZeroOutcome::Found(_) => "found",
            ShortestZeroOutcome::NoneExists => "none",
            ShortestZeroOutcome::CapExceeded(_) => "cap-exceeded",
        }
    }

    pub fn found(&self) -> Option<&BigUint> {
        match self {
            ShortestZeroOutcome::Found(n) => Some(n),
            _ => None,
        }
    }
}

/// Least `n` with `eval(n) = 0`, without enumerating `n`.
///
/// Finds the minimal digit count `k` of a canonical word (nonzero final digit)
/// that drives the machine into a zero state, then fixes digits from the most
/// significant position down, each time taking the smallest digit that still
/// admits a completion consistent with the states reachable in exactly `j`
/// steps.
///
/// For machines whose zero states can only be reached through words ending in
/// the digit 0 (never the case for constant-term automata) no canonical input
/// reaches zero and the result is `NoneExists`.
pub fn shortest_zero_exact(m: &MooreMachine) -> ShortestZeroOutcome {
    let n = m.num_states();
    let p = m.p().get();
    let is_zero: Vec<bool> = m.outputs().iter().map(|&o| o == 0).collect();
    if is_zero[m.initial()] {
        return ShortestZeroOutcome::Found(BigUint::default());
    }
    if !m.zero_state_reachable() {
        return ShortestZeroOutcome::NoneExists;
    }

    // back[s]: some word of the current length with a nonzero last digit
    // leads from s to a zero state.
    let mut back: Vec<bool> = (0..n)
        .map(|s| (1..p).any(|r| is_zero[m.next(s, r)]))
        .collect();
    let mut k = 1;
    while !back[m.initial()] {
        if k >= n {
            return ShortestZeroOutcome::NoneExists;
        }
        back = (0..n).map(|s| (0..p).any(|r| back[m.next(s, r)])).collect();
        k += 1;
    }

    // forward[j]: states reachable in exactly j digits, j < k.
    let mut forward = Vec::with_capacity(k);
    let mut layer = vec![false; n];
    layer[m.initial()] = true;
    for _ in 0..k {
        let mut next = vec![false; n];
        for s in (0..n).filter(|&s| layer[s]) {
            for r in 0..p {
                next[m.next(s, r)] = true;
            }
        }
        forward.push(std::mem::replace(&mut layer, next));
    }

    let mut target = is_zero;
    let mut digits = vec![0u64; k];
    for j in (0..k).rev() {
        let lowest = if j == k - 1 { 1 } else { 0 };
        let (digit, pre) = (lowest..p)
            .find_map(|r| {
                let pre: Vec<bool> = (0..n).map(|s| target[m.next(s, r)]).collect();
                pre.iter()
                    .zip(&forward[j])
                    .any(|(&a, &b)| a && b)
                    .then_some((r, pre))
            })
            .expect("a feasible digit exists at every position");
        digits[j] = digit;
        target = pre;
    }
    ShortestZeroOutcome::Found(from_digits(&digits, m.p()))
}

/// Least `n < cap` with `eval(n) = 0`, by enumeration.
pub fn shortest_zero_enum(m: &MooreMachine, cap: u64) -> ShortestZeroOutcome {
    assert!(cap >= 1, "cap must be positive");
    if !m.zero_state_reachable() {
        return ShortestZeroOutcome::NoneExists;
    }
    match (0..cap).find(|&n| m.eval_u64(n).is_zero()) {
        Some(n) => ShortestZeroOutcome::Found(BigUint::from(n)),
        None => ShortestZeroOutcome::CapExceeded(cap),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{build_rz, DEFAULT_STATE_CAP};
    use crate::fixtures;
    use crate::laurent::{ct_pow_sequence, LaurentPoly};
    use crate::numtheory::Prime;
    use proptest::prelude::*;

    fn found(n: u64) -> ShortestZeroOutcome {
        ShortestZeroOutcome::Found(BigUint::from(n))
    }

    fn rz(s: &str, p: u64) -> MooreMachine {
        let p = Prime::new(p).unwrap();
        build_rz(
            &LaurentPoly::parse(s, p).unwrap(),
            &LaurentPoly::one(p),
            DEFAULT_STATE_CAP,
        )
        .unwrap()
        .machine
    }

    #[test]
    fn small_instances() {
        assert_eq!(shortest_zero_exact(&rz("t+t^-1", 2)), found(1));
        assert_eq!(
            shortest_zero_exact(&rz("1+t", 2)),
            ShortestZeroOutcome::NoneExists
        );
        assert_eq!(
            shortest_zero_enum(&rz("1+t", 2), 1000),
            ShortestZeroOutcome::NoneExists
        );
        assert_eq!(
            shortest_zero_exact(&fixtures::four_state_machine()),
            found(1)
        );
    }

    #[test]
    fn published_counterexample() {
        let m = rz("32t^2+13t+1+27t^-1+35t^-2", 7);
        assert_eq!(shortest_zero_exact(&m), found(81));
        assert_eq!(shortest_zero_enum(&m, 50_000), found(81));
        assert_eq!(
            shortest_zero_enum(&m, 50),
            ShortestZeroOutcome::CapExceeded(50)
        );
        assert_eq!(
            shortest_zero_enum(&m, 81),
            ShortestZeroOutcome::CapExceeded(81)
        );
        assert_eq!(shortest_zero_enum(&m, 82), found(81));
    }

    #[test]
    fn zero_at_origin() {
        let p = Prime::new(5).unwrap();
        let a = build_rz(
            &LaurentPoly::parse("t+1", p).unwrap(),
            &LaurentPoly::parse("t", p).unwrap(),
            DEFAULT_STATE_CAP,
        )
        .unwrap();
        assert_eq!(shortest_zero_exact(&a.machine), found(0));
    }

    #[test]
    fn reference_first_zeros() {
        // Known first zeros of ct(P^n) mod p for trinomial-like P.
        for (s, p, n0) in [("t+1+t^-1", 3, 2), ("t+1+t^-2", 5, 39), ("t+1+t^-7", 5, 14)] {
            assert_eq!(shortest_zero_exact(&rz(s, p)), found(n0), "{s} mod {p}");
        }
        assert_eq!(
            shortest_zero_exact(&rz("t+1+t^-1", 5)),
            ShortestZeroOutcome::NoneExists
        );
    }

    #[test]
    fn large_first_zero_beyond_u64() {
        // Output 0 only after 70 consecutive digits 1: n0 = (2^70 - 1).
        let p = Prime::new(2).unwrap();
        let len = 70;
        let mut t = Vec::new();
        for s in 0..len {
            t.push(vec![len + 1, s + 1]);
        }
        t.push(vec![len, len]);
        t.push(vec![len + 1, len + 1]);
        let mut out = vec![1; len + 2];
        out[len] = 0;
        let m = MooreMachine::new(p, 0, t, out).unwrap();
        let want = (BigUint::from(1u32) << 70usize) - 1u32;
        assert_eq!(shortest_zero_exact(&m), ShortestZeroOutcome::Found(want));
    }

    proptest! {
        #[test]
        fn exact_agrees_with_direct_expansion(
            p in prop::sample::select(vec![2u64, 3, 5, 7]),
            terms in prop::collection::vec((-2i64..=2, 0i64..7), 1..5),
        ) {
            let prime = Prime::new(p).unwrap();
            let poly = LaurentPoly::from_terms(&terms, prime);
            prop_assume!(!poly.is_zero());
            let a = build_rz(&poly, &LaurentPoly::one(prime), DEFAULT_STATE_CAP).unwrap();
            let exact = shortest_zero_exact(&a.machine);
            let direct = ct_pow_sequence(&poly, &LaurentPoly::one(prime), 3000);
            match direct.iter().position(|v| v.is_zero()) {
                Some(n) => prop_assert_eq!(exact, found(n as u64)),
                None => prop_assert!(exact == ShortestZeroOutcome::NoneExists
                    || exact.found().is_some_and(|n| *n >= BigUint::from(3000u32))),
            }
            match shortest_zero_enum(&a.machine, 3000) {
                ShortestZeroOutcome::CapExceeded(_) => {}
                other => prop_assert_eq!(other, shortest_zero_exact(&a.machine)),
            }
        }
    }
}
