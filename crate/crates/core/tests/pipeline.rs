use ctseq::automaton::{
    build_rz, kappa, linrep_eval, minimize, shortest_zero_enum, shortest_zero_exact, to_linrep,
    DEFAULT_STATE_CAP,
};
use ctseq::bounds::{classify, conjecture_bound, worst_case_bound, WorstCase};
use ctseq::laurent::{ct_pow_sequence, LaurentPoly};
use ctseq::multivar::ct_sequence_mod;
use ctseq::numtheory::{digits, from_digits, primes_in_range};
use ctseq::{BigUint, Error, MooreMachine, MultiLaurentPoly, Prime, ShortestZeroOutcome};

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

#[test]
fn counterexample_end_to_end() {
    let f7 = prime(7);
    let poly = LaurentPoly::parse("32t^2+13t+1+27t^-1+35t^-2", f7).unwrap();
    let q = LaurentPoly::one(f7);
    let a = build_rz(&poly, &q, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(a.num_states(), 49);
    assert!(a.num_states() as u128 <= a.state_bound());
    let n0 = shortest_zero_exact(&a.machine);
    assert_eq!(n0, ShortestZeroOutcome::Found(BigUint::from(81u32)));
    assert_eq!(shortest_zero_enum(&a.machine, 50_000), n0);

    let k = kappa(&poly, &q, DEFAULT_STATE_CAP).unwrap() as u64;
    let report = classify(n0.found().unwrap(), f7, 2, Some(k));
    assert_eq!(report.conjecture_bound, BigUint::from(49u32));
    assert_eq!(report.violates_conjecture, Some(true));
    assert_eq!(report.satisfies_kappa_upper, Some(true));

    let l = to_linrep(&poly, &q).unwrap();
    for n in [0u32, 81, 88, 123, 173, 225] {
        let n = BigUint::from(n);
        assert_eq!(linrep_eval(&l, &n), a.machine.eval(&n));
    }
    let first: Vec<u64> = a.machine.sequence(200).iter().map(|v| v.value()).collect();
    let zeros: Vec<usize> = first
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == 0)
        .map(|(i, _)| i)
        .collect();
    assert_eq!(zeros[..4], [81, 88, 123, 173]);
}

#[test]
fn automaton_json_round_trip() {
    let f5 = prime(5);
    let poly = LaurentPoly::parse("t+1+t^-2", f5).unwrap();
    let a = build_rz(&poly, &LaurentPoly::one(f5), DEFAULT_STATE_CAP).unwrap();
    let labels = a.state_labels();
    let json = serde_json::to_string(&a.machine.to_json(Some(&labels))).unwrap();
    let back = MooreMachine::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back, a.machine);
    let m = minimize(&back);
    assert_eq!(
        shortest_zero_exact(&m),
        ShortestZeroOutcome::Found(BigUint::from(39u32))
    );
}

#[test]
fn general_q_matches_expansion() {
    let f3 = prime(3);
    let poly = LaurentPoly::parse("2t^2+t^-1", f3).unwrap();
    let q = LaurentPoly::parse("t^3+2t^-1+1", f3).unwrap();
    let a = build_rz(&poly, &q, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(a.window, 3);
    assert_eq!(a.machine.sequence(400), ct_pow_sequence(&poly, &q, 400));
}

#[test]
fn errors_are_typed() {
    assert!(matches!(Prime::new(1), Err(Error::NotPrime(1))));
    assert!(matches!(
        LaurentPoly::parse("t^", prime(3)),
        Err(Error::Parse(_))
    ));
    let zero = LaurentPoly::parse("3t", prime(3)).unwrap();
    assert!(matches!(zero.degree(), Err(Error::DegreeUndefined)));
    assert!(matches!(
        build_rz(&zero, &LaurentPoly::one(prime(3)), 10),
        Err(Error::ZeroPolynomial)
    ));
    assert!(matches!(
        worst_case_bound(prime(7), 40, 40, 1_000_000),
        Err(Error::BoundTooLarge(_))
    ));
}

#[test]
fn bounds_and_digits() {
    assert_eq!(
        worst_case_bound(prime(2), 1, 1, 1_000_000).unwrap(),
        WorstCase::Exact(BigUint::from(4u32))
    );
    assert_eq!(conjecture_bound(prime(3), 2), BigUint::from(9u32));
    let n = BigUint::from(225u32);
    let d = digits(&n, prime(7));
    assert_eq!(d, vec![1, 4, 4]);
    assert_eq!(from_digits(&d, prime(7)), n);
    assert_eq!(primes_in_range(2, 20).len(), 8);
}

#[test]
fn multivariate_matches_univariate_mod_p() {
    let walk =
        MultiLaurentPoly::from_terms(1, [(vec![-1], 1), (vec![0], 1), (vec![1], 1)]).unwrap();
    let one = MultiLaurentPoly::one(1);
    let multi = ct_sequence_mod(&walk, &one, prime(3), 60).unwrap();
    let f3 = prime(3);
    let uni = ct_pow_sequence(
        &LaurentPoly::parse("t+1+t^-1", f3).unwrap(),
        &LaurentPoly::one(f3),
        60,
    );
    assert_eq!(multi, uni);
    assert!(uni[2].is_zero());
}
