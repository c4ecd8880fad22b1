//! Checks of the published values, one row per claim.

use num_bigint::BigUint;

use ctseq::automaton::{build_rz, shortest_zero_enum, shortest_zero_exact, DEFAULT_STATE_CAP};
use ctseq::bounds::classify;
use ctseq::fixtures::{self, LISTED_COUNTEREXAMPLES};
use ctseq::laurent::LaurentPoly;
use ctseq::ShortestZeroOutcome;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

fn check(name: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>) -> Check {
    let (expected, actual) = (expected.into(), actual.into());
    Check {
        name: name.into(),
        passed: expected == actual,
        expected,
        actual,
    }
}

fn outcome_text(o: &ShortestZeroOutcome) -> String {
    match o {
        ShortestZeroOutcome::Found(n) => n.to_string(),
        other => other.label().to_string(),
    }
}

fn joined<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn paper_checks() -> Vec<Check> {
    let mut out = Vec::new();

    let walk = fixtures::lattice_walk_poly();
    let counts = (0..fixtures::LATTICE_WALK_COUNTS.len() as u64).map(|n| walk.pow(n).ct());
    out.push(check(
        "lattice walks ct((x+1/x+y+1/y)^n), n=0..6",
        joined(fixtures::LATTICE_WALK_COUNTS),
        joined(counts),
    ));

    let m = fixtures::four_state_machine();
    out.push(check(
        "four-state machine over F_2, n=0..4",
        "1,0,0,1,0",
        joined(m.sequence(5).iter().map(|v| v.value())),
    ));

    let poly = fixtures::counterexample_poly();
    out.push(check(
        "32t^2+13t+1+27t^-1+35t^-2 mod 7",
        "4t^2+6t+1+6t^-1",
        poly.to_string(),
    ));
    let published = fixtures::COUNTEREXAMPLE_PUBLISHED_N0.to_string();
    let rz = build_rz(&poly, &LaurentPoly::one(poly.modulus()), DEFAULT_STATE_CAP)
        .expect("fixture automaton builds");
    let exact = shortest_zero_exact(&rz.machine);
    out.push(check(
        "first zero mod 7 (exact)",
        &published,
        outcome_text(&exact),
    ));
    out.push(check(
        "first zero mod 7 (enumeration, cap 50000)",
        &published,
        outcome_text(&shortest_zero_enum(&rz.machine, 50_000)),
    ));
    let violates = exact
        .found()
        .map(|n0| classify(n0, poly.modulus(), 2, None).violates_conjecture == Some(true));
    out.push(check(
        "first zero mod 7 is at least 7^2 = 49",
        "true",
        violates.map_or("no zero".into(), |v| v.to_string()),
    ));

    for c in LISTED_COUNTEREXAMPLES {
        let poly = c.poly();
        let bound = BigUint::from(c.p * c.p);
        let found = build_rz(&poly, &LaurentPoly::one(poly.modulus()), DEFAULT_STATE_CAP)
            .map(|a| shortest_zero_exact(&a.machine));
        let (passed, actual) = match &found {
            Ok(ShortestZeroOutcome::Found(n0)) => (*n0 > bound, format!("n0 = {n0}")),
            Ok(other) => (false, other.label().to_string()),
            Err(e) => (false, e.to_string()),
        };
        out.push(Check {
            name: format!("{} over F_{}: first zero exceeds p^2", c.name, c.p),
            expected: format!("n0 > {bound}"),
            actual,
            passed,
        });
    }
    out
}

pub fn render_table(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for c in checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        s += &format!(
            "{status}  {:<width$}  expected {}  got {}\n",
            c.name, c.expected, c.actual
        );
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    s += &format!("{passed}/{} checks passed\n", checks.len());
    s
}
