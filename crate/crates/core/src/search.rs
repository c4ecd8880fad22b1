//! Seeded randomized search for late first zeros.
//!
//! Each experiment draws `num_polynomials` Laurent polynomials with nonzero
//! coefficients on every exponent in `[-d, d]`, reduces each modulo every
//! prime below `max_prime`, and records where the first zero of
//! `ct(P^n) mod p` falls relative to the bounds in [`crate::bounds`].
//!
//! Polynomial `i` draws from its own ChaCha8 stream seeded with
//! [`poly_seed`]`(master_seed, i)`, so results do not depend on how the work
//! is scheduled.

use std::io::{Read, Write};
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automaton::{
    build_rz, minimize, shortest_zero_enum, shortest_zero_exact, zero_power_machine,
    ShortestZeroOutcome, DEFAULT_STATE_CAP,
};
use crate::bounds::BoundReport;
use crate::dec;
use crate::laurent::{write_term, LaurentPoly};
use crate::numtheory::{primes_in_range, Prime};
use crate::{Error, Result};

pub const DEFAULT_CAP: u64 = 50_000;

/// Which first-zero routine a sweep uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Exact automaton search; never reports a cap.
    #[default]
    Exact,
    /// Enumerate `n < cap`.
    Enum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub num_polynomials: u64,
    pub degree: u64,
    pub max_prime: u64,
    #[serde(default = "default_cap")]
    pub cap: u64,
    pub master_seed: u64,
    #[serde(default = "default_true")]
    pub compute_kappa: bool,
    /// Worker threads. Not written to result files; output is independent of it.
    #[serde(default = "default_parallelism", skip_serializing)]
    pub parallelism: usize,
    #[serde(default)]
    pub engine: Engine,
}

fn default_cap() -> u64 {
    DEFAULT_CAP
}

fn default_true() -> bool {
    true
}

fn default_parallelism() -> usize {
    1
}

impl ExperimentConfig {
    pub fn new(num_polynomials: u64, degree: u64, max_prime: u64, master_seed: u64) -> Self {
        ExperimentConfig {
            num_polynomials,
            degree,
            max_prime,
            cap: DEFAULT_CAP,
            master_seed,
            compute_kappa: true,
            parallelism: 1,
            engine: Engine::Exact,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.into()));
        if self.cap < 1 {
            return bad("cap must be at least 1");
        }
        if self.degree < 1 {
            return bad("degree must be at least 1");
        }
        if self.max_prime < 3 {
            return bad("max_prime must be at least 3");
        }
        if self.parallelism < 1 {
            return bad("parallelism must be at least 1");
        }
        Ok(())
    }
}

/// A random polynomial `Σ_{i=-d}^{d} a_i t^i` with every `a_i` in
/// `[1, source_prime - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedPoly {
    pub poly_id: u64,
    pub source_prime: Prime,
    pub nominal_degree: u64,
    /// `a_{-d}, …, a_d`.
    pub int_coeffs: Vec<u64>,
}

impl GeneratedPoly {
    pub fn new(poly_id: u64, source_prime: Prime, int_coeffs: Vec<u64>) -> Self {
        assert!(int_coeffs.len() % 2 == 1, "need 2d + 1 coefficients");
        GeneratedPoly {
            poly_id,
            source_prime,
            nominal_degree: (int_coeffs.len() as u64 - 1) / 2,
            int_coeffs,
        }
    }

    fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        let d = self.nominal_degree as i64;
        self.int_coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - d, c))
    }

    pub fn reduce(&self, p: Prime) -> LaurentPoly {
        let terms: Vec<(i64, i64)> = self
            .terms()
            .map(|(e, c)| (e, (c % p.get()) as i64))
            .collect();
        LaurentPoly::from_terms(&terms, p)
    }

    /// The integer polynomial in the text grammar, highest exponent first.
    pub fn poly_string(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            write_term(&mut out, e, &c.to_string()).expect("string write");
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// SplitMix64 output function.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-polynomial seed: `splitmix64(master ^ splitmix64(poly_id))`.
pub fn poly_seed(master_seed: u64, poly_id: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(poly_id))
}

/// Draws one coefficient per exponent `-degree..=degree`, in that order,
/// uniformly from `[1, source_prime - 1]`.
pub fn random_laurent<R: Rng>(
    poly_id: u64,
    source_prime: Prime,
    degree: u64,
    rng: &mut R,
) -> GeneratedPoly {
    assert!(degree >= 1, "degree must be at least 1");
    let top = source_prime.get() - 1;
    let coeffs = (0..2 * degree + 1)
        .map(|_| rng.gen_range(1..=top))
        .collect();
    GeneratedPoly::new(poly_id, source_prime, coeffs)
}

/// One `(polynomial, prime)` outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RowRepr", try_from = "RowRepr")]
pub struct SweepRow {
    pub poly_id: u64,
    pub p: Prime,
    /// `None` when the computation for this prime failed; see `error`.
    pub outcome: Option<ShortestZeroOutcome>,
    pub kappa: Option<u64>,
    /// Degree of the reduced polynomial; absent when it reduces to zero.
    pub effective_degree: Option<u64>,
    /// Classified against the nominal degree.
    pub report: BoundReport,
    pub runtime_ms: u64,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn outcome_label(&self) -> &'static str {
        self.outcome
            .as_ref()
            .map_or("error", ShortestZeroOutcome::label)
    }

    pub fn n0(&self) -> Option<&BigUint> {
        self.outcome.as_ref().and_then(ShortestZeroOutcome::found)
    }

    pub fn is_violation(&self) -> bool {
        self.report.violates_conjecture == Some(true)
    }
}

#[derive(Serialize, Deserialize)]
struct RowRepr {
    poly_id: u64,
    p: Prime,
    outcome: String,
    #[serde(with = "dec::opt_big")]
    n0: Option<BigUint>,
    #[serde(with = "dec::opt_nat")]
    cap: Option<u64>,
    #[serde(with = "dec::opt_nat")]
    kappa: Option<u64>,
    effective_degree: Option<u64>,
    report: BoundReport,
    error: Option<String>,
}

impl From<SweepRow> for RowRepr {
    fn from(r: SweepRow) -> Self {
        let label = r.outcome_label().to_string();
        let (n0, cap) = match r.outcome {
            Some(ShortestZeroOutcome::Found(n)) => (Some(n), None),
            Some(ShortestZeroOutcome::CapExceeded(c)) => (None, Some(c)),
            _ => (None, None),
        };
        RowRepr {
            poly_id: r.poly_id,
            p: r.p,
            outcome: label,
            n0,
            cap,
            kappa: r.kappa,
            effective_degree: r.effective_degree,
            report: r.report,
            error: r.error,
        }
    }
}

impl TryFrom<RowRepr> for SweepRow {
    type Error = String;

    fn try_from(r: RowRepr) -> std::result::Result<Self, String> {
        let outcome = match (r.outcome.as_str(), r.n0, r.cap) {
            ("found", Some(n), _) => Some(ShortestZeroOutcome::Found(n)),
            ("none", _, _) => Some(ShortestZeroOutcome::NoneExists),
            ("cap-exceeded", _, Some(c)) => Some(ShortestZeroOutcome::CapExceeded(c)),
            ("error", _, _) => None,
            (other, _, _) => return Err(format!("bad outcome {other:?}")),
        };
        Ok(SweepRow {
            poly_id: r.poly_id,
            p: r.p,
            outcome,
            kappa: r.kappa,
            effective_degree: r.effective_degree,
            report: r.report,
            runtime_ms: 0,
            error: r.error,
        })
    }
}

fn sweep_one(
    g: &GeneratedPoly,
    p: Prime,
    cap: u64,
    engine: Engine,
    compute_kappa: bool,
) -> SweepRow {
    let start = Instant::now();
    let reduced = g.reduce(p);
    let effective_degree = reduced.degree().ok();
    let machine = if reduced.is_zero() {
        Ok(zero_power_machine(p, 1))
    } else {
        build_rz(&reduced, &LaurentPoly::one(p), DEFAULT_STATE_CAP).map(|a| a.machine)
    };
    let (outcome, kappa, error) = match machine {
        Ok(m) => {
            let outcome = if reduced.is_zero() {
                ShortestZeroOutcome::Found(BigUint::from(1u32))
            } else {
                match engine {
                    Engine::Exact => shortest_zero_exact(&m),
                    Engine::Enum => shortest_zero_enum(&m, cap),
                }
            };
            let kappa = compute_kappa.then(|| minimize(&m).num_states() as u64);
            (Some(outcome), kappa, None)
        }
        Err(e) => (None, None, Some(e.to_string())),
    };
    let mut report = BoundReport::new(p, g.nominal_degree, 1, kappa);
    if let Some(ShortestZeroOutcome::Found(n0)) = &outcome {
        report = report.with_first_zero(n0);
    }
    SweepRow {
        poly_id: g.poly_id,
        p,
        outcome,
        kappa,
        effective_degree,
        report,
        runtime_ms: start.elapsed().as_millis() as u64,
        error,
    }
}

/// First zeros of `g` reduced modulo each prime, with `Q = 1`. Failures are
/// recorded per row and never abort the sweep.
pub fn sweep(
    g: &GeneratedPoly,
    primes: &[Prime],
    cap: u64,
    engine: Engine,
    compute_kappa: bool,
) -> Vec<SweepRow> {
    primes
        .iter()
        .map(|&p| sweep_one(g, p, cap, engine, compute_kappa))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyResult {
    #[serde(flatten)]
    pub poly: GeneratedPoly,
    pub poly_string: String,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentResults {
    pub config: ExperimentConfig,
    pub polynomials: Vec<PolyResult>,
}

/// Row tallies for the summary line.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub polynomials: usize,
    pub rows: usize,
    pub found: usize,
    pub none: usize,
    pub cap_exceeded: usize,
    pub errors: usize,
    pub violations: usize,
    pub strict_violations: usize,
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "polynomials={} rows={} found={} none={} cap_exceeded={} errors={} violations={} strict_violations={}",
            self.polynomials,
            self.rows,
            self.found,
            self.none,
            self.cap_exceeded,
            self.errors,
            self.violations,
            self.strict_violations
        )
    }
}

impl ExperimentResults {
    pub fn rows(&self) -> impl Iterator<Item = (&GeneratedPoly, &SweepRow)> {
        self.polynomials
            .iter()
            .flat_map(|pr| pr.rows.iter().map(move |r| (&pr.poly, r)))
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary {
            polynomials: self.polynomials.len(),
            ..Summary::default()
        };
        for (_, r) in self.rows() {
            s.rows += 1;
            match &r.outcome {
                Some(ShortestZeroOutcome::Found(_)) => s.found += 1,
                Some(ShortestZeroOutcome::NoneExists) => s.none += 1,
                Some(ShortestZeroOutcome::CapExceeded(_)) => s.cap_exceeded += 1,
                None => s.errors += 1,
            }
            s.violations += usize::from(r.is_violation());
            s.strict_violations += usize::from(r.report.violates_conjecture_strict == Some(true));
        }
        s
    }

    /// Rows violating the conjectured bound (non-strict), in discovery order.
    pub fn counterexamples(&self) -> Vec<(GeneratedPoly, Prime, BigUint)> {
        self.rows()
            .filter(|(_, r)| r.is_violation())
            .filter_map(|(g, r)| r.n0().map(|n| (g.clone(), r.p, n.clone())))
            .collect()
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        w.write_all(b"\n")?;
        Ok(())
    }

    pub fn read_json<R: Read>(r: R) -> Result<Self> {
        Ok(serde_json::from_reader(r)?)
    }

    /// Flat CSV, one line per row. `timing = false` leaves `runtime_ms` blank
    /// so the file is reproducible byte for byte.
    pub fn write_csv<W: Write>(&self, w: W, timing: bool) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for pr in &self.polynomials {
            for r in &pr.rows {
                out.serialize(CsvRow::new(pr, r, timing))?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

/// Column layout of the CSV result file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub poly_id: u64,
    pub poly_string: String,
    pub source_prime: u64,
    pub nominal_degree: u64,
    pub effective_degree: Option<u64>,
    pub p: u64,
    pub outcome: String,
    pub n0: Option<String>,
    pub kappa: Option<u64>,
    pub conjecture_bound: String,
    pub violates_conjecture: Option<bool>,
    pub violates_conjecture_strict: Option<bool>,
    pub kappa_upper_ok: Option<bool>,
    pub kappa_lower_ok: Option<bool>,
    pub runtime_ms: Option<u64>,
}

impl CsvRow {
    fn new(pr: &PolyResult, r: &SweepRow, timing: bool) -> Self {
        CsvRow {
            poly_id: pr.poly.poly_id,
            poly_string: pr.poly_string.clone(),
            source_prime: pr.poly.source_prime.get(),
            nominal_degree: pr.poly.nominal_degree,
            effective_degree: r.effective_degree,
            p: r.p.get(),
            outcome: r.outcome_label().to_string(),
            n0: r.n0().map(|n| n.to_str_radix(10)),
            kappa: r.kappa,
            conjecture_bound: r.report.conjecture_bound.to_str_radix(10),
            violates_conjecture: r.report.violates_conjecture,
            violates_conjecture_strict: r.report.violates_conjecture_strict,
            kappa_upper_ok: r.report.satisfies_kappa_upper,
            kappa_lower_ok: r.report.satisfies_kappa_lower,
            runtime_ms: timing.then_some(r.runtime_ms),
        }
    }
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<CsvRow>> {
    let mut rdr = csv::Reader::from_reader(r);
    rdr.deserialize()
        .collect::<std::result::Result<Vec<CsvRow>, _>>()
        .map_err(Error::from)
}

fn run_poly(cfg: &ExperimentConfig, primes: &[Prime], poly_id: u64) -> PolyResult {
    let mut rng = ChaCha8Rng::seed_from_u64(poly_seed(cfg.master_seed, poly_id));
    let source_prime = primes[rng.gen_range(0..primes.len())];
    let poly = random_laurent(poly_id, source_prime, cfg.degree, &mut rng);
    let rows = sweep(&poly, primes, cfg.cap, cfg.engine, cfg.compute_kappa);
    PolyResult {
        poly_string: poly.poly_string(),
        poly,
        rows,
    }
}

/// Runs the full experiment. Output depends only on the configuration, not
/// on `parallelism`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResults> {
    cfg.validate()?;
    let primes = primes_in_range(2, cfg.max_prime);
    let ids = 0..cfg.num_polynomials;
    let polynomials = if cfg.parallelism <= 1 {
        ids.map(|i| run_poly(cfg, &primes, i)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallelism)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        pool.install(|| {
            ids.into_par_iter()
                .map(|i| run_poly(cfg, &primes, i))
                .collect()
        })
    };
    Ok(ExperimentResults {
        config: cfg.clone(),
        polynomials,
    })
}

/// `(polynomial, prime, first zero)` for every violation of `n0 < p^deg`.
pub fn find_counterexamples(
    cfg: &ExperimentConfig,
) -> Result<Vec<(GeneratedPoly, Prime, BigUint)>> {
    Ok(run_experiment(cfg)?.counterexamples())
}
