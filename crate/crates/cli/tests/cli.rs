use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ctseq::automaton::AutomatonJson;
use ctseq::search::{
    sweep, Engine, ExperimentConfig, ExperimentResults, GeneratedPoly, PolyResult,
};
use ctseq::Prime;

const CE: &str = "32t^2+13t+1+27t^-1+35t^-2";

fn ctseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctseq"))
        .args(args)
        .output()
        .expect("run ctseq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn seq_examples() {
    let o = ctseq(&["seq", "--poly", "t+t^-1", "--prime", "2", "--count", "5"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "1,0,0,0,0\n"));
    let o = ctseq(&["seq", "--poly", CE, "--prime", "7", "--count", "4"]);
    assert_eq!(stdout(&o), "1,1,3,5\n");
    let o = ctseq(&["seq", "--poly", CE, "--prime", "7", "--count", "0"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, ""));
    let o = ctseq(&[
        "seq", "--poly", "1+t", "--prime", "5", "--count", "6", "--q", "t^-2",
    ]);
    assert_eq!(stdout(&o), "0,0,1,3,1,0\n");
}

#[test]
fn seq_engines_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let d: i64 = rng.gen_range(1..=2);
        let terms: Vec<String> = (-d..=d)
            .map(|e| format!("{}t^{e}", rng.gen_range(0..p)))
            .collect();
        let poly = terms.join("+");
        let run = |engine: &str| {
            let o = ctseq(&[
                "seq",
                "--poly",
                &poly,
                "--prime",
                &p.to_string(),
                "--count",
                "300",
                "--engine",
                engine,
            ]);
            assert_eq!(code(&o), 0, "{poly} {engine}");
            stdout(&o)
        };
        let oracle = run("oracle");
        assert_eq!(oracle.split(',').count(), 300);
        assert_eq!(run("automaton"), oracle, "{poly} mod {p}");
        assert_eq!(run("linrep"), oracle, "{poly} mod {p}");
    }
}

#[test]
fn shortest_zero_outcomes() {
    let o = ctseq(&["shortest-zero", "--poly", CE, "--prime", "7"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "81\n"));
    let o = ctseq(&[
        "shortest-zero",
        "--poly",
        CE,
        "--prime",
        "7",
        "--method",
        "enum",
        "--cap",
        "82",
    ]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "81\n"));
    let o = ctseq(&["shortest-zero", "--poly", "1+t", "--prime", "2"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "none\n"));
    for cap in ["50", "81"] {
        let o = ctseq(&[
            "shortest-zero",
            "--poly",
            CE,
            "--prime",
            "7",
            "--method",
            "enum",
            "--cap",
            cap,
        ]);
        assert_eq!((code(&o), stdout(&o).as_str()), (3, "cap-exceeded\n"));
    }
    let o = ctseq(&["shortest-zero", "--poly", "7t+14", "--prime", "7"]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn exit_code_table() {
    let cases: &[(&[&str], i32)] = &[
        (&["seq", "--poly", "t+", "--prime", "2"], 2),
        (&["seq", "--poly", "t", "--prime", "9"], 2),
        (&["seq", "--poly", "t"], 2),
        (&["seq", "--prime", "3"], 2),
        (&["bogus"], 2),
        (&["search", "--max-prime", "2"], 2),
        (&["search", "--degree", "0"], 2),
        (
            &[
                "automaton",
                "--poly",
                "t",
                "--prime",
                "3",
                "--state-cap",
                "1",
            ],
            3,
        ),
        (
            &[
                "automaton",
                "--poly",
                "t",
                "--prime",
                "3",
                "--dot",
                "/nonexistent/dir/a.dot",
            ],
            4,
        ),
        (&["plot", "--input", "/nonexistent/results.json"], 4),
        (&["verify-paper"], 1),
    ];
    for (args, want) in cases {
        assert_eq!(code(&ctseq(args)), *want, "{args:?}");
    }
    let o = ctseq(&["seq", "--poly", "3t^2+-t", "--prime", "5"]);
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("position 5"),
        "{o:?}"
    );
}

#[test]
fn automaton_stats() {
    let o = ctseq(&["automaton", "--poly", "1+t", "--prime", "2"]);
    assert_eq!(stdout(&o), "states=1 kappa=1 zero_reachable=false\n");
    let o = ctseq(&["automaton", "--poly", "t+t^-1", "--prime", "2", "--stats"]);
    assert_eq!(stdout(&o), "states=2 kappa=2 zero_reachable=true\n");
    let o = ctseq(&["automaton", "--poly", CE, "--prime", "7", "--stats"]);
    assert_eq!(stdout(&o), "states=49 kappa=49 zero_reachable=true\n");
}

/// Edges `(from, digit, to)` from the DOT dump.
fn dot_edges(dot: &str) -> Vec<(usize, u64, usize)> {
    let mut edges = Vec::new();
    for line in dot.lines().map(str::trim) {
        let Some((lhs, rest)) = line.split_once(" -> ") else {
            continue;
        };
        let (rhs, label) = rest.split_once(" [label=\"").expect("edge label");
        let from = lhs.trim_start_matches('q').parse().unwrap();
        let to = rhs.trim_start_matches('q').parse().unwrap();
        for d in label.trim_end_matches("\"];").split(',') {
            edges.push((from, d.parse().unwrap(), to));
        }
    }
    edges.sort_unstable();
    edges
}

fn check_dot_against_json(dot: &Path, json: &Path) {
    let dot = fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("digraph automaton {") && dot.trim_end().ends_with('}'));
    let j: AutomatonJson = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    let mut want: Vec<(usize, u64, usize)> = j
        .transitions
        .iter()
        .enumerate()
        .flat_map(|(s, row)| row.iter().enumerate().map(move |(d, &t)| (s, d as u64, t)))
        .collect();
    want.sort_unstable();
    assert_eq!(dot_edges(&dot), want);
    let nodes = dot
        .lines()
        .filter(|l| l.trim_start().starts_with('q') && !l.contains("->"))
        .count();
    assert_eq!(nodes, j.outputs.len());
    let m = ctseq::MooreMachine::from_json(&j).unwrap();
    assert_eq!(
        m.to_json(if j.state_polys.is_empty() {
            None
        } else {
            Some(j.state_polys.as_slice())
        }),
        j
    );
}

#[test]
fn dot_and_json_dumps_agree() {
    let dir = tempfile::tempdir().unwrap();
    let (dot, json) = (dir.path().join("a.dot"), dir.path().join("a.json"));
    let (d, j) = (dot.to_str().unwrap(), json.to_str().unwrap());
    let o = ctseq(&[
        "automaton",
        "--poly",
        CE,
        "--prime",
        "7",
        "--dot",
        d,
        "--json",
        j,
    ]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, ""));
    check_dot_against_json(&dot, &json);
    let parsed: AutomatonJson = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(parsed.state_polys[0], "1");
    assert_eq!(parsed.outputs.len(), 49);

    let o = ctseq(&[
        "automaton",
        "--poly",
        "1+t+t^-1",
        "--prime",
        "3",
        "--minimize",
        "--stats",
        "--dot",
        d,
        "--json",
        j,
    ]);
    assert_eq!(code(&o), 0);
    check_dot_against_json(&dot, &json);
}

#[test]
fn bounds_reports() {
    let o = ctseq(&["bounds", "--poly", CE, "--prime", "7"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["conjecture_bound"], "49");
    assert_eq!(v["violates_conjecture"], true);
    assert_eq!(v["n0"], "81");
    let o = ctseq(&["bounds", "--poly", "t+1", "--prime", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["worst_case"], "4");
    let o = ctseq(&["bounds", "--poly", "t+t^-1", "--prime", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kappa_lower_ok"], false);
    assert_eq!(v["kappa_upper_ok"], true);
    let o = ctseq(&["bounds", "--poly", "t^3+1", "--prime", "13", "--r", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["worst_case"]["base"], "13");
    assert_eq!(v["worst_case"]["exponent"], "371293");
}

fn search_csv(dir: &Path, name: &str, extra: &[&str]) -> (Vec<u8>, String) {
    let path = dir.join(name);
    let mut args = vec![
        "search",
        "--count",
        "5",
        "--degree",
        "2",
        "--max-prime",
        "12",
        "--seed",
        "42",
        "--no-timing",
    ];
    args.extend_from_slice(extra);
    args.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = ctseq(&args);
    assert_eq!(code(&o), 0, "{o:?}");
    (fs::read(path).unwrap(), stdout(&o))
}

#[test]
fn search_is_reproducible_and_tallied() {
    let dir = tempfile::tempdir().unwrap();
    let (a, summary) = search_csv(dir.path(), "a.csv", &[]);
    let (b, _) = search_csv(dir.path(), "b.csv", &["--parallelism", "3"]);
    assert_eq!(a, b);

    let text = String::from_utf8(a).unwrap();
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    let mut violations = 0;
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 15);
        assert_eq!(cols[14], "", "runtime suppressed");
        *tally.entry(cols[6].to_string()).or_default() += 1;
        violations += usize::from(cols[10] == "true");
    }
    let get = |k: &str| tally.get(k).copied().unwrap_or(0);
    let want = format!(
        "polynomials=5 rows={} found={} none={} cap_exceeded={} errors={} violations={violations}",
        text.lines().count() - 1,
        get("found"),
        get("none"),
        get("cap-exceeded"),
        get("error"),
    );
    assert!(summary.starts_with(&want), "{summary} vs {want}");

    let (json, _) = search_csv(dir.path(), "r.json", &[]);
    let res = ExperimentResults::read_json(json.as_slice()).unwrap();
    assert_eq!(res.polynomials.len(), 5);
    assert!(!String::from_utf8(json).unwrap().contains("runtime"));
}

#[test]
fn cap_engine_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let (exact, _) = search_csv(dir.path(), "e.csv", &[]);
    let (capped, _) = search_csv(dir.path(), "c.csv", &["--cap-engine", "--cap", "30"]);
    let (exact, capped) = (
        String::from_utf8(exact).unwrap(),
        String::from_utf8(capped).unwrap(),
    );
    let mut saw_cap = false;
    for (e, c) in exact.lines().zip(capped.lines()).skip(1) {
        let (e, c): (Vec<&str>, Vec<&str>) = (e.split(',').collect(), c.split(',').collect());
        if c[6] == "cap-exceeded" {
            saw_cap = true;
            assert!(e[6] == "found" && e[7].parse::<u64>().unwrap() >= 30);
        } else {
            assert_eq!(e, c);
        }
    }
    assert!(saw_cap);

    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"num_polynomials": 5, "degree": 2, "max_prime": 12, "master_seed": 42}"#,
    )
    .unwrap();
    let out = dir.path().join("f.csv");
    let o = ctseq(&[
        "search",
        "--config",
        cfg.to_str().unwrap(),
        "--no-timing",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(out).unwrap(), exact);

    fs::write(&cfg, r#"{"num_polynomials": 5}"#).unwrap();
    assert_eq!(
        code(&ctseq(&["search", "--config", cfg.to_str().unwrap()])),
        2
    );
}

fn results_for(polys: Vec<(GeneratedPoly, Vec<u64>)>) -> ExperimentResults {
    let polynomials = polys
        .into_iter()
        .map(|(g, primes)| {
            let primes: Vec<Prime> = primes.into_iter().map(|p| Prime::new(p).unwrap()).collect();
            PolyResult {
                poly_string: g.poly_string(),
                rows: sweep(&g, &primes, 50_000, Engine::Exact, true),
                poly: g,
            }
        })
        .collect();
    ExperimentResults {
        config: ExperimentConfig::new(1, 2, 12, 0),
        polynomials,
    }
}

fn plot(results: &ExperimentResults, csv: bool) -> (tempfile::TempDir, Output) {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join(if csv { "r.csv" } else { "r.json" });
    let mut buf = Vec::new();
    if csv {
        results.write_csv(&mut buf, false).unwrap();
    } else {
        results.write_json(&mut buf).unwrap();
    }
    fs::write(&input, buf).unwrap();
    let out = dir.path().join("plots");
    let o = ctseq(&[
        "plot",
        "--input",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    (dir, o)
}

#[test]
fn plot_markers() {
    let p3 = Prime::new(3).unwrap();
    let one_found = results_for(vec![(GeneratedPoly::new(4, p3, vec![1, 1, 1]), vec![3])]);
    for csv in [false, true] {
        let (dir, o) = plot(&one_found, csv);
        assert_eq!(code(&o), 0, "{o:?}");
        let svg = fs::read_to_string(dir.path().join("plots/plot_4.svg")).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("t+1+t^-1"));
    }

    let g = GeneratedPoly::new(0, Prime::new(37).unwrap(), vec![35, 27, 1, 13, 32]);
    let res = results_for(vec![(g, vec![2, 3, 5, 7])]);
    let (dir, o) = plot(&res, false);
    assert_eq!(code(&o), 0);
    let svg = fs::read_to_string(dir.path().join("plots/plot_0.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="violation""#).count(), 1);
    let (_, again) = plot(&res, false);
    assert_eq!(again.status.code(), Some(0));
    let (dir2, _) = plot(&res, true);
    assert_eq!(
        svg,
        fs::read_to_string(dir2.path().join("plots/plot_0.svg")).unwrap()
    );

    let none = results_for(vec![(
        GeneratedPoly::new(1, Prime::new(5).unwrap(), vec![1, 1, 1]),
        vec![5],
    )]);
    let (dir, _) = plot(&none, false);
    let svg = fs::read_to_string(dir.path().join("plots/plot_1.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="none""#).count(), 1);
    assert_eq!(svg.matches("<circle").count(), 0);
}

#[test]
fn plot_empty_and_malformed() {
    let empty = results_for(vec![(
        GeneratedPoly::new(2, Prime::new(3).unwrap(), vec![1, 1, 1]),
        vec![],
    )]);
    let (dir, o) = plot(&empty, false);
    assert_eq!(code(&o), 0);
    let svg = fs::read_to_string(dir.path().join("plots/plot_2.svg")).unwrap();
    assert!(svg.contains(r#"class="axes""#) && !svg.contains("<circle"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{not json").unwrap();
    assert_eq!(code(&ctseq(&["plot", "--input", bad.to_str().unwrap()])), 2);
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "poly_id,p\nx,y\n").unwrap();
    assert_eq!(code(&ctseq(&["plot", "--input", bad.to_str().unwrap()])), 2);
}

#[test]
fn verify_paper_table() {
    let o = ctseq(&["verify-paper"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 17);
    assert!(text
        .lines()
        .next()
        .unwrap()
        .starts_with("PASS  lattice walks"));
    assert!(text.contains("FAIL  first zero mod 7 (exact)"));
    assert!(text.ends_with("9/16 checks passed\n"));
}
