//! Deterministic Moore machines over the digit alphabet `0..p`.
//!
//! Machines read the canonical base-`p` expansion of `n` least significant
//! digit first; `n = 0` is the empty word.

mod linrep;
mod minimize;
mod rz;
mod shortest;

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

pub use linrep::{linrep_eval, to_linrep, LinearRepresentation};
pub use minimize::minimize;
pub use rz::{build_rz, kappa, window_radius, zero_power_machine, RzAutomaton, DEFAULT_STATE_CAP};
pub use shortest::{shortest_zero_enum, shortest_zero_exact, ShortestZeroOutcome};

use crate::numtheory::{digits, digits_u64, FpElem, Prime};
use crate::{Error, Result};

/// A complete DFA with an `F_p` output on every state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMachine {
    p: Prime,
    initial: usize,
    /// Row-major `num_states × p` table.
    transitions: Vec<usize>,
    outputs: Vec<u64>,
}

/// JSON dump of a machine. `state_polys` is empty for machines that do not
/// carry state polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub p: u64,
    pub initial: usize,
    pub outputs: Vec<u64>,
    pub transitions: Vec<Vec<usize>>,
    #[serde(default)]
    pub state_polys: Vec<String>,
}

impl MooreMachine {
    /// Validates and builds a machine from a per-state transition table.
    pub fn new(
        p: Prime,
        initial: usize,
        transitions: Vec<Vec<usize>>,
        outputs: Vec<u64>,
    ) -> Result<Self> {
        let n = outputs.len();
        if transitions.len() != n {
            return Err(Error::Malformed(format!(
                "{} transition rows for {n} states",
                transitions.len()
            )));
        }
        if initial >= n {
            return Err(Error::Malformed(format!(
                "initial state {initial} out of range"
            )));
        }
        let width = p.get() as usize;
        let mut flat = Vec::with_capacity(n * width);
        for (s, row) in transitions.into_iter().enumerate() {
            if row.len() != width {
                return Err(Error::Malformed(format!(
                    "state {s} has {} transitions, expected {width}",
                    row.len()
                )));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::Malformed(format!(
                    "state {s} targets missing state {t}"
                )));
            }
            flat.extend(row);
        }
        if let Some(&o) = outputs.iter().find(|&&o| o >= p.get()) {
            return Err(Error::Malformed(format!("output {o} not in F_{p}")));
        }
        Ok(MooreMachine {
            p,
            initial,
            transitions: flat,
            outputs,
        })
    }

    pub(crate) fn from_flat(
        p: Prime,
        initial: usize,
        transitions: Vec<usize>,
        outputs: Vec<u64>,
    ) -> Self {
        debug_assert_eq!(transitions.len(), outputs.len() * p.get() as usize);
        MooreMachine {
            p,
            initial,
            transitions,
            outputs,
        }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn num_states(&self) -> usize {
        self.outputs.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    #[inline]
    pub fn next(&self, state: usize, digit: u64) -> usize {
        self.transitions[state * self.p.get() as usize + digit as usize]
    }

    pub fn output(&self, state: usize) -> FpElem {
        self.p.elem(self.outputs[state])
    }

    pub fn outputs(&self) -> &[u64] {
        &self.outputs
    }

    /// State reached from `initial` after reading `word`.
    pub fn run(&self, word: &[u64]) -> usize {
        word.iter().fold(self.initial, |s, &d| self.next(s, d))
    }

    pub fn eval(&self, n: &BigUint) -> FpElem {
        self.output(self.run(&digits(n, self.p)))
    }

    pub fn eval_u64(&self, n: u64) -> FpElem {
        self.output(self.run(&digits_u64(n, self.p)))
    }

    /// `[eval(n) for n in 0..count]`.
    pub fn sequence(&self, count: u64) -> Vec<FpElem> {
        (0..count).map(|n| self.eval_u64(n)).collect()
    }

    /// Reachability flags from `initial`.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(s) = queue.pop_front() {
            for d in 0..self.p.get() {
                let t = self.next(s, d);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    pub fn zero_state_reachable(&self) -> bool {
        self.reachable()
            .iter()
            .zip(&self.outputs)
            .any(|(&r, &o)| r && o == 0)
    }

    pub fn to_json(&self, state_polys: Option<&[String]>) -> AutomatonJson {
        let w = self.p.get() as usize;
        AutomatonJson {
            p: self.p.get(),
            initial: self.initial,
            outputs: self.outputs.clone(),
            transitions: self.transitions.chunks(w).map(<[usize]>::to_vec).collect(),
            state_polys: state_polys.map(<[String]>::to_vec).unwrap_or_default(),
        }
    }

    pub fn from_json(json: &AutomatonJson) -> Result<Self> {
        Self::new(
            Prime::new(json.p)?,
            json.initial,
            json.transitions.clone(),
            json.outputs.clone(),
        )
    }

    /// Graphviz rendering. Parallel edges between the same pair of states are
    /// merged into one edge labelled with all their digits.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        for s in 0..self.num_states() {
            let name = labels
                .and_then(|l| l.get(s))
                .map_or_else(|| format!("q{s}"), |l| escape(l));
            let _ = write!(out, "  q{s} [label=\"{name}\\nout={}\"", self.outputs[s]);
            if s == self.initial {
                out.push_str(", penwidth=2, xlabel=\"start\"");
            }
            out.push_str("];\n");
        }
        for s in 0..self.num_states() {
            let mut groups: Vec<(usize, Vec<u64>)> = Vec::new();
            for d in 0..self.p.get() {
                let t = self.next(s, d);
                match groups.iter_mut().find(|(g, _)| *g == t) {
                    Some((_, ds)) => ds.push(d),
                    None => groups.push((t, vec![d])),
                }
            }
            for (t, ds) in groups {
                let label = ds.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                let _ = writeln!(out, "  q{s} -> q{t} [label=\"{label}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
