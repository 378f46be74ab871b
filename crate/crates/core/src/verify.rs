//! Self-check suites behind `qboson verify`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{evolve, Backend, EvolutionConfig, InitialState};
use crate::encodings::{binary_creation, dense_creation, MAX_BOSON_QUBITS};
use crate::error::Error;
use crate::golden::{self, GoldenFile, GOLDEN_TOL};
use crate::linalg::max_abs_diff;
use crate::pauli::DENSE_QUBIT_CAP;
use crate::yukawa::{hamiltonian_general, hamiltonian_t2, YukawaParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl SuiteResult {
    fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        SuiteResult {
            name: name.into(),
            status,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// `(file name, contents)` of golden files.
    pub golden: Vec<(String, String)>,
    /// Boson register widths for the recurrence-vs-dense check.
    pub dense_t: Vec<usize>,
    /// Random parameter draws for the Hamiltonian cross-check.
    pub hamiltonian_draws: usize,
    pub seed: u64,
    /// Steps of the backend agreement run.
    pub backend_steps: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            golden: golden::EMBEDDED
                .iter()
                .map(|(n, t)| (n.to_string(), t.to_string()))
                .collect(),
            dense_t: (1..=6).collect(),
            hamiltonian_draws: 100,
            seed: crate::dynamics::DEFAULT_SEED,
            backend_steps: 300,
        }
    }
}

fn golden_suite(name: &str, text: &str) -> SuiteResult {
    let label = format!("golden {name}");
    let file = match GoldenFile::parse(name, text) {
        Ok(f) => f,
        Err(e) => return SuiteResult::new(label, Status::Fail, e.to_string()),
    };
    match golden::check(&file, GOLDEN_TOL) {
        Ok(r) if r.passed() => SuiteResult::new(label, Status::Pass, r.to_string()),
        Ok(r) => SuiteResult::new(label, Status::Fail, r.to_string()),
        Err(e @ Error::CapExceeded { .. }) => SuiteResult::new(label, Status::Skipped, e.to_string()),
        Err(e) => SuiteResult::new(label, Status::Fail, e.to_string()),
    }
}

fn recurrence_suite(t: usize) -> SuiteResult {
    let label = format!("recurrence t={t}");
    if t == 0 || t > MAX_BOSON_QUBITS.min(DENSE_QUBIT_CAP) {
        return SuiteResult::new(
            label,
            Status::Skipped,
            format!("t={t} is outside 1..={}", MAX_BOSON_QUBITS.min(DENSE_QUBIT_CAP)),
        );
    }
    let run = || -> crate::Result<f64> {
        let dense = binary_creation(t)?.operator.to_dense()?;
        Ok(max_abs_diff(&dense, &dense_creation(t)?))
    };
    match run() {
        Ok(d) if d < 1e-12 => SuiteResult::new(label, Status::Pass, format!("max deviation {d:.3e}")),
        Ok(d) => SuiteResult::new(label, Status::Fail, format!("max deviation {d:.3e}")),
        Err(e) => SuiteResult::new(label, Status::Fail, e.to_string()),
    }
}

/// Random parameter point within physically sensible ranges.
pub fn random_params(rng: &mut impl Rng) -> (YukawaParams, f64) {
    let params = YukawaParams {
        g: rng.random_range(-40.0..40.0),
        kappa: rng.random_range(0.05..2.0),
        omega: rng.random_range(0.1..10.0),
        omega0: rng.random_range(0.1..5.0),
        ..Default::default()
    };
    (params, rng.random_range(-10.0..10.0))
}

fn hamiltonian_suite(draws: usize, seed: u64) -> SuiteResult {
    let label = "hamiltonian t2 vs general";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let (params, time) = random_params(&mut rng);
        let diff = hamiltonian_t2(&params, time).and_then(|a| a.max_coeff_diff(&hamiltonian_general(&params, time)?));
        match diff {
            Ok(d) => worst = worst.max(d),
            Err(e) => return SuiteResult::new(label, Status::Fail, e.to_string()),
        }
    }
    let status = if worst < 1e-12 { Status::Pass } else { Status::Fail };
    SuiteResult::new(label, status, format!("{draws} draws, max deviation {worst:.3e}"))
}

fn backend_suite(steps: usize) -> SuiteResult {
    let label = "backend agreement";
    let mut worst = 0.0f64;
    for (g, init) in [(1.0, InitialState::FermionPair), (34.75, InitialState::Bosons(3))] {
        let params = YukawaParams {
            g,
            ..Default::default()
        };
        let sv = EvolutionConfig {
            n_t: steps,
            initial_state: init,
            ..Default::default()
        };
        let mps = EvolutionConfig {
            backend: Backend::Mps,
            ..sv.clone()
        };
        let (a, b) = match (evolve(&sv, &params), evolve(&mps, &params)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return SuiteResult::new(label, Status::Fail, e.to_string()),
        };
        for (x, y) in a.records.iter().zip(&b.records) {
            worst = worst
                .max((x.rho_p - y.rho_p).abs())
                .max((x.rho_n - y.rho_n).abs())
                .max((x.rho_b - y.rho_b).abs());
        }
    }
    let status = if worst < 1e-8 { Status::Pass } else { Status::Fail };
    SuiteResult::new(label, status, format!("{steps} steps, max deviation {worst:.3e}"))
}

/// Run every suite in a fixed order.
pub fn run_verify(options: &VerifyOptions) -> Vec<SuiteResult> {
    let mut out: Vec<SuiteResult> = options
        .golden
        .iter()
        .map(|(name, text)| golden_suite(name, text))
        .collect();
    out.extend(options.dense_t.iter().map(|&t| recurrence_suite(t)));
    out.push(hamiltonian_suite(options.hamiltonian_draws, options.seed));
    out.push(backend_suite(options.backend_steps));
    out
}

/// Fixed-width pass/fail table.
pub fn format_table(results: &[SuiteResult]) -> String {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for r in results {
        let first = r.detail.lines().next().unwrap_or("");
        s.push_str(&format!("{:<4}  {:<width$}  {first}\n", r.status.to_string(), r.name));
        for more in r.detail.lines().skip(1) {
            s.push_str(&format!("{:<4}  {:<width$}  {more}\n", "", ""));
        }
    }
    s
}

pub fn all_passed(results: &[SuiteResult]) -> bool {
    results.iter().all(|r| r.status != Status::Fail)
}
