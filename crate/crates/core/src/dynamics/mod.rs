//! Real-time evolution of the Yukawa register.
//!
//! Each step applies `exp(−i·H_I(t′)·Δt)` exactly. The coupling is a sum of
//! on-site blocks, so the step factorizes into one dense `(2 + t)`-qubit
//! unitary per site. The evaluation time `t′ ∈ [t, t + Δt]` is chosen by a
//! [`TPrimePolicy`]; drawing it at random and repeating the run gives the
//! error bands of [`sample_error_band`].
//!
//! Occupations are reported as `ρ_P = Σₓ⟨n̂_P⟩`, `ρ_b = Σₓ⟨n̂_b⟩` and
//! `ρ_N = −Σₓ⟨n̂_N⟩`. The antifermion density carries a minus sign so that it
//! plots below the axis.

pub mod mps;
pub mod statevector;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::encodings::{
    antifermion_number, binary_creation, binary_number, fermion_number, jw_antifermion_creation, jw_fermion_creation,
};
use crate::error::{invalid, Error, Result};
use crate::linalg::{evolution_operator, CMatrix};
use crate::pauli::{PauliSum, STATE_QUBIT_CAP};
use crate::yukawa::{SiteLayout, YukawaParams};

pub use mps::{MpsConfig, MpsState};
pub use statevector::StateVector;

/// Largest allowed norm deviation after a step.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 24_301;

/// How the Hamiltonian time `t′` is picked inside step `[t, t + Δt]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TPrimePolicy {
    /// `t′ = t`.
    #[default]
    Left,
    /// `t′ = t + Δt/2`.
    Midpoint,
    /// `t′ = t + u·Δt` with a fresh uniform `u` every step.
    Random,
}

impl FromStr for TPrimePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(TPrimePolicy::Left),
            "midpoint" => Ok(TPrimePolicy::Midpoint),
            "random" => Ok(TPrimePolicy::Random),
            _ => Err(invalid("t_prime_policy", format!("unknown policy `{s}`"))),
        }
    }
}

impl fmt::Display for TPrimePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TPrimePolicy::Left => "left",
            TPrimePolicy::Midpoint => "midpoint",
            TPrimePolicy::Random => "random",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    #[default]
    Statevector,
    Mps,
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "statevector" => Ok(Backend::Statevector),
            "mps" => Ok(Backend::Mps),
            _ => Err(invalid("backend", format!("unknown backend `{s}`"))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Statevector => "statevector",
            Backend::Mps => "mps",
        })
    }
}

/// Starting configuration. `FermionPair` and `Bosons` populate site 0 and
/// leave every other site empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum InitialState {
    /// Fermion and antifermion occupied, boson vacuum.
    #[default]
    FermionPair,
    /// `k` bosons, fermion modes empty.
    Bosons(usize),
    /// Explicit basis state, qubit 0 first.
    Bits(String),
}

impl FromStr for InitialState {
    type Err = Error;

    /// Accepts `fermion_pair`, `vacuum`, `bosons(k)`, `bosons:k` and
    /// `bits:0101` (or a bare bitstring).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || invalid("initial_state", format!("cannot parse `{s}`"));
        if s == "fermion_pair" {
            return Ok(InitialState::FermionPair);
        }
        if s == "vacuum" {
            return Ok(InitialState::Bosons(0));
        }
        if let Some(rest) = s.strip_prefix("bosons") {
            let k = rest
                .strip_prefix(':')
                .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
                .ok_or_else(bad)?;
            return k.trim().parse().map(InitialState::Bosons).map_err(|_| bad());
        }
        let bits = s.strip_prefix("bits:").unwrap_or(s);
        if !bits.is_empty() && bits.chars().all(|c| c == '0' || c == '1') {
            return Ok(InitialState::Bits(bits.to_string()));
        }
        Err(bad())
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialState::FermionPair => f.write_str("fermion_pair"),
            InitialState::Bosons(k) => write!(f, "bosons({k})"),
            InitialState::Bits(b) => write!(f, "bits:{b}"),
        }
    }
}

impl TryFrom<String> for InitialState {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<InitialState> for String {
    fn from(s: InitialState) -> String {
        s.to_string()
    }
}

impl InitialState {
    /// Basis index of the starting state in the full register.
    pub fn basis_index(&self, layout: &SiteLayout) -> Result<usize> {
        let n = layout.n_qubits();
        if n > STATE_QUBIT_CAP {
            return Err(Error::CapExceeded {
                what: "initial state",
                requested: n,
                cap: STATE_QUBIT_CAP,
            });
        }
        let mut bits = vec![0usize; n];
        // empty fermion modes are spin down
        for x in 0..layout.n_x {
            bits[layout.antifermion(x)] = 1;
            bits[layout.fermion(x)] = 1;
        }
        match self {
            InitialState::FermionPair => {
                bits[layout.antifermion(0)] = 0;
                bits[layout.fermion(0)] = 0;
            }
            InitialState::Bosons(k) => {
                let truncation = (1usize << layout.t) - 1;
                if *k > truncation {
                    return Err(Error::OccupationOutOfRange {
                        occupation: *k,
                        truncation,
                    });
                }
                for j in 0..layout.t {
                    bits[layout.boson(0, j)] = k >> (layout.t - 1 - j) & 1;
                }
            }
            InitialState::Bits(s) => {
                if s.len() != n {
                    return Err(invalid(
                        "initial_state",
                        format!("bitstring has {} bits, register has {n}", s.len()),
                    ));
                }
                for (b, c) in bits.iter_mut().zip(s.chars()) {
                    *b = usize::from(c == '1');
                }
            }
        }
        Ok(bits.iter().fold(0, |acc, b| (acc << 1) | b))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolutionConfig {
    pub delta_t: f64,
    pub n_t: usize,
    pub t_prime_policy: TPrimePolicy,
    /// Trajectories drawn by [`sample_error_band`].
    pub samples: usize,
    pub seed: u64,
    pub backend: Backend,
    pub initial_state: InitialState,
    pub chi_max: usize,
    pub cutoff: f64,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        EvolutionConfig {
            delta_t: 0.1,
            n_t: 300,
            t_prime_policy: TPrimePolicy::Left,
            samples: 50,
            seed: DEFAULT_SEED,
            backend: Backend::Statevector,
            initial_state: InitialState::FermionPair,
            chi_max: 64,
            cutoff: 1e-12,
        }
    }
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta_t.is_finite() && self.delta_t > 0.0) {
            return Err(invalid("delta_t", format!("must be positive, got {}", self.delta_t)));
        }
        if self.samples == 0 {
            return Err(invalid("samples", "at least one sample is required"));
        }
        if self.chi_max == 0 {
            return Err(invalid("chi_max", "must be at least 1"));
        }
        if !(self.cutoff >= 0.0 && self.cutoff.is_finite()) {
            return Err(invalid("cutoff", "must be a non-negative number"));
        }
        Ok(())
    }

    fn mps_config(&self) -> MpsConfig {
        MpsConfig {
            chi_max: self.chi_max,
            cutoff: self.cutoff,
            strict: true,
        }
    }
}

/// Dense pieces of one site block, so `H_I(τ)` is a cheap linear
/// combination: `H(τ) = Σ_k F_k e^{iν_kτ} + h.c.`
#[derive(Clone, Debug)]
pub struct SiteGenerator {
    parts: [(CMatrix, f64); 3],
}

impl SiteGenerator {
    pub fn new(params: &YukawaParams) -> Result<Self> {
        params.validate()?;
        let layout = params.layout();
        let n = layout.site_qubits();
        let fermions = layout.local_fermions();
        let b_dag = jw_fermion_creation(&fermions);
        let d_dag = jw_antifermion_creation(&fermions);
        let b = b_dag.dagger();
        let d = d_dag.dagger();
        let a = binary_creation(params.t)?.operator.dagger().embed(n, 2);
        let pref = params.prefactor();

        let diagonal = b_dag.multiply(&b)?.add(&d.multiply(&d_dag)?)?;
        let dense = |f: PauliSum| -> Result<CMatrix> { f.multiply(&a)?.scale_real(pref).to_dense() };
        let (w, w0) = (params.omega, params.omega0);
        Ok(SiteGenerator {
            parts: [
                (dense(diagonal)?, -w0),
                (dense(b_dag.multiply(&d_dag)?)?, 2.0 * w - w0),
                (dense(d.multiply(&b)?)?, -2.0 * w - w0),
            ],
        })
    }

    /// Dense site block at time `tau`.
    pub fn hamiltonian(&self, tau: f64) -> CMatrix {
        let dim = self.parts[0].0.nrows();
        let mut forward = CMatrix::zeros(dim, dim);
        for (f, nu) in &self.parts {
            forward += f * C64::from_polar(1.0, nu * tau);
        }
        let adj = forward.adjoint();
        forward + adj
    }

    /// `exp(−i·H(tau)·dt)` for one site.
    pub fn step_unitary(&self, tau: f64, dt: f64) -> CMatrix {
        evolution_operator(&self.hamiltonian(tau), dt)
    }
}

/// Number operators of the whole register.
#[derive(Clone, Debug)]
pub struct Observables {
    layout: SiteLayout,
    pub fermion: PauliSum,
    pub antifermion: PauliSum,
    pub boson: PauliSum,
}

impl Observables {
    pub fn new(params: &YukawaParams) -> Result<Self> {
        params.validate()?;
        let layout = params.layout();
        let local = layout.local_fermions();
        let site_n = layout.site_qubits();
        let n = layout.n_qubits();
        let boson_local = binary_number(params.t)?.embed(site_n, 2);
        let tile = |op: &PauliSum| -> Result<PauliSum> {
            (0..layout.n_x).try_fold(PauliSum::zero(n), |acc, x| acc.add(&op.embed(n, layout.offset(x))))
        };
        Ok(Observables {
            layout,
            fermion: tile(&fermion_number(&local))?,
            antifermion: tile(&antifermion_number(&local))?,
            boson: tile(&boson_local)?,
        })
    }

    /// `(ρ_P, ρ_N, ρ_b)` read off the basis probabilities.
    pub fn measure_statevector(&self, state: &StateVector) -> Rho {
        let layout = &self.layout;
        let n = layout.n_qubits();
        let bit = |i: usize, q: usize| i >> (n - 1 - q) & 1;
        let mut rho = Rho::default();
        for (i, amp) in state.amplitudes().iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            for x in 0..layout.n_x {
                if bit(i, layout.fermion(x)) == 0 {
                    rho.p += p;
                }
                if bit(i, layout.antifermion(x)) == 0 {
                    rho.n -= p;
                }
                let k = (0..layout.t).fold(0, |acc, j| (acc << 1) | bit(i, layout.boson(x, j)));
                rho.b += p * k as f64;
            }
        }
        rho
    }

    pub fn measure_mps(&self, state: &MpsState) -> Result<Rho> {
        Ok(Rho {
            p: state.expectation(&self.fermion)?,
            n: -state.expectation(&self.antifermion)?,
            b: state.expectation(&self.boson)?,
        })
    }

    pub fn measure(&self, state: &RegisterState) -> Result<Rho> {
        match state {
            RegisterState::Statevector(s) => Ok(self.measure_statevector(s)),
            RegisterState::Mps(m) => self.measure_mps(m),
        }
    }
}

/// Occupation densities: fermion, antifermion (negated) and boson.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Rho {
    pub p: f64,
    pub n: f64,
    pub b: f64,
}

/// `(ρ_P, ρ_N, ρ_b)` of a state.
pub fn measure_rho(state: &RegisterState, params: &YukawaParams) -> Result<Rho> {
    Observables::new(params)?.measure(state)
}

#[derive(Clone, Debug)]
pub enum RegisterState {
    Statevector(StateVector),
    Mps(MpsState),
}

impl RegisterState {
    pub fn norm(&self) -> f64 {
        match self {
            RegisterState::Statevector(s) => s.norm(),
            RegisterState::Mps(m) => m.norm(),
        }
    }

    pub fn amplitudes(&self) -> Result<Vec<C64>> {
        match self {
            RegisterState::Statevector(s) => Ok(s.amplitudes().to_vec()),
            RegisterState::Mps(m) => m.to_amplitudes(),
        }
    }
}

pub fn initial_state(config: &EvolutionConfig, params: &YukawaParams) -> Result<RegisterState> {
    config.validate()?;
    params.validate()?;
    let layout = params.layout();
    let index = config.initial_state.basis_index(&layout)?;
    let n = layout.n_qubits();
    Ok(match config.backend {
        Backend::Statevector => RegisterState::Statevector(StateVector::basis(n, index)?),
        Backend::Mps => RegisterState::Mps(MpsState::basis(n, index, config.mps_config())?),
    })
}

/// Apply one site-factorized step with a precomputed site unitary.
pub fn apply_site_unitary(state: &mut RegisterState, layout: &SiteLayout, u: &CMatrix) -> Result<()> {
    for x in 0..layout.n_x {
        let first = layout.offset(x);
        match state {
            RegisterState::Statevector(s) => {
                let qubits: Vec<usize> = (first..first + layout.site_qubits()).collect();
                s.apply_gate(&qubits, u)?;
            }
            RegisterState::Mps(m) => m.apply_block(first, u)?,
        }
    }
    Ok(())
}

/// `exp(−i·H_I(t_prime)·delta_t)` applied to `state`. Negative `delta_t`
/// runs backwards.
pub fn step(state: &mut RegisterState, params: &YukawaParams, t_prime: f64, delta_t: f64) -> Result<()> {
    let generator = SiteGenerator::new(params)?;
    apply_site_unitary(state, &params.layout(), &generator.step_unitary(t_prime, delta_t))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub l: usize,
    pub time: f64,
    pub rho_p: f64,
    pub rho_n: f64,
    pub rho_b: f64,
}

impl Record {
    fn new(l: usize, time: f64, rho: Rho) -> Self {
        Record {
            l,
            time,
            rho_p: rho.p,
            rho_n: rho.n,
            rho_b: rho.b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub records: Vec<Record>,
    pub config: EvolutionConfig,
    pub params: YukawaParams,
}

/// Evaluation times for every step of one run.
fn step_times(config: &EvolutionConfig, stream: u64) -> Vec<f64> {
    let dt = config.delta_t;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    (0..config.n_t)
        .map(|l| {
            let t = l as f64 * dt;
            match config.t_prime_policy {
                TPrimePolicy::Left => t,
                TPrimePolicy::Midpoint => t + 0.5 * dt,
                TPrimePolicy::Random => t + rng.random::<f64>() * dt,
            }
        })
        .collect()
}

fn run(config: &EvolutionConfig, params: &YukawaParams, stream: u64) -> Result<(Trajectory, RegisterState)> {
    let mut state = initial_state(config, params)?;
    let generator = SiteGenerator::new(params)?;
    let observables = Observables::new(params)?;
    let layout = params.layout();
    let mut records = Vec::with_capacity(config.n_t + 1);
    records.push(Record::new(0, 0.0, observables.measure(&state)?));
    for (l, t_prime) in step_times(config, stream).into_iter().enumerate() {
        let u = generator.step_unitary(t_prime, config.delta_t);
        apply_site_unitary(&mut state, &layout, &u)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NormDrift { step: l + 1, norm });
        }
        let time = (l + 1) as f64 * config.delta_t;
        records.push(Record::new(l + 1, time, observables.measure(&state)?));
    }
    let traj = Trajectory {
        records,
        config: config.clone(),
        params: *params,
    };
    Ok((traj, state))
}

/// Run `n_t` steps, recording before the first step and after each one.
/// A random policy uses sample stream 0.
pub fn evolve(config: &EvolutionConfig, params: &YukawaParams) -> Result<Trajectory> {
    Ok(run(config, params, 0)?.0)
}

/// [`evolve`], also returning the final state.
pub fn evolve_state(config: &EvolutionConfig, params: &YukawaParams) -> Result<(Trajectory, RegisterState)> {
    run(config, params, 0)
}

/// Summary of one observable over samples; `std` is the population value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    pub fn from_values(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        // keep min ≤ mean ≤ max under rounding
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Stats {
            mean: mean.clamp(min, max),
            std: var.sqrt(),
            min,
            max,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandRecord {
    pub l: usize,
    pub time: f64,
    pub rho_p: Stats,
    pub rho_n: Stats,
    pub rho_b: Stats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBand {
    pub records: Vec<BandRecord>,
    pub samples: usize,
}

impl ErrorBand {
    /// Mean over steps of the `ρ_P` standard deviation.
    pub fn mean_std_p(&self) -> f64 {
        self.records.iter().map(|r| r.rho_p.std).sum::<f64>() / self.records.len() as f64
    }
}

/// Run `config.samples` trajectories with random `t′` and summarize each step.
///
/// Sample `s` draws from ChaCha stream `s` of `config.seed`, so the result
/// does not depend on scheduling.
pub fn sample_error_band(config: &EvolutionConfig, params: &YukawaParams) -> Result<(Trajectory, ErrorBand)> {
    config.validate()?;
    let mut config = config.clone();
    if config.t_prime_policy != TPrimePolicy::Random {
        log::info!("sampling forces the random t' policy");
        config.t_prime_policy = TPrimePolicy::Random;
    }
    let streams: Vec<u64> = (0..config.samples as u64).collect();

    #[cfg(feature = "parallel")]
    let runs: Vec<Trajectory> = {
        use rayon::prelude::*;
        streams
            .par_iter()
            .map(|&s| run(&config, params, s).map(|r| r.0))
            .collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let runs: Vec<Trajectory> = streams
        .iter()
        .map(|&s| run(&config, params, s).map(|r| r.0))
        .collect::<Result<_>>()?;

    let steps = runs[0].records.len();
    let mut band = Vec::with_capacity(steps);
    let mut means = Vec::with_capacity(steps);
    for i in 0..steps {
        let column = |f: fn(&Record) -> f64| -> Stats {
            let v: Vec<f64> = runs.iter().map(|r| f(&r.records[i])).collect();
            Stats::from_values(&v)
        };
        let head = runs[0].records[i];
        let rec = BandRecord {
            l: head.l,
            time: head.time,
            rho_p: column(|r| r.rho_p),
            rho_n: column(|r| r.rho_n),
            rho_b: column(|r| r.rho_b),
        };
        means.push(Record {
            l: rec.l,
            time: rec.time,
            rho_p: rec.rho_p.mean,
            rho_n: rec.rho_n.mean,
            rho_b: rec.rho_b.mean,
        });
        band.push(rec);
    }
    Ok((
        Trajectory {
            records: means,
            config: config.clone(),
            params: *params,
        },
        ErrorBand {
            records: band,
            samples: config.samples,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yukawa::site_hamiltonian;

    #[test]
    fn generator_matches_operator_form() {
        let params = YukawaParams {
            g: 2.3,
            t: 3,
            ..Default::default()
        };
        let generator = SiteGenerator::new(&params).unwrap();
        for tau in [0.0, 0.37, 5.1] {
            let dense = site_hamiltonian(&params, tau).unwrap().to_dense().unwrap();
            let diff = crate::linalg::max_abs_diff(&dense, &generator.hamiltonian(tau));
            assert!(diff < 1e-13, "tau {tau}: {diff}");
        }
    }

    #[test]
    fn initial_states() {
        let params = YukawaParams::default();
        let layout = params.layout();
        assert_eq!(InitialState::FermionPair.basis_index(&layout).unwrap(), 0);
        assert_eq!(InitialState::Bosons(3).basis_index(&layout).unwrap(), 15);
        assert_eq!(InitialState::Bosons(0).basis_index(&layout).unwrap(), 12);
        assert!(matches!(
            InitialState::Bosons(4).basis_index(&layout),
            Err(Error::OccupationOutOfRange { .. })
        ));
        let obs = Observables::new(&params).unwrap();
        let cases = [
            (
                InitialState::FermionPair,
                Rho {
                    p: 1.0,
                    n: -1.0,
                    b: 0.0,
                },
            ),
            (InitialState::Bosons(3), Rho { p: 0.0, n: 0.0, b: 3.0 }),
            (InitialState::Bosons(0), Rho::default()),
        ];
        for (init, want) in cases {
            let config = EvolutionConfig {
                initial_state: init,
                ..Default::default()
            };
            let s = initial_state(&config, &params).unwrap();
            assert_eq!(obs.measure(&s).unwrap(), want);
        }
    }

    #[test]
    fn diagonal_measurement_matches_operators() {
        let params = YukawaParams {
            n_x: 2,
            g: 3.0,
            ..Default::default()
        };
        let config = EvolutionConfig {
            n_t: 4,
            ..Default::default()
        };
        let mut state = initial_state(&config, &params).unwrap();
        step(&mut state, &params, 0.3, 0.5).unwrap();
        let obs = Observables::new(&params).unwrap();
        let RegisterState::Statevector(sv) = &state else {
            unreachable!()
        };
        let fast = obs.measure_statevector(sv);
        assert!((fast.p - sv.expectation(&obs.fermion).unwrap()).abs() < 1e-13);
        assert!((fast.n + sv.expectation(&obs.antifermion).unwrap()).abs() < 1e-13);
        assert!((fast.b - sv.expectation(&obs.boson).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn initial_state_parsing() {
        for (s, want) in [
            ("fermion_pair", InitialState::FermionPair),
            ("bosons(3)", InitialState::Bosons(3)),
            ("bosons:2", InitialState::Bosons(2)),
            ("vacuum", InitialState::Bosons(0)),
            ("0110", InitialState::Bits("0110".into())),
        ] {
            let parsed: InitialState = s.parse().unwrap();
            assert_eq!(parsed, want);
            assert_eq!(parsed.to_string().parse::<InitialState>().unwrap(), want);
        }
        assert!("bosons(x)".parse::<InitialState>().is_err());
        assert!("pair".parse::<InitialState>().is_err());
    }

    #[test]
    fn zero_steps_and_zero_dt() {
        let params = YukawaParams::default();
        let config = EvolutionConfig {
            n_t: 0,
            ..Default::default()
        };
        let traj = evolve(&config, &params).unwrap();
        assert_eq!(traj.records.len(), 1);

        let mut state = initial_state(&config, &params).unwrap();
        let before = state.amplitudes().unwrap();
        step(&mut state, &params, 1.0, 0.0).unwrap();
        assert_eq!(state.amplitudes().unwrap(), before);
    }

    #[test]
    fn config_validation_names_key() {
        let bad = EvolutionConfig {
            delta_t: -0.1,
            ..Default::default()
        };
        match bad.validate() {
            Err(Error::InvalidParameter { key, .. }) => assert_eq!(key, "delta_t"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stats_of_constant_column() {
        let s = Stats::from_values(&[0.3; 7]);
        assert_eq!(s.std, 0.0);
        assert_eq!(s.min, s.mean);
        assert_eq!(s.max, s.mean);
    }
}
