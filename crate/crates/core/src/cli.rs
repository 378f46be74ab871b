//! Command-line front end.
//!
//! Settings resolve in three layers: built-in defaults, then a flat TOML file
//! given with `--config`, then explicit flags. A config file must name every
//! physical parameter (`g`, `kappa`, `omega`, `omega0`, `t`, `n_x`).
//!
//! Exit codes: 0 success, 1 invalid input, 2 runtime failure, 3 failed
//! verification.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::circuit::{compile_step, export_text, fidelity_threshold, Ordering};
use crate::dynamics::{
    evolve, sample_error_band, Backend, ErrorBand, EvolutionConfig, InitialState, Record, Stats, TPrimePolicy,
};
use crate::encodings::{
    binary_annihilation, binary_creation, binary_number, number_squared, squeeze_block, unary_creation, unary_number,
};
use crate::error::Error;
use crate::verify::{all_passed, format_table, run_verify, VerifyOptions};
use crate::yukawa::{hamiltonian_general, YukawaParams};

pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_RUNTIME: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_RUNTIME,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter { .. }
            | Error::OccupationOutOfRange { .. }
            | Error::InvalidLayout(_)
            | Error::CapExceeded { .. }
            | Error::Parse(_) => EXIT_VALIDATION,
            _ => EXIT_RUNTIME,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            // reader went away (`| head`), not worth reporting
            return CliError {
                code: 0,
                message: String::new(),
            };
        }
        CliError::runtime(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qboson",
    version,
    about = "Binary boson encoding, Yukawa dynamics and circuit compilation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the Pauli expansion of an encoded boson operator.
    Encode(EncodeArgs),
    /// Run one trajectory and write ρ_P, ρ_N, ρ_b per step.
    Evolve(RunArgs),
    /// Run random-t′ trajectories and write per-step error bands.
    Sample(RunArgs),
    /// Compile one Trotter step of the coupling into a circuit.
    Compile(CompileArgs),
    /// Per-CNOT fidelity needed for a target overall fidelity.
    Fidelity(FidelityArgs),
    /// Run the golden-file and oracle suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EncodingKind {
    Binary,
    Unary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OperatorKind {
    Creation,
    Annihilation,
    Number,
    NumberSquared,
    Squeeze,
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    /// Boson qubits (binary) or maximal occupation (unary).
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    #[arg(long, value_enum, default_value_t = EncodingKind::Binary)]
    pub encoding: EncodingKind,
    #[arg(long, value_enum, default_value_t = OperatorKind::Creation)]
    pub operator: OperatorKind,
}

/// Physical parameters as optional overrides.
#[derive(Args, Debug, Default, Clone)]
pub struct PhysicsArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega0: Option<f64>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long = "n-x")]
    pub n_x: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args, Debug, Default, Clone)]
pub struct RunArgs {
    /// Flat TOML file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[arg(long = "delta-t", allow_negative_numbers = true)]
    pub delta_t: Option<f64>,
    #[arg(long = "n-t")]
    pub n_t: Option<usize>,
    /// left, midpoint or random.
    #[arg(long = "policy")]
    pub t_prime_policy: Option<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// statevector or mps.
    #[arg(long)]
    pub backend: Option<String>,
    /// fermion_pair, bosons(k), vacuum or a bitstring.
    #[arg(long = "initial")]
    pub initial_state: Option<String>,
    #[arg(long = "chi-max")]
    pub chi_max: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub cutoff: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file. Relative paths are placed under the output directory.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Output directory; without it and without `--output` data goes to stdout.
    #[arg(long = "out-dir", env = "QBOSON_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// Hamiltonian time τ.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub time: f64,
    #[arg(long = "delta-t", default_value_t = 0.1, allow_negative_numbers = true)]
    pub delta_t: f64,
    #[arg(long, default_value = "lex")]
    pub ordering: String,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long = "out-dir", env = "QBOSON_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FidelityArgs {
    #[arg(long, default_value_t = 0.70, allow_negative_numbers = true)]
    pub total: f64,
    #[arg(long, default_value_t = 117)]
    pub cnot: u64,
    #[arg(long, default_value_t = 10)]
    pub steps: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Read `*.golden` files from this directory instead of the built-in set.
    #[arg(long = "golden-dir")]
    pub golden_dir: Option<PathBuf>,
    /// Boson widths for the recurrence check; widths beyond the dense cap are skipped.
    #[arg(long = "dense-t", value_delimiter = ',')]
    pub dense_t: Option<Vec<usize>>,
    #[arg(long = "backend-steps", default_value_t = 300)]
    pub backend_steps: usize,
}

/// Fully resolved settings of an `evolve` or `sample` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub g: f64,
    pub kappa: f64,
    pub omega: f64,
    pub omega0: f64,
    pub t: usize,
    pub n_x: usize,
    pub delta_t: f64,
    pub n_t: usize,
    pub t_prime_policy: TPrimePolicy,
    pub samples: usize,
    pub seed: u64,
    pub backend: Backend,
    pub initial_state: InitialState,
    pub chi_max: usize,
    pub cutoff: f64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::from_parts(&YukawaParams::default(), &EvolutionConfig::default(), Format::Csv)
    }
}

impl RunConfig {
    fn from_parts(p: &YukawaParams, e: &EvolutionConfig, format: Format) -> Self {
        RunConfig {
            g: p.g,
            kappa: p.kappa,
            omega: p.omega,
            omega0: p.omega0,
            t: p.t,
            n_x: p.n_x,
            delta_t: e.delta_t,
            n_t: e.n_t,
            t_prime_policy: e.t_prime_policy,
            samples: e.samples,
            seed: e.seed,
            backend: e.backend,
            initial_state: e.initial_state.clone(),
            chi_max: e.chi_max,
            cutoff: e.cutoff,
            format,
        }
    }

    pub fn params(&self) -> YukawaParams {
        YukawaParams {
            g: self.g,
            kappa: self.kappa,
            omega: self.omega,
            omega0: self.omega0,
            t: self.t,
            n_x: self.n_x,
        }
    }

    pub fn evolution(&self) -> EvolutionConfig {
        EvolutionConfig {
            delta_t: self.delta_t,
            n_t: self.n_t,
            t_prime_policy: self.t_prime_policy,
            samples: self.samples,
            seed: self.seed,
            backend: self.backend,
            initial_state: self.initial_state.clone(),
            chi_max: self.chi_max,
            cutoff: self.cutoff,
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        self.params().validate()?;
        self.evolution().validate()?;
        let truncation = (1usize << self.t) - 1;
        if let InitialState::Bosons(k) = self.initial_state {
            if k > truncation {
                return Err(Error::OccupationOutOfRange {
                    occupation: k,
                    truncation,
                });
            }
        }
        Ok(())
    }

    /// `key = value` lines, readable back as a config file.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat config serializes")
    }
}

/// Keys a config file may set; the physical ones are required.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    g: Option<f64>,
    kappa: Option<f64>,
    omega: Option<f64>,
    omega0: Option<f64>,
    t: Option<usize>,
    n_x: Option<usize>,
    delta_t: Option<f64>,
    n_t: Option<usize>,
    t_prime_policy: Option<TPrimePolicy>,
    samples: Option<usize>,
    seed: Option<u64>,
    backend: Option<Backend>,
    initial_state: Option<InitialState>,
    chi_max: Option<usize>,
    cutoff: Option<f64>,
    format: Option<Format>,
}

fn missing(key: &str) -> CliError {
    CliError::from(Error::InvalidParameter {
        key: key.into(),
        reason: "missing from config file".into(),
    })
}

fn apply_file(cfg: &mut RunConfig, text: &str) -> Result<(), CliError> {
    let f: FileConfig = toml::from_str(text).map_err(|e| CliError::validation(format!("config file: {e}")))?;
    cfg.g = f.g.ok_or_else(|| missing("g"))?;
    cfg.kappa = f.kappa.ok_or_else(|| missing("kappa"))?;
    cfg.omega = f.omega.ok_or_else(|| missing("omega"))?;
    cfg.omega0 = f.omega0.ok_or_else(|| missing("omega0"))?;
    cfg.t = f.t.ok_or_else(|| missing("t"))?;
    cfg.n_x = f.n_x.ok_or_else(|| missing("n_x"))?;
    macro_rules! take {
        ($($k:ident),*) => { $( if let Some(v) = f.$k { cfg.$k = v; } )* };
    }
    take!(
        delta_t,
        n_t,
        t_prime_policy,
        samples,
        seed,
        backend,
        initial_state,
        chi_max,
        cutoff,
        format
    );
    Ok(())
}

fn apply_physics(p: &mut YukawaParams, a: &PhysicsArgs) {
    macro_rules! take {
        ($($k:ident),*) => { $( if let Some(v) = a.$k { p.$k = v; } )* };
    }
    take!(g, kappa, omega, omega0, t, n_x);
}

/// Defaults, then the config file, then flags.
pub fn resolve(args: &RunArgs) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
        apply_file(&mut cfg, &text)?;
    }
    let mut params = cfg.params();
    apply_physics(&mut params, &args.physics);
    let mut evo = cfg.evolution();
    macro_rules! take {
        ($($k:ident),*) => { $( if let Some(v) = args.$k.clone() { evo.$k = v; } )* };
    }
    take!(delta_t, n_t, samples, seed, chi_max, cutoff);
    if let Some(s) = &args.t_prime_policy {
        evo.t_prime_policy = s.parse()?;
    }
    if let Some(s) = &args.backend {
        evo.backend = s.parse()?;
    }
    if let Some(s) = &args.initial_state {
        evo.initial_state = s.parse()?;
    }
    let format = args.format.unwrap_or(cfg.format);
    let cfg = RunConfig::from_parts(&params, &evo, format);
    cfg.validate()?;
    Ok(cfg)
}

fn target_path(output: &Option<PathBuf>, out_dir: &Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    match (output, out_dir) {
        (Some(o), Some(d)) if o.is_relative() => Some(d.join(o)),
        (Some(o), _) => Some(o.clone()),
        (None, Some(d)) => Some(d.join(default_name)),
        (None, None) => None,
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::runtime(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| CliError::runtime(format!("cannot write {}: {e}", path.display())))
}

fn config_header(cfg: &RunConfig) -> String {
    cfg.to_toml().lines().map(|l| format!("# {l}\n")).collect()
}

/// Shortest round-trip form; exponent notation for tiny magnitudes.
fn num(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() < 1e-4 {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

pub fn trajectory_csv(cfg: &RunConfig, records: &[Record]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let row =
        |w: &mut csv::Writer<Vec<u8>>, r: Vec<String>| w.write_record(r).map_err(|e| CliError::runtime(e.to_string()));
    row(
        &mut w,
        ["l", "time", "rho_P", "rho_N", "rho_b"].map(String::from).to_vec(),
    )?;
    for r in records {
        row(
            &mut w,
            vec![r.l.to_string(), num(r.time), num(r.rho_p), num(r.rho_n), num(r.rho_b)],
        )?;
    }
    let body =
        String::from_utf8(w.into_inner().map_err(|e| CliError::runtime(e.to_string()))?).expect("csv output is UTF-8");
    Ok(config_header(cfg) + &body)
}

pub fn band_csv(cfg: &RunConfig, band: &ErrorBand) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["l".to_string(), "time".to_string()];
    for obs in ["rho_P", "rho_N", "rho_b"] {
        for stat in ["mean", "std", "min", "max"] {
            header.push(format!("{obs}_{stat}"));
        }
    }
    w.write_record(&header).map_err(|e| CliError::runtime(e.to_string()))?;
    let cells = |s: &Stats| [num(s.mean), num(s.std), num(s.min), num(s.max)];
    for r in &band.records {
        let mut row = vec![r.l.to_string(), num(r.time)];
        for s in [&r.rho_p, &r.rho_n, &r.rho_b] {
            row.extend(cells(s));
        }
        w.write_record(&row).map_err(|e| CliError::runtime(e.to_string()))?;
    }
    let body =
        String::from_utf8(w.into_inner().map_err(|e| CliError::runtime(e.to_string()))?).expect("csv output is UTF-8");
    Ok(config_header(cfg) + &body)
}

#[derive(Serialize)]
struct TrajectoryJson<'a> {
    config: &'a RunConfig,
    records: &'a [Record],
}

#[derive(Serialize)]
struct BandJson<'a> {
    config: &'a RunConfig,
    samples: usize,
    records: &'a [crate::dynamics::BandRecord],
}

fn emit(
    out: &mut dyn Write,
    path: Option<PathBuf>,
    format: Format,
    csv_text: String,
    json_text: String,
) -> Result<(), CliError> {
    match path {
        None => {
            let text = match format {
                Format::Csv => csv_text,
                Format::Json => json_text,
            };
            out.write_all(text.as_bytes())?;
        }
        Some(path) => {
            match format {
                Format::Csv => {
                    write_file(&path, &csv_text)?;
                    // JSON mirror next to the CSV
                    write_file(&path.with_extension("json"), &json_text)?;
                }
                Format::Json => write_file(&path, &json_text)?,
            }
            writeln!(out, "wrote {}", path.display())?;
        }
    }
    Ok(())
}

fn run_evolve(args: &RunArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = resolve(args)?;
    let traj = evolve(&cfg.evolution(), &cfg.params())?;
    let csv_text = trajectory_csv(&cfg, &traj.records)?;
    let json_text = serde_json::to_string_pretty(&TrajectoryJson {
        config: &cfg,
        records: &traj.records,
    })
    .map_err(|e| CliError::runtime(e.to_string()))?;
    let ext = if cfg.format == Format::Json { "json" } else { "csv" };
    let path = target_path(&args.output, &args.out_dir, &format!("trajectory.{ext}"));
    emit(out, path, cfg.format, csv_text, json_text)
}

fn run_sample(args: &RunArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut cfg = resolve(args)?;
    cfg.t_prime_policy = TPrimePolicy::Random;
    let (_, band) = sample_error_band(&cfg.evolution(), &cfg.params())?;
    let csv_text = band_csv(&cfg, &band)?;
    let json_text = serde_json::to_string_pretty(&BandJson {
        config: &cfg,
        samples: band.samples,
        records: &band.records,
    })
    .map_err(|e| CliError::runtime(e.to_string()))?;
    let ext = if cfg.format == Format::Json { "json" } else { "csv" };
    let path = target_path(&args.output, &args.out_dir, &format!("band.{ext}"));
    emit(out, path, cfg.format, csv_text, json_text)
}

fn run_encode(args: &EncodeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let op = match (args.encoding, args.operator) {
        (EncodingKind::Binary, OperatorKind::Creation) => binary_creation(args.t)?.operator,
        (EncodingKind::Binary, OperatorKind::Annihilation) => binary_annihilation(args.t)?,
        (EncodingKind::Binary, OperatorKind::Number) => binary_number(args.t)?,
        (EncodingKind::Binary, OperatorKind::NumberSquared) => number_squared(args.t)?,
        (EncodingKind::Binary, OperatorKind::Squeeze) => squeeze_block(args.t)?,
        (EncodingKind::Unary, OperatorKind::Creation) => unary_creation(args.t)?.operator,
        (EncodingKind::Unary, OperatorKind::Annihilation) => unary_creation(args.t)?.operator.dagger(),
        (EncodingKind::Unary, OperatorKind::Number) => unary_number(args.t)?,
        (EncodingKind::Unary, other) => {
            return Err(CliError::validation(format!(
                "operator `{other:?}` is only available in the binary encoding"
            )))
        }
    };
    writeln!(out, "# qubits={} terms={}", op.n_qubits(), op.len())?;
    write!(out, "{op}")?;
    Ok(())
}

fn run_compile(args: &CompileArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut params = YukawaParams::default();
    apply_physics(&mut params, &args.physics);
    let ordering: Ordering = args.ordering.parse()?;
    if !(args.delta_t.is_finite() && args.delta_t >= 0.0) {
        return Err(CliError::validation(
            "invalid value for `delta_t`: must be non-negative",
        ));
    }
    let h = hamiltonian_general(&params, args.time)?;
    let (circuit, stats) = compile_step(&h, args.delta_t, ordering)?;
    let mut text = export_text(&circuit);
    text.push_str(&format!(
        "// terms={} cnot_naive={} cnot_cancelled={} single_qubit={} ordering={ordering}\n",
        stats.term_count, stats.cnot_count_naive, stats.cnot_count_after_cancellation, stats.single_qubit_count
    ));
    match target_path(&args.output, &args.out_dir, "step.qasm") {
        Some(path) => {
            write_file(&path, &text)?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    writeln!(
        out,
        "terms={} cnot_naive={} cnot_cancelled={}",
        stats.term_count, stats.cnot_count_naive, stats.cnot_count_after_cancellation
    )?;
    Ok(())
}

/// `v` with six significant digits.
pub fn six_significant(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let decimals = (5 - v.abs().log10().floor() as i32).max(0) as usize;
    format!("{v:.decimals$}")
}

fn run_fidelity(args: &FidelityArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let f = fidelity_threshold(args.total, args.cnot, args.steps)?;
    writeln!(out, "{}", six_significant(f))?;
    Ok(())
}

fn run_verify_cmd(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut options = VerifyOptions {
        backend_steps: args.backend_steps,
        ..Default::default()
    };
    if let Some(dir) = &args.golden_dir {
        options.golden = crate::golden::load_dir(dir)
            .map_err(|e| CliError::validation(format!("cannot read {}: {e}", dir.display())))?;
    }
    if let Some(ts) = &args.dense_t {
        options.dense_t = ts.clone();
    }
    let results = run_verify(&options);
    write!(out, "{}", format_table(&results))?;
    if all_passed(&results) {
        writeln!(out, "all suites passed")?;
        Ok(())
    } else {
        let failed: Vec<&str> = results
            .iter()
            .filter(|r| r.status == crate::verify::Status::Fail)
            .map(|r| r.name.as_str())
            .collect();
        Err(CliError {
            code: EXIT_VERIFY,
            message: format!("failed: {}", failed.join(", ")),
        })
    }
}

/// Dispatch a parsed command line, writing normal output to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Encode(a) => run_encode(a, out),
        Command::Evolve(a) => run_evolve(a, out),
        Command::Sample(a) => run_sample(a, out),
        Command::Compile(a) => run_compile(a, out),
        Command::Fidelity(a) => run_fidelity(a, out),
        Command::Verify(a) => run_verify_cmd(a, out),
    }
}

/// Parse `args` (program name first) and run. Help and version requests
/// print and succeed; malformed arguments are validation errors.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                write!(out, "{e}")?;
                return Ok(());
            }
            let text = e.to_string();
            let text = text.strip_prefix("error: ").unwrap_or(&text);
            return Err(CliError::validation(text.trim_end()));
        }
    };
    execute(&cli, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_digits() {
        assert_eq!(six_significant(0.999_695_196), "0.999695");
        assert_eq!(six_significant(1.0), "1.00000");
        assert_eq!(six_significant(0.001_234_567), "0.00123457");
    }

    #[test]
    fn defaults_match_the_reference_point() {
        let cfg = resolve(&RunArgs::default()).unwrap();
        assert_eq!(cfg.kappa, 0.5);
        assert_eq!(cfg.delta_t, 0.1);
        assert_eq!(cfg.n_x, 1);
        assert_eq!(cfg.n_t, 300);
        assert_eq!(cfg.omega, 6.95);
        assert_eq!(cfg.omega0, 1.0);
        assert_eq!(cfg.t, 2);
    }

    #[test]
    fn header_round_trips_as_config() {
        let cfg = RunConfig {
            g: 34.75,
            initial_state: InitialState::Bosons(3),
            ..Default::default()
        };
        let mut back = RunConfig::default();
        apply_file(&mut back, &cfg.to_toml()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn missing_key_is_named() {
        let mut cfg = RunConfig::default();
        let err = apply_file(&mut cfg, "g = 1.0\nkappa = 0.5\nomega0 = 1.0\nt = 2\nn_x = 1\n").unwrap_err();
        assert_eq!(err.code, EXIT_VALIDATION);
        assert!(err.message.contains("`omega`"), "{}", err.message);
    }
}
