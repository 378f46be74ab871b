//! Pauli-exponential circuits built from H, R, Rz and CNOT ladders.
//!
//! `exp(−iθP)` is compiled by rotating every active qubit into the Z basis
//! (H for X, R for Y), collecting the parity onto the last active qubit with a
//! chain of CNOTs, applying `Rz(2θ)`, then undoing the chain and the basis
//! change. `R = (Y + Z)/√2` is Hermitian and squares to the identity; it swaps
//! Y and Z under conjugation.
//!
//! Rotation conventions: `Rz(φ) = exp(−iφZ/2)`, `Rx(φ) = exp(−iφX/2)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt::Write as _;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{apply_on_qubits, CMatrix};
use crate::pauli::{Pauli, PauliString, PauliSum, DENSE_QUBIT_CAP};
use crate::yukawa::check_hermitian;

/// Rotations with a smaller angle are dropped.
pub const ANGLE_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    H(usize),
    R(usize),
    Rz(usize, f64),
    Rx(usize, f64),
    Cnot {
        control: usize,
        target: usize,
    },
    /// Multiplies the state by `e^{iφ}`.
    GlobalPhase(f64),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::R(q) | Gate::Rz(q, _) | Gate::Rx(q, _) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::GlobalPhase(_) => Vec::new(),
        }
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    /// Matrix on [`Gate::qubits`], first qubit most significant.
    pub fn matrix(&self) -> CMatrix {
        let c = |re: f64, im: f64| C64::new(re, im);
        let s = FRAC_1_SQRT_2;
        match *self {
            Gate::H(_) => CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]),
            Gate::R(_) => CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(0.0, -s), c(0.0, s), c(-s, 0.0)]),
            Gate::Rz(_, phi) => CMatrix::from_row_slice(
                2,
                2,
                &[
                    C64::from_polar(1.0, -phi / 2.0),
                    c(0.0, 0.0),
                    c(0.0, 0.0),
                    C64::from_polar(1.0, phi / 2.0),
                ],
            ),
            Gate::Rx(_, phi) => {
                let (co, si) = ((phi / 2.0).cos(), (phi / 2.0).sin());
                CMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(0.0, -si), c(0.0, -si), c(co, 0.0)])
            }
            Gate::Cnot { .. } => {
                let mut m = CMatrix::zeros(4, 4);
                for (r, col) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
                    m[(r, col)] = c(1.0, 0.0);
                }
                m
            }
            Gate::GlobalPhase(phi) => CMatrix::from_element(1, 1, C64::from_polar(1.0, phi)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let qs = gate.qubits();
        for &q in &qs {
            if q >= self.n_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    n_qubits: self.n_qubits,
                });
            }
        }
        if let Gate::Cnot { control, target } = gate {
            if control == target {
                return Err(Error::InvalidLayout(format!("CNOT with control = target = {control}")));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::QubitMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_cnot()).count()
    }

    pub fn single_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.qubits().len() == 1).count()
    }
}

/// Circuit for `exp(−i·theta·P)`.
pub fn compile_pauli_exponential(string: &PauliString, theta: f64) -> Result<Circuit> {
    if string.is_identity() {
        return Err(Error::IdentityString);
    }
    let n = string.n_qubits();
    let active = string.support();
    let mut basis = Vec::new();
    for &q in &active {
        match string.letter(q) {
            Pauli::X => basis.push(Gate::H(q)),
            Pauli::Y => basis.push(Gate::R(q)),
            _ => {}
        }
    }
    let ladder: Vec<Gate> = active
        .windows(2)
        .map(|w| Gate::Cnot {
            control: w[0],
            target: w[1],
        })
        .collect();
    let last = *active.last().expect("non-identity");

    let mut c = Circuit::new(n);
    let gates = basis
        .iter()
        .chain(&ladder)
        .copied()
        .chain([Gate::Rz(last, 2.0 * theta)])
        .chain(ladder.iter().rev().copied())
        .chain(basis.iter().rev().copied());
    for g in gates {
        c.push(g)?;
    }
    Ok(c)
}

/// Order in which Hamiltonian terms are laid down.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    /// Canonical letter order (I < X < Y < Z, qubit 0 first).
    #[default]
    Lex,
    /// Greedy: always append the term that adds the fewest CNOTs after
    /// cancellation.
    Ladder,
}

impl std::str::FromStr for Ordering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(Ordering::Lex),
            "ladder" => Ok(Ordering::Ladder),
            _ => Err(crate::error::invalid("ordering", format!("unknown ordering `{s}`"))),
        }
    }
}

impl std::fmt::Display for Ordering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ordering::Lex => "lex",
            Ordering::Ladder => "ladder",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompilationStats {
    /// Non-identity terms.
    pub term_count: usize,
    pub cnot_count_naive: usize,
    pub cnot_count_after_cancellation: usize,
    pub single_qubit_count: usize,
    /// Phase `φ` of the dropped identity term, the step carries `e^{iφ}`.
    pub global_phase: f64,
}

/// First-order product of `exp(−i·c_k·P_k·Δt)` over the terms of `h`,
/// followed by [`cancel_adjacent`]. The identity term is not emitted; its
/// phase is reported in the stats.
pub fn compile_step(h: &PauliSum, delta_t: f64, ordering: Ordering) -> Result<(Circuit, CompilationStats)> {
    check_hermitian(h, 1e-12)?;
    let n = h.n_qubits();
    let mut global_phase = 0.0;
    let mut pieces = Vec::new();
    for (p, c) in h.iter() {
        if p.is_identity() {
            global_phase = -c.re * delta_t;
            continue;
        }
        pieces.push(compile_pauli_exponential(p, c.re * delta_t)?);
    }
    let naive: usize = pieces.iter().map(Circuit::cnot_count).sum();
    let term_count = pieces.len();

    let mut canceller = Canceller::new(n);
    match ordering {
        Ordering::Lex => {
            for piece in &pieces {
                canceller.extend(piece);
            }
        }
        Ordering::Ladder => {
            let mut remaining = pieces;
            while !remaining.is_empty() {
                let base = canceller.cnot_count();
                let (best, _) = remaining
                    .iter()
                    .enumerate()
                    .map(|(i, piece)| {
                        let mut trial = canceller.clone();
                        trial.extend(piece);
                        (i, trial.cnot_count() - base.min(trial.cnot_count()))
                    })
                    .min_by_key(|&(i, cost)| (cost, i))
                    .expect("non-empty");
                let piece = remaining.remove(best);
                canceller.extend(&piece);
            }
        }
    }
    let circuit = cancel_adjacent(&canceller.finish());
    let stats = CompilationStats {
        term_count,
        cnot_count_naive: naive,
        cnot_count_after_cancellation: circuit.cnot_count(),
        single_qubit_count: circuit.single_qubit_count(),
        global_phase,
    };
    Ok((circuit, stats))
}

/// Incremental peephole pass. Each incoming gate is compared with the most
/// recent surviving gate on its qubits: identical self-inverse pairs vanish,
/// rotations about the same axis merge, and zero rotations are dropped.
#[derive(Clone, Debug)]
struct Canceller {
    n_qubits: usize,
    out: Vec<Option<Gate>>,
    /// Per-qubit stack of indices into `out`.
    stacks: Vec<Vec<usize>>,
    phases: f64,
}

impl Canceller {
    fn new(n_qubits: usize) -> Self {
        Canceller {
            n_qubits,
            out: Vec::new(),
            stacks: vec![Vec::new(); n_qubits],
            phases: 0.0,
        }
    }

    fn cnot_count(&self) -> usize {
        self.out.iter().flatten().filter(|g| g.is_cnot()).count()
    }

    fn extend(&mut self, c: &Circuit) {
        for g in &c.gates {
            self.push(*g);
        }
    }

    fn remove(&mut self, j: usize) {
        let g = self.out[j].take().expect("live gate");
        for q in g.qubits() {
            let top = self.stacks[q].pop();
            debug_assert_eq!(top, Some(j));
        }
    }

    fn push(&mut self, g: Gate) {
        if let Gate::GlobalPhase(phi) = g {
            self.phases += phi;
            return;
        }
        if let Gate::Rz(_, a) | Gate::Rx(_, a) = g {
            if a.abs() < ANGLE_TOL {
                return;
            }
        }
        let qs = g.qubits();
        let tops: Vec<Option<usize>> = qs.iter().map(|&q| self.stacks[q].last().copied()).collect();
        if let Some(Some(j)) = tops.first().copied() {
            let prev = self.out[j].expect("stack points at live gate");
            if tops.iter().all(|t| *t == Some(j)) && prev.qubits() == qs {
                match (prev, g) {
                    (Gate::H(_), Gate::H(_)) | (Gate::R(_), Gate::R(_)) => {
                        self.remove(j);
                        return;
                    }
                    (Gate::Cnot { .. }, Gate::Cnot { .. }) => {
                        self.remove(j);
                        return;
                    }
                    (Gate::Rz(q, a), Gate::Rz(_, b)) | (Gate::Rx(q, a), Gate::Rx(_, b)) => {
                        let sum = a + b;
                        if sum.abs() < ANGLE_TOL {
                            self.remove(j);
                        } else {
                            self.out[j] = Some(match prev {
                                Gate::Rz(..) => Gate::Rz(q, sum),
                                _ => Gate::Rx(q, sum),
                            });
                        }
                        return;
                    }
                    _ => {}
                }
            }
        }
        let j = self.out.len();
        self.out.push(Some(g));
        for q in qs {
            self.stacks[q].push(j);
        }
    }

    fn finish(self) -> Circuit {
        let mut gates: Vec<Gate> = self.out.into_iter().flatten().collect();
        if self.phases != 0.0 {
            gates.insert(0, Gate::GlobalPhase(self.phases));
        }
        Circuit {
            n_qubits: self.n_qubits,
            gates,
        }
    }
}

/// Repeat the peephole pass until nothing changes. Global phases are
/// collected into one leading gate.
pub fn cancel_adjacent(circuit: &Circuit) -> Circuit {
    let mut current = circuit.clone();
    loop {
        let mut c = Canceller::new(current.n_qubits);
        c.extend(&current);
        let next = c.finish();
        if next == current {
            return next;
        }
        current = next;
    }
}

/// Dense unitary, qubit 0 most significant.
pub fn circuit_unitary(circuit: &Circuit) -> Result<CMatrix> {
    let n = circuit.n_qubits;
    if n > DENSE_QUBIT_CAP {
        return Err(Error::CapExceeded {
            what: "circuit unitary",
            requested: n,
            cap: DENSE_QUBIT_CAP,
        });
    }
    let dim = 1usize << n;
    let mut u = CMatrix::identity(dim, dim);
    let mut phase = C64::new(1.0, 0.0);
    let mats: Vec<(Vec<usize>, CMatrix)> = circuit.gates.iter().map(|g| (g.qubits(), g.matrix())).collect();
    for col in 0..dim {
        let mut v: Vec<C64> = u.column(col).iter().copied().collect();
        for (qs, m) in &mats {
            if qs.is_empty() {
                continue;
            }
            apply_on_qubits(&mut v, n, qs, m)?;
        }
        u.set_column(col, &nalgebra::DVector::from_vec(v));
    }
    for g in &circuit.gates {
        if let Gate::GlobalPhase(phi) = g {
            phase *= C64::from_polar(1.0, *phi);
        }
    }
    Ok(u * phase)
}

/// `total^(1/(cnot_per_step·n_steps))`: the per-CNOT fidelity needed for a
/// run of `n_steps` steps to keep overall fidelity `total`.
pub fn fidelity_threshold(total: f64, cnot_per_step: u64, n_steps: u64) -> Result<f64> {
    if !(total > 0.0 && total <= 1.0) {
        return Err(crate::error::invalid(
            "total",
            format!("must lie in (0, 1], got {total}"),
        ));
    }
    if cnot_per_step == 0 {
        return Err(crate::error::invalid("cnot", "must be positive"));
    }
    if n_steps == 0 {
        return Err(crate::error::invalid("steps", "must be positive"));
    }
    Ok(total.powf(1.0 / (cnot_per_step as f64 * n_steps as f64)))
}

/// OpenQASM 2 text. `R` becomes `rx(pi/2)` followed by `z`, which is exactly
/// `Z·Rx(π/2) = R`. A global phase is written as a `// gphase(φ)` comment.
pub fn export_text(circuit: &Circuit) -> String {
    let mut s = String::new();
    s.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(s, "qreg q[{}];", circuit.n_qubits);
    for g in &circuit.gates {
        let _ = match *g {
            Gate::H(q) => writeln!(s, "h q[{q}];"),
            Gate::R(q) => writeln!(s, "rx(pi/2) q[{q}];\nz q[{q}];"),
            Gate::Rz(q, a) => writeln!(s, "rz({a:?}) q[{q}];"),
            Gate::Rx(q, a) => writeln!(s, "rx({a:?}) q[{q}];"),
            Gate::Cnot { control, target } => writeln!(s, "cx q[{control}],q[{target}];"),
            Gate::GlobalPhase(phi) => writeln!(s, "// gphase({phi:?})"),
        };
    }
    s
}

fn parse_angle(s: &str) -> Result<f64> {
    let s = s.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, s),
    };
    let value = match body {
        "pi" => PI,
        _ => {
            if let Some(den) = body.strip_prefix("pi/") {
                PI / den
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("angle `{s}`: {e}")))?
            } else {
                body.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("angle `{s}`: {e}")))?
            }
        }
    };
    Ok(sign * value)
}

fn parse_qubit(s: &str) -> Result<usize> {
    s.trim()
        .strip_prefix("q[")
        .and_then(|r| r.strip_suffix(']'))
        .and_then(|r| r.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad qubit operand `{s}`")))
}

/// Read back the subset written by [`export_text`]. A `rx(pi/2)` immediately
/// followed by `z` on the same qubit becomes `R`; a lone `z` becomes
/// `Rz(π)` with a global phase of `π/2`.
pub fn parse_text(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut gates = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |m: &str| Error::Parse(format!("line {}: {m}: `{line}`", no + 1));
        if let Some(rest) = line.strip_prefix("// gphase(") {
            let v = rest.strip_suffix(')').ok_or_else(|| err("unterminated gphase"))?;
            gates.push(Gate::GlobalPhase(parse_angle(v)?));
            continue;
        }
        if line.is_empty() || line.starts_with("//") || line.starts_with("OPENQASM") || line.starts_with("include") {
            continue;
        }
        let stmt = line.strip_suffix(';').ok_or_else(|| err("missing `;`"))?;
        if let Some(rest) = stmt.strip_prefix("qreg ") {
            let n = rest
                .trim()
                .strip_prefix("q[")
                .and_then(|r| r.strip_suffix(']'))
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| err("bad qreg"))?;
            circuit = Some(Circuit::new(n));
            continue;
        }
        let (head, operands) = stmt.split_once(' ').ok_or_else(|| err("missing operands"))?;
        let (name, arg) = match head.split_once('(') {
            Some((name, a)) => (name, Some(a.strip_suffix(')').ok_or_else(|| err("bad parameter"))?)),
            None => (head, None),
        };
        let gate = match (name, arg) {
            ("h", None) => Gate::H(parse_qubit(operands)?),
            ("rz", Some(a)) => Gate::Rz(parse_qubit(operands)?, parse_angle(a)?),
            ("rx", Some(a)) => Gate::Rx(parse_qubit(operands)?, parse_angle(a)?),
            ("cx", None) => {
                let (c, t) = operands.split_once(',').ok_or_else(|| err("cx needs two operands"))?;
                Gate::Cnot {
                    control: parse_qubit(c)?,
                    target: parse_qubit(t)?,
                }
            }
            ("z", None) => {
                let q = parse_qubit(operands)?;
                if let Some(Gate::Rx(p, a)) = gates.last().copied() {
                    if p == q && (a - PI / 2.0).abs() < 1e-15 {
                        gates.pop();
                        gates.push(Gate::R(q));
                        continue;
                    }
                }
                gates.push(Gate::GlobalPhase(PI / 2.0));
                Gate::Rz(q, PI)
            }
            _ => return Err(err("unsupported gate")),
        };
        gates.push(gate);
    }
    let mut circuit = circuit.ok_or_else(|| Error::Parse("missing qreg declaration".into()))?;
    for g in gates {
        circuit.push(g)?;
    }
    Ok(circuit)
}
