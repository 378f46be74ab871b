//! Qubit encodings of truncated bosonic and fermionic modes.
//!
//! Binary encoding: occupation `i ∈ 0..2^t` is stored as the `t`-bit
//! big-endian binary of `i`, with spin up as bit 0 and qubit 0 the most
//! significant. The creation operator is assembled from ladder components
//! `ĉ_i` (each mapping `|i−1⟩ → |i⟩`) by the recurrence
//!
//! ```text
//! â†_1     = σ₋
//! â†_{t+1} = Σ_{i<2^t} √i I₊⊗ĉ_i  +  √(2^t) σ₋⊗σ₊⊗…⊗σ₊  +  Σ_{i<2^t} √(i+2^t) I₋⊗ĉ_i
//! ```
//!
//! Unary encoding: occupation `i ∈ 0..=n_max` is the one-hot state with qubit
//! `i` up and every other qubit down. It needs `n_max + 1` qubits against the
//! binary encoding's `⌈log₂(n_max + 1)⌉`.
//!
//! Fermions use the Jordan–Wigner form `b̂† = −Z^N σ₊^P`, `d̂† = σ₊^N`, where an
//! occupied mode is spin up.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::pauli::{Atom, PauliSum, DENSE_QUBIT_CAP, MAX_QUBITS};

/// Largest boson register accepted by the binary encoders.
pub const MAX_BOSON_QUBITS: usize = 8;

/// Computational-basis value of one qubit.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Spin {
    /// Bit 0.
    Up,
    /// Bit 1.
    Down,
}

impl Spin {
    pub fn bit(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    pub fn from_bit(b: usize) -> Self {
        if b & 1 == 0 {
            Spin::Up
        } else {
            Spin::Down
        }
    }
}

/// Big-endian occupation of a register given as spins.
pub fn fock_index(bits: &[Spin]) -> usize {
    bits.iter().fold(0, |acc, s| (acc << 1) | s.bit())
}

/// Inverse of [`fock_index`] on `t` qubits.
pub fn occupation_to_bits(occupation: usize, t: usize) -> Result<Vec<Spin>> {
    let truncation = (1usize << t) - 1;
    if occupation > truncation {
        return Err(Error::OccupationOutOfRange { occupation, truncation });
    }
    Ok((0..t).map(|q| Spin::from_bit(occupation >> (t - 1 - q))).collect())
}

/// One bosonic mode on `t` qubits with maximal occupation `2^t − 1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BosonRegister {
    t: usize,
}

impl BosonRegister {
    pub fn new(t: usize) -> Result<Self> {
        check_boson_qubits(t)?;
        Ok(BosonRegister { t })
    }

    pub fn qubits(&self) -> usize {
        self.t
    }

    pub fn truncation(&self) -> usize {
        (1usize << self.t) - 1
    }

    pub fn bits_of(&self, occupation: usize) -> Result<Vec<Spin>> {
        occupation_to_bits(occupation, self.t)
    }

    pub fn occupation_of(&self, bits: &[Spin]) -> Result<usize> {
        if bits.len() != self.t {
            return Err(Error::QubitMismatch {
                left: self.t,
                right: bits.len(),
            });
        }
        Ok(fock_index(bits))
    }
}

fn check_boson_qubits(t: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidParameter {
            key: "t".into(),
            reason: "at least one boson qubit is required".into(),
        });
    }
    if t > MAX_BOSON_QUBITS {
        return Err(Error::CapExceeded {
            what: "boson register",
            requested: t,
            cap: MAX_BOSON_QUBITS,
        });
    }
    Ok(())
}

/// One term `ĉ_i` of the creation operator, mapping `|i−1⟩` to `|i⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderComponent {
    /// The `i` in `√i ĉ_i`.
    pub index: usize,
    /// Per-qubit factors, qubit 0 first.
    pub factors: Vec<Atom>,
}

impl LadderComponent {
    pub fn weight(&self) -> f64 {
        (self.index as f64).sqrt()
    }

    pub fn operator(&self) -> PauliSum {
        PauliSum::product(&self.factors)
    }
}

/// Binary-encoded creation operator together with its ladder components.
#[derive(Clone, Debug)]
pub struct BinaryCreation {
    pub t: usize,
    pub components: Vec<LadderComponent>,
    pub operator: PauliSum,
}

fn ladder_components(t: usize) -> Vec<LadderComponent> {
    let mut comps = vec![LadderComponent {
        index: 1,
        factors: vec![Atom::SigmaMinus],
    }];
    for level in 1..t {
        let half = 1usize << level;
        let mut next = Vec::with_capacity(2 * half - 1);
        next.extend(comps.iter().map(|c| LadderComponent {
            index: c.index,
            factors: prepend(Atom::IPlus, &c.factors),
        }));
        let mut carry = vec![Atom::SigmaMinus];
        carry.extend(std::iter::repeat_n(Atom::SigmaPlus, level));
        next.push(LadderComponent {
            index: half,
            factors: carry,
        });
        next.extend(comps.iter().map(|c| LadderComponent {
            index: c.index + half,
            factors: prepend(Atom::IMinus, &c.factors),
        }));
        comps = next;
    }
    comps
}

fn prepend(head: Atom, rest: &[Atom]) -> Vec<Atom> {
    let mut v = Vec::with_capacity(rest.len() + 1);
    v.push(head);
    v.extend_from_slice(rest);
    v
}

/// Creation operator on `t` qubits built by the ladder recurrence.
pub fn binary_creation(t: usize) -> Result<BinaryCreation> {
    check_boson_qubits(t)?;
    let components = ladder_components(t);
    let mut operator = PauliSum::zero(t);
    for c in &components {
        operator = operator.add(&c.operator().scale_real(c.weight()))?;
    }
    Ok(BinaryCreation {
        t,
        components,
        operator,
    })
}

/// Truncated creation matrix with `√(i+1)` on the sub-diagonal.
pub fn dense_creation(t: usize) -> Result<CMatrix> {
    if t > DENSE_QUBIT_CAP {
        return Err(Error::CapExceeded {
            what: "dense creation matrix",
            requested: t,
            cap: DENSE_QUBIT_CAP,
        });
    }
    let dim = 1usize << t;
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim - 1 {
        m[(i + 1, i)] = C64::new(((i + 1) as f64).sqrt(), 0.0);
    }
    Ok(m)
}

pub fn binary_annihilation(t: usize) -> Result<PauliSum> {
    Ok(binary_creation(t)?.operator.dagger())
}

/// `â†â`, diagonal in the binary encoding.
pub fn binary_number(t: usize) -> Result<PauliSum> {
    let create = binary_creation(t)?.operator;
    create.multiply(&create.dagger())
}

/// `(â†â)²`.
pub fn number_squared(t: usize) -> Result<PauliSum> {
    let n = binary_number(t)?;
    n.multiply(&n)
}

/// `â†â† + ââ`.
pub fn squeeze_block(t: usize) -> Result<PauliSum> {
    let create = binary_creation(t)?.operator;
    let pair = create.multiply(&create)?;
    pair.add(&pair.dagger())
}

/// Unary-encoded creation operator and its hop-term count.
#[derive(Clone, Debug)]
pub struct UnaryCreation {
    pub n_max: usize,
    /// Number of `σ₋σ₊` hop products summed, one per occupation step.
    pub hop_terms: usize,
    pub operator: PauliSum,
}

fn check_unary(n_max: usize) -> Result<()> {
    if n_max == 0 {
        return Err(Error::InvalidParameter {
            key: "nmax".into(),
            reason: "maximal occupation must be at least 1".into(),
        });
    }
    if n_max + 1 > MAX_QUBITS {
        return Err(Error::CapExceeded {
            what: "unary register",
            requested: n_max + 1,
            cap: MAX_QUBITS,
        });
    }
    Ok(())
}

/// `Σ_{i<n_max} √(i+1) σ₋^i σ₊^{i+1}` on `n_max + 1` qubits.
pub fn unary_creation(n_max: usize) -> Result<UnaryCreation> {
    check_unary(n_max)?;
    let n = n_max + 1;
    let mut operator = PauliSum::zero(n);
    for i in 0..n_max {
        let hop = PauliSum::local(n, i, Atom::SigmaMinus).multiply(&PauliSum::local(n, i + 1, Atom::SigmaPlus))?;
        operator = operator.add(&hop.scale_real(((i + 1) as f64).sqrt()))?;
    }
    Ok(UnaryCreation {
        n_max,
        hop_terms: n_max,
        operator,
    })
}

/// `Σ_i i·(I + Z^i)/2`.
pub fn unary_number(n_max: usize) -> Result<PauliSum> {
    check_unary(n_max)?;
    let n = n_max + 1;
    let mut out = PauliSum::zero(n);
    for i in 1..=n_max {
        out = out.add(&PauliSum::local(n, i, Atom::IPlus).scale_real(i as f64))?;
    }
    Ok(out)
}

/// Dense basis index of the one-hot state for occupation `i`.
pub fn unary_basis_index(occupation: usize, n_max: usize) -> Result<usize> {
    check_unary(n_max)?;
    if occupation > n_max {
        return Err(Error::OccupationOutOfRange {
            occupation,
            truncation: n_max,
        });
    }
    let n = n_max + 1;
    let all_down = (1usize << n) - 1;
    Ok(all_down & !(1usize << (n - 1 - occupation)))
}

/// Qubit positions of one site's antifermion (`N`) and fermion (`P`) modes.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FermionSiteLayout {
    pub antifermion: usize,
    pub fermion: usize,
    pub n_qubits: usize,
}

impl FermionSiteLayout {
    pub fn new(antifermion: usize, fermion: usize, n_qubits: usize) -> Result<Self> {
        if antifermion == fermion {
            return Err(Error::InvalidLayout(format!(
                "antifermion and fermion share qubit {fermion}"
            )));
        }
        if antifermion.max(fermion) >= n_qubits || n_qubits > MAX_QUBITS {
            return Err(Error::InvalidLayout(format!(
                "qubits ({antifermion}, {fermion}) do not fit a {n_qubits}-qubit register"
            )));
        }
        Ok(FermionSiteLayout {
            antifermion,
            fermion,
            n_qubits,
        })
    }
}

/// `b̂† = −Z^N σ₊^P`.
pub fn jw_fermion_creation(layout: &FermionSiteLayout) -> PauliSum {
    let n = layout.n_qubits;
    PauliSum::local(n, layout.antifermion, Atom::Z)
        .multiply(&PauliSum::local(n, layout.fermion, Atom::SigmaPlus))
        .expect("same register")
        .scale_real(-1.0)
}

/// `d̂† = σ₊^N`.
pub fn jw_antifermion_creation(layout: &FermionSiteLayout) -> PauliSum {
    PauliSum::local(layout.n_qubits, layout.antifermion, Atom::SigmaPlus)
}

/// `b̂†b̂ = (I + Z^P)/2`.
pub fn fermion_number(layout: &FermionSiteLayout) -> PauliSum {
    let b = jw_fermion_creation(layout);
    b.multiply(&b.dagger()).expect("same register")
}

/// `d̂†d̂ = (I + Z^N)/2`.
pub fn antifermion_number(layout: &FermionSiteLayout) -> PauliSum {
    let d = jw_antifermion_creation(layout);
    d.multiply(&d.dagger()).expect("same register")
}
