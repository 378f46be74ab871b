//! Complex-weighted sums of multi-qubit Pauli strings.
//!
//! A [`PauliString`] is stored as a pair of bitmasks in the symplectic
//! representation: qubit `q` carries `X` when bit `q` of `x` is set, `Z` when
//! bit `q` of `z` is set, and `Y` when both are set. Stored strings are always
//! Hermitian (phase `+1`); products return their phase separately as a
//! [`Phase`] and [`PauliSum`] folds it into the coefficient.
//!
//! Qubit 0 is the leftmost letter and the most significant bit of a dense
//! basis index, so the string `XIZ` acts as `X ⊗ I ⊗ Z` on `|b0 b1 b2⟩`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Coefficients with a smaller magnitude are dropped when a sum is
/// canonicalized.
pub const SIMPLIFY_TOL: f64 = 1e-14;

/// Largest register that may be realized as a dense matrix.
pub const DENSE_QUBIT_CAP: usize = 14;

/// Largest register that may be held as a state vector.
pub const STATE_QUBIT_CAP: usize = 26;

/// Largest register a [`PauliString`] can address.
pub const MAX_QUBITS: usize = 64;

/// Single-qubit Pauli letter.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    // Sort key giving I < X < Y < Z.
    fn rank(self) -> u8 {
        match self {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A power of `i`: one of `+1, +i, -1, -i`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    /// `i^k` for any integer `k`.
    pub fn from_power(k: i64) -> Self {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> C64 {
        match self.0 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// Phase-free tensor product of single-qubit Pauli letters.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    /// The identity string on `n_qubits` qubits.
    pub fn identity(n_qubits: usize) -> Self {
        assert!(n_qubits <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        PauliString { n_qubits, x: 0, z: 0 }
    }

    /// A single letter at qubit `q`, identity elsewhere.
    pub fn single(n_qubits: usize, q: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n_qubits);
        s.set(q, p);
        s
    }

    pub fn from_letters(letters: &[Pauli]) -> Self {
        let mut s = Self::identity(letters.len());
        for (q, &p) in letters.iter().enumerate() {
            s.set(q, p);
        }
        s
    }

    fn set(&mut self, q: usize, p: Pauli) {
        assert!(q < self.n_qubits, "qubit {q} out of range");
        let (x, z) = p.bits();
        let bit = 1u64 << q;
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn letter(&self, q: usize) -> Pauli {
        let bit = 1u64 << q;
        Pauli::from_bits(self.x & bit != 0, self.z & bit != 0)
    }

    pub fn letters(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.n_qubits).map(|q| self.letter(q))
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    /// Qubits carrying a non-identity letter, in ascending order.
    pub fn support(&self) -> Vec<usize> {
        let m = self.x | self.z;
        (0..self.n_qubits).filter(|&q| m >> q & 1 == 1).collect()
    }

    /// Product `self · other = phase · string`.
    pub fn mul(&self, other: &PauliString) -> (Phase, PauliString) {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        // P = i^{x·z} X^x Z^z per qubit; moving Z^{z1} past X^{x2} costs (-1)^{z1·x2}.
        let k = (self.x & self.z).count_ones() as i64 + (other.x & other.z).count_ones() as i64
            - (x & z).count_ones() as i64
            + 2 * (self.z & other.x).count_ones() as i64;
        (
            Phase::from_power(k),
            PauliString {
                n_qubits: self.n_qubits,
                x,
                z,
            },
        )
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &PauliString) -> PauliString {
        let n = self.n_qubits + other.n_qubits;
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        PauliString {
            n_qubits: n,
            x: self.x | other.x.checked_shl(self.n_qubits as u32).unwrap_or(0),
            z: self.z | other.z.checked_shl(self.n_qubits as u32).unwrap_or(0),
        }
    }

    /// Place this string on qubits `offset..offset + n` of an `n_total` register.
    pub fn embed(&self, n_total: usize, offset: usize) -> PauliString {
        assert!(offset + self.n_qubits <= n_total && n_total <= MAX_QUBITS);
        PauliString {
            n_qubits: n_total,
            x: self.x << offset,
            z: self.z << offset,
        }
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// Masks translated to dense basis-index bit positions (qubit 0 is the MSB).
    pub(crate) fn dense_masks(&self) -> (usize, usize, u32) {
        let n = self.n_qubits;
        let mut xd = 0usize;
        let mut zd = 0usize;
        for q in 0..n {
            let bit = 1usize << (n - 1 - q);
            if self.x >> q & 1 == 1 {
                xd |= bit;
            }
            if self.z >> q & 1 == 1 {
                zd |= bit;
            }
        }
        (xd, zd, (self.x & self.z).count_ones())
    }
}

/// Action of a string on a dense basis state: `P|i⟩ = phase(i) |i ^ xd⟩`.
#[inline]
pub(crate) fn basis_phase(i: usize, zd: usize, n_y: u32) -> C64 {
    let k = n_y as i64 + 2 * (i & zd).count_ones() as i64;
    Phase::from_power(k).to_complex()
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n_qubits.cmp(&other.n_qubits).then_with(|| {
            for q in 0..self.n_qubits {
                let o = self.letter(q).rank().cmp(&other.letter(q).rank());
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.letters() {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| Error::Parse(format!("bad Pauli letter {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if letters.len() > MAX_QUBITS {
            return Err(Error::Parse(format!("string longer than {MAX_QUBITS} qubits")));
        }
        Ok(PauliString::from_letters(&letters))
    }
}

/// One-qubit building blocks.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `σ₊ = (X + iY)/2`, maps `|1⟩ → |0⟩`.
    SigmaPlus,
    /// `σ₋ = (X − iY)/2`, maps `|0⟩ → |1⟩`.
    SigmaMinus,
    /// `I₊ = (I + Z)/2`, projector onto `|0⟩`.
    IPlus,
    /// `I₋ = (I − Z)/2`, projector onto `|1⟩`.
    IMinus,
    X,
    Y,
    Z,
    Identity,
}

/// Sum of Pauli strings with complex coefficients, kept in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, C64>,
}

impl PauliSum {
    /// The empty sum (zero operator).
    pub fn zero(n_qubits: usize) -> Self {
        assert!(n_qubits <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        PauliSum {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self::term(PauliString::identity(n_qubits), C64::new(1.0, 0.0))
    }

    pub fn term(string: PauliString, coeff: C64) -> Self {
        let mut s = Self::zero(string.n_qubits());
        s.push(string, coeff);
        s.prune();
        s
    }

    /// Build from `(string, coefficient)` pairs, merging like terms.
    pub fn from_terms<I>(n_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, C64)>,
    {
        let mut s = Self::zero(n_qubits);
        for (p, c) in terms {
            if p.n_qubits() != n_qubits {
                return Err(Error::QubitMismatch {
                    left: n_qubits,
                    right: p.n_qubits(),
                });
            }
            s.push(p, c);
        }
        s.prune();
        Ok(s)
    }

    pub fn atom(kind: Atom) -> Self {
        let h = C64::new(0.5, 0.0);
        let ih = C64::new(0.0, 0.5);
        let one = C64::new(1.0, 0.0);
        let i = PauliString::identity(1);
        let x = PauliString::single(1, 0, Pauli::X);
        let y = PauliString::single(1, 0, Pauli::Y);
        let z = PauliString::single(1, 0, Pauli::Z);
        let pairs: Vec<(PauliString, C64)> = match kind {
            Atom::SigmaPlus => vec![(x, h), (y, ih)],
            Atom::SigmaMinus => vec![(x, h), (y, -ih)],
            Atom::IPlus => vec![(i, h), (z, h)],
            Atom::IMinus => vec![(i, h), (z, -h)],
            Atom::X => vec![(x, one)],
            Atom::Y => vec![(y, one)],
            Atom::Z => vec![(z, one)],
            Atom::Identity => vec![(i, one)],
        };
        Self::from_terms(1, pairs).expect("one-qubit atoms")
    }

    /// A one-qubit atom placed at qubit `q` of an `n_qubits` register.
    pub fn local(n_qubits: usize, q: usize, kind: Atom) -> Self {
        Self::atom(kind).embed(n_qubits, q)
    }

    /// Tensor product of atoms, one per qubit.
    pub fn product(atoms: &[Atom]) -> Self {
        atoms
            .iter()
            .fold(Self::identity(0), |acc, &a| acc.tensor(&Self::atom(a)))
    }

    fn push(&mut self, p: PauliString, c: C64) {
        *self.terms.entry(p).or_insert(C64::new(0.0, 0.0)) += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= SIMPLIFY_TOL);
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic `I < X < Y < Z`) order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &C64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &PauliString) -> C64 {
        self.terms.get(p).copied().unwrap_or_default()
    }

    /// Coefficient of the string written as letters, e.g. `"IXZ"`.
    ///
    /// Panics on a malformed or wrongly sized string.
    pub fn coeff(&self, letters: &str) -> C64 {
        let p: PauliString = letters.parse().expect("valid Pauli letters");
        assert_eq!(p.n_qubits(), self.n_qubits, "string length");
        self.coefficient(&p)
    }

    fn check_same(&self, other: &PauliSum) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.push(*p, *c);
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> PauliSum {
        let mut out = PauliSum::zero(self.n_qubits);
        for (p, v) in &self.terms {
            out.push(*p, v * c);
        }
        out.prune();
        out
    }

    pub fn scale_real(&self, c: f64) -> PauliSum {
        self.scale(C64::new(c, 0.0))
    }

    /// Operator product `self · other`.
    pub fn multiply(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_same(other)?;
        let mut out = PauliSum::zero(self.n_qubits);
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let (ph, p) = pa.mul(pb);
                out.push(p, ca * cb * ph.to_complex());
            }
        }
        out.prune();
        Ok(out)
    }

    /// Kronecker product with `self` on the leading qubits.
    pub fn tensor(&self, other: &PauliSum) -> PauliSum {
        let mut out = PauliSum::zero(self.n_qubits + other.n_qubits);
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                out.push(pa.tensor(pb), ca * cb);
            }
        }
        out.prune();
        out
    }

    /// Conjugate transpose. Stored strings are Hermitian, so only the
    /// coefficients are conjugated.
    pub fn dagger(&self) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(p, c)| (*p, c.conj())).collect(),
        }
    }

    /// Place this sum on qubits `offset..offset + n` of an `n_total` register.
    pub fn embed(&self, n_total: usize, offset: usize) -> PauliSum {
        PauliSum {
            n_qubits: n_total,
            terms: self.terms.iter().map(|(p, c)| (p.embed(n_total, offset), *c)).collect(),
        }
    }

    /// Largest per-coefficient deviation between two sums on the same register.
    pub fn max_coeff_diff(&self, other: &PauliSum) -> Result<f64> {
        self.check_same(other)?;
        let mut worst = 0.0f64;
        for (p, c) in &self.terms {
            worst = worst.max((c - other.coefficient(p)).norm());
        }
        for (p, c) in &other.terms {
            if !self.terms.contains_key(p) {
                worst = worst.max(c.norm());
            }
        }
        Ok(worst)
    }

    /// Norm of the anti-Hermitian part, measured on coefficients.
    pub fn hermiticity_residue(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residue() <= tol
    }

    /// Dense `2^n × 2^n` matrix, qubit 0 most significant.
    pub fn to_dense(&self) -> Result<CMatrix> {
        let n = self.n_qubits;
        if n > DENSE_QUBIT_CAP {
            return Err(Error::CapExceeded {
                what: "dense matrix",
                requested: n,
                cap: DENSE_QUBIT_CAP,
            });
        }
        let dim = 1usize << n;
        let mut m = CMatrix::zeros(dim, dim);
        for (p, c) in &self.terms {
            let (xd, zd, ny) = p.dense_masks();
            for col in 0..dim {
                m[(col ^ xd, col)] += c * basis_phase(col, zd, ny);
            }
        }
        Ok(m)
    }

    fn check_state(&self, state: &[C64]) -> Result<()> {
        if self.n_qubits > STATE_QUBIT_CAP {
            return Err(Error::CapExceeded {
                what: "state vector",
                requested: self.n_qubits,
                cap: STATE_QUBIT_CAP,
            });
        }
        let expected = 1usize << self.n_qubits;
        if state.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: state.len(),
            });
        }
        Ok(())
    }

    /// `A|ψ⟩`, applied term by term.
    pub fn apply(&self, state: &[C64]) -> Result<Vec<C64>> {
        self.check_state(state)?;
        let mut out = vec![C64::new(0.0, 0.0); state.len()];
        for (p, c) in &self.terms {
            let (xd, zd, ny) = p.dense_masks();
            for (i, amp) in state.iter().enumerate() {
                out[i ^ xd] += c * basis_phase(i, zd, ny) * amp;
            }
        }
        Ok(out)
    }

    /// `⟨ψ|A|ψ⟩`, computed term by term without a dense matrix.
    pub fn expectation(&self, state: &[C64]) -> Result<C64> {
        self.check_state(state)?;
        let norm: f64 = state.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-8 {
            log::warn!("expectation on a state with squared norm {norm}");
        }
        let mut total = C64::new(0.0, 0.0);
        for (p, c) in &self.terms {
            let (xd, zd, ny) = p.dense_masks();
            let mut acc = C64::new(0.0, 0.0);
            for (i, amp) in state.iter().enumerate() {
                acc += state[i ^ xd].conj() * basis_phase(i, zd, ny) * amp;
            }
            total += c * acc;
        }
        Ok(total)
    }
}

fn fmt_num(v: f64) -> String {
    // Avoid printing "-0".
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

/// One line per term: `re im letters`.
impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, c) in &self.terms {
            writeln!(f, "{} {} {}", fmt_num(c.re), fmt_num(c.im), p)?;
        }
        Ok(())
    }
}

impl PauliSum {
    /// Parse the `re im letters` line format. Blank lines and `#` comments
    /// are skipped. `n_qubits` is needed because an empty text is the zero
    /// operator on an unknown register.
    pub fn parse_text(text: &str, n_qubits: usize) -> Result<PauliSum> {
        let mut terms = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected `re im letters`", lineno + 1)));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            };
            let p: PauliString = fields[2].parse()?;
            terms.push((p, C64::new(num(fields[0])?, num(fields[1])?)));
        }
        PauliSum::from_terms(n_qubits, terms)
    }
}

impl FromStr for PauliSum {
    type Err = Error;
    /// Infers the register size from the first term; empty text is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let n = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .and_then(|l| l.split_whitespace().nth(2))
            .map(|w| w.chars().count())
            .ok_or_else(|| Error::Parse("empty operator text".into()))?;
        PauliSum::parse_text(s, n)
    }
}
