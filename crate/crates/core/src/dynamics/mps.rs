//! Matrix product states over qubit chains.
//!
//! Each site tensor `A[l, s, r]` has a physical index `s ∈ {0, 1}` and is stored
//! row-major as `(l·2 + s)·right + r`. The state is kept in mixed canonical
//! form around `center`: sites left of it are left-isometric, sites right of
//! it are right-isometric.
//!
//! Gates act on a contiguous block of sites. The block is contracted into a
//! single tensor, the gate is applied to its fused physical index, and the
//! result is split back with successive SVDs. The left singular vectors come
//! from the Hermitian eigendecomposition of `M·M†` and the remainder is
//! `U†·M`, so the split is exact whatever the eigensolver's accuracy on small
//! values. Singular values under the cutoff are dropped; needing more than `chi_max` values is a
//! [`Error::BondOverflow`] in strict mode and a recorded truncation otherwise.
//! Two-qubit gates on distant qubits are routed with adjacent swaps.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{gate_width, pauli_matrix, CMatrix};
use crate::pauli::{Pauli, PauliSum, STATE_QUBIT_CAP};

/// Truncation settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MpsConfig {
    pub chi_max: usize,
    /// Singular values below this are discarded.
    pub cutoff: f64,
    /// Fail instead of truncating when `chi_max` is too small.
    pub strict: bool,
}

impl Default for MpsConfig {
    fn default() -> Self {
        MpsConfig {
            chi_max: 64,
            cutoff: 1e-12,
            strict: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
struct SiteTensor {
    left: usize,
    right: usize,
    data: Vec<C64>,
}

impl SiteTensor {
    fn at(&self, l: usize, s: usize, r: usize) -> C64 {
        self.data[(l * 2 + s) * self.right + r]
    }

    /// `(left·2) × right` matrix view.
    fn as_left_matrix(&self) -> CMatrix {
        DMatrix::from_row_slice(self.left * 2, self.right, &self.data)
    }

    fn from_left_matrix(m: &CMatrix, left: usize) -> Self {
        let right = m.ncols();
        let mut data = Vec::with_capacity(m.len());
        for i in 0..m.nrows() {
            for j in 0..right {
                data.push(m[(i, j)]);
            }
        }
        SiteTensor { left, right, data }
    }

    /// `left × (2·right)` matrix view.
    fn as_right_matrix(&self) -> CMatrix {
        DMatrix::from_row_slice(self.left, 2 * self.right, &self.data)
    }

    fn from_right_matrix(m: &CMatrix, right: usize) -> Self {
        let left = m.nrows();
        let mut data = Vec::with_capacity(m.len());
        for i in 0..left {
            for j in 0..m.ncols() {
                data.push(m[(i, j)]);
            }
        }
        SiteTensor { left, right, data }
    }

    /// `A_s` as a `left × right` matrix.
    fn slice(&self, s: usize) -> CMatrix {
        DMatrix::from_fn(self.left, self.right, |l, r| self.at(l, s, r))
    }
}

/// Matrix product state of qubits.
#[derive(Clone, Debug)]
pub struct MpsState {
    sites: Vec<SiteTensor>,
    center: usize,
    config: MpsConfig,
    discarded_weight: f64,
}

impl MpsState {
    /// Product state from a list of bits, qubit 0 first.
    pub fn from_bits(bits: &[usize], config: MpsConfig) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidLayout("an MPS needs at least one site".into()));
        }
        if config.chi_max == 0 {
            return Err(Error::InvalidParameter {
                key: "chi_max".into(),
                reason: "must be at least 1".into(),
            });
        }
        let sites = bits
            .iter()
            .map(|&b| {
                let mut data = vec![C64::new(0.0, 0.0); 2];
                data[b & 1] = C64::new(1.0, 0.0);
                SiteTensor {
                    left: 1,
                    right: 1,
                    data,
                }
            })
            .collect();
        Ok(MpsState {
            sites,
            center: 0,
            config,
            discarded_weight: 0.0,
        })
    }

    /// Basis state `|index⟩` of an `n`-qubit register.
    pub fn basis(n_qubits: usize, index: usize, config: MpsConfig) -> Result<Self> {
        let bits: Vec<usize> = (0..n_qubits).map(|q| index >> (n_qubits - 1 - q) & 1).collect();
        Self::from_bits(&bits, config)
    }

    pub fn n_qubits(&self) -> usize {
        self.sites.len()
    }

    pub fn config(&self) -> &MpsConfig {
        &self.config
    }

    pub fn center(&self) -> usize {
        self.center
    }

    /// Bond dimensions between consecutive sites.
    pub fn bond_dims(&self) -> Vec<usize> {
        self.sites[..self.sites.len() - 1].iter().map(|s| s.right).collect()
    }

    /// Total squared weight dropped by truncations so far.
    pub fn discarded_weight(&self) -> f64 {
        self.discarded_weight
    }

    pub fn norm(&self) -> f64 {
        let c = &self.sites[self.center];
        c.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Shift the orthogonality center to `target` with QR sweeps.
    pub fn move_center(&mut self, target: usize) {
        assert!(target < self.sites.len());
        while self.center < target {
            let i = self.center;
            let m = self.sites[i].as_left_matrix();
            let left = self.sites[i].left;
            let qr = m.qr();
            let (q, r) = (qr.q(), qr.r());
            self.sites[i] = SiteTensor::from_left_matrix(&q, left);
            let next = &self.sites[i + 1];
            let merged = &r * next.as_right_matrix();
            self.sites[i + 1] = SiteTensor::from_right_matrix(&merged, next.right);
            self.center += 1;
        }
        while self.center > target {
            let i = self.center;
            let m = self.sites[i].as_right_matrix();
            let right = self.sites[i].right;
            let qr = m.adjoint().qr();
            let (q, r) = (qr.q(), qr.r());
            // m = r† q†
            self.sites[i] = SiteTensor::from_right_matrix(&q.adjoint(), right);
            let prev = &self.sites[i - 1];
            let merged = prev.as_left_matrix() * r.adjoint();
            self.sites[i - 1] = SiteTensor::from_left_matrix(&merged, prev.left);
            self.center -= 1;
        }
    }

    /// Apply a `2^k × 2^k` unitary to sites `first..first + k`.
    pub fn apply_block(&mut self, first: usize, gate: &CMatrix) -> Result<()> {
        let k = gate_width(gate)?;
        if k == 0 || first + k > self.sites.len() {
            return Err(Error::QubitOutOfRange {
                index: first + k.max(1) - 1,
                n_qubits: self.sites.len(),
            });
        }
        self.move_center(first);

        // Fuse the block into theta[l, s, r] with s the big-endian block index.
        let left = self.sites[first].left;
        let mut theta = self.sites[first].as_left_matrix(); // (left·2) × right
        for j in 1..k {
            let next = &self.sites[first + j];
            theta *= next.as_right_matrix(); // (left·2^j) × (2·right')
            let rows = theta.nrows() * 2;
            let cols = next.right;
            theta = reshape(&theta, rows, cols);
        }
        let right = self.sites[first + k - 1].right;
        let dim = 1usize << k;

        // Apply the gate on the fused physical index.
        let mut out = CMatrix::zeros(left * dim, right);
        for l in 0..left {
            for s_out in 0..dim {
                for s_in in 0..dim {
                    let g = gate[(s_out, s_in)];
                    if g == C64::new(0.0, 0.0) {
                        continue;
                    }
                    for r in 0..right {
                        out[(l * dim + s_out, r)] += g * theta[(l * dim + s_in, r)];
                    }
                }
            }
        }

        // Split left to right.
        let mut new_sites = Vec::with_capacity(k);
        let mut discarded = 0.0;
        let mut rest = out; // rows: (chi·2^m) with m remaining sites, cols: right
        let mut chi = left;
        for j in 0..k - 1 {
            let remaining = k - j; // sites still fused in `rest`
            let rows = chi * 2;
            let cols = (1usize << (remaining - 1)) * right;
            let m = reshape(&rest, rows, cols);
            let (u, sv, dropped, keep) = self.truncated_svd(m, first + j)?;
            discarded += dropped;
            new_sites.push(SiteTensor::from_left_matrix(&u, chi));
            chi = keep;
            rest = reshape(&sv, chi * (1usize << (remaining - 1)), right);
        }
        let last = reshape(&rest, chi * 2, right);
        new_sites.push(SiteTensor::from_left_matrix(&last, chi));

        for (j, site) in new_sites.into_iter().enumerate() {
            self.sites[first + j] = site;
        }
        self.center = first + k - 1;
        self.discarded_weight += discarded;
        Ok(())
    }

    /// Left singular vectors `U` of `m` and the product `S·V† = U†·m`,
    /// keeping at most `chi_max` values above the cutoff. The kept rows are
    /// rescaled to the norm of `m`.
    ///
    /// nalgebra's complex SVD can miss by 1e-4 on wide matrices with
    /// near-zero columns, which shows up as norm drift, hence the Gram route.
    fn truncated_svd(&self, m: CMatrix, bond: usize) -> Result<(CMatrix, CMatrix, f64, usize)> {
        let eig = (&m * m.adjoint()).symmetric_eigen();
        let u = eig.eigenvectors;
        let rest = u.adjoint() * &m;
        let weights: Vec<f64> = (0..rest.nrows())
            .map(|i| rest.row(i).iter().map(|x| x.norm_sqr()).sum())
            .collect();
        let mut order: Vec<usize> = (0..weights.len()).collect();
        order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]));
        let values: Vec<f64> = order.iter().map(|&i| weights[i].sqrt()).collect();
        let total: f64 = weights.iter().sum();

        let above = values.iter().filter(|&&v| v > self.config.cutoff).count().max(1);
        let keep = above.min(self.config.chi_max);
        let dropped: f64 = values[keep..].iter().map(|v| v * v).sum();
        if above > self.config.chi_max && self.config.strict {
            return Err(Error::BondOverflow {
                bond,
                required: above,
                chi_max: self.config.chi_max,
                discarded: dropped / total.max(f64::MIN_POSITIVE),
            });
        }
        let kept_norm: f64 = values[..keep].iter().map(|v| v * v).sum::<f64>().sqrt();
        let scale = if kept_norm > 0.0 { total.sqrt() / kept_norm } else { 1.0 };
        let u_k = DMatrix::from_fn(u.nrows(), keep, |r, c| u[(r, order[c])]);
        let rest_k = DMatrix::from_fn(keep, rest.ncols(), |r, c| rest[(order[r], c)] * scale);
        Ok((u_k, rest_k, dropped, keep))
    }

    /// Apply a one- or two-qubit gate. `qubits[0]` is the most significant
    /// index of the gate. Non-adjacent pairs are brought together with swaps
    /// and moved back afterwards.
    pub fn apply_gate(&mut self, gate: &CMatrix, qubits: &[usize]) -> Result<()> {
        let k = gate_width(gate)?;
        if k != qubits.len() || !(1..=2).contains(&k) {
            return Err(Error::QubitMismatch {
                left: k,
                right: qubits.len(),
            });
        }
        for &q in qubits {
            if q >= self.sites.len() {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    n_qubits: self.sites.len(),
                });
            }
        }
        if k == 1 {
            return self.apply_block(qubits[0], gate);
        }
        let (a, b) = (qubits[0], qubits[1]);
        if a == b {
            return Err(Error::InvalidLayout(format!("qubit {a} repeated")));
        }
        let ordered = if a < b { gate.clone() } else { swap_conjugate(gate) };
        let (lo, hi) = (a.min(b), a.max(b));
        let swap = swap_gate();
        // walk `lo` up to `hi - 1`
        for q in lo..hi - 1 {
            self.apply_block(q, &swap)?;
        }
        self.apply_block(hi - 1, &ordered)?;
        for q in (lo..hi - 1).rev() {
            self.apply_block(q, &swap)?;
        }
        Ok(())
    }

    /// `⟨ψ|O|ψ⟩` for a Hermitian observable, by transfer-matrix contraction
    /// for each Pauli term.
    pub fn expectation(&self, op: &PauliSum) -> Result<f64> {
        if op.n_qubits() != self.sites.len() {
            return Err(Error::QubitMismatch {
                left: self.sites.len(),
                right: op.n_qubits(),
            });
        }
        let paulis: Vec<CMatrix> = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z]
            .into_iter()
            .map(pauli_matrix)
            .collect();
        let slices: Vec<[CMatrix; 2]> = self.sites.iter().map(|s| [s.slice(0), s.slice(1)]).collect();
        let mut total = C64::new(0.0, 0.0);
        for (string, coeff) in op.iter() {
            let mut env = CMatrix::identity(1, 1);
            for (q, sl) in slices.iter().enumerate() {
                let p = &paulis[match string.letter(q) {
                    Pauli::I => 0,
                    Pauli::X => 1,
                    Pauli::Y => 2,
                    Pauli::Z => 3,
                }];
                let mut next = CMatrix::zeros(sl[0].ncols(), sl[0].ncols());
                for s in 0..2 {
                    for s2 in 0..2 {
                        let w = p[(s, s2)];
                        if w == C64::new(0.0, 0.0) {
                            continue;
                        }
                        next += (sl[s].adjoint() * &env * &sl[s2]) * w;
                    }
                }
                env = next;
            }
            total += coeff * env[(0, 0)];
        }
        Ok(total.re)
    }

    /// Contract to a dense vector, qubit 0 most significant.
    pub fn to_amplitudes(&self) -> Result<Vec<C64>> {
        let n = self.sites.len();
        if n > STATE_QUBIT_CAP {
            return Err(Error::CapExceeded {
                what: "state vector",
                requested: n,
                cap: STATE_QUBIT_CAP,
            });
        }
        // rows: basis prefix, cols: right bond
        let mut acc = self.sites[0].as_left_matrix();
        for site in &self.sites[1..] {
            acc *= site.as_right_matrix();
            let rows = acc.nrows() * 2;
            acc = reshape(&acc, rows, site.right);
        }
        Ok(acc.column(0).iter().copied().collect())
    }
}

/// Row-major reshape.
fn reshape(m: &CMatrix, rows: usize, cols: usize) -> CMatrix {
    assert_eq!(m.nrows() * m.ncols(), rows * cols, "reshape size");
    let mc = m.ncols();
    DMatrix::from_fn(rows, cols, |r, c| {
        let flat = r * cols + c;
        m[(flat / mc, flat % mc)]
    })
}

fn swap_gate() -> CMatrix {
    let mut s = CMatrix::zeros(4, 4);
    for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        s[(r, c)] = C64::new(1.0, 0.0);
    }
    s
}

fn swap_conjugate(gate: &CMatrix) -> CMatrix {
    let s = swap_gate();
    &s * gate * &s
}
