//! Interaction-picture Yukawa coupling on a one-dimensional lattice.
//!
//! Each site `x` owns `2 + t` consecutive qubits ordered `[N, P, b₁ … b_t]`:
//! the antifermion, the fermion, then the binary-encoded boson. The coupling
//!
//! ```text
//! H_I(τ) = gκ/(2ω√(2ω₀)) Σ_x [(b̂†b̂ + b̂†d̂† e^{2iωτ} + d̂b̂ e^{−2iωτ} + d̂d̂†) â e^{−iω₀τ} + h.c.]
//! ```
//!
//! is built two ways: by composing the encoded operators for any `t`
//! ([`hamiltonian_general`]), and from the closed-form product of a 7-term
//! fermionic factor and an 8-term bosonic factor valid for `t = 2`
//! ([`hamiltonian_t2`]).

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::encodings::{
    binary_creation, jw_antifermion_creation, jw_fermion_creation, FermionSiteLayout, MAX_BOSON_QUBITS,
};
use crate::error::{invalid, Error, Result};
use crate::pauli::{PauliString, PauliSum, DENSE_QUBIT_CAP, MAX_QUBITS};

/// Physical constants and register shape.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct YukawaParams {
    /// Coupling constant.
    pub g: f64,
    /// Lattice spacing.
    pub kappa: f64,
    /// Fermion mass.
    pub omega: f64,
    /// Boson mass.
    pub omega0: f64,
    /// Boson qubits per site.
    pub t: usize,
    /// Number of lattice sites.
    pub n_x: usize,
}

impl Default for YukawaParams {
    fn default() -> Self {
        YukawaParams {
            g: 1.0,
            kappa: 0.5,
            omega: 6.95,
            omega0: 1.0,
            t: 2,
            n_x: 1,
        }
    }
}

impl YukawaParams {
    pub fn validate(&self) -> Result<()> {
        if !self.g.is_finite() {
            return Err(invalid("g", "must be finite"));
        }
        for (key, v) in [("kappa", self.kappa), ("omega", self.omega), ("omega0", self.omega0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(key, format!("must be positive, got {v}")));
            }
        }
        if self.t == 0 || self.t > MAX_BOSON_QUBITS {
            return Err(invalid(
                "t",
                format!("must be in 1..={MAX_BOSON_QUBITS}, got {}", self.t),
            ));
        }
        if self.n_x == 0 {
            return Err(invalid("n_x", "at least one site is required"));
        }
        let n = self.n_x * (2 + self.t);
        if n > MAX_QUBITS {
            return Err(invalid("n_x", format!("register of {n} qubits exceeds {MAX_QUBITS}")));
        }
        Ok(())
    }

    pub fn layout(&self) -> SiteLayout {
        SiteLayout {
            t: self.t,
            n_x: self.n_x,
        }
    }

    /// `gκ/(2ω√(2ω₀))`, the prefactor of the operator form.
    pub fn prefactor(&self) -> f64 {
        self.g * self.kappa / (2.0 * self.omega * (2.0 * self.omega0).sqrt())
    }
}

/// Qubit positions of every site in the global register.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteLayout {
    pub t: usize,
    pub n_x: usize,
}

impl SiteLayout {
    pub fn site_qubits(&self) -> usize {
        2 + self.t
    }

    pub fn n_qubits(&self) -> usize {
        self.n_x * self.site_qubits()
    }

    pub fn offset(&self, site: usize) -> usize {
        assert!(site < self.n_x, "site {site} out of range");
        site * self.site_qubits()
    }

    pub fn antifermion(&self, site: usize) -> usize {
        self.offset(site)
    }

    pub fn fermion(&self, site: usize) -> usize {
        self.offset(site) + 1
    }

    /// Boson qubit `j` (0-based, most significant first) of `site`.
    pub fn boson(&self, site: usize, j: usize) -> usize {
        assert!(j < self.t);
        self.offset(site) + 2 + j
    }

    /// Site owning a global qubit index.
    pub fn site_of(&self, qubit: usize) -> usize {
        qubit / self.site_qubits()
    }

    /// Fermion layout within one site's local register.
    pub fn local_fermions(&self) -> FermionSiteLayout {
        FermionSiteLayout::new(0, 1, self.site_qubits()).expect("N=0, P=1 always fits")
    }
}

/// The time-dependent coefficients of the `t = 2` closed form.
///
/// `xi[k]` holds ξ_{k+1} and `zeta[k]` holds ζ_{k+1}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub eta: f64,
    pub xi: [f64; 7],
    pub zeta: [f64; 8],
    pub time: f64,
}

pub fn coefficients(params: &YukawaParams, time: f64) -> CoefficientSet {
    let eta = params.g * params.kappa / (8.0 * params.omega * (2.0 * params.omega0).sqrt());
    let (s2, c2) = (2.0 * params.omega * time).sin_cos();
    let (s0, c0) = (params.omega0 * time).sin_cos();
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    CoefficientSet {
        eta,
        xi: [2.0, 1.0, -1.0, -c2, c2, s2, s2],
        zeta: [
            (1.0 + r3) * c0,
            (1.0 - r3) * c0,
            r2 * c0,
            -r2 * s0,
            (1.0 + r3) * s0,
            (1.0 - r3) * s0,
            r2 * s0,
            r2 * c0,
        ],
        time,
    }
}

fn sum_of(n: usize, pairs: &[(&str, f64)]) -> PauliSum {
    let terms = pairs.iter().map(|(s, c)| {
        let p: PauliString = s.parse().expect("static letters");
        (p, C64::new(*c, 0.0))
    });
    PauliSum::from_terms(n, terms).expect("static register size")
}

/// One site's `t = 2` block on local qubits `[N, P, b₁, b₂]`.
pub fn site_hamiltonian_t2(c: &CoefficientSet) -> PauliSum {
    let xi = &c.xi;
    let zeta = &c.zeta;
    // letters are [N, P]
    let fermionic = sum_of(
        2,
        &[
            ("II", xi[0]),
            ("IZ", xi[1]),
            ("ZI", xi[2]),
            ("XX", xi[3]),
            ("YY", xi[4]),
            ("YX", xi[5]),
            ("XY", xi[6]),
        ],
    );
    let bosonic = sum_of(
        2,
        &[
            ("IX", zeta[0]),
            ("ZX", zeta[1]),
            ("XX", zeta[2]),
            ("XY", zeta[3]),
            ("IY", zeta[4]),
            ("ZY", zeta[5]),
            ("YX", zeta[6]),
            ("YY", zeta[7]),
        ],
    );
    fermionic.tensor(&bosonic).scale_real(c.eta)
}

/// Closed-form coupling for two boson qubits per site.
pub fn hamiltonian_t2(params: &YukawaParams, time: f64) -> Result<PauliSum> {
    params.validate()?;
    if params.t != 2 {
        return Err(invalid("t", format!("closed form needs t = 2, got {}", params.t)));
    }
    let site = site_hamiltonian_t2(&coefficients(params, time));
    Ok(tile_sites(&params.layout(), &site))
}

/// One site's block on local qubits `[N, P, b₁ … b_t]`, built from the
/// encoded ladder operators.
pub fn site_hamiltonian(params: &YukawaParams, time: f64) -> Result<PauliSum> {
    params.validate()?;
    let layout = params.layout();
    let n = layout.site_qubits();
    let fermions = layout.local_fermions();

    let b_dag = jw_fermion_creation(&fermions);
    let d_dag = jw_antifermion_creation(&fermions);
    let b = b_dag.dagger();
    let d = d_dag.dagger();

    let phase = |angle: f64| C64::from_polar(1.0, angle);
    let wt = 2.0 * params.omega * time;
    let fermion_part = b_dag
        .multiply(&b)?
        .add(&b_dag.multiply(&d_dag)?.scale(phase(wt)))?
        .add(&d.multiply(&b)?.scale(phase(-wt)))?
        .add(&d.multiply(&d_dag)?)?;

    let annihilate = binary_creation(params.t)?.operator.dagger().embed(n, 2);
    let forward = fermion_part.multiply(&annihilate)?.scale(phase(-params.omega0 * time));

    Ok(forward.add(&forward.dagger())?.scale_real(params.prefactor()))
}

/// Coupling for any boson register width, composed from the encoders.
pub fn hamiltonian_general(params: &YukawaParams, time: f64) -> Result<PauliSum> {
    let site = site_hamiltonian(params, time)?;
    let layout = params.layout();
    if layout.n_qubits() > DENSE_QUBIT_CAP {
        log::warn!(
            "{}-qubit Hamiltonian is beyond the dense verification cap of {DENSE_QUBIT_CAP}",
            layout.n_qubits()
        );
    }
    Ok(tile_sites(&layout, &site))
}

/// Repeat a site-local block on every site.
pub fn tile_sites(layout: &SiteLayout, site: &PauliSum) -> PauliSum {
    let n = layout.n_qubits();
    (0..layout.n_x).fold(PauliSum::zero(n), |acc, x| {
        acc.add(&site.embed(n, layout.offset(x))).expect("same register")
    })
}

/// Reject a Hamiltonian that is not Hermitian within `tol`.
pub fn check_hermitian(h: &PauliSum, tol: f64) -> Result<()> {
    let residue = h.hermiticity_residue();
    if residue > tol {
        return Err(Error::NotHermitian(residue));
    }
    Ok(())
}
