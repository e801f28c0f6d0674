//! Staggered-fermion qubit Hamiltonians in (1+1) dimensions: the massive
//! Dirac model with periodic boundaries and the Schwinger model, plus the
//! closed-form large- and small-mass expressions used for validation.
//!
//! Sites are numbered 1..=N as usual for staggered fermions (the staggering
//! sign is `(-1)^n` with 1-based `n`); site `n` lives on qubit `n - 1`.
//! Note the hopping prefactor differs between the two models, `1/(4a)` for
//! the Dirac chain and `1/(8a)` for the Schwinger model; both forms are
//! kept verbatim rather than reconciled.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::sim::Statevector;

pub const EULER_GAMMA: f64 = 0.5772156649;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

/// Lattice inputs: `N` sites (even), fermion mass `m` and coupling `g` in
/// units of `1/a`, and the spacing `a` itself (`ag = 1` throughout the
/// benchmark runs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams {
    pub n_sites: usize,
    pub mass: f64,
    pub coupling: f64,
    pub spacing: f64,
    pub boundary: Boundary,
}

impl LatticeParams {
    pub fn open(n_sites: usize, mass: f64, coupling: f64) -> LatticeParams {
        LatticeParams { n_sites, mass, coupling, spacing: 1.0, boundary: Boundary::Open }
    }

    pub fn periodic(n_sites: usize, mass: f64, coupling: f64) -> LatticeParams {
        LatticeParams { n_sites, mass, coupling, spacing: 1.0, boundary: Boundary::Periodic }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites == 0 || self.n_sites % 2 != 0 {
            return Err(Error::Model(format!("N must be even and positive, got {}", self.n_sites)));
        }
        if self.spacing <= 0.0 {
            return Err(Error::Model("lattice spacing must be positive".into()));
        }
        if self.coupling < 0.0 || self.mass < 0.0 {
            return Err(Error::Model("mass and coupling must be non-negative".into()));
        }
        Ok(())
    }
}

fn stagger(site: usize) -> f64 {
    if site % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Staggered mass term `(m/2) sum_n (-1)^n Z_n`; the dominant part of both
/// models at large mass. Ground state is the Neel configuration `|0101...>`.
pub fn staggered_mass_term(n_sites: usize, mass: f64) -> PauliSum {
    let mut h = PauliSum::new(n_sites);
    for site in 1..=n_sites {
        h.add_term(
            PauliString::from_ops(n_sites, &[(site - 1, Pauli::Z)]),
            Complex64::new(mass / 2.0 * stagger(site), 0.0),
        );
    }
    h
}

/// Basis index of the Neel state `|0101...01>`.
pub fn neel_index(n_sites: usize) -> usize {
    let mut idx = 0usize;
    for q in 0..n_sites {
        if q % 2 == 1 {
            idx |= 1 << (n_sites - 1 - q);
        }
    }
    idx
}

fn hopping_pair(h: &mut PauliSum, n: usize, site: usize, coeff: f64) {
    let q = site - 1;
    h.add_term(
        PauliString::from_ops(n, &[(q, Pauli::X), (q + 1, Pauli::X)]),
        Complex64::new(coeff, 0.0),
    );
    h.add_term(
        PauliString::from_ops(n, &[(q, Pauli::Y), (q + 1, Pauli::Y)]),
        Complex64::new(coeff, 0.0),
    );
}

fn wrap_hopping(h: &mut PauliSum, n: usize, coeff: f64) {
    // (X_N X_1 + Y_N Y_1) with the interior Z string
    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    for p in [Pauli::X, Pauli::Y] {
        let mut ops = vec![(0, p), (n - 1, p)];
        for q in 1..n - 1 {
            ops.push((q, Pauli::Z));
        }
        h.add_term(PauliString::from_ops(n, &ops), Complex64::new(sign * coeff, 0.0));
    }
}

/// Free massive Dirac chain with the periodic boundary hopping term.
pub fn dirac_pbc_hamiltonian(p: &LatticeParams) -> Result<PauliSum> {
    p.validate()?;
    if p.boundary != Boundary::Periodic {
        return Err(Error::Model("the Dirac chain is built with periodic boundaries".into()));
    }
    let n = p.n_sites;
    let a = p.spacing;
    let mut h = PauliSum::new(n);
    for site in 1..n {
        hopping_pair(&mut h, n, site, 1.0 / (4.0 * a));
    }
    h = h.add(&staggered_mass_term(n, p.mass))?;
    wrap_hopping(&mut h, n, 1.0 / (4.0 * a));
    Ok(h.simplified_default())
}

/// Electric field operator `L_n = sum_{j<=n} (Z_j + (-1)^j) / 2` (1-based `n`).
pub fn electric_field_operator(n_sites: usize, site: usize) -> PauliSum {
    assert!(site >= 1 && site <= n_sites);
    let mut l = PauliSum::new(n_sites);
    let mut shift = 0.0;
    for j in 1..=site {
        l.add_term(
            PauliString::from_ops(n_sites, &[(j - 1, Pauli::Z)]),
            Complex64::new(0.5, 0.0),
        );
        shift += stagger(j) / 2.0;
    }
    l.add_term(PauliString::identity(n_sites), Complex64::new(shift, 0.0));
    l
}

/// Local charge density `Q_n = (Z_n + (-1)^n) / (2a)`.
pub fn charge_density_operator(n_sites: usize, site: usize, spacing: f64) -> PauliSum {
    assert!(site >= 1 && site <= n_sites);
    let mut q = PauliSum::new(n_sites);
    q.add_term(
        PauliString::from_ops(n_sites, &[(site - 1, Pauli::Z)]),
        Complex64::new(0.5 / spacing, 0.0),
    );
    q.add_term(
        PauliString::identity(n_sites),
        Complex64::new(stagger(site) / (2.0 * spacing), 0.0),
    );
    q
}

/// Schwinger model Hamiltonian: hopping `1/(8a)`, staggered mass, and the
/// electric energy `(a g^2 / 2) sum_n L_n^2` expanded symbolically.
///
/// The electric form presumes open boundaries (L_n is a prefix sum), which
/// is the default; with periodic boundaries the wrap hopping term of the
/// Dirac chain is added at the `1/(8a)` prefactor.
pub fn schwinger_hamiltonian(p: &LatticeParams) -> Result<PauliSum> {
    p.validate()?;
    let n = p.n_sites;
    let a = p.spacing;
    let mut h = PauliSum::new(n);
    for site in 1..n {
        hopping_pair(&mut h, n, site, 1.0 / (8.0 * a));
    }
    if p.boundary == Boundary::Periodic {
        wrap_hopping(&mut h, n, 1.0 / (8.0 * a));
    }
    h = h.add(&staggered_mass_term(n, p.mass))?;

    let electric_coeff = Complex64::new(a * p.coupling * p.coupling / 2.0, 0.0);
    for site in 1..=n {
        let l = electric_field_operator(n, site);
        let l2 = l.mul(&l)?;
        h = h.add(&l2.scale(electric_coeff))?;
    }
    Ok(h.simplified_default())
}

/// Largest violation of `L_{n+1} - L_n = a Q_{n+1}` on the given state.
///
/// The constraint is an operator identity of the prefix-sum electric field,
/// so the result is zero for any state; evaluating it checks that the two
/// constructions stay consistent.
pub fn gauss_law_residual(p: &LatticeParams, state: &Statevector) -> Result<f64> {
    p.validate()?;
    if state.n_qubits() != p.n_sites {
        return Err(Error::DimensionMismatch { expected: p.n_sites, got: state.n_qubits() });
    }
    let mut worst: f64 = 0.0;
    for site in 1..p.n_sites {
        let lhs = electric_field_operator(p.n_sites, site + 1)
            .sub(&electric_field_operator(p.n_sites, site))?;
        let rhs = charge_density_operator(p.n_sites, site + 1, p.spacing)
            .scale(Complex64::new(p.spacing, 0.0));
        let residual = lhs.sub(&rhs)?;
        worst = worst.max(state.expectation_pauli(&residual)?.abs());
    }
    Ok(worst)
}

/// `P' = prod_j Z_j`; eigenvalue +1 on states with an even particle number.
pub fn z2_parity_operator(n_qubits: usize) -> PauliSum {
    let ops: Vec<(usize, Pauli)> = (0..n_qubits).map(|q| (q, Pauli::Z)).collect();
    PauliSum::term(n_qubits, &ops, 1.0)
}

/// Energy of the `n`-excitation level of the pure mass term, `-m(N - 2n)/2`.
pub fn mass_term_excited_energy(n_sites: usize, mass: f64, n_excitations: usize) -> Result<f64> {
    if n_excitations > n_sites {
        return Err(Error::Domain(format!(
            "excitation count {n_excitations} exceeds the {n_sites}-site register"
        )));
    }
    Ok(-mass * (n_sites as f64 - 2.0 * n_excitations as f64) / 2.0)
}

/// Charge-0 gap of the Schwinger model in the large-mass limit, `2m/g`.
pub fn large_mass_gap(mass: f64, coupling: f64) -> Result<f64> {
    if coupling == 0.0 {
        return Err(Error::Domain("gap ratio requires a non-zero coupling".into()));
    }
    Ok(2.0 * mass / coupling)
}

/// Eta mass near the chiral limit: `m_eta^2 = g^2/pi - m <psi-bar psi>_0 / f^2`
/// with `f = 1/sqrt(4 pi)` and the vacuum condensate
/// `<psi-bar psi>_0 = -(e^gamma / 2 pi) (g / sqrt(pi))`.
pub fn eta_mass_small_m(mass: f64, coupling: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let condensate = -(EULER_GAMMA.exp() / (2.0 * pi)) * coupling / pi.sqrt();
    let f_sq = 1.0 / (4.0 * pi);
    (coupling * coupling / pi - mass * condensate / f_sq).sqrt()
}

/// Mass-term shift recovering the continuum limit, `m_lat = m - a g^2 / 8`.
pub fn lattice_mass_shift(mass: f64, spacing: f64, coupling: f64) -> f64 {
    mass - spacing * coupling * coupling / 8.0
}
