//! Second-quantized electronic Hamiltonians from integral data, and the
//! Jordan-Wigner map from ladder operators to Pauli sums.
//!
//! Integral files use the FCIDUMP text format. Spatial orbitals are expanded
//! to spin orbitals by interleaving (even index = spin up, odd = spin down),
//! and the chemist-notation two-electron records `(ij|kl)` are reordered into
//! the physicist convention used by `build_electronic_hamiltonian`:
//! `H = sum h_ij a+_i a_j + 1/2 sum h_ijkl a+_i a+_j a_k a_l + E_core`.
//!
//! Occupation convention: qubit value 1 marks an occupied mode, so `Z` has
//! eigenvalue -1 on occupied sites and the charge label of a basis state
//! with `n` ones is `q = N/2 - n`.

use std::io::BufRead;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};

/// One- and two-electron integrals over spin orbitals, in Hartree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MolecularIntegrals {
    n_modes: usize,
    core_energy: f64,
    one_body: Vec<f64>,
    two_body: Vec<f64>,
}

impl MolecularIntegrals {
    pub fn new(n_modes: usize, core_energy: f64, one_body: Vec<f64>, two_body: Vec<f64>) -> Result<Self> {
        if one_body.len() != n_modes * n_modes {
            return Err(Error::Format(format!(
                "one_body has {} entries, expected {}",
                one_body.len(),
                n_modes * n_modes
            )));
        }
        if two_body.len() != n_modes.pow(4) {
            return Err(Error::Format(format!(
                "two_body has {} entries, expected {}",
                two_body.len(),
                n_modes.pow(4)
            )));
        }
        let m = MolecularIntegrals { n_modes, core_energy, one_body, two_body };
        for i in 0..n_modes {
            for j in 0..n_modes {
                if (m.one(i, j) - m.one(j, i)).abs() > 1e-12 {
                    return Err(Error::NotHermitian(format!("one-body integral h[{i},{j}] != h[{j},{i}]")));
                }
            }
        }
        Ok(m)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn core_energy(&self) -> f64 {
        self.core_energy
    }

    pub fn one(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n_modes && j < self.n_modes);
        self.one_body[i * self.n_modes + j]
    }

    /// Physicist-ordered two-body coefficient `h_ijkl`.
    pub fn two(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let n = self.n_modes;
        assert!(i < n && j < n && k < n && l < n);
        self.two_body[((i * n + j) * n + k) * n + l]
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: MolecularIntegrals = serde_json::from_str(text)?;
        MolecularIntegrals::new(m.n_modes, m.core_energy, m.one_body, m.two_body)
    }
}

/// Ladder-operator factor: mode index plus creation flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderOp {
    pub mode: usize,
    pub dagger: bool,
}

/// Linear combination of ordered products of ladder operators.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionOperator {
    n_modes: usize,
    terms: Vec<(Complex64, Vec<LadderOp>)>,
}

impl FermionOperator {
    pub fn new(n_modes: usize) -> Self {
        FermionOperator { n_modes, terms: Vec::new() }
    }

    pub fn add_term(&mut self, coeff: Complex64, factors: Vec<LadderOp>) {
        for f in &factors {
            assert!(f.mode < self.n_modes, "mode {} out of range", f.mode);
        }
        self.terms.push((coeff, factors));
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn terms(&self) -> &[(Complex64, Vec<LadderOp>)] {
        &self.terms
    }
}

/// `H = sum h_ij a+_i a_j + 1/2 sum h_ijkl a+_i a+_j a_k a_l + E_core`.
pub fn build_electronic_hamiltonian(m: &MolecularIntegrals) -> FermionOperator {
    let n = m.n_modes();
    let mut op = FermionOperator::new(n.max(1));
    if m.core_energy() != 0.0 {
        op.add_term(Complex64::new(m.core_energy(), 0.0), vec![]);
    }
    for i in 0..n {
        for j in 0..n {
            let h = m.one(i, j);
            if h != 0.0 {
                op.add_term(
                    Complex64::new(h, 0.0),
                    vec![LadderOp { mode: i, dagger: true }, LadderOp { mode: j, dagger: false }],
                );
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let h = m.two(i, j, k, l);
                    if h != 0.0 {
                        op.add_term(
                            Complex64::new(0.5 * h, 0.0),
                            vec![
                                LadderOp { mode: i, dagger: true },
                                LadderOp { mode: j, dagger: true },
                                LadderOp { mode: k, dagger: false },
                                LadderOp { mode: l, dagger: false },
                            ],
                        );
                    }
                }
            }
        }
    }
    op
}

/// Jordan-Wigner image of a single ladder operator:
/// `a_j = (prod_{k<j} Z_k) (X_j + i Y_j) / 2`, and the conjugate for `a+_j`.
fn jw_ladder(n_qubits: usize, mode: usize, dagger: bool) -> PauliSum {
    let mut sum = PauliSum::new(n_qubits);
    let mut ops_x: Vec<(usize, Pauli)> = (0..mode).map(|k| (k, Pauli::Z)).collect();
    let mut ops_y = ops_x.clone();
    ops_x.push((mode, Pauli::X));
    ops_y.push((mode, Pauli::Y));
    sum.add_term(PauliString::from_ops(n_qubits, &ops_x), Complex64::new(0.5, 0.0));
    let y_coeff = if dagger { Complex64::new(0.0, -0.5) } else { Complex64::new(0.0, 0.5) };
    sum.add_term(PauliString::from_ops(n_qubits, &ops_y), y_coeff);
    sum
}

/// Jordan-Wigner transform of a fermionic operator.
pub fn jordan_wigner(f: &FermionOperator, n_qubits: usize) -> Result<PauliSum> {
    if f.n_modes() > n_qubits {
        return Err(Error::DimensionMismatch { expected: n_qubits, got: f.n_modes() });
    }
    let mut result = PauliSum::new(n_qubits);
    for (coeff, factors) in f.terms() {
        let mut acc = PauliSum::scaled_identity(n_qubits, *coeff);
        for op in factors {
            if op.mode >= n_qubits {
                return Err(Error::DimensionMismatch { expected: n_qubits, got: op.mode + 1 });
            }
            acc = acc.mul(&jw_ladder(n_qubits, op.mode, op.dagger))?;
        }
        result = result.add(&acc)?;
    }
    Ok(result.simplified_default())
}

/// `sum_i (I - Z_i) / 2`, the Jordan-Wigner image of the particle-number operator.
pub fn number_operator(n_qubits: usize) -> PauliSum {
    let mut sum = PauliSum::new(n_qubits);
    sum.add_term(
        PauliString::identity(n_qubits),
        Complex64::new(n_qubits as f64 / 2.0, 0.0),
    );
    for k in 0..n_qubits {
        sum.add_term(
            PauliString::from_ops(n_qubits, &[(k, Pauli::Z)]),
            Complex64::new(-0.5, 0.0),
        );
    }
    sum
}

/// `Q = (1/2) sum_i Z_i`; eigenvalue `N/2 - n` on a basis state with `n` ones.
pub fn z_charge_operator(n_qubits: usize) -> PauliSum {
    let mut sum = PauliSum::new(n_qubits);
    for k in 0..n_qubits {
        sum.add_term(
            PauliString::from_ops(n_qubits, &[(k, Pauli::Z)]),
            Complex64::new(0.5, 0.0),
        );
    }
    sum
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Record {
    Core(f64),
    OneBody(f64, usize, usize),
    TwoBody(f64, usize, usize, usize, usize),
    OrbitalEnergy,
}

fn parse_record(line: &str, lineno: usize) -> Result<Record> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 5 {
        return Err(Error::Parse { line: lineno, msg: format!("expected `value i j k l`, got {} fields", fields.len()) });
    }
    let value: f64 = fields[0]
        .parse()
        .map_err(|_| Error::Parse { line: lineno, msg: format!("bad value '{}'", fields[0]) })?;
    let idx: Vec<usize> = fields[1..]
        .iter()
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse { line: lineno, msg: format!("bad index '{t}'") }))
        .collect::<Result<_>>()?;
    let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
    match (i, j, k, l) {
        (0, 0, 0, 0) => Ok(Record::Core(value)),
        (_, 0, 0, 0) => Ok(Record::OrbitalEnergy),
        (i, j, 0, 0) if i > 0 && j > 0 => Ok(Record::OneBody(value, i - 1, j - 1)),
        (i, j, k, l) if i > 0 && j > 0 && k > 0 && l > 0 => Ok(Record::TwoBody(value, i - 1, j - 1, k - 1, l - 1)),
        _ => Err(Error::Parse { line: lineno, msg: format!("unsupported index pattern {i} {j} {k} {l}") }),
    }
}

fn header_int(header: &str, key: &str) -> Option<usize> {
    let upper = header.to_uppercase();
    let pos = upper.find(&format!("{key}="))?;
    let tail = &header[pos + key.len() + 1..];
    let digits: String = tail.chars().take_while(|c| c.is_ascii_digit() || *c == '-').collect();
    digits.parse().ok()
}

/// Parse an FCIDUMP stream into spin-orbital integrals.
///
/// Header: `&FCI NORB=n,NELEC=m,MS2=s` ... `&END` (or a line starting with
/// `/`). Records: `value i j k l` with 1-based spatial orbital indices;
/// `i=j=k=l=0` carries the core energy. Two-electron records are chemist
/// `(ij|kl)` and eight-fold symmetry is applied.
pub fn parse_fcidump<R: BufRead>(reader: R) -> Result<MolecularIntegrals> {
    let mut in_header = true;
    let mut saw_fci = false;
    let mut norb: Option<usize> = None;
    let mut core = 0.0;
    let mut h_sp: Vec<f64> = Vec::new();
    let mut eri_sp: Vec<f64> = Vec::new();
    let mut nsp = 0usize;

    for (lineno0, line) in reader.lines().enumerate() {
        let lineno = lineno0 + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if in_header {
            let upper = trimmed.to_uppercase();
            if upper.contains("&FCI") {
                saw_fci = true;
            }
            if norb.is_none() {
                if let Some(n) = header_int(trimmed, "NORB") {
                    norb = Some(n);
                }
            }
            if upper.contains("&END") || trimmed.starts_with('/') {
                if !saw_fci {
                    return Err(Error::Format("missing &FCI header".into()));
                }
                let n = norb.ok_or_else(|| Error::Format("header does not declare NORB".into()))?;
                if n == 0 {
                    return Err(Error::Format("NORB must be positive".into()));
                }
                nsp = n;
                h_sp = vec![0.0; n * n];
                eri_sp = vec![0.0; n * n * n * n];
                in_header = false;
            }
            continue;
        }
        match parse_record(trimmed, lineno)? {
            Record::Core(v) => core = v,
            Record::OrbitalEnergy => {}
            Record::OneBody(v, i, j) => {
                if i >= nsp || j >= nsp {
                    return Err(Error::Parse { line: lineno, msg: format!("orbital index out of range (NORB = {nsp})") });
                }
                h_sp[i * nsp + j] = v;
                h_sp[j * nsp + i] = v;
            }
            Record::TwoBody(v, i, j, k, l) => {
                if [i, j, k, l].iter().any(|&x| x >= nsp) {
                    return Err(Error::Parse { line: lineno, msg: format!("orbital index out of range (NORB = {nsp})") });
                }
                let mut set = |a: usize, b: usize, c: usize, d: usize| {
                    eri_sp[((a * nsp + b) * nsp + c) * nsp + d] = v;
                };
                set(i, j, k, l);
                set(j, i, k, l);
                set(i, j, l, k);
                set(j, i, l, k);
                set(k, l, i, j);
                set(l, k, i, j);
                set(k, l, j, i);
                set(l, k, j, i);
            }
        }
    }
    if in_header {
        return Err(Error::Format("missing &END terminator".into()));
    }

    // spin-orbital expansion, interleaved (alpha, beta, alpha, beta, ...)
    let n_modes = 2 * nsp;
    let spatial = |so: usize| so / 2;
    let spin = |so: usize| so % 2;
    let mut one = vec![0.0; n_modes * n_modes];
    for i in 0..n_modes {
        for j in 0..n_modes {
            if spin(i) == spin(j) {
                one[i * n_modes + j] = h_sp[spatial(i) * nsp + spatial(j)];
            }
        }
    }
    // h_ijkl = (il|jk) so that H = ... + 1/2 sum h_ijkl a+_i a+_j a_k a_l
    let mut two = vec![0.0; n_modes.pow(4)];
    for i in 0..n_modes {
        for j in 0..n_modes {
            for k in 0..n_modes {
                for l in 0..n_modes {
                    if spin(i) == spin(l) && spin(j) == spin(k) {
                        let (p, q, r, s) = (spatial(i), spatial(l), spatial(j), spatial(k));
                        two[((i * n_modes + j) * n_modes + k) * n_modes + l] =
                            eri_sp[((p * nsp + q) * nsp + r) * nsp + s];
                    }
                }
            }
        }
    }
    MolecularIntegrals::new(n_modes, core, one, two)
}
