//! Dense statevector simulation of the layered hardware-efficient ansatz,
//! expectation values, and state overlaps.
//!
//! Gates mutate amplitudes in place at O(2^N) per gate; nothing is compiled.
//! Basis convention: qubit 0 is the most significant bit of the amplitude
//! index (the label `"0011"` is index 3).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};

/// Hard cap on the simulated register size (16 GiB of amplitudes above this).
pub const MAX_QUBITS: usize = 24;

fn ipow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Unit-norm complex amplitude vector over `2^N` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    pub fn zero_state(n_qubits: usize) -> Result<Statevector> {
        Statevector::basis_state(n_qubits, 0)
    }

    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Statevector> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::CapacityExceeded { n: n_qubits, cap: MAX_QUBITS });
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Domain(format!("basis index {index} out of range for {n_qubits} qubits")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Statevector { n_qubits, amps })
    }

    /// Wrap raw amplitudes; must already be normalized to 1e-8.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Statevector> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::CapacityExceeded { n: n_qubits, cap: MAX_QUBITS });
        }
        if amps.len() != 1usize << n_qubits {
            return Err(Error::DimensionMismatch { expected: 1usize << n_qubits, got: amps.len() });
        }
        let sv = Statevector { n_qubits, amps };
        let norm = sv.norm_sqr();
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::Domain(format!("amplitudes not normalized: |psi|^2 = {norm}")));
        }
        Ok(sv)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn mask(&self, qubit: usize) -> usize {
        assert!(qubit < self.n_qubits, "qubit {qubit} out of range");
        1usize << (self.n_qubits - 1 - qubit)
    }

    /// `R_y(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]`.
    pub fn apply_ry(&mut self, qubit: usize, theta: f64) {
        let mask = self.mask(qubit);
        let (s, c) = (theta / 2.0).sin_cos();
        for x in 0..self.amps.len() {
            if x & mask == 0 {
                let x1 = x | mask;
                let a0 = self.amps[x];
                let a1 = self.amps[x1];
                self.amps[x] = a0 * c - a1 * s;
                self.amps[x1] = a0 * s + a1 * c;
            }
        }
    }

    pub fn apply_cx(&mut self, control: usize, target: usize) {
        assert_ne!(control, target, "control and target must differ");
        let cmask = self.mask(control);
        let tmask = self.mask(target);
        for x in 0..self.amps.len() {
            if x & cmask != 0 && x & tmask == 0 {
                self.amps.swap(x, x | tmask);
            }
        }
    }

    pub fn apply_pauli_string(&mut self, s: &PauliString) -> Result<()> {
        if s.width() != self.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.n_qubits, got: s.width() });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (x, &a) in self.amps.iter().enumerate() {
            let (k, y) = s.apply_to_basis(x);
            out[y] = a * ipow(k);
        }
        self.amps = out;
        Ok(())
    }

    /// `<psi| H |psi>`, term by term; no 2^N x 2^N matrix is formed.
    pub fn expectation_pauli(&self, h: &PauliSum) -> Result<f64> {
        if h.width() != self.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.n_qubits, got: h.width() });
        }
        if !h.is_hermitian() {
            return Err(Error::NotHermitian("expectation requires real coefficients".into()));
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (s, c) in h.terms() {
            let mut term = Complex64::new(0.0, 0.0);
            for (x, &a) in self.amps.iter().enumerate() {
                let (k, y) = s.apply_to_basis(x);
                term += self.amps[y].conj() * ipow(k) * a;
            }
            total += c * term;
        }
        Ok(total.re)
    }

    /// Quadratic form `<psi| M |psi>` for a dense Hermitian matrix.
    pub fn expectation_matrix(&self, m: &DMatrix<Complex64>) -> Result<f64> {
        let dim = self.amps.len();
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: m.nrows() });
        }
        let mut total = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..dim {
                row += m[(i, j)] * self.amps[j];
            }
            total += self.amps[i].conj() * row;
        }
        Ok(total.re)
    }

    /// `|<a|b>|^2`.
    pub fn overlap_sq(&self, other: &Statevector) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.n_qubits, got: other.n_qubits });
        }
        let inner: Complex64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(inner.norm_sqr())
    }
}

/// Entangling layer family for the ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Entangler {
    /// CX on every ordered pair `i < j`, applied in lexicographic order.
    #[default]
    FullCx,
}

/// Layered hardware-efficient ansatz: `L` repetitions of an `R_y` layer
/// followed by the all-to-all entangling layer, then one final `R_y` layer.
/// Parameter count is `(L + 1) * N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnsatzSpec {
    pub n_qubits: usize,
    pub layers: usize,
    pub entangler: Entangler,
}

impl AnsatzSpec {
    pub fn new(n_qubits: usize, layers: usize) -> AnsatzSpec {
        AnsatzSpec { n_qubits, layers, entangler: Entangler::FullCx }
    }

    pub fn param_count(&self) -> usize {
        (self.layers + 1) * self.n_qubits
    }

    /// Build the ansatz state from `|0...0>`. Parameter `layer * N + q`
    /// is the `R_y` angle on qubit `q` in that layer.
    pub fn prepare(&self, params: &[f64]) -> Result<Statevector> {
        if params.len() != self.param_count() {
            return Err(Error::DimensionMismatch { expected: self.param_count(), got: params.len() });
        }
        let n = self.n_qubits;
        let mut state = Statevector::zero_state(n)?;
        for layer in 0..=self.layers {
            for q in 0..n {
                state.apply_ry(q, params[layer * n + q]);
            }
            if layer < self.layers {
                match self.entangler {
                    Entangler::FullCx => {
                        for i in 0..n {
                            for j in (i + 1)..n {
                                state.apply_cx(i, j);
                            }
                        }
                    }
                }
            }
        }
        Ok(state)
    }
}

/// Convenience free function mirroring [`AnsatzSpec::prepare`].
pub fn prepare_ansatz(spec: &AnsatzSpec, params: &[f64]) -> Result<Statevector> {
    spec.prepare(params)
}
