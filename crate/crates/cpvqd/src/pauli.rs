//! Exact algebra over weighted sums of Pauli strings.
//!
//! `PauliSum` is the operator carrier used everywhere in this crate:
//! Hamiltonians, charge operators, penalty terms. Coefficient arithmetic is
//! plain `Complex64`; phases from string products are tracked exactly as
//! powers of `i`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest qubit count for which dense 2^N x 2^N matrices are materialized.
pub const DENSE_CAP: usize = 14;

/// Terms with |coefficient| below this are dropped by `simplified`.
pub const PRUNE_TOL: f64 = 1e-12;

/// Single-qubit Pauli symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Result<Pauli> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            _ => Err(Error::Format(format!("unknown Pauli letter '{c}'"))),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// Single-qubit product `self * other` as (power of i, resulting letter).
    fn mul(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) => (0, p),
            (p, I) => (0, p),
            (X, X) | (Y, Y) | (Z, Z) => (0, I),
            (X, Y) => (1, Z),
            (Y, X) => (3, Z),
            (Y, Z) => (1, X),
            (Z, Y) => (3, X),
            (Z, X) => (1, Y),
            (X, Z) => (3, Y),
        }
    }
}

fn ipow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Tensor product of single-qubit Paulis on a fixed number of qubits.
///
/// Character/letter `k` acts on qubit `k`. Basis indices follow the
/// convention that qubit 0 is the most significant bit, so the label
/// `"0011"` is basis index 3.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn identity(width: usize) -> PauliString {
        PauliString { letters: vec![Pauli::I; width] }
    }

    pub fn from_letters(letters: Vec<Pauli>) -> PauliString {
        PauliString { letters }
    }

    /// String with the given letters placed on selected qubits, identity elsewhere.
    pub fn from_ops(width: usize, ops: &[(usize, Pauli)]) -> PauliString {
        let mut letters = vec![Pauli::I; width];
        for &(q, p) in ops {
            assert!(q < width, "qubit {q} out of range for width {width}");
            letters[q] = p;
        }
        PauliString { letters }
    }

    pub fn width(&self) -> usize {
        self.letters.len()
    }

    pub fn letter(&self, qubit: usize) -> Pauli {
        self.letters[qubit]
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    /// The string read back-to-front (lattice reflection about the center).
    pub fn reversed(&self) -> PauliString {
        let mut letters = self.letters.clone();
        letters.reverse();
        PauliString { letters }
    }

    /// Product of two strings: `a * b == phase * product`, phase in {1, i, -1, -i}.
    pub fn product(a: &PauliString, b: &PauliString) -> Result<(Complex64, PauliString)> {
        if a.width() != b.width() {
            return Err(Error::DimensionMismatch { expected: a.width(), got: b.width() });
        }
        let mut phase = 0u8;
        let mut letters = Vec::with_capacity(a.width());
        for (&pa, &pb) in a.letters.iter().zip(&b.letters) {
            let (k, p) = pa.mul(pb);
            phase = (phase + k) % 4;
            letters.push(p);
        }
        Ok((ipow(phase), PauliString { letters }))
    }

    /// Apply to a computational basis state: `P |x> = i^k |y>`.
    ///
    /// Bit of qubit `q` in index `x` is `(x >> (width - 1 - q)) & 1`.
    pub fn apply_to_basis(&self, x: usize) -> (u8, usize) {
        let n = self.width();
        let mut phase = 0u8;
        let mut y = x;
        for (q, &p) in self.letters.iter().enumerate() {
            let mask = 1usize << (n - 1 - q);
            let bit = x & mask != 0;
            match p {
                Pauli::I => {}
                Pauli::X => y ^= mask,
                Pauli::Z => {
                    if bit {
                        phase = (phase + 2) % 4;
                    }
                }
                Pauli::Y => {
                    y ^= mask;
                    phase = (phase + if bit { 3 } else { 1 }) % 4;
                }
            }
        }
        (phase, y)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &p in &self.letters {
            write!(f, "{}", p.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<PauliString> {
        let letters: Result<Vec<Pauli>> = s.chars().map(Pauli::from_char).collect();
        Ok(PauliString { letters: letters? })
    }
}

/// Weighted sum of Pauli strings on a fixed number of qubits.
///
/// Terms are kept in a canonically ordered map, so equal operators have
/// identical term iteration order and serialization output. Values are
/// immutable after construction; all arithmetic returns new sums.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    width: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn new(width: usize) -> PauliSum {
        PauliSum { width, terms: BTreeMap::new() }
    }

    /// `c * I`.
    pub fn scaled_identity(width: usize, c: Complex64) -> PauliSum {
        let mut sum = PauliSum::new(width);
        sum.add_term(PauliString::identity(width), c);
        sum
    }

    pub fn identity(width: usize) -> PauliSum {
        PauliSum::scaled_identity(width, Complex64::new(1.0, 0.0))
    }

    /// Single term built from sparse (qubit, letter) pairs.
    pub fn term(width: usize, ops: &[(usize, Pauli)], coeff: f64) -> PauliSum {
        let mut sum = PauliSum::new(width);
        sum.add_term(PauliString::from_ops(width, ops), Complex64::new(coeff, 0.0));
        sum
    }

    /// Accumulate `c * s` into the sum. Exact duplicates merge.
    pub fn add_term(&mut self, s: PauliString, c: Complex64) {
        assert_eq!(s.width(), self.width, "term width must match sum width");
        let entry = self.terms.entry(s).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &PauliString) -> Complex64 {
        self.terms.get(s).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Sum of |coefficient| over all terms; an upper bound on the operator norm.
    pub fn coeff_l1(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    fn check_width(&self, other: &PauliSum) -> Result<()> {
        if self.width != other.width {
            return Err(Error::DimensionMismatch { expected: self.width, got: other.width });
        }
        Ok(())
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_width(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> PauliSum {
        let mut out = PauliSum::new(self.width);
        for (s, v) in &self.terms {
            out.add_term(s.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_width(other)?;
        let mut out = PauliSum::new(self.width);
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                let (phase, s) = PauliString::product(sa, sb)?;
                out.add_term(s, ca * cb * phase);
            }
        }
        Ok(out)
    }

    /// `ab - ba`, simplified with the default prune tolerance.
    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        Ok(ab.sub(&ba)?.simplified(PRUNE_TOL))
    }

    /// Drop terms with |coefficient| < `tol`.
    pub fn simplified(&self, tol: f64) -> PauliSum {
        let mut out = PauliSum::new(self.width);
        for (s, c) in &self.terms {
            if c.norm() >= tol {
                out.add_term(s.clone(), *c);
            }
        }
        out
    }

    pub fn simplified_default(&self) -> PauliSum {
        self.simplified(PRUNE_TOL)
    }

    /// Pauli strings are individually Hermitian, so the sum is Hermitian
    /// exactly when every coefficient is real.
    pub fn is_hermitian(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }

    /// Dense matrix realization, `sum_s c_s (tensor product of 2x2 Paulis)`.
    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        if self.width > DENSE_CAP {
            return Err(Error::CapacityExceeded { n: self.width, cap: DENSE_CAP });
        }
        let dim = 1usize << self.width;
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for (s, c) in &self.terms {
            for x in 0..dim {
                let (k, y) = s.apply_to_basis(x);
                m[(y, x)] += c * ipow(k);
            }
        }
        Ok(m)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    pauli: String,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct PauliSumJson {
    n_qubits: usize,
    terms: Vec<TermJson>,
}

impl Serialize for PauliSum {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mirror = PauliSumJson {
            n_qubits: self.width,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| TermJson { pauli: s.to_string(), re: c.re, im: c.im })
                .collect(),
        };
        mirror.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PauliSum {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let mirror = PauliSumJson::deserialize(de)?;
        let mut sum = PauliSum::new(mirror.n_qubits);
        for t in mirror.terms {
            let s: PauliString = t.pauli.parse().map_err(serde::de::Error::custom)?;
            if s.width() != mirror.n_qubits {
                return Err(serde::de::Error::custom(format!(
                    "term '{}' does not match n_qubits = {}",
                    t.pauli, mirror.n_qubits
                )));
            }
            sum.add_term(s, Complex64::new(t.re, t.im));
        }
        Ok(sum)
    }
}
