//! Symmetry sectors: dimension counting, basis enumeration, Hamiltonian
//! projection onto a sector block (the reduction route), and penalty
//! construction (the constraint route).
//!
//! Charge sectors are labeled `q = N/2 - n` where `n` is the number of set
//! bits. The charge-0 sector can be refined by lattice reflection parity;
//! parity elements are either reflection-self-symmetric basis states or
//! normalized pairs `(|i> +- |reverse(i)>) / sqrt(2)` keyed by the smaller
//! index.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermion::z_charge_operator;
use crate::pauli::PauliSum;

/// Binomial coefficient with overflow detection.
pub fn binomial(n: usize, k: usize) -> Result<usize> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or_else(|| Error::Domain(format!("binomial({n}, {k}) overflows")))?;
        acc /= (i + 1) as u128;
    }
    usize::try_from(acc).map_err(|_| Error::Domain(format!("binomial({n}, {k}) overflows")))
}

/// Number of set bits a state must have to carry charge `q` on `n` qubits.
pub fn charge_occupation(n_qubits: usize, q: f64) -> Result<usize> {
    let ones = n_qubits as f64 / 2.0 - q;
    let rounded = ones.round();
    if (ones - rounded).abs() > 1e-9 || rounded < 0.0 || rounded > n_qubits as f64 {
        return Err(Error::Domain(format!("charge {q} is not a sector of {n_qubits} qubits")));
    }
    Ok(rounded as usize)
}

/// `dim H_q = C(N, N/2 - q)`.
pub fn sector_dimension(n_qubits: usize, q: f64) -> Result<usize> {
    let ones = charge_occupation(n_qubits, q)?;
    binomial(n_qubits, ones)
}

/// Dimension of the charge-0, parity-even sector:
/// `(C(N, N/2) + C(N/2, N/4)) / 2` when `N = 0 mod 4`, else `C(N, N/2) / 2`.
pub fn charge_parity_dimension(n_qubits: usize) -> Result<usize> {
    if n_qubits == 0 || n_qubits % 2 != 0 {
        return Err(Error::Domain(format!("charge-parity sector needs even N, got {n_qubits}")));
    }
    let full = binomial(n_qubits, n_qubits / 2)?;
    if n_qubits % 4 == 0 {
        let self_symmetric = binomial(n_qubits / 2, n_qubits / 4)?;
        Ok((full + self_symmetric) / 2)
    } else {
        Ok(full / 2)
    }
}

/// Qubits needed to host a `dim`-dimensional sector: `ceil(log2 dim)`,
/// with the one-dimensional sector mapped to a single qubit.
pub fn reduced_qubit_count(dim: usize) -> Result<usize> {
    if dim == 0 {
        return Err(Error::Domain("sector dimension must be at least 1".into()));
    }
    if dim == 1 {
        return Ok(1);
    }
    Ok((usize::BITS - (dim - 1).leading_zeros()) as usize)
}

/// Reverse the `n`-bit pattern (lattice reflection about the center).
pub fn reverse_bits(x: usize, n_qubits: usize) -> usize {
    x.reverse_bits() >> (usize::BITS as usize - n_qubits)
}

/// One element of a sector basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisElement {
    /// A single computational basis state.
    Single { index: usize },
    /// `(|index> + parity * |partner>) / sqrt(2)` with `partner = reverse(index)`.
    Pair { index: usize, partner: usize },
}

/// Ordered basis of a fixed charge (and optionally parity) sector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorBasis {
    n_qubits: usize,
    charge: f64,
    parity: Option<i8>,
    elements: Vec<BasisElement>,
}

impl SectorBasis {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    pub fn parity(&self) -> Option<i8> {
        self.parity
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    /// Expansion of element `i` over computational basis states.
    pub fn expansion(&self, i: usize) -> Vec<(usize, f64)> {
        let root_half = std::f64::consts::FRAC_1_SQRT_2;
        match self.elements[i] {
            BasisElement::Single { index } => vec![(index, 1.0)],
            BasisElement::Pair { index, partner } => {
                let sign = f64::from(self.parity.unwrap_or(1));
                vec![(index, root_half), (partner, sign * root_half)]
            }
        }
    }
}

const ENUMERATION_CAP: usize = 28;

/// All computational states with charge `q`, in ascending integer order.
pub fn enumerate_charge_sector(n_qubits: usize, q: f64) -> Result<SectorBasis> {
    if n_qubits == 0 || n_qubits > ENUMERATION_CAP {
        return Err(Error::CapacityExceeded { n: n_qubits, cap: ENUMERATION_CAP });
    }
    let ones = charge_occupation(n_qubits, q)?;
    let mut elements = Vec::with_capacity(sector_dimension(n_qubits, q)?);
    for x in 0..(1usize << n_qubits) {
        if (x as u64).count_ones() as usize == ones {
            elements.push(BasisElement::Single { index: x });
        }
    }
    Ok(SectorBasis { n_qubits, charge: q, parity: None, elements })
}

/// Charge-0 basis refined by reflection parity. Self-symmetric states appear
/// as singletons (even sector only); everything else pairs with its mirror.
pub fn enumerate_charge_parity_sector(n_qubits: usize, parity: i8) -> Result<SectorBasis> {
    if n_qubits == 0 || n_qubits > ENUMERATION_CAP {
        return Err(Error::CapacityExceeded { n: n_qubits, cap: ENUMERATION_CAP });
    }
    if n_qubits % 2 != 0 {
        return Err(Error::Domain(format!("charge-parity sector needs even N, got {n_qubits}")));
    }
    if parity != 1 && parity != -1 {
        return Err(Error::Domain(format!("parity must be +1 or -1, got {parity}")));
    }
    let ones = n_qubits / 2;
    let mut elements = Vec::new();
    for x in 0..(1usize << n_qubits) {
        if (x as u64).count_ones() as usize != ones {
            continue;
        }
        let r = reverse_bits(x, n_qubits);
        if r == x {
            if parity == 1 {
                elements.push(BasisElement::Single { index: x });
            }
        } else if x < r {
            elements.push(BasisElement::Pair { index: x, partner: r });
        }
    }
    Ok(SectorBasis { n_qubits, charge: 0.0, parity: Some(parity), elements })
}

/// Projected Hamiltonian block together with its embedding metadata.
#[derive(Debug, Clone)]
pub struct ReducedHamiltonian {
    basis: SectorBasis,
    matrix: DMatrix<Complex64>,
    n_star: usize,
    pad_value: f64,
}

impl ReducedHamiltonian {
    pub fn basis(&self) -> &SectorBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n_star(&self) -> usize {
        self.n_star
    }

    pub fn pad_value(&self) -> f64 {
        self.pad_value
    }

    /// Dense `2^{n_star}` matrix: the sector block in the top-left corner and
    /// `pad_value` on the remaining diagonal, so embedding artifacts sit
    /// strictly above every sector eigenvalue.
    pub fn embedded(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_star;
        let d = self.dim();
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        m.view_mut((0, 0), (d, d)).copy_from(&self.matrix);
        for i in d..dim {
            m[(i, i)] = Complex64::new(self.pad_value, 0.0);
        }
        m
    }
}

/// Free-function form of [`ReducedHamiltonian::embedded`].
pub fn embed_reduced(r: &ReducedHamiltonian) -> DMatrix<Complex64> {
    r.embedded()
}

/// Matrix elements `<b_i| H |b_j>` over a sector basis, built by applying
/// each Pauli term to basis elements; the full 2^N matrix is never formed.
///
/// `H` must commute with the charge operator (checked), and with the lattice
/// reflection when the basis carries a parity label (checked term-wise).
pub fn project_hamiltonian(h: &PauliSum, basis: &SectorBasis) -> Result<ReducedHamiltonian> {
    let n = basis.n_qubits();
    if h.width() != n {
        return Err(Error::DimensionMismatch { expected: n, got: h.width() });
    }
    if !h.commutator(&z_charge_operator(n))?.is_empty() {
        return Err(Error::SectorLeak("H does not commute with the charge operator".into()));
    }
    if basis.parity().is_some() {
        for (s, c) in h.terms() {
            let mirrored = h.coeff(&s.reversed());
            if (mirrored - c).norm() > 1e-12 * c.norm().max(1.0) {
                return Err(Error::SectorLeak(format!(
                    "H is not reflection symmetric (term {s} vs its mirror)"
                )));
            }
        }
    }

    let d = basis.dim();
    let mut row_of: HashMap<usize, usize> = HashMap::with_capacity(2 * d);
    for (row, elem) in basis.elements().iter().enumerate() {
        match *elem {
            BasisElement::Single { index } => {
                row_of.insert(index, row);
            }
            BasisElement::Pair { index, partner } => {
                row_of.insert(index, row);
                row_of.insert(partner, row);
            }
        }
    }
    let bra_weight = |row: usize, index: usize| -> f64 {
        basis
            .expansion(row)
            .into_iter()
            .find(|&(x, _)| x == index)
            .map(|(_, w)| w)
            .unwrap_or(0.0)
    };

    // accumulate H |b_col> over computational states before distributing;
    // individual terms may step outside the sector as long as the sum
    // cancels (XX and YY hopping pieces do exactly that)
    let leak_tol = 1e-10 * h.coeff_l1().max(1.0);
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    let mut image: HashMap<usize, Complex64> = HashMap::new();
    for col in 0..d {
        image.clear();
        for (x, ket_weight) in basis.expansion(col) {
            for (s, c) in h.terms() {
                let (k, y) = s.apply_to_basis(x);
                let phase = match k % 4 {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                };
                *image.entry(y).or_insert(Complex64::new(0.0, 0.0)) += c * phase * ket_weight;
            }
        }
        for (&y, &amp) in image.iter() {
            match row_of.get(&y) {
                Some(&row) => {
                    m[(row, col)] += amp * bra_weight(row, y);
                }
                None => {
                    if amp.norm() > leak_tol {
                        return Err(Error::SectorLeak(format!(
                            "H maps basis element {col} onto state {y:#b} outside the sector"
                        )));
                    }
                }
            }
        }
    }

    let scale = m.iter().map(|c| c.norm()).fold(1.0f64, f64::max);
    for i in 0..d {
        for j in 0..=i {
            if (m[(i, j)] - m[(j, i)].conj()).norm() > 1e-12 * scale {
                return Err(Error::NotHermitian(format!("projected block entry ({i}, {j})")));
            }
        }
    }

    let n_star = reduced_qubit_count(d)?;
    let max_diag = (0..d).map(|i| m[(i, i)].re).fold(f64::NEG_INFINITY, f64::max);
    let pad_value = max_diag + 10.0 * h.coeff_l1();
    Ok(ReducedHamiltonian { basis: basis.clone(), matrix: m, n_star, pad_value })
}

/// `H + alpha (target I - S)^2`, expanded and simplified.
pub fn penalty_hamiltonian(h: &PauliSum, s: &PauliSum, target: f64, alpha: f64) -> Result<PauliSum> {
    if alpha <= 0.0 {
        return Err(Error::Parameter(format!("penalty weight must be positive, got {alpha}")));
    }
    if h.width() != s.width() {
        return Err(Error::DimensionMismatch { expected: h.width(), got: s.width() });
    }
    if !s.is_hermitian() {
        return Err(Error::NotHermitian("penalty operator must be Hermitian".into()));
    }
    let deviation = PauliSum::scaled_identity(h.width(), Complex64::new(target, 0.0))
        .sub(s)?;
    let squared = deviation.mul(&deviation)?;
    Ok(h.add(&squared.scale(Complex64::new(alpha, 0.0)))?.simplified_default())
}

/// Heuristic penalty weight clearing the spectral range: `2 sum |c|`.
pub fn default_penalty_alpha(h: &PauliSum) -> f64 {
    2.0 * h.coeff_l1()
}
