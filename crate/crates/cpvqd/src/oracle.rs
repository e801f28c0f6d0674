//! Dense exact diagonalization, used as ground truth throughout the test
//! suites and for charge-labeling full-space eigenvectors.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{PauliSum, DENSE_CAP};

/// Eigenvalues (ascending) and matching eigenvector columns of a Hermitian
/// matrix.
pub fn eigensolve(m: &DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    let dim = m.nrows();
    if m.ncols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: m.ncols() });
    }
    if dim > (1 << DENSE_CAP) {
        return Err(Error::CapacityExceeded { n: dim, cap: 1 << DENSE_CAP });
    }
    let scale = m.iter().map(|c| c.norm()).fold(1.0f64, f64::max);
    for i in 0..dim {
        for j in 0..=i {
            if (m[(i, j)] - m[(j, i)].conj()).norm() > 1e-10 * scale {
                return Err(Error::NotHermitian(format!("entry ({i}, {j}) breaks Hermiticity")));
            }
        }
    }
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::<Complex64>::zeros(dim, dim);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    Ok((values, vectors))
}

/// Full spectrum of `H` with each eigenvalue labeled by its charge under `Q`.
///
/// Within degenerate energy blocks the eigenvectors are rotated to
/// diagonalize `Q` before labeling, since a raw eigensolver returns
/// arbitrary mixtures across sectors there. Labels are rounded to the
/// half-integer grid; a rounding residual above 1e-6 is an error.
pub fn labeled_spectrum(h: &PauliSum, q: &PauliSum) -> Result<Vec<(f64, f64)>> {
    if !h.commutator(q)?.is_empty() {
        return Err(Error::SectorLeak("H does not commute with the charge operator".into()));
    }
    let hm = h.to_matrix()?;
    let qm = q.to_matrix()?;
    let (values, vectors) = eigensolve(&hm)?;
    let dim = values.len();
    let degeneracy_tol = 1e-9 * h.coeff_l1().max(1.0);

    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(dim);
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && values[end] - values[end - 1] <= degeneracy_tol {
            end += 1;
        }
        let k = end - start;
        if k == 1 {
            let v = vectors.column(start);
            pairs.push((values[start], (v.adjoint() * &qm * v)[(0, 0)].re));
        } else {
            let block = vectors.columns(start, k).into_owned();
            let small = block.adjoint() * &qm * &block;
            let diag_spread = (0..k)
                .map(|i| small[(i, i)].re)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
            if diag_spread.1 - diag_spread.0 < 0.25 {
                // the whole block lives in one sector (charge labels step by
                // one half); rotating would only smear the energies
                for i in 0..k {
                    pairs.push((values[start + i], small[(i, i)].re));
                }
            } else {
                // rotate the block to diagonalize q; the rotation may permute
                // or mix members, so each rotated vector's energy is the
                // |R|^2-weighted combination of the block eigenvalues
                let eig = small.symmetric_eigen();
                for i in 0..k {
                    let mut energy = 0.0;
                    for j in 0..k {
                        energy += eig.eigenvectors[(j, i)].norm_sqr() * values[start + j];
                    }
                    pairs.push((energy, eig.eigenvalues[i]));
                }
            }
        }
        start = end;
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let mut out = Vec::with_capacity(dim);
    for (value, raw) in pairs {
        let rounded = (2.0 * raw).round() / 2.0;
        if (raw - rounded).abs() > 1e-6 {
            return Err(Error::DegeneracyResolution(format!(
                "charge expectation {raw} is not near a sector value"
            )));
        }
        out.push((value, rounded));
    }
    Ok(out)
}
