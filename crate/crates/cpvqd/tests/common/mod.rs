//! Shared oracle helpers for the integration suites. Matrix construction
//! here goes through explicit Kronecker products and direct occupation-basis
//! ladder algebra, independent of the code paths under test.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::path::PathBuf;

use cpvqd::fermion::{parse_fcidump, FermionOperator, MolecularIntegrals};
use cpvqd::pauli::{Pauli, PauliString, PauliSum};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_2x2(p: Pauli) -> DMatrix<Complex64> {
    match p {
        Pauli::I => DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]),
        Pauli::X => DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
        Pauli::Y => DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
        Pauli::Z => DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
    }
}

pub fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = DMatrix::<Complex64>::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Dense matrix of a Pauli sum via Kronecker products (letter 0 leftmost).
pub fn dense_oracle(sum: &PauliSum) -> DMatrix<Complex64> {
    let dim = 1usize << sum.width();
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for (string, coeff) in sum.terms() {
        let mut m = DMatrix::<Complex64>::from_element(1, 1, c(1.0, 0.0));
        for &p in string.letters() {
            m = kron(&m, &pauli_2x2(p));
        }
        out += m.map(|v| v * coeff);
    }
    out
}

/// Dense matrix of a fermionic operator built directly in the occupation
/// basis (mode `k` occupies bit `n-1-k`), with the standard ordered-product
/// sign convention. Never touches the Jordan-Wigner code.
pub fn dense_fermion_oracle(op: &FermionOperator, n_modes: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n_modes;
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for (coeff, factors) in op.terms() {
        for x in 0..dim {
            let mut idx = x;
            let mut amp = c(1.0, 0.0);
            let mut alive = true;
            for f in factors.iter().rev() {
                let mask = 1usize << (n_modes - 1 - f.mode);
                let occupied = idx & mask != 0;
                if f.dagger == occupied {
                    alive = false;
                    break;
                }
                let mut parity = 0u32;
                for m in 0..f.mode {
                    if idx & (1 << (n_modes - 1 - m)) != 0 {
                        parity ^= 1;
                    }
                }
                if parity == 1 {
                    amp = -amp;
                }
                idx ^= mask;
            }
            if alive {
                out[(idx, x)] += coeff * amp;
            }
        }
    }
    out
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn load_integrals(name: &str) -> MolecularIntegrals {
    let file = std::fs::File::open(fixture_path(name)).expect("fixture file");
    parse_fcidump(std::io::BufReader::new(file)).expect("parse fixture")
}

pub fn load_molecular_hamiltonian(name: &str) -> PauliSum {
    let integrals = load_integrals(name);
    let fermionic = cpvqd::fermion::build_electronic_hamiltonian(&integrals);
    cpvqd::fermion::jordan_wigner(&fermionic, integrals.n_modes()).expect("jordan-wigner")
}

/// Random Hermitian, charge-conserving Pauli sum: seeded mixture of hopping
/// images `a+_i a_j + a+_j a_i` and diagonal Z strings.
pub fn random_charge_conserving_sum(n: usize, seed: u64) -> PauliSum {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut fermionic = FermionOperator::new(n);
    for _ in 0..3 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let w = rng.gen_range(-1.0..1.0);
        fermionic.add_term(
            c(w, 0.0),
            vec![
                cpvqd::fermion::LadderOp { mode: i, dagger: true },
                cpvqd::fermion::LadderOp { mode: j, dagger: false },
            ],
        );
        fermionic.add_term(
            c(w, 0.0),
            vec![
                cpvqd::fermion::LadderOp { mode: j, dagger: true },
                cpvqd::fermion::LadderOp { mode: i, dagger: false },
            ],
        );
    }
    let mut sum = cpvqd::fermion::jordan_wigner(&fermionic, n).expect("jw");
    for _ in 0..3 {
        let ops: Vec<(usize, Pauli)> = (0..n)
            .filter(|_| rng.gen_bool(0.5))
            .map(|q| (q, Pauli::Z))
            .collect();
        let mut term = PauliSum::new(n);
        term.add_term(PauliString::from_ops(n, &ops), c(rng.gen_range(-1.0..1.0), 0.0));
        sum = sum.add(&term).expect("add");
    }
    sum.simplified_default()
}

/// Pairwise comparison of two ascending spectra.
pub fn spectra_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}
