//! Sector projection against charge-labeled full-space diagonalization.

mod common;

use common::{load_molecular_hamiltonian, random_charge_conserving_sum, spectra_close};

use cpvqd::fermion::z_charge_operator;
use cpvqd::lattice::{dirac_pbc_hamiltonian, schwinger_hamiltonian, LatticeParams};
use cpvqd::oracle::{eigensolve, labeled_spectrum};
use cpvqd::pauli::PauliSum;
use cpvqd::sector::{
    charge_parity_dimension, enumerate_charge_parity_sector, enumerate_charge_sector,
    project_hamiltonian, reduced_qubit_count, sector_dimension,
};

fn assert_projection_matches_labels(h: &PauliSum, tol: f64) {
    let n = h.width();
    let labeled = labeled_spectrum(h, &z_charge_operator(n)).unwrap();
    for ones in 0..=n {
        let q = n as f64 / 2.0 - ones as f64;
        let basis = enumerate_charge_sector(n, q).unwrap();
        let reduced = project_hamiltonian(h, &basis).unwrap();
        let (sector_vals, _) = eigensolve(reduced.matrix()).unwrap();
        let mut labeled_vals: Vec<f64> = labeled
            .iter()
            .filter(|(_, label)| *label == q)
            .map(|(e, _)| *e)
            .collect();
        labeled_vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(sector_vals.len(), labeled_vals.len(), "q={q}");
        assert!(
            spectra_close(&sector_vals, &labeled_vals, tol),
            "q={q}: sector {sector_vals:?} vs labeled {labeled_vals:?}"
        );
    }
}

#[test]
fn schwinger_projection_matches_all_charge_sectors() {
    for n in [4usize, 6] {
        let h = schwinger_hamiltonian(&LatticeParams::open(n, 1.0, 1.0)).unwrap();
        assert_projection_matches_labels(&h, 1e-10);
    }
}

#[test]
fn dirac_projection_matches_all_charge_sectors() {
    let h = dirac_pbc_hamiltonian(&LatticeParams::periodic(4, 0.8, 0.0)).unwrap();
    assert_projection_matches_labels(&h, 1e-10);
}

#[test]
fn molecular_projection_matches_charge_sectors() {
    for name in ["h2_0.7414.fcidump", "hehp_1.0.fcidump"] {
        let h = load_molecular_hamiltonian(name);
        assert_projection_matches_labels(&h, 1e-10);
    }
}

#[test]
fn h2_charge_zero_block_carries_the_ground_state() {
    let h = load_molecular_hamiltonian("h2_0.7414.fcidump");
    let basis = enumerate_charge_sector(4, 0.0).unwrap();
    let reduced = project_hamiltonian(&h, &basis).unwrap();
    assert_eq!(reduced.dim(), 6);
    assert_eq!(reduced.n_star(), 3);
    let (sector_vals, _) = eigensolve(reduced.matrix()).unwrap();
    let (full_vals, _) = eigensolve(&h.to_matrix().unwrap()).unwrap();
    assert!((sector_vals[0] - full_vals[0]).abs() < 1e-10);
}

#[test]
fn random_charge_conserving_sums_project_consistently() {
    for seed in 0..6u64 {
        let n = if seed % 2 == 0 { 4 } else { 6 };
        let h = random_charge_conserving_sum(n, seed);
        assert!(h.commutator(&z_charge_operator(n)).unwrap().is_empty());
        assert_projection_matches_labels(&h, 1e-10);
    }
}

#[test]
fn parity_blocks_partition_the_charge_zero_sector() {
    // reflection-symmetric, charge-conserving chain: uniform XX + YY hopping
    let n = 6usize;
    let mut h = PauliSum::new(n);
    for q in 0..n - 1 {
        for p in [cpvqd::pauli::Pauli::X, cpvqd::pauli::Pauli::Y] {
            h.add_term(
                cpvqd::pauli::PauliString::from_ops(n, &[(q, p), (q + 1, p)]),
                num_complex::Complex64::new(0.25, 0.0),
            );
        }
    }
    let h = h.simplified_default();

    let charge_basis = enumerate_charge_sector(n, 0.0).unwrap();
    let (block_vals, _) = eigensolve(project_hamiltonian(&h, &charge_basis).unwrap().matrix()).unwrap();

    let even = enumerate_charge_parity_sector(n, 1).unwrap();
    let odd = enumerate_charge_parity_sector(n, -1).unwrap();
    let (even_vals, _) = eigensolve(project_hamiltonian(&h, &even).unwrap().matrix()).unwrap();
    let (odd_vals, _) = eigensolve(project_hamiltonian(&h, &odd).unwrap().matrix()).unwrap();

    let mut merged: Vec<f64> = even_vals.iter().chain(odd_vals.iter()).copied().collect();
    merged.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert!(spectra_close(&merged, &block_vals, 1e-10));
}

#[test]
fn parity_projection_rejects_asymmetric_hamiltonians() {
    // staggered mass flips sign under reflection for even N
    let h = cpvqd::lattice::staggered_mass_term(4, 1.0);
    let basis = enumerate_charge_parity_sector(4, 1).unwrap();
    assert!(matches!(
        project_hamiltonian(&h, &basis),
        Err(cpvqd::Error::SectorLeak(_))
    ));
}

#[test]
fn qubit_savings_grow_with_system_size() {
    // N - ceil(log2 dim(q=0, P=+1)) increases along even N
    let mut previous = 0usize;
    for n in (4..=16).step_by(2) {
        let dim = charge_parity_dimension(n).unwrap();
        let saved = n - reduced_qubit_count(dim).unwrap();
        assert!(saved >= previous, "N={n}: saved {saved} < {previous}");
        previous = saved;
    }
    assert!(previous >= 2);
}

#[test]
fn dimension_formulas_against_brute_force() {
    // charge sectors for N <= 16
    for n in 1..=16usize {
        let mut counts = vec![0usize; n + 1];
        for x in 0..(1usize << n) {
            counts[x.count_ones() as usize] += 1;
        }
        for (ones, &count) in counts.iter().enumerate() {
            let q = n as f64 / 2.0 - ones as f64;
            assert_eq!(sector_dimension(n, q).unwrap(), count, "N={n} q={q}");
        }
    }
    // charge-0 parity-even for even N <= 12, including the mod-4 branch
    for n in (2..=12usize).step_by(2) {
        let mut count = 0usize;
        for x in 0..(1usize << n) {
            if x.count_ones() as usize != n / 2 {
                continue;
            }
            let r = cpvqd::sector::reverse_bits(x, n);
            if r == x || x < r {
                count += 1;
            }
        }
        assert_eq!(charge_parity_dimension(n).unwrap(), count, "N={n}");
    }
}
