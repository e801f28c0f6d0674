use cpvqd::fermion::z_charge_operator;
use cpvqd::lattice::{dirac_pbc_hamiltonian, schwinger_hamiltonian, LatticeParams};
use cpvqd::oracle::{eigensolve, labeled_spectrum};
use cpvqd::sector::{enumerate_charge_sector, project_hamiltonian};

fn check(tag: &str, h: &cpvqd::pauli::PauliSum) {
    let n = h.width();
    let labeled = labeled_spectrum(h, &z_charge_operator(n)).unwrap();
    let mut worst: f64 = 0.0;
    for ones in 0..=n {
        let q = n as f64 / 2.0 - ones as f64;
        let basis = enumerate_charge_sector(n, q).unwrap();
        let reduced = project_hamiltonian(h, &basis).unwrap();
        let (sector, _) = eigensolve(reduced.matrix()).unwrap();
        let mut lab: Vec<f64> = labeled.iter().filter(|(_, l)| *l == q).map(|(e, _)| *e).collect();
        lab.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(sector.len(), lab.len(), "{tag} q={q}");
        for (s, l) in sector.iter().zip(&lab) {
            worst = worst.max((s - l).abs());
        }
    }
    println!("{tag}: worst {worst:.3e}");
}

fn main() {
    for n in [4usize, 6, 8, 10] {
        check(&format!("schwinger N={n}"), &schwinger_hamiltonian(&LatticeParams::open(n, 1.0, 1.0)).unwrap());
        check(&format!("dirac N={n}"), &dirac_pbc_hamiltonian(&LatticeParams::periodic(n, 0.8, 0.0)).unwrap());
    }
}
