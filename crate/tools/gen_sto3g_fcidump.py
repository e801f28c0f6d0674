#!/usr/bin/env python3
"""Generate STO-3G FCIDUMP fixtures for H2 and HeH+ at a set of bond lengths.

Restricted Hartree-Fock over contracted s-type Gaussians, followed by an
AO->MO transform. Output records use the FCIDUMP convention: chemist-notation
two-electron integrals (ij|kl), 1-based orbital indices, core energy last.
"""
import math
import sys
import numpy as np

ANGSTROM_TO_BOHR = 1.8897259886

# Basis Set Exchange STO-3G 1s data (exponent, contraction coefficient)
STO3G_1S = {
    "H":  [(3.425250914, 0.1543289673), (0.6239137298, 0.5353281423), (0.1688554040, 0.4446345422)],
    "He": [(6.362421394, 0.1543289673), (1.158922999, 0.5353281423), (0.3136497915, 0.4446345422)],
}
CHARGES = {"H": 1.0, "He": 2.0}

def boys0(t):
    if t < 1e-12:
        return 1.0 - t / 3.0
    return 0.5 * math.sqrt(math.pi / t) * math.erf(math.sqrt(t))

def prim_norm(alpha):
    return (2.0 * alpha / math.pi) ** 0.75

class Shell:
    def __init__(self, element, center):
        self.prims = [(a, c * prim_norm(a)) for a, c in STO3G_1S[element]]
        self.center = np.asarray(center, dtype=float)

def overlap(sa, sb):
    s = 0.0
    ab2 = float(np.dot(sa.center - sb.center, sa.center - sb.center))
    for a, ca in sa.prims:
        for b, cb in sb.prims:
            p = a + b
            s += ca * cb * (math.pi / p) ** 1.5 * math.exp(-a * b / p * ab2)
    return s

def kinetic(sa, sb):
    t = 0.0
    ab2 = float(np.dot(sa.center - sb.center, sa.center - sb.center))
    for a, ca in sa.prims:
        for b, cb in sb.prims:
            p = a + b
            mu = a * b / p
            s = (math.pi / p) ** 1.5 * math.exp(-mu * ab2)
            t += ca * cb * mu * (3.0 - 2.0 * mu * ab2) * s
    return t

def nuclear(sa, sb, centers_charges):
    v = 0.0
    ab2 = float(np.dot(sa.center - sb.center, sa.center - sb.center))
    for a, ca in sa.prims:
        for b, cb in sb.prims:
            p = a + b
            pc = (a * sa.center + b * sb.center) / p
            pre = ca * cb * 2.0 * math.pi / p * math.exp(-a * b / p * ab2)
            for (center, zc) in centers_charges:
                t = p * float(np.dot(pc - center, pc - center))
                v -= zc * pre * boys0(t)
    return v

def eri(sa, sb, sc, sd):
    val = 0.0
    ab2 = float(np.dot(sa.center - sb.center, sa.center - sb.center))
    cd2 = float(np.dot(sc.center - sd.center, sc.center - sd.center))
    for a, ca in sa.prims:
        for b, cb in sb.prims:
            p = a + b
            pp = (a * sa.center + b * sb.center) / p
            kab = math.exp(-a * b / p * ab2)
            for c, cc in sc.prims:
                for d, cd_ in sd.prims:
                    q = c + d
                    qq = (c * sc.center + d * sd.center) / q
                    kcd = math.exp(-c * d / q * cd2)
                    t = p * q / (p + q) * float(np.dot(pp - qq, pp - qq))
                    val += (ca * cb * cc * cd_ * 2.0 * math.pi ** 2.5
                            / (p * q * math.sqrt(p + q)) * kab * kcd * boys0(t))
    return val

def rhf(shells, centers_charges, n_elec):
    n = len(shells)
    S = np.array([[overlap(shells[i], shells[j]) for j in range(n)] for i in range(n)])
    T = np.array([[kinetic(shells[i], shells[j]) for j in range(n)] for i in range(n)])
    V = np.array([[nuclear(shells[i], shells[j], centers_charges) for j in range(n)] for i in range(n)])
    h = T + V
    g = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    g[i, j, k, l] = eri(shells[i], shells[j], shells[k], shells[l])
    # symmetric orthogonalization
    sval, svec = np.linalg.eigh(S)
    X = svec @ np.diag(sval ** -0.5) @ svec.T
    D = np.zeros((n, n))
    e_old = 0.0
    nocc = n_elec // 2
    for it in range(200):
        J = np.einsum('ijkl,kl->ij', g, D)       # (ij|kl) D_lk with D symmetric
        K = np.einsum('ikjl,kl->ij', g, D)
        F = h + J - 0.5 * K
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        D_new = 2.0 * C[:, :nocc] @ C[:, :nocc].T
        e_elec = 0.5 * np.einsum('ij,ij->', D_new, h + F)
        if abs(e_elec - e_old) < 1e-12 and np.max(np.abs(D_new - D)) < 1e-10:
            D = D_new
            e_old = e_elec
            break
        D = D_new
        e_old = e_elec
    e_nuc = 0.0
    for i in range(len(centers_charges)):
        for j in range(i + 1, len(centers_charges)):
            (ci, zi), (cj, zj) = centers_charges[i], centers_charges[j]
            e_nuc += zi * zj / float(np.linalg.norm(ci - cj))
    return h, g, C, e_nuc, e_old + e_nuc

def mo_transform(h, g, C):
    h_mo = C.T @ h @ C
    g_mo = np.einsum('ip,jq,kr,ls,ijkl->pqrs', C, C, C, C, g, optimize=True)
    return h_mo, g_mo

def write_fcidump(path, h_mo, g_mo, e_nuc, n_elec, ms2=0):
    n = h_mo.shape[0]
    lines = [f"&FCI NORB={n},NELEC={n_elec},MS2={ms2},",
             " ORBSYM=" + "1," * n,
             " ISYM=1,",
             "&END"]
    def emit(v, i, j, k, l):
        if abs(v) > 1e-14:
            lines.append(f"{v:23.16E} {i:3d} {j:3d} {k:3d} {l:3d}")
    # two-electron (ij|kl), unique under 8-fold permutational symmetry
    seen = set()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    key = frozenset({(i,j,k,l),(j,i,k,l),(i,j,l,k),(j,i,l,k),
                                     (k,l,i,j),(l,k,i,j),(k,l,j,i),(l,k,j,i)})
                    if key in seen:
                        continue
                    seen.add(key)
                    emit(g_mo[i, j, k, l], i + 1, j + 1, k + 1, l + 1)
    for i in range(n):
        for j in range(i + 1):
            emit(h_mo[i, j], i + 1, j + 1, 0, 0)
    lines.append(f"{e_nuc:23.16E} {0:3d} {0:3d} {0:3d} {0:3d}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")

def fci_energy(h_mo, g_mo, e_nuc):
    """Full diagonalization in the 4-spin-orbital Fock space (independent check).

    Interleaved spin orbitals (even=alpha, odd=beta); physicist-ordered
    two-body coefficients h[i,j,k,l] = (il|jk) delta(si,sl) delta(sj,sk) with
    H = sum h1 a+ a + 1/2 sum h[ijkl] a+_i a+_j a_k a_l.
    """
    n_sp = 2 * h_mo.shape[0]
    dim = 2 ** n_sp
    H = np.zeros((dim, dim))
    def sp(i): return i // 2
    def spin(i): return i % 2
    def apply_ops(state_idx, ops):
        # ops applied right-to-left; occupation bit k = (idx >> (n_sp-1-k)) & 1
        amp = 1.0
        idx = state_idx
        for (mode, dag) in reversed(ops):
            bit = (idx >> (n_sp - 1 - mode)) & 1
            if dag:
                if bit: return None
            else:
                if not bit: return None
            parity = 0
            for m in range(mode):
                parity ^= (idx >> (n_sp - 1 - m)) & 1
            if parity: amp = -amp
            idx ^= 1 << (n_sp - 1 - mode)
        return idx, amp
    for i in range(n_sp):
        for j in range(n_sp):
            hij = h_mo[sp(i), sp(j)] if spin(i) == spin(j) else 0.0
            if abs(hij) < 1e-14: continue
            for s in range(dim):
                r = apply_ops(s, [(i, True), (j, False)])
                if r: H[r[0], s] += hij * r[1]
    for i in range(n_sp):
        for j in range(n_sp):
            for k in range(n_sp):
                for l in range(n_sp):
                    v = 0.0
                    if spin(i) == spin(l) and spin(j) == spin(k):
                        v = g_mo[sp(i), sp(l), sp(j), sp(k)]   # (il|jk)
                    if abs(v) < 1e-14: continue
                    for s in range(dim):
                        r = apply_ops(s, [(i, True), (j, True), (k, False), (l, False)])
                        if r: H[r[0], s] += 0.5 * v * r[1]
    evals = np.linalg.eigvalsh(H + np.eye(dim) * 0.0)
    return evals + e_nuc

def build(molecule, bond_angstrom):
    r = bond_angstrom * ANGSTROM_TO_BOHR
    if molecule == "h2":
        atoms = [("H", np.zeros(3)), ("H", np.array([0.0, 0.0, r]))]
        n_elec = 2
    elif molecule == "hehp":
        atoms = [("He", np.zeros(3)), ("H", np.array([0.0, 0.0, r]))]
        n_elec = 2
    else:
        raise ValueError(molecule)
    shells = [Shell(el, c) for el, c in atoms]
    cz = [(c, CHARGES[el]) for el, c in atoms]
    h, g, C, e_nuc, e_scf = rhf(shells, cz, n_elec)
    h_mo, g_mo = mo_transform(h, g, C)
    return h_mo, g_mo, e_nuc, e_scf, n_elec

def bond_label(b):
    s = f"{b:.4f}".rstrip("0")
    return s + "0" if s.endswith(".") else s

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "."
    h2_bonds = [0.3, 0.4, 0.5, 0.6, 0.7, 0.7414, 0.8, 0.9, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.25, 2.5]
    hehp_bonds = [0.5, 0.6, 0.7, 0.7743, 0.8, 0.9, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.25, 2.5]
    for mol, bonds in (("h2", h2_bonds), ("hehp", hehp_bonds)):
        for b in bonds:
            h_mo, g_mo, e_nuc, e_scf, n_elec = build(mol, b)
            name = f"{out}/{mol}_{bond_label(b)}.fcidump"
            write_fcidump(name, h_mo, g_mo, e_nuc, n_elec)
            spec = fci_energy(h_mo, g_mo, e_nuc)
            print(f"{mol} R={b:6g} A  E_SCF={e_scf:.8f}  E_FCI(ground)={spec[0]:.8f}  name={name}")
