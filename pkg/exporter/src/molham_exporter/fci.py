"""Determinant full CI in a fixed (n_up, n_down) sector (Slater-Condon).

Independent of the qubit mapping: works directly with occupation bitmasks
over spatial orbitals, one mask per spin.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .scf import ActiveSpace


def _spin_orbital_integrals(space: ActiveSpace):
    """Spin-orbital h and antisymmetrized <PQ||RS> (physicist notation).

    Spin orbitals are 2p (up) and 2p+1 (down) here; only used internally.
    """
    n = space.n_orbitals
    n_so = 2 * n
    h = np.zeros((n_so, n_so))
    for p in range(n):
        for q in range(n):
            h[2 * p, 2 * q] = space.h1[p, q]
            h[2 * p + 1, 2 * q + 1] = space.h1[p, q]
    # <PQ|RS> = (pr|qs) delta(sP,sR) delta(sQ,sS)
    v = np.zeros((n_so, n_so, n_so, n_so))
    for p in range(n_so):
        for q in range(n_so):
            for r in range(n_so):
                if (p ^ r) & 1:
                    continue
                for s in range(n_so):
                    if (q ^ s) & 1:
                        continue
                    v[p, q, r, s] = space.eri[p // 2, r // 2, q // 2, s // 2]
    return h, v - v.transpose(0, 1, 3, 2)


def _determinants(n_orbitals: int, n_up: int, n_down: int):
    ups = [sum(1 << k for k in occ) for occ in combinations(range(n_orbitals), n_up)]
    downs = [sum(1 << k for k in occ) for occ in combinations(range(n_orbitals), n_down)]
    return [(u, d) for u in ups for d in downs]


def _spin_orbitals(det) -> list[int]:
    up, down = det
    out = [2 * k for k in range(up.bit_length()) if (up >> k) & 1]
    out += [2 * k + 1 for k in range(down.bit_length()) if (down >> k) & 1]
    return sorted(out)


def _excitation(occ_a: list[int], occ_b: list[int]):
    """Holes/particles between two determinants plus the permutation sign."""
    set_a, set_b = set(occ_a), set(occ_b)
    holes = sorted(set_a - set_b)
    particles = sorted(set_b - set_a)
    if len(holes) > 2:
        return holes, particles, 0.0
    # sign from lining the determinants up at maximal coincidence
    perm = 0
    for h, p in zip(holes, particles):
        perm += occ_a.index(h) + occ_b.index(p)
    return holes, particles, (-1.0) ** perm


def fci_ground_energy(space: ActiveSpace, n_up: int, n_down: int) -> float:
    """Lowest eigenvalue of the active Hamiltonian in one spin sector,
    including the frozen-core and nuclear constants."""
    h, v = _spin_orbital_integrals(space)
    dets = _determinants(space.n_orbitals, n_up, n_down)
    occs = [_spin_orbitals(d) for d in dets]
    dim = len(dets)
    mat = np.zeros((dim, dim))
    for a in range(dim):
        occ_a = occs[a]
        diag = sum(h[p, p] for p in occ_a)
        diag += 0.5 * sum(v[p, q, p, q] for p in occ_a for q in occ_a)
        mat[a, a] = diag
        for b in range(a):
            occ_b = occs[b]
            holes, particles, sign = _excitation(occ_a, occ_b)
            if sign == 0.0:
                continue
            if len(holes) == 1:
                (p,), (q,) = holes, particles
                value = h[p, q] + sum(v[p, r, q, r] for r in occ_a if r != p)
            else:
                (p, q), (r, s) = holes, particles
                value = v[p, q, r, s]
            mat[a, b] = mat[b, a] = sign * value
    return float(np.linalg.eigvalsh(mat)[0]) + space.constant
