"""Gaussian integrals over contracted s/p shells (McMurchie-Davidson).

Self-contained minimal-basis engine: overlap, kinetic, nuclear attraction
and electron repulsion integrals over Cartesian Gaussians, sufficient for
STO-3G molecules.  Distances are in Bohr throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gamma, gammainc

ANGSTROM_TO_BOHR = 1.8897259886

# STO-3G exponents and contraction coefficients (normalized primitives).
STO3G = {
    "H": [
        ("s", [3.425250914, 0.6239137298, 0.1688554040],
         [0.1543289673, 0.5353281423, 0.4446345422]),
    ],
    "O": [
        ("s", [130.7093200, 23.8088610, 6.4436083],
         [0.15432897, 0.53532814, 0.44463454]),
        ("s", [5.0331513, 1.1695961, 0.3803890],
         [-0.09996723, 0.39951283, 0.70011547]),
        ("p", [5.0331513, 1.1695961, 0.3803890],
         [0.15591627, 0.60768372, 0.39195739]),
    ],
}

NUCLEAR_CHARGE = {"H": 1, "O": 8}


@dataclass
class BasisFunction:
    """A contracted Cartesian Gaussian x^l y^m z^n exp(-a r^2)."""

    center: np.ndarray
    powers: tuple[int, int, int]
    exponents: np.ndarray
    coefficients: np.ndarray  # includes primitive norms and contraction norm


def _primitive_norm(alpha: float, powers) -> float:
    l, m, n = powers
    num = (2.0 * alpha / np.pi) ** 0.75 * (4.0 * alpha) ** ((l + m + n) / 2.0)
    den = np.sqrt(
        _double_factorial(2 * l - 1)
        * _double_factorial(2 * m - 1)
        * _double_factorial(2 * n - 1)
    )
    return num / den


def _double_factorial(k: int) -> float:
    out = 1.0
    while k > 1:
        out *= k
        k -= 2
    return out


def build_basis(geometry: list[tuple[str, np.ndarray]]) -> list[BasisFunction]:
    """Contracted functions for a geometry given in Bohr coordinates."""
    basis = []
    for element, center in geometry:
        for shell, exponents, coefficients in STO3G[element]:
            exponents = np.asarray(exponents, dtype=float)
            coefficients = np.asarray(coefficients, dtype=float)
            shapes = [(0, 0, 0)] if shell == "s" else [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
            for powers in shapes:
                coeffs = coefficients * np.array(
                    [_primitive_norm(a, powers) for a in exponents]
                )
                fn = BasisFunction(np.asarray(center, float), powers, exponents, coeffs)
                # normalize the contracted function
                self_overlap = _contracted(fn, fn, _overlap_primitive)
                fn.coefficients = coeffs / np.sqrt(self_overlap)
                basis.append(fn)
    return basis


# -- Hermite expansion -------------------------------------------------------


def _hermite_e(i: int, j: int, t: int, qx: float, a: float, b: float) -> float:
    """Expansion coefficient of two 1D Gaussians in Hermite Gaussians."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return np.exp(-q * qx * qx)
    if j == 0:
        return (
            _hermite_e(i - 1, j, t - 1, qx, a, b) / (2 * p)
            - q * qx / a * _hermite_e(i - 1, j, t, qx, a, b)
            + (t + 1) * _hermite_e(i - 1, j, t + 1, qx, a, b)
        )
    return (
        _hermite_e(i, j - 1, t - 1, qx, a, b) / (2 * p)
        + q * qx / b * _hermite_e(i, j - 1, t, qx, a, b)
        + (t + 1) * _hermite_e(i, j - 1, t + 1, qx, a, b)
    )


def _overlap_primitive(a, powers_a, ra, b, powers_b, rb) -> float:
    p = a + b
    value = (np.pi / p) ** 1.5
    for axis in range(3):
        value *= _hermite_e(
            powers_a[axis], powers_b[axis], 0, ra[axis] - rb[axis], a, b
        )
    return value


def _kinetic_primitive(a, powers_a, ra, b, powers_b, rb) -> float:
    l, m, n = powers_b
    term = b * (2 * (l + m + n) + 3) * _overlap_primitive(
        a, powers_a, ra, b, powers_b, rb
    )
    for axis, shift in ((0, (2, 0, 0)), (1, (0, 2, 0)), (2, (0, 0, 2))):
        raised = tuple(powers_b[k] + shift[k] for k in range(3))
        term += -2.0 * b * b * _overlap_primitive(a, powers_a, ra, b, raised, rb)
        if powers_b[axis] >= 2:
            lowered = tuple(powers_b[k] - shift[k] for k in range(3))
            term += (
                -0.5
                * powers_b[axis]
                * (powers_b[axis] - 1)
                * _overlap_primitive(a, powers_a, ra, b, lowered, rb)
            )
    return term


def boys(n: int, x: float) -> float:
    if x < 1e-12:
        return 1.0 / (2 * n + 1)
    return gamma(n + 0.5) * gammainc(n + 0.5, x) / (2.0 * x ** (n + 0.5))


def _hermite_coulomb(t, u, v, n, p, pc) -> float:
    if t < 0 or u < 0 or v < 0:
        return 0.0
    if t == u == v == 0:
        return (-2.0 * p) ** n * boys(n, p * float(pc @ pc))
    if t > 0:
        return (t - 1) * _hermite_coulomb(t - 2, u, v, n + 1, p, pc) + pc[
            0
        ] * _hermite_coulomb(t - 1, u, v, n + 1, p, pc)
    if u > 0:
        return (u - 1) * _hermite_coulomb(t, u - 2, v, n + 1, p, pc) + pc[
            1
        ] * _hermite_coulomb(t, u - 1, v, n + 1, p, pc)
    return (v - 1) * _hermite_coulomb(t, u, v - 2, n + 1, p, pc) + pc[
        2
    ] * _hermite_coulomb(t, u, v - 1, n + 1, p, pc)


def _nuclear_primitive(a, powers_a, ra, b, powers_b, rb, rc) -> float:
    p = a + b
    rp = (a * ra + b * rb) / p
    value = 0.0
    la, ma, na = powers_a
    lb, mb, nb = powers_b
    for t in range(la + lb + 1):
        et = _hermite_e(la, lb, t, ra[0] - rb[0], a, b)
        for u in range(ma + mb + 1):
            eu = _hermite_e(ma, mb, u, ra[1] - rb[1], a, b)
            for v in range(na + nb + 1):
                ev = _hermite_e(na, nb, v, ra[2] - rb[2], a, b)
                value += et * eu * ev * _hermite_coulomb(t, u, v, 0, p, rp - rc)
    return 2.0 * np.pi / p * value


def _contracted(fa: BasisFunction, fb: BasisFunction, primitive, *args) -> float:
    total = 0.0
    for ca, aa in zip(fa.coefficients, fa.exponents):
        for cb, ab in zip(fb.coefficients, fb.exponents):
            total += ca * cb * primitive(
                aa, fa.powers, fa.center, ab, fb.powers, fb.center, *args
            )
    return total


def overlap_matrix(basis) -> np.ndarray:
    n = len(basis)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            out[i, j] = out[j, i] = _contracted(basis[i], basis[j], _overlap_primitive)
    return out


def kinetic_matrix(basis) -> np.ndarray:
    n = len(basis)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            out[i, j] = out[j, i] = _contracted(basis[i], basis[j], _kinetic_primitive)
    return out


def nuclear_matrix(basis, geometry) -> np.ndarray:
    n = len(basis)
    out = np.zeros((n, n))
    for element, center in geometry:
        charge = NUCLEAR_CHARGE[element]
        for i in range(n):
            for j in range(i + 1):
                value = _contracted(
                    basis[i], basis[j], _nuclear_primitive, np.asarray(center, float)
                )
                out[i, j] -= charge * value
                if i != j:
                    out[j, i] = out[i, j]
    return out


def _eri_primitive(a, pa, ra, b, pb, rb, c, pc_, rc, d, pd, rd) -> float:
    p = a + b
    q = c + d
    rp = (a * ra + b * rb) / p
    rq = (c * rc + d * rd) / q
    alpha = p * q / (p + q)
    la, ma, na = pa
    lb, mb, nb = pb
    lc, mc, nc = pc_
    ld, md, nd = pd
    value = 0.0
    for t in range(la + lb + 1):
        e1t = _hermite_e(la, lb, t, ra[0] - rb[0], a, b)
        for u in range(ma + mb + 1):
            e1u = _hermite_e(ma, mb, u, ra[1] - rb[1], a, b)
            for v in range(na + nb + 1):
                e1v = _hermite_e(na, nb, v, ra[2] - rb[2], a, b)
                for tau in range(lc + ld + 1):
                    e2t = _hermite_e(lc, ld, tau, rc[0] - rd[0], c, d)
                    for nu in range(mc + md + 1):
                        e2u = _hermite_e(mc, md, nu, rc[1] - rd[1], c, d)
                        for phi in range(nc + nd + 1):
                            e2v = _hermite_e(nc, nd, phi, rc[2] - rd[2], c, d)
                            sign = (-1.0) ** (tau + nu + phi)
                            value += (
                                e1t * e1u * e1v * e2t * e2u * e2v * sign
                                * _hermite_coulomb(
                                    t + tau, u + nu, v + phi, 0, alpha, rp - rq
                                )
                            )
    return value * 2.0 * np.pi**2.5 / (p * q * np.sqrt(p + q))


def eri_tensor(basis) -> np.ndarray:
    """Chemist-notation (ij|kl) with full 8-fold symmetry."""
    n = len(basis)
    out = np.zeros((n, n, n, n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1)]
    for a, (i, j) in enumerate(pairs):
        for k, l in pairs[: a + 1]:
            value = 0.0
            fi, fj, fk, fl = basis[i], basis[j], basis[k], basis[l]
            for ci, ai in zip(fi.coefficients, fi.exponents):
                for cj, aj in zip(fj.coefficients, fj.exponents):
                    for ck, ak in zip(fk.coefficients, fk.exponents):
                        for cl, al in zip(fl.coefficients, fl.exponents):
                            value += ci * cj * ck * cl * _eri_primitive(
                                ai, fi.powers, fi.center,
                                aj, fj.powers, fj.center,
                                ak, fk.powers, fk.center,
                                al, fl.powers, fl.center,
                            )
            for p, q in ((i, j), (j, i)):
                for r, s in ((k, l), (l, k)):
                    out[p, q, r, s] = value
                    out[r, s, p, q] = value
    return out


def nuclear_repulsion(geometry) -> float:
    total = 0.0
    atoms = [(NUCLEAR_CHARGE[el], np.asarray(r, float)) for el, r in geometry]
    for i in range(len(atoms)):
        for j in range(i):
            zi, ri = atoms[i]
            zj, rj = atoms[j]
            total += zi * zj / np.linalg.norm(ri - rj)
    return total
