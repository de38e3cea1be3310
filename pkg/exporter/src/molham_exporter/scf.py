"""Restricted Hartree-Fock and the frozen-core active-space reduction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .integrals import (
    build_basis,
    eri_tensor,
    kinetic_matrix,
    nuclear_matrix,
    nuclear_repulsion,
    overlap_matrix,
)


@dataclass
class ScfResult:
    energy: float  # total RHF energy including nuclear repulsion
    nuclear_repulsion: float
    mo_coefficients: np.ndarray  # columns are MOs, ascending orbital energy
    mo_energies: np.ndarray
    core_hamiltonian: np.ndarray  # AO basis
    eri_ao: np.ndarray  # AO basis, chemist notation
    n_electrons: int


def run_rhf(
    geometry, n_electrons: int, max_cycles: int = 200, tol: float = 1e-11
) -> ScfResult:
    """Closed-shell SCF with symmetric orthogonalization and no damping."""
    if n_electrons % 2:
        raise ValueError("restricted SCF needs an even electron count")
    basis = build_basis(geometry)
    s = overlap_matrix(basis)
    hcore = kinetic_matrix(basis) + nuclear_matrix(basis, geometry)
    eri = eri_tensor(basis)
    e_nuc = nuclear_repulsion(geometry)

    vals, vecs = np.linalg.eigh(s)
    s_inv_half = (vecs / np.sqrt(vals)) @ vecs.T
    n_occ = n_electrons // 2

    density = np.zeros_like(s)
    energy = 0.0
    coeffs = np.zeros_like(s)
    mo_energies = np.zeros(s.shape[0])
    for _ in range(max_cycles):
        coulomb = np.einsum("pqrs,rs->pq", eri, density)
        exchange = np.einsum("prqs,rs->pq", eri, density)
        fock = hcore + 2.0 * coulomb - exchange
        f_ortho = s_inv_half @ fock @ s_inv_half
        mo_energies, c_ortho = np.linalg.eigh(f_ortho)
        coeffs = s_inv_half @ c_ortho
        occ = coeffs[:, :n_occ]
        density_new = occ @ occ.T
        e_elec = float(np.sum(density_new * (hcore + fock)))
        if abs(e_elec + e_nuc - energy) < tol and np.abs(
            density_new - density
        ).max() < 1e-9:
            density = density_new
            energy = e_elec + e_nuc
            break
        density = density_new
        energy = e_elec + e_nuc
    else:
        raise RuntimeError("SCF did not converge")

    return ScfResult(
        energy=energy,
        nuclear_repulsion=e_nuc,
        mo_coefficients=coeffs,
        mo_energies=mo_energies,
        core_hamiltonian=hcore,
        eri_ao=eri,
        n_electrons=n_electrons,
    )


@dataclass
class ActiveSpace:
    """Spatial-orbital integrals after freezing the lowest MOs."""

    constant: float  # nuclear repulsion + frozen-core energy
    h1: np.ndarray  # effective one-body, active MOs
    eri: np.ndarray  # (pq|rs), active MOs
    n_active_electrons: int

    @property
    def n_orbitals(self) -> int:
        return self.h1.shape[0]


def freeze_core(scf: ScfResult, n_frozen: int) -> ActiveSpace:
    c = scf.mo_coefficients
    h_mo = c.T @ scf.core_hamiltonian @ c
    eri_mo = np.einsum(
        "pi,qj,rk,sl,pqrs->ijkl", c, c, c, c, scf.eri_ao, optimize=True
    )
    core = range(n_frozen)
    e_frozen = 0.0
    for i in core:
        e_frozen += 2.0 * h_mo[i, i]
        for j in core:
            e_frozen += 2.0 * eri_mo[i, i, j, j] - eri_mo[i, j, j, i]
    active = slice(n_frozen, h_mo.shape[0])
    h_eff = h_mo[active, active].copy()
    for idx_p in range(h_eff.shape[0]):
        for idx_q in range(h_eff.shape[0]):
            p, q = idx_p + n_frozen, idx_q + n_frozen
            for i in core:
                h_eff[idx_p, idx_q] += (
                    2.0 * eri_mo[p, q, i, i] - eri_mo[p, i, i, q]
                )
    return ActiveSpace(
        constant=scf.nuclear_repulsion + e_frozen,
        h1=h_eff,
        eri=eri_mo[active, active, active, active].copy(),
        n_active_electrons=scf.n_electrons - 2 * n_frozen,
    )
