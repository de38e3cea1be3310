"""Molecular qubit Hamiltonian exporter (STO-3G, frozen core, JW)."""

from .export import ExportResult, MoleculeSpec, build_export, export, stub_export, water_preset
from .fci import fci_ground_energy
from .scf import freeze_core, run_rhf

__all__ = [
    "ExportResult",
    "MoleculeSpec",
    "build_export",
    "export",
    "fci_ground_energy",
    "freeze_core",
    "run_rhf",
    "stub_export",
    "water_preset",
]
