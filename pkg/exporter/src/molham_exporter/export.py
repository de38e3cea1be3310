"""Molecule presets and the interchange-format writer."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .fci import fci_ground_energy
from .integrals import ANGSTROM_TO_BOHR, nuclear_repulsion
from .jw import qubit_hamiltonian
from .scf import freeze_core, run_rhf


@dataclass
class MoleculeSpec:
    """Geometry in Angstrom plus the electronic-structure choices."""

    name: str
    geometry: list[tuple[str, tuple[float, float, float]]]
    basis: str = "sto-3g"
    frozen_core: bool = True
    mapping: str = "jw"
    n_electrons: int = 0
    n_frozen_orbitals: int = 0

    def geometry_bohr(self):
        return [
            (el, np.asarray(xyz, float) * ANGSTROM_TO_BOHR)
            for el, xyz in self.geometry
        ]


def water_preset() -> MoleculeSpec:
    """H2O at the experimental equilibrium configuration.

    r(OH) = 0.9572 Angstrom, HOH angle = 104.52 degrees; core (oxygen 1s)
    frozen, leaving 8 electrons in 6 spatial orbitals: 12 qubits.
    """
    r = 0.9572
    half = np.deg2rad(104.52) / 2.0
    x, z = r * np.sin(half), r * np.cos(half)
    return MoleculeSpec(
        name="h2o",
        geometry=[
            ("O", (0.0, 0.0, 0.0)),
            ("H", (x, 0.0, z)),
            ("H", (-x, 0.0, z)),
        ],
        n_electrons=10,
        n_frozen_orbitals=1,
    )


PRESETS = {"h2o": water_preset}


@dataclass
class ExportResult:
    pauli: dict[str, complex]
    num_qubits: int
    hf_energy: float
    fci_energy: float
    hf_bitstring: str
    metadata: dict = field(default_factory=dict)


def build_export(spec: MoleculeSpec) -> ExportResult:
    if spec.basis != "sto-3g":
        raise ValueError(f"unsupported basis {spec.basis!r}")
    if spec.mapping != "jw":
        raise ValueError(f"unsupported mapping {spec.mapping!r}")
    geometry = spec.geometry_bohr()
    scf = run_rhf(geometry, spec.n_electrons)
    n_frozen = spec.n_frozen_orbitals if spec.frozen_core else 0
    space = freeze_core(scf, n_frozen)
    m = space.n_orbitals
    n_qubits = 2 * m
    n_pairs = space.n_active_electrons // 2
    fci_energy = fci_ground_energy(space, n_pairs, n_pairs)
    pauli = qubit_hamiltonian(space)
    for coeff in pauli.values():
        if abs(coeff.imag) > 1e-9:
            raise AssertionError(
                "exported Hamiltonian acquired a non-Hermitian term"
            )
    # HF determinant: lowest active orbitals doubly occupied, up block first.
    bits = ("1" * n_pairs + "0" * (m - n_pairs)) * 2
    return ExportResult(
        pauli=pauli,
        num_qubits=n_qubits,
        hf_energy=scf.energy,
        fci_energy=fci_energy,
        hf_bitstring=bits,
        metadata={
            "molecule": spec.name,
            "basis": spec.basis,
            "mapping": spec.mapping,
            "frozen_orbitals": str(n_frozen),
            "active_electrons": str(space.n_active_electrons),
            "nuclear_repulsion": f"{scf.nuclear_repulsion:.17g}",
        },
    )


def stub_export(num_qubits: int = 4) -> ExportResult:
    """Nuclear-repulsion-only stub: two protons one Angstrom apart."""
    geometry = [
        ("H", np.zeros(3)),
        ("H", np.array([0.0, 0.0, ANGSTROM_TO_BOHR])),
    ]
    e_nuc = nuclear_repulsion(geometry)
    return ExportResult(
        pauli={"I" * num_qubits: complex(e_nuc)},
        num_qubits=num_qubits,
        hf_energy=e_nuc,
        fci_energy=e_nuc,
        hf_bitstring="0" * num_qubits,
        metadata={"molecule": "stub", "nuclear_repulsion": f"{e_nuc:.17g}"},
    )


def format_export(result: ExportResult) -> str:
    """Interchange text: metadata comments, then sorted coefficient lines."""
    lines = [
        "# molecular qubit Hamiltonian (Pauli-sum interchange format)",
    ]
    for key, value in result.metadata.items():
        lines.append(f"# {key}={value}")
    lines.append(f"# hf_bitstring={result.hf_bitstring}")
    lines.append(f"# hf_energy={result.hf_energy:.17g}")
    lines.append(f"# fci_energy={result.fci_energy:.17g}")
    for letters in sorted(result.pauli):
        coeff = result.pauli[letters]
        lines.append(f"{coeff.real:.17g} {coeff.imag:.17g} {letters}")
    return "\n".join(lines) + "\n"


def export(spec_or_name, out_path) -> ExportResult:
    """Generate and write an interchange file; returns the build result."""
    if isinstance(spec_or_name, str):
        if spec_or_name == "stub":
            result = stub_export()
        elif spec_or_name in PRESETS:
            result = build_export(PRESETS[spec_or_name]())
        else:
            raise ValueError(
                f"unknown preset {spec_or_name!r}; "
                f"available: {', '.join(sorted(set(PRESETS) | {'stub'}))}"
            )
    else:
        result = build_export(spec_or_name)
    Path(out_path).write_text(format_export(result), encoding="ascii")
    return result
