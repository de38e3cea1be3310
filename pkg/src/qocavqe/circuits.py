"""Parametrized ansatz circuits, CNOT-basis compilation, resource counts.

Circuits are ordered lists of gate descriptors with named parameter slots;
a slot referenced by several gates expresses parameter tying (e.g. the two
spin registers sharing hopping angles).  Binding a vector of length
``num_params`` makes the circuit a concrete unitary.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .fermions import (
    DriveKind,
    LatticeSpec,
    chain_kinetic_energies,
    drive_string,
    fourier_unitary,
    hopping_fermion,
    jw_transform,
    onsite_fermion,
)
from .paulis import PauliString, PauliSum
from .statevector import Statevector, one_qubit_matrix, pauli_action

try:  # optional fast kernel; the numpy path below is the reference
    from numba import njit

    @njit(cache=True)
    def _pexp_inplace(amps, perm, phases, cos_a, sin_a):
        factor = 1j * sin_a
        for i in range(amps.size):
            j = perm[i]
            if j > i:
                ai = amps[i]
                aj = amps[j]
                amps[i] = cos_a * ai + factor * (phases[i] * aj)
                amps[j] = cos_a * aj + factor * (phases[j] * ai)
            elif j == i:
                amps[i] = (cos_a + factor * phases[i]) * amps[i]

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


class Parametrization(Enum):
    FULL = "full"
    SCALABLE = "scalable"


@dataclass(frozen=True)
class GateDescriptor:
    """One circuit element.

    ``kind`` is one of ``pauliexp`` (exp(i * angle * P)), ``1q``, ``cnot``
    or ``dense``.  Parametrized gates reference ``param_slot`` and apply
    ``scale * theta[param_slot]`` as their angle; gates without a slot are
    fixed.  For ``1q`` rotations the angle feeds R_a(angle) = exp(-i angle
    sigma_a / 2).
    """

    kind: str
    pauli: PauliString | None = None
    gate: str | None = None
    qubit: int | None = None
    control: int | None = None
    target: int | None = None
    tag: str | None = None
    first_qubit: int | None = None
    param_slot: int | None = None
    scale: float = 1.0

    def qubits(self, dense_sizes: dict[str, int] | None = None) -> frozenset[int]:
        """The set of qubits the gate touches (for commutation checks)."""
        if self.kind == "pauliexp":
            return frozenset(self.pauli.active_qubits())
        if self.kind == "1q":
            return frozenset((self.qubit,))
        if self.kind == "cnot":
            return frozenset((self.control, self.target))
        size = (dense_sizes or {}).get(self.tag, 0)
        return frozenset(range(self.first_qubit, self.first_qubit + size))


@dataclass
class Circuit:
    """Ordered gate list with parameter slots and layer boundaries."""

    num_qubits: int
    gates: list[GateDescriptor] = field(default_factory=list)
    num_params: int = 0
    layer_boundaries: list[int] = field(default_factory=list)  # layer starts
    dense_blocks: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def depth(self) -> int:
        return len(self.layer_boundaries)

    def layer_spans(self) -> list[tuple[int, int]]:
        starts = list(self.layer_boundaries)
        ends = starts[1:] + [len(self.gates)]
        return list(zip(starts, ends))

    def has_pauli_exponentials(self) -> bool:
        return any(g.kind == "pauliexp" for g in self.gates)

    def unlowered_dense_tags(self) -> list[str]:
        return sorted({g.tag for g in self.gates if g.kind == "dense"})

    def _check_params(self, params: np.ndarray) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        if params.shape != (self.num_params,):
            raise ValueError(
                f"expected {self.num_params} parameters, got shape {params.shape}"
            )
        return params

    def apply_to(self, state: Statevector, params) -> Statevector:
        """Run the bound circuit on ``state`` (mutated in place)."""
        params = self._check_params(params)
        if state.num_qubits != self.num_qubits:
            raise ValueError("statevector size does not match circuit")
        for gate in self.gates:
            if gate.kind == "pauliexp":
                angle = gate.scale * params[gate.param_slot]
                state.apply_pauli_exponential(gate.pauli, angle)
            elif gate.kind == "1q":
                if gate.param_slot is not None:
                    state.apply_one_qubit(
                        gate.gate, gate.qubit, gate.scale * params[gate.param_slot]
                    )
                else:
                    state.apply_one_qubit(gate.gate, gate.qubit)
            elif gate.kind == "cnot":
                state.apply_cnot(gate.control, gate.target)
            else:
                state.apply_dense_unitary(
                    self.dense_blocks[gate.tag], gate.first_qubit, check=False
                )
        return state

    def unitary(self, params) -> np.ndarray:
        """Dense matrix of the bound circuit (test sizes only)."""
        dim = 1 << self.num_qubits
        out = np.empty((dim, dim), dtype=complex)
        for col in range(dim):
            amps = np.zeros(dim, dtype=complex)
            amps[col] = 1.0
            state = Statevector(self.num_qubits, amps)
            self.apply_to(state, params)
            out[:, col] = state.amplitudes
        return out

    def dump(self) -> str:
        """Text listing, one gate per line."""
        lines = []
        for gate in self.gates:
            if gate.kind == "pauliexp":
                lines.append(
                    f"PAULIEXP {gate.pauli.label()} slot={gate.param_slot} "
                    f"scale={gate.scale:.17g}"
                )
            elif gate.kind == "1q":
                extra = (
                    f" slot={gate.param_slot} scale={gate.scale:.17g}"
                    if gate.param_slot is not None
                    else ""
                )
                lines.append(f"1Q {gate.gate} {gate.qubit}{extra}")
            elif gate.kind == "cnot":
                lines.append(f"CNOT {gate.control} {gate.target}")
            else:
                lines.append(f"DENSE {gate.tag} q={gate.first_qubit}")
        return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Ansatz builders


def _emit_generator(
    gates: list[GateDescriptor], generator: PauliSum, slot: int
) -> None:
    """Append exp(i * theta * term) gates for all non-identity terms.

    Identity components are dropped; they contribute only a global phase.
    The terms of one generator always commute here (hopping pairs share
    their Z string and onsite/momentum generators are diagonal), so the
    per-term product equals the exponential of the full generator.
    """
    for string, coeff in sorted(generator.terms(), key=lambda t: t[0].label()):
        if string.is_identity:
            continue
        if abs(coeff.imag) > 1e-12:
            raise ValueError("ansatz generator has a non-Hermitian term")
        gates.append(
            GateDescriptor(
                "pauliexp", pauli=string, param_slot=slot, scale=float(coeff.real)
            )
        )


class _SlotAllocator:
    """Hands out parameter slots, one fresh id per distinct key."""

    def __init__(self, start: int = 0):
        self.next_slot = start
        self._by_key: dict = {}

    def get(self, key) -> int:
        if key not in self._by_key:
            self._by_key[key] = self.next_slot
            self.next_slot += 1
        return self._by_key[key]


def build_hea(num_qubits: int, depth: int) -> Circuit:
    """Hardware-style ansatz: RY,RZ on every qubit, then a CNOT ladder.

    Every rotation owns a parameter: 2N per layer, N-1 CNOTs per layer.
    """
    circuit = Circuit(num_qubits)
    slot = 0
    for _ in range(depth):
        circuit.layer_boundaries.append(len(circuit.gates))
        for q in range(1, num_qubits + 1):
            circuit.gates.append(
                GateDescriptor("1q", gate="RY", qubit=q, param_slot=slot)
            )
            circuit.gates.append(
                GateDescriptor("1q", gate="RZ", qubit=q, param_slot=slot + 1)
            )
            slot += 2
        for q in range(1, num_qubits):
            circuit.gates.append(GateDescriptor("cnot", control=q, target=q + 1))
    circuit.num_params = slot
    return circuit


def _vha_layer(
    circuit: Circuit,
    spec: LatticeSpec,
    strategy: Parametrization,
    alloc: _SlotAllocator,
    layer: int,
    include_hopping: bool = True,
) -> None:
    """One Hamiltonian Trotter layer: on-site terms, then hopping groups.

    On-site exponentials act first; with the kinetic-term ground state as
    the reference this makes even a single layer exact on the two-site
    model, which the hopping-first order provably cannot achieve.
    """
    n = circuit.num_qubits
    for site in range(1, spec.num_sites + 1):
        if strategy is Parametrization.FULL:
            slot = alloc.get((layer, "onsite", site))
        else:
            slot = alloc.get((layer, "group", "onsite"))
        _emit_generator(
            circuit.gates, jw_transform(onsite_fermion(spec, site), n), slot
        )
    if include_hopping:
        for group, bonds in spec.bond_groups().items():
            for bond in bonds:
                if strategy is Parametrization.FULL:
                    slot = alloc.get((layer, "bond", bond))
                else:
                    slot = alloc.get((layer, "group", group))
                for spin_down in (False, True):
                    generator = jw_transform(
                        hopping_fermion(spec, bond[0], bond[1], spin_down), n
                    )
                    _emit_generator(circuit.gates, generator, slot)


def _drive_layer(
    circuit: Circuit,
    sites: int,
    strategy: Parametrization,
    alloc: _SlotAllocator,
    layer: int,
) -> None:
    """Trotterized drive block on each spin register, X then Y per site.

    Full parametrization ties each (site, kind) angle across the two
    registers; scalable keeps a single angle per kind.
    """
    n = circuit.num_qubits
    for block_start in (1, sites + 1):
        for j in range(1, sites + 1):
            for kind in (DriveKind.X_DRIVE, DriveKind.Y_DRIVE):
                if strategy is Parametrization.FULL:
                    slot = alloc.get((layer, "drive", kind.value, j))
                else:
                    slot = alloc.get((layer, "drive", kind.value))
                circuit.gates.append(
                    GateDescriptor(
                        "pauliexp",
                        pauli=drive_string(kind, j, block_start, n),
                        param_slot=slot,
                        scale=1.0,
                    )
                )


def build_vha(
    lattice: LatticeSpec,
    depth: int,
    strategy: Parametrization = Parametrization.FULL,
    num_qubits: int | None = None,
) -> Circuit:
    """Trotterized problem-Hamiltonian ansatz.

    Full: one angle per hopping bond (tied across spins) plus one per
    on-site term.  Scalable: one angle per hopping group and one for the
    whole on-site group.  Layer order: hopping groups as listed, then
    on-site terms.
    """
    circuit = Circuit(num_qubits or lattice.num_orbitals)
    alloc = _SlotAllocator()
    for layer in range(depth):
        circuit.layer_boundaries.append(len(circuit.gates))
        _vha_layer(circuit, lattice, strategy, alloc, layer)
    circuit.num_params = alloc.next_slot
    return circuit


def build_qoca(
    lattice: LatticeSpec,
    depth: int,
    strategy: Parametrization = Parametrization.FULL,
    num_qubits: int | None = None,
) -> Circuit:
    """Hamiltonian layer followed by the symmetry-breaking drive block."""
    circuit = Circuit(num_qubits or lattice.num_orbitals)
    alloc = _SlotAllocator()
    for layer in range(depth):
        circuit.layer_boundaries.append(len(circuit.gates))
        _vha_layer(circuit, lattice, strategy, alloc, layer)
        _drive_layer(circuit, lattice.num_sites, strategy, alloc, layer)
    circuit.num_params = alloc.next_slot
    return circuit


def build_sqoca(
    lattice: LatticeSpec,
    depth: int,
    strategy: Parametrization = Parametrization.FULL,
    num_qubits: int | None = None,
) -> Circuit:
    """Shortened drive ansatz: on-site exponentials plus drives, no hopping."""
    circuit = Circuit(num_qubits or lattice.num_orbitals)
    alloc = _SlotAllocator()
    for layer in range(depth):
        circuit.layer_boundaries.append(len(circuit.gates))
        _vha_layer(circuit, lattice, strategy, alloc, layer, include_hopping=False)
        _drive_layer(circuit, lattice.num_sites, strategy, alloc, layer)
    circuit.num_params = alloc.next_slot
    return circuit


def build_ftvha(
    lattice: LatticeSpec,
    depth: int,
    strategy: Parametrization = Parametrization.FULL,
) -> Circuit:
    """Split-basis ansatz alternating position and momentum frames.

    Requires a periodic-chain lattice (the open 2x2 plaquette is accepted
    as its 4-site chain form; callers must then also use the chain-labeled
    Hamiltonian).  Per layer: on-site exponentials in position space, a
    dense Fourier block per spin register, diagonal momentum-mode
    exponentials, and the inverse blocks.  Full parametrization assigns
    one angle per momentum mode (tied across spins); scalable keeps a
    single angle weighted by the mode energies.
    """
    chain = lattice.as_periodic_chain()
    sites = chain.num_sites
    n = chain.num_orbitals
    circuit = Circuit(n)
    ft = fourier_unitary(sites)
    circuit.dense_blocks["FT"] = ft
    circuit.dense_blocks["FTdag"] = ft.conj().T
    energies = chain_kinetic_energies(sites, chain.t)
    alloc = _SlotAllocator()
    for layer in range(depth):
        circuit.layer_boundaries.append(len(circuit.gates))
        for site in range(1, sites + 1):
            if strategy is Parametrization.FULL:
                slot = alloc.get((layer, "onsite", site))
            else:
                slot = alloc.get((layer, "group", "onsite"))
            _emit_generator(
                circuit.gates, jw_transform(onsite_fermion(chain, site), n), slot
            )
        for start in (1, sites + 1):
            circuit.gates.append(
                GateDescriptor("dense", tag="FT", first_qubit=start)
            )
        for k in range(sites):
            if strategy is Parametrization.FULL:
                slot = alloc.get((layer, "mode", k))
                weight = -0.5  # number operator n_k, mode energy absorbed
            else:
                slot = alloc.get((layer, "group", "kinetic"))
                weight = -0.5 * energies[k]
            if weight == 0.0:
                continue
            for qubit in (k + 1, sites + k + 1):
                circuit.gates.append(
                    GateDescriptor(
                        "pauliexp",
                        pauli=PauliString.single(n, qubit, "Z"),
                        param_slot=slot,
                        scale=weight,
                    )
                )
        for start in (1, sites + 1):
            circuit.gates.append(
                GateDescriptor("dense", tag="FTdag", first_qubit=start)
            )
    circuit.num_params = alloc.next_slot
    return circuit


ANSATZ_BUILDERS = {
    "hea": build_hea,
    "vha": build_vha,
    "ftvha": build_ftvha,
    "qoca": build_qoca,
    "sqoca": build_sqoca,
}


# ---------------------------------------------------------------------------
# Compilation to the CNOT + single-qubit basis


def _lower_pauli_exponential(gate: GateDescriptor) -> list[GateDescriptor]:
    """Standard lowering: basis changes, CNOT ladder, RZ(-2 angle), mirror."""
    actives = gate.pauli.active_qubits()
    if not actives:
        return []  # exp(i a I) is a global phase
    out: list[GateDescriptor] = []
    basis: list[GateDescriptor] = []
    for q in actives:
        letter = gate.pauli.letter(q)
        if letter == "X":
            basis.append(GateDescriptor("1q", gate="H", qubit=q))
        elif letter == "Y":
            basis.append(GateDescriptor("1q", gate="G", qubit=q))
    out.extend(basis)
    for a, b in zip(actives, actives[1:]):
        out.append(GateDescriptor("cnot", control=a, target=b))
    out.append(
        GateDescriptor(
            "1q",
            gate="RZ",
            qubit=actives[-1],
            param_slot=gate.param_slot,
            scale=-2.0 * gate.scale,
        )
    )
    for a, b in reversed(list(zip(actives, actives[1:]))):
        out.append(GateDescriptor("cnot", control=a, target=b))
    out.extend(reversed(basis))
    return out


def _cancel_adjacent_cnot_pairs(
    gates: list[GateDescriptor], dense_sizes: dict[str, int]
) -> list[GateDescriptor]:
    """Remove CNOT pairs separated only by gates on disjoint qubits.

    Such pairs multiply to the identity, so the circuit unitary is
    unchanged.  This reproduces the ladder sharing of consecutive
    drive-string exponentials.
    """
    gates = list(gates)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(gates):
            g = gates[i]
            if g.kind != "cnot":
                i += 1
                continue
            pair = g.qubits()
            cancelled = False
            j = i + 1
            while j < len(gates):
                h = gates[j]
                if h.kind == "cnot" and h.control == g.control and h.target == g.target:
                    del gates[j]
                    del gates[i]
                    cancelled = True
                    changed = True
                    break
                if h.qubits(dense_sizes) & pair:
                    break
                j += 1
            if not cancelled:
                i += 1
    return gates


def compile_to_cnot(circuit: Circuit) -> Circuit:
    """Lower Pauli exponentials to CNOTs and single-qubit gates.

    Dense blocks are left in place (reported via
    :meth:`Circuit.unlowered_dense_tags`).  Cancellation of adjacent
    inverse CNOT pairs runs within each layer; the bound compiled circuit
    equals the bound original.
    """
    dense_sizes = {
        tag: mat.shape[0].bit_length() - 1
        for tag, mat in circuit.dense_blocks.items()
    }
    new_gates: list[GateDescriptor] = []
    boundaries: list[int] = []
    for start, end in circuit.layer_spans():
        layer: list[GateDescriptor] = []
        for gate in circuit.gates[start:end]:
            if gate.kind == "pauliexp":
                layer.extend(_lower_pauli_exponential(gate))
            else:
                layer.append(gate)
        layer = _cancel_adjacent_cnot_pairs(layer, dense_sizes)
        boundaries.append(len(new_gates))
        new_gates.extend(layer)
    return Circuit(
        num_qubits=circuit.num_qubits,
        gates=new_gates,
        num_params=circuit.num_params,
        layer_boundaries=boundaries,
        dense_blocks=dict(circuit.dense_blocks),
    )


@dataclass(frozen=True)
class ResourceCount:
    n_params_per_layer: int
    n_cnot_per_layer: int
    unlowered_dense_tags: tuple[str, ...] = ()


def count_resources(circuit: Circuit) -> ResourceCount:
    """Per-layer parameter and CNOT counts (all-to-all connectivity)."""
    if circuit.depth == 0:
        return ResourceCount(0, 0)
    compiled = compile_to_cnot(circuit) if circuit.has_pauli_exponentials() else circuit
    start, end = compiled.layer_spans()[0]
    slots = {
        g.param_slot
        for g in compiled.gates[start:end]
        if g.param_slot is not None
    }
    cnots = sum(1 for g in compiled.gates[start:end] if g.kind == "cnot")
    return ResourceCount(
        n_params_per_layer=len(slots),
        n_cnot_per_layer=cnots,
        unlowered_dense_tags=tuple(compiled.unlowered_dense_tags()),
    )


# ---------------------------------------------------------------------------
# Cached execution plan for repeated evaluation


class CircuitRunner:
    """Precomputed execution plan for many bindings of one circuit.

    Index permutations and phase vectors of every Pauli exponential are
    cached once; running with a new parameter vector costs only the
    trigonometric updates and vector arithmetic.
    """

    def __init__(self, circuit: Circuit):
        self.circuit = circuit
        self.num_qubits = circuit.num_qubits
        self._ops = []
        for gate in circuit.gates:
            if gate.kind == "pauliexp":
                perm, phases = pauli_action(gate.pauli)
                self._ops.append(
                    ("pexp", perm, phases, gate.param_slot, gate.scale)
                )
            elif gate.kind == "1q":
                if gate.param_slot is None:
                    self._ops.append(
                        ("1q_fixed", gate.qubit, one_qubit_matrix(gate.gate))
                    )
                else:
                    self._ops.append(
                        ("1q_rot", gate.qubit, gate.gate, gate.param_slot, gate.scale)
                    )
            elif gate.kind == "cnot":
                self._ops.append(("cnot", gate.control, gate.target))
            else:
                self._ops.append(
                    ("dense", circuit.dense_blocks[gate.tag], gate.first_qubit)
                )

    def run(self, params: np.ndarray, amplitudes: np.ndarray) -> np.ndarray:
        """Evolve ``amplitudes`` in place; returns the (possibly new) array."""
        n = self.num_qubits
        for op in self._ops:
            kind = op[0]
            if kind == "pexp":
                _, perm, phases, slot, scale = op
                angle = scale * params[slot]
                if _HAVE_NUMBA:
                    _pexp_inplace(
                        amplitudes, perm, phases, np.cos(angle), np.sin(angle)
                    )
                else:
                    rotated = phases * amplitudes[perm]
                    rotated *= 1j * np.sin(angle)
                    amplitudes *= np.cos(angle)
                    amplitudes += rotated
            elif kind == "1q_rot" or kind == "1q_fixed":
                if kind == "1q_rot":
                    _, qubit, gate, slot, scale = op
                    u = one_qubit_matrix(gate, scale * params[slot])
                else:
                    _, qubit, u = op
                view = amplitudes.reshape(1 << (qubit - 1), 2, 1 << (n - qubit))
                a0 = view[:, 0, :].copy()
                a1 = view[:, 1, :]
                view[:, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
                view[:, 1, :] = u[1, 0] * a0 + u[1, 1] * a1
            elif kind == "cnot":
                _, control, target = op
                q1, q2 = min(control, target), max(control, target)
                view = amplitudes.reshape(
                    1 << (q1 - 1), 2, 1 << (q2 - q1 - 1), 2, 1 << (n - q2)
                )
                if control < target:
                    block = view[:, 1, :, :, :]
                    block[:, :, [0, 1], :] = block[:, :, [1, 0], :]
                else:
                    block = view[:, :, :, 1, :]
                    block[:, [0, 1], :, :] = block[:, [1, 0], :, :]
            else:
                _, matrix, first_qubit = op
                dim = matrix.shape[0]
                block = dim.bit_length() - 1
                last = first_qubit + block - 1
                view = amplitudes.reshape(
                    1 << (first_qubit - 1), dim, 1 << (n - last)
                )
                amplitudes = np.einsum("ab,lbr->lar", matrix, view).reshape(-1)
        return amplitudes
