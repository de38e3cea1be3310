"""Second-quantized operators, Jordan-Wigner mapping, and reference states.

Spin orbitals of an L-site lattice are ordered all spin-up sites 1..L
(row-major) followed by all spin-down sites L+1..2L, and orbital p maps to
qubit p.  An occupied orbital is qubit state |1>.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .paulis import DENSE_CAP, PauliString, PauliSum
from .statevector import Statevector


# ---------------------------------------------------------------------------
# Second-quantized operators


@dataclass(frozen=True)
class FermionTerm:
    """An ordered product of ladder operators with a complex coefficient.

    ``factors`` is a tuple of ``(orbital, dagger)`` pairs, orbital 1-based,
    applied right to left like operator products.  No normal ordering is
    imposed; products are kept as written.
    """

    factors: tuple[tuple[int, bool], ...]
    coefficient: complex = 1.0

    def scaled(self, factor: complex) -> "FermionTerm":
        return FermionTerm(self.factors, self.coefficient * factor)


@dataclass(frozen=True)
class FermionSum:
    """A plain list of :class:`FermionTerm` addends."""

    terms: tuple[FermionTerm, ...] = ()

    def __add__(self, other: "FermionSum") -> "FermionSum":
        return FermionSum(self.terms + other.terms)

    def __rmul__(self, scalar: complex) -> "FermionSum":
        return FermionSum(tuple(t.scaled(scalar) for t in self.terms))

    @property
    def num_terms(self) -> int:
        return len(self.terms)


def ladder(coefficient: complex, *factors: tuple[int, bool]) -> FermionSum:
    """Single-term sum, e.g. ``ladder(-t, (i, True), (j, False))``."""
    return FermionSum((FermionTerm(tuple(factors), coefficient),))


def hopping(i: int, j: int, amplitude: complex = 1.0) -> FermionSum:
    """amplitude * (a+_i a_j + a+_j a_i)."""
    return ladder(amplitude, (i, True), (j, False)) + ladder(
        amplitude, (j, True), (i, False)
    )


def number_op(p: int) -> FermionSum:
    return ladder(1.0, (p, True), (p, False))


# ---------------------------------------------------------------------------
# Jordan-Wigner mapping


def jw_ladder(p: int, dagger: bool, n: int) -> PauliSum:
    """Pauli image of a single ladder operator on an n-orbital register.

    Annihilation maps to (X + iY)/2 on qubit p tensored with Z on every
    qubit below p; the adjoint flips the sign of the Y part.
    """
    if not 1 <= p <= n:
        raise ValueError(f"orbital {p} out of range 1..{n}")
    site_bit = 1 << (n - p)
    zstring = ((1 << (p - 1)) - 1) << (n - p + 1)
    x_part = PauliString(n, site_bit, zstring)
    y_part = PauliString(n, site_bit, zstring | site_bit)
    y_coeff = -0.5j if dagger else 0.5j
    return PauliSum(n, {x_part: 0.5, y_part: y_coeff})


def jw_transform(fermions: FermionSum | FermionTerm, n: int) -> PauliSum:
    """Map a second-quantized operator to a simplified Pauli sum."""
    if isinstance(fermions, FermionTerm):
        fermions = FermionSum((fermions,))
    total = PauliSum.zero(n)
    for term in fermions.terms:
        image = PauliSum.identity(n, term.coefficient)
        for orbital, dagger in term.factors:
            image = image * jw_ladder(orbital, dagger, n)
        total = total + image
    return total.simplify()


def jw_number(p: int, n: int) -> PauliSum:
    return jw_transform(number_op(p), n)


def jw_total_number(n: int) -> PauliSum:
    total = PauliSum.zero(n)
    for p in range(1, n + 1):
        total = total + jw_number(p, n)
    return total


# ---------------------------------------------------------------------------
# Fermi-Hubbard model


@dataclass(frozen=True)
class LatticeSpec:
    """Rectangular Fermi-Hubbard lattice and model parameters.

    Site (r, c) has 1-based index r*cols + c + 1 (row-major); spin-up
    orbital = site index, spin-down orbital = L + site index.
    """

    rows: int
    cols: int
    periodic: bool = False
    t: float = 1.0
    u: float = 4.0
    mu: float = 2.0

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("lattice must have at least one site")

    @property
    def num_sites(self) -> int:
        return self.rows * self.cols

    @property
    def num_orbitals(self) -> int:
        return 2 * self.num_sites

    def half_filling(self) -> bool:
        return self.mu == self.u / 2

    def site(self, r: int, c: int) -> int:
        return r * self.cols + c + 1

    def up(self, site: int) -> int:
        return site

    def down(self, site: int) -> int:
        return self.num_sites + site

    def bond_groups(self) -> dict[str, list[tuple[int, int]]]:
        """Site-index bonds grouped by direction and sublattice parity.

        Wrap-around bonds are added only when the periodic dimension has
        more than two sites, so a periodic two-site dimension does not
        produce duplicate bonds.
        """
        groups: dict[str, list[tuple[int, int]]] = {
            "hop_h_even": [],
            "hop_h_odd": [],
            "hop_v_even": [],
            "hop_v_odd": [],
        }
        for r in range(self.rows):
            for c in range(self.cols - 1):
                name = "hop_h_even" if c % 2 == 0 else "hop_h_odd"
                groups[name].append((self.site(r, c), self.site(r, c + 1)))
            if self.periodic and self.cols > 2:
                name = "hop_h_even" if (self.cols - 1) % 2 == 0 else "hop_h_odd"
                groups[name].append((self.site(r, self.cols - 1), self.site(r, 0)))
        for c in range(self.cols):
            for r in range(self.rows - 1):
                name = "hop_v_even" if r % 2 == 0 else "hop_v_odd"
                groups[name].append((self.site(r, c), self.site(r + 1, c)))
            if self.periodic and self.rows > 2:
                name = "hop_v_even" if (self.rows - 1) % 2 == 0 else "hop_v_odd"
                groups[name].append((self.site(self.rows - 1, c), self.site(0, c)))
        return {name: bonds for name, bonds in groups.items() if bonds}

    def bonds(self) -> list[tuple[int, int]]:
        return [b for group in self.bond_groups().values() for b in group]

    def is_periodic_chain(self) -> bool:
        return self.periodic and (self.rows == 1 or self.cols == 1)

    def as_periodic_chain(self) -> "LatticeSpec":
        """The periodic-chain relabeling used by Fourier-based features.

        The open 2x2 plaquette is equivalent to a periodic 4-site chain up
        to a site permutation; other open lattices have no chain form.
        """
        if self.is_periodic_chain():
            return self
        if (self.rows, self.cols) == (2, 2) and not self.periodic:
            return LatticeSpec(1, 4, periodic=True, t=self.t, u=self.u, mu=self.mu)
        raise ValueError(
            f"{self.rows}x{self.cols} (periodic={self.periodic}) lattice has "
            "no periodic-chain realization"
        )


@dataclass(frozen=True)
class HubbardModel:
    """Fermionic Hubbard Hamiltonian together with its named term groups."""

    lattice: LatticeSpec
    total: FermionSum
    groups: dict[str, FermionSum] = field(default_factory=dict)


def hopping_fermion(spec: LatticeSpec, i: int, j: int, spin_down: bool) -> FermionSum:
    """-t (a+_{i sigma} a_{j sigma} + h.c.) for one bond and one spin."""
    offset = spec.num_sites if spin_down else 0
    return hopping(i + offset, j + offset, -spec.t)


def onsite_fermion(spec: LatticeSpec, i: int) -> FermionSum:
    """U n_up n_down - mu (n_up + n_down) at site i."""
    up, down = spec.up(i), spec.down(i)
    out = ladder(spec.u, (up, True), (up, False), (down, True), (down, False))
    out = out + (-spec.mu) * (number_op(up) + number_op(down))
    return out


def build_hubbard(spec: LatticeSpec) -> HubbardModel:
    """Assemble the lattice Hamiltonian, partitioned into hopping/onsite groups."""
    groups: dict[str, FermionSum] = {}
    for name, bonds in spec.bond_groups().items():
        acc = FermionSum()
        for i, j in bonds:
            for spin_down in (False, True):
                acc = acc + hopping_fermion(spec, i, j, spin_down)
        groups[name] = acc
    onsite = FermionSum()
    for i in range(1, spec.num_sites + 1):
        onsite = onsite + onsite_fermion(spec, i)
    groups["onsite"] = onsite
    total = FermionSum()
    for acc in groups.values():
        total = total + acc
    return HubbardModel(lattice=spec, total=total, groups=groups)


def jw_hubbard(spec: LatticeSpec) -> PauliSum:
    model = build_hubbard(spec)
    return jw_transform(model.total, spec.num_orbitals)


# ---------------------------------------------------------------------------
# Drive operators


class DriveKind(Enum):
    X_DRIVE = "x"  # sum_j (a+_j + a_j)
    Y_DRIVE = "y"  # sum_j i (a+_j - a_j)


class RegisterBlock(Enum):
    SPIN_UP = "up"
    SPIN_DOWN = "down"


@dataclass(frozen=True)
class DriveSpec:
    kind: DriveKind
    register: RegisterBlock


def drive_string(
    kind: DriveKind, j: int, block_start: int, num_qubits: int
) -> PauliString:
    """The j-th drive term on one spin register: X_j or Y_j with a Z tail.

    The Z string restarts at the register block, so a spin-down drive does
    not thread Z operators through the spin-up qubits.
    """
    qubit = block_start + j - 1
    site_bit = 1 << (num_qubits - qubit)
    zstring = (((1 << (j - 1)) - 1) << (num_qubits - qubit + 1))
    if kind is DriveKind.X_DRIVE:
        return PauliString(num_qubits, site_bit, zstring)
    return PauliString(num_qubits, site_bit, zstring | site_bit)


def build_drive(spec: DriveSpec, sites: int, num_qubits: int) -> PauliSum:
    """Block-local Jordan-Wigner image of one drive Hamiltonian."""
    block_start = 1 if spec.register is RegisterBlock.SPIN_UP else sites + 1
    if block_start + sites - 1 > num_qubits:
        raise ValueError("register block exceeds the qubit register")
    terms = {
        drive_string(spec.kind, j, block_start, num_qubits): 1.0 + 0.0j
        for j in range(1, sites + 1)
    }
    return PauliSum(num_qubits, terms)


def all_drive_blocks(sites: int, num_qubits: int) -> dict[str, PauliSum]:
    """The four drive blocks of one ansatz layer, in circuit order."""
    blocks = {}
    for register in (RegisterBlock.SPIN_UP, RegisterBlock.SPIN_DOWN):
        for kind in (DriveKind.X_DRIVE, DriveKind.Y_DRIVE):
            name = f"{kind.value}_{register.value}"
            blocks[name] = build_drive(DriveSpec(kind, register), sites, num_qubits)
    return blocks


# ---------------------------------------------------------------------------
# Fermionic Fourier transform (dense Fock-space unitary)


def fourier_unitary(sites: int, cap: int = DENSE_CAP) -> np.ndarray:
    """Fock-space unitary of the single-particle DFT on a periodic chain.

    Maps creation operators as FT a+_k FT^dagger =
    (1/sqrt(L)) sum_j exp(-2 pi i k j / L) a+_j (modes and sites both
    indexed 0..L-1, mode k stored on qubit k+1).  Built column by column by
    applying transformed creation-operator products to the vacuum with
    fermionic sign bookkeeping.
    """
    if sites > cap:
        raise ValueError(f"{sites} modes exceeds the dense cap of {cap}")
    dim = 1 << sites
    dft = np.exp(
        -2j
        * np.pi
        * np.outer(np.arange(sites), np.arange(sites))
        / sites
    ) / np.sqrt(sites)
    unitary = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        # Modes occupied in this basis state, by ascending mode index.
        occupied = [k for k in range(sites) if (col >> (sites - 1 - k)) & 1]
        amps = {0: 1.0 + 0.0j}
        # The rightmost factor of the ordered creation product acts first.
        for k in reversed(occupied):
            nxt: dict[int, complex] = {}
            for state, amp in amps.items():
                for j in range(sites):
                    bit = 1 << (sites - 1 - j)
                    if state & bit:
                        continue
                    above = state >> (sites - j)
                    sign = -1.0 if bin(above).count("1") % 2 else 1.0
                    coeff = amp * dft[k, j] * sign
                    key = state | bit
                    nxt[key] = nxt.get(key, 0.0) + coeff
            amps = nxt
        for state, amp in amps.items():
            unitary[state, col] = amp
    return unitary


def chain_kinetic_energies(sites: int, t: float) -> np.ndarray:
    """Single-particle spectrum -2 t cos(2 pi k / L) of the periodic chain."""
    return -2.0 * t * np.cos(2.0 * np.pi * np.arange(sites) / sites)


# ---------------------------------------------------------------------------
# Reference initial states


INITIAL_STATE_KINDS = (
    "plus_all",
    "noninteracting",
    "omega_t1",
    "omega_t2",
    "omega_t",
    "computational",
)

_OMEGA_BITSTRINGS = {
    "omega_t1": "11001100",
    "omega_t2": "10011001",
}


def prepare_initial_state(
    kind: str,
    num_qubits: int,
    lattice: LatticeSpec | None = None,
    bits: str | None = None,
) -> Statevector:
    """Construct one of the reference states used by the experiments.

    ``plus_all`` is the uniform superposition; the ``omega_*`` kinds are
    the selected kinetic-term ground states of the half-filled periodic
    4-site chain (inverse Fourier transform applied per spin register);
    ``computational`` places particles according to ``bits``.
    """
    if kind == "plus_all":
        return Statevector.plus_state(num_qubits)
    if kind == "noninteracting":
        from .statevector import exact_ground_space

        if lattice is None:
            raise ValueError("noninteracting initial state requires a lattice")
        free = LatticeSpec(
            lattice.rows, lattice.cols, lattice.periodic, lattice.t, 0.0, 0.0
        )
        space = exact_ground_space(jw_hubbard(free))
        if space.degeneracy != 1:
            raise ValueError(
                "kinetic ground state is degenerate on this lattice; "
                "use one of the omega_t kinds instead"
            )
        return Statevector(num_qubits, space.basis[:, 0].copy())
    if kind == "computational":
        if bits is None:
            raise ValueError("computational initial state needs a bitstring")
        if len(bits) != num_qubits:
            raise ValueError(
                f"bitstring length {len(bits)} does not match {num_qubits} qubits"
            )
        return Statevector.computational(bits)
    if kind in ("omega_t1", "omega_t2", "omega_t"):
        if lattice is None:
            raise ValueError(f"{kind} requires a lattice")
        chain = lattice.as_periodic_chain()
        if chain.num_sites != 4 or num_qubits != 8:
            raise ValueError(
                f"{kind} is defined for the periodic 4-site chain only"
            )
        ft_dagger = fourier_unitary(4).conj().T
        if kind == "omega_t":
            a = prepare_initial_state("omega_t1", num_qubits, lattice)
            b = prepare_initial_state("omega_t2", num_qubits, lattice)
            amps = (a.amplitudes - b.amplitudes) / np.sqrt(2.0)
            return Statevector(num_qubits, amps)
        state = Statevector.computational(_OMEGA_BITSTRINGS[kind])
        state.apply_dense_unitary(ft_dagger, 1, check=False)
        state.apply_dense_unitary(ft_dagger, 5, check=False)
        return state
    raise ValueError(f"unknown initial state kind {kind!r}")
