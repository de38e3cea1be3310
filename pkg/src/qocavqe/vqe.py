"""Objective evaluation, optimization driving, and per-evaluation traces."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .circuits import Circuit, CircuitRunner
from .optimizers import OptimizerConfig, minimize
from .paulis import PauliSum, _string_phases
from .statevector import GroundSpace, Statevector, fidelity


class Objective:
    """Energy of the circuit-prepared state under a fixed Hamiltonian.

    The Hamiltonian's identity component is split off into
    ``constant_offset`` and the remainder is cached as a sparse matrix, so
    one evaluation costs a circuit run plus a sparse quadratic form.
    Every call is independent; no state is carried between evaluations.
    """

    def __init__(
        self,
        circuit: Circuit,
        hamiltonian: PauliSum,
        initial_state: Statevector,
    ):
        if hamiltonian.num_qubits != circuit.num_qubits:
            raise ValueError("Hamiltonian register differs from the circuit's")
        if initial_state.num_qubits != circuit.num_qubits:
            raise ValueError("initial state register differs from the circuit's")
        if not hamiltonian.hermitian(1e-10):
            raise ValueError("Hamiltonian is not Hermitian")
        self.circuit = circuit
        self.hamiltonian = hamiltonian
        self.constant_offset = float(hamiltonian.identity_coefficient.real)
        self.initial_state = initial_state.copy()
        self._matrix = hamiltonian.without_identity().to_sparse()
        self._runner = CircuitRunner(circuit)

    def prepare_state(self, params: np.ndarray) -> Statevector:
        params = np.asarray(params, dtype=float)
        if params.shape != (self.circuit.num_params,):
            raise ValueError(
                f"expected {self.circuit.num_params} parameters, "
                f"got shape {params.shape}"
            )
        amps = self._runner.run(params, self.initial_state.amplitudes.copy())
        return Statevector(self.circuit.num_qubits, amps)

    def energy_of(self, state: Statevector) -> float:
        amps = state.amplitudes
        return float(np.vdot(amps, self._matrix @ amps).real) + self.constant_offset

    def evaluate(self, params: np.ndarray) -> float:
        return self.energy_of(self.prepare_state(params))


@dataclass
class TraceRecord:
    iteration: int
    energy: float
    fidelity: float
    occupancy: float
    params: np.ndarray | None = None


@dataclass
class OptimizationTrace:
    """Per-evaluation records plus the terminal summary of one run."""

    records: list[TraceRecord] = field(default_factory=list)
    best_energy: float = np.inf
    best_params: np.ndarray | None = None
    best_fidelity: float = 0.0
    max_fidelity: float = 0.0
    n_evals: int = 0
    status: str = ""

    def to_csv(self) -> str:
        lines = ["iter,energy,fidelity,occupancy"]
        for rec in self.records:
            lines.append(
                f"{rec.iteration},{rec.energy:.17g},{rec.fidelity:.17g},"
                f"{rec.occupancy:.17g}"
            )
        return "\n".join(lines) + "\n"

    def save_csv(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self.to_csv())


def run_optimization(
    objective: Objective,
    ground_space: GroundSpace,
    occupancy_operator: PauliSum | None,
    sites: int,
    optimizer: OptimizerConfig,
    theta0: np.ndarray,
    record_every: int = 1,
    keep_params: bool = False,
) -> OptimizationTrace:
    """Minimize the objective, recording energy/fidelity/occupancy per call.

    The x-axis of the recorded trace is the evaluation counter.  Records
    are thinned to every ``record_every``-th evaluation, but the best and
    maximum statistics always see every evaluation.
    """
    if record_every < 1:
        raise ValueError("record_every must be at least 1")
    trace = OptimizationTrace()
    occupancy_diag = None
    if occupancy_operator is not None:
        dense_diag = np.zeros(1 << objective.circuit.num_qubits)
        for string, coeff in occupancy_operator.terms():
            if string.x_mask:
                raise ValueError("occupancy operator must be diagonal")
            dense_diag += coeff.real * _string_phases(string).real
        occupancy_diag = dense_diag

    counter = 0

    def recorded(theta: np.ndarray) -> float:
        nonlocal counter
        counter += 1
        state = objective.prepare_state(theta)
        energy = objective.energy_of(state)
        fid = fidelity(state, ground_space)
        if occupancy_diag is not None:
            occ = float(occupancy_diag @ np.abs(state.amplitudes) ** 2) / sites
        else:
            occ = float("nan")
        if fid > trace.max_fidelity:
            trace.max_fidelity = fid
        if energy < trace.best_energy:
            trace.best_energy = energy
            trace.best_params = np.array(theta, dtype=float)
            trace.best_fidelity = fid
        if (counter - 1) % record_every == 0:
            trace.records.append(
                TraceRecord(
                    iteration=counter,
                    energy=energy,
                    fidelity=fid,
                    occupancy=occ,
                    params=np.array(theta) if keep_params else None,
                )
            )
        return energy

    result = minimize(recorded, theta0, optimizer)
    trace.n_evals = result.n_evals
    trace.status = result.status
    return trace


def summary_row(
    trace: OptimizationTrace,
    *,
    ansatz: str,
    depth: int,
    strategy: str,
    initial_state: str,
    n_params_per_layer: int,
    n_cnot_per_layer: int,
) -> dict:
    return {
        "ansatz": ansatz,
        "depth": depth,
        "strategy": strategy,
        "initial_state": initial_state,
        "max_fidelity": trace.max_fidelity,
        "best_energy": trace.best_energy,
        "n_evals": trace.n_evals,
        "n_params_per_layer": n_params_per_layer,
        "n_cnot_per_layer": n_cnot_per_layer,
    }


def save_summary(rows: list[dict], path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(rows, fh, indent=2, default=float)
        fh.write("\n")
