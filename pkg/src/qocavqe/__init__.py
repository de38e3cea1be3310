"""Statevector VQE workbench for drive-augmented ansatz circuits."""

from .circuits import (
    Circuit,
    CircuitRunner,
    GateDescriptor,
    Parametrization,
    ResourceCount,
    build_ftvha,
    build_hea,
    build_qoca,
    build_sqoca,
    build_vha,
    compile_to_cnot,
    count_resources,
)
from .experiments import (
    ConfigError,
    ExperimentConfig,
    emit_plot_data,
    load_config,
    load_hamiltonian_file,
    parse_config,
    run_sweep,
    run_vqe,
)
from .fermions import (
    DriveKind,
    DriveSpec,
    FermionSum,
    FermionTerm,
    LatticeSpec,
    RegisterBlock,
    build_drive,
    build_hubbard,
    fourier_unitary,
    jw_hubbard,
    jw_ladder,
    jw_total_number,
    jw_transform,
    prepare_initial_state,
)
from .optimizers import OptimizationResult, OptimizerConfig, minimize
from .paulis import PauliString, PauliSum, commutator_is_zero, pauli_mul
from .statevector import (
    GroundSpace,
    Statevector,
    exact_ground_space,
    fidelity,
    site_occupancy,
)
from .vqe import Objective, OptimizationTrace, TraceRecord, run_optimization

__all__ = [
    "Circuit",
    "CircuitRunner",
    "ConfigError",
    "DriveKind",
    "DriveSpec",
    "ExperimentConfig",
    "FermionSum",
    "FermionTerm",
    "GateDescriptor",
    "GroundSpace",
    "LatticeSpec",
    "Objective",
    "OptimizationResult",
    "OptimizationTrace",
    "OptimizerConfig",
    "Parametrization",
    "PauliString",
    "PauliSum",
    "RegisterBlock",
    "ResourceCount",
    "Statevector",
    "TraceRecord",
    "build_drive",
    "build_ftvha",
    "build_hea",
    "build_hubbard",
    "build_qoca",
    "build_sqoca",
    "build_vha",
    "commutator_is_zero",
    "compile_to_cnot",
    "count_resources",
    "emit_plot_data",
    "exact_ground_space",
    "fidelity",
    "fourier_unitary",
    "jw_hubbard",
    "jw_ladder",
    "jw_total_number",
    "jw_transform",
    "load_config",
    "load_hamiltonian_file",
    "minimize",
    "parse_config",
    "pauli_mul",
    "prepare_initial_state",
    "run_optimization",
    "run_sweep",
    "run_vqe",
    "site_occupancy",
]
