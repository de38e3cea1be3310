# Watching the particle-number symmetry during optimization: the
# Hamiltonian ansatz stays pinned to half filling while the drive terms
# let QOCA leave the sector and come back.
#
# Run with:  python demos/05_symmetry_excursions.py
# (a few minutes: two optimizations on the 2x2 plaquette)

import numpy as np

from qocavqe import (
    LatticeSpec,
    Objective,
    OptimizerConfig,
    build_qoca,
    build_vha,
    emit_plot_data,
    exact_ground_space,
    jw_hubbard,
    jw_total_number,
    prepare_initial_state,
    run_optimization,
)

plaquette = LatticeSpec(2, 2, t=1.0, u=4.0, mu=2.0)
hamiltonian = jw_hubbard(plaquette)
ground = exact_ground_space(hamiltonian)
number = jw_total_number(8)
plus = prepare_initial_state("plus_all", 8)
config = OptimizerConfig(max_evals=20000)

traces = {}
for name, circuit in (
    ("vha_d4", build_vha(plaquette, 4)),
    ("qoca_d4", build_qoca(plaquette, 4)),
):
    objective = Objective(circuit, hamiltonian, plus)
    trace = run_optimization(
        objective, ground, number, 4, config,
        np.zeros(circuit.num_params), record_every=10,
    )
    traces[name] = trace
    occupancies = np.array([rec.occupancy for rec in trace.records])
    print(
        f"{name}: max fidelity {trace.max_fidelity:.4f}, occupancy range "
        f"[{occupancies.min():.6f}, {occupancies.max():.6f}]"
    )

print(
    "\nthe drive-augmented run leaves <N>/L = 1 by "
    f"{max(abs(r.occupancy - 1.0) for r in traces['qoca_d4'].records):.4f} "
    "at its largest excursion, then returns toward half filling;"
)
print("the Hamiltonian ansatz never moves it at all.")

paths = emit_plot_data(traces, "runs/demo_symmetry")
print("\nplot-ready CSV written to:")
for path in paths:
    print(" ", path)
