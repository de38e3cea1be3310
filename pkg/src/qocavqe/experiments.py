"""Declarative experiment runner.

A single INI-style config file describes the problem (lattice model or a
Hamiltonian interchange file), the ansatz and depth list, the initial
state, and the optimizer.  ``run_vqe`` executes one (ansatz, depth) point;
``run_sweep`` iterates the depth list, records the bare initial state as
the depth-0 row, and writes the trace/summary artifacts.
"""

from __future__ import annotations

import configparser
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .circuits import (
    ANSATZ_BUILDERS,
    Circuit,
    Parametrization,
    build_ftvha,
    build_hea,
    build_qoca,
    build_sqoca,
    build_vha,
    count_resources,
)
from .fermions import (
    INITIAL_STATE_KINDS,
    LatticeSpec,
    jw_hubbard,
    jw_total_number,
    prepare_initial_state,
)
from .optimizers import OptimizerConfig
from .paulis import PauliSum
from .statevector import GroundSpace, Statevector, exact_ground_space, fidelity
from .vqe import (
    Objective,
    OptimizationTrace,
    TraceRecord,
    run_optimization,
    save_summary,
    summary_row,
)

ANSATZ_KINDS = ("hea", "vha", "ftvha", "qoca", "sqoca")


class ConfigError(ValueError):
    """Raised when an experiment description is invalid."""


@dataclass
class ExperimentConfig:
    """Validated description of one experiment."""

    # problem: exactly one of lattice / hamiltonian_file is set
    lattice: LatticeSpec | None = None
    hamiltonian_file: str | None = None
    num_qubits: int | None = None
    # ansatz
    ansatz: str = "qoca"
    depths: tuple[int, ...] = (1,)
    strategy: Parametrization = Parametrization.FULL
    chain_t: float = 1.0
    chain_u: float = 4.0
    chain_mu: float = 2.0
    # initial state
    initial_state: str = "plus_all"
    initial_bits: str | None = None
    # optimizer
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    theta_init: str = "auto"  # auto | zero | random
    # output
    output_dir: str = "runs"
    record_every: int = 1


def _parse_lattice(section) -> LatticeSpec:
    try:
        return LatticeSpec(
            rows=section.getint("rows"),
            cols=section.getint("cols"),
            periodic=section.getboolean("periodic", fallback=False),
            t=section.getfloat("t", fallback=1.0),
            u=section.getfloat("U", fallback=4.0),
            mu=section.getfloat("mu", fallback=2.0),
        )
    except (TypeError, ValueError) as err:
        raise ConfigError(f"invalid lattice: {err}") from None


def parse_config(text: str) -> ExperimentConfig:
    """Parse and fully validate an experiment config.

    Every accepted config either runs or is rejected here, before any
    computation starts.
    """
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as err:
        raise ConfigError(f"config parse error: {err}") from None

    cfg = ExperimentConfig()

    if "problem" not in parser:
        raise ConfigError("missing [problem] section")
    prob = parser["problem"]
    kind = prob.get("type", "lattice")
    if kind == "lattice":
        cfg.lattice = _parse_lattice(prob)
    elif kind == "hamiltonian_file":
        path = prob.get("hamiltonian_file")
        if not path:
            raise ConfigError("problem type hamiltonian_file needs a path")
        cfg.hamiltonian_file = path
        try:
            cfg.num_qubits = prob.getint("num_qubits")
        except (TypeError, ValueError):
            raise ConfigError("hamiltonian_file problems need num_qubits") from None
        if cfg.num_qubits is None:
            raise ConfigError("hamiltonian_file problems need num_qubits")
    else:
        raise ConfigError(f"unknown problem type {kind!r}")

    ans = parser["ansatz"] if "ansatz" in parser else {}
    cfg.ansatz = ans.get("kind", cfg.ansatz)
    if cfg.ansatz not in ANSATZ_KINDS:
        raise ConfigError(f"unknown ansatz {cfg.ansatz!r}")
    depths_raw = ans.get("depths", "1")
    try:
        depths = tuple(int(d) for d in depths_raw.replace(",", " ").split())
    except ValueError:
        raise ConfigError(f"invalid depth list {depths_raw!r}") from None
    if not depths or any(d < 0 for d in depths):
        raise ConfigError("depth list must be nonempty and nonnegative")
    cfg.depths = depths
    strategy = ans.get("strategy", "full")
    try:
        cfg.strategy = Parametrization(strategy)
    except ValueError:
        raise ConfigError(f"unknown strategy {strategy!r}") from None
    for key, attr in (("chain_t", "chain_t"), ("chain_u", "chain_u"), ("chain_mu", "chain_mu")):
        if key in ans:
            setattr(cfg, attr, float(ans[key]))

    init = parser["initial_state"] if "initial_state" in parser else {}
    cfg.initial_state = init.get("kind", cfg.initial_state)
    cfg.initial_bits = init.get("bits", None) or None
    if cfg.initial_state not in INITIAL_STATE_KINDS + ("hf",):
        raise ConfigError(f"unknown initial state {cfg.initial_state!r}")

    opt = parser["optimizer"] if "optimizer" in parser else {}
    try:
        cfg.optimizer = OptimizerConfig(
            method=opt.get("method", "cobyla"),
            max_evals=int(float(opt.get("max_evals", "100000"))),
            rho_begin=float(opt.get("rho_begin", "0.5")),
            rho_end=float(opt.get("rho_end", "1e-6")),
            seed=int(opt.get("seed", "0")),
        )
    except ValueError as err:
        raise ConfigError(f"invalid optimizer settings: {err}") from None
    cfg.theta_init = opt.get("init", "auto")
    if cfg.theta_init not in ("auto", "zero", "random"):
        raise ConfigError(f"unknown init mode {cfg.theta_init!r}")

    out = parser["output"] if "output" in parser else {}
    cfg.output_dir = out.get("dir", cfg.output_dir)
    try:
        cfg.record_every = int(out.get("record_every", "1"))
    except ValueError:
        raise ConfigError("record_every must be an integer") from None
    if cfg.record_every < 1:
        raise ConfigError("record_every must be at least 1")

    _validate_combination(cfg)
    return cfg


def _validate_combination(cfg: ExperimentConfig) -> None:
    if cfg.lattice is not None:
        needs_chain = cfg.ansatz == "ftvha" or cfg.initial_state.startswith("omega")
        if needs_chain:
            try:
                cfg.lattice.as_periodic_chain()
            except ValueError as err:
                raise ConfigError(str(err)) from None
    else:
        if cfg.ansatz == "ftvha":
            raise ConfigError("ftvha is not defined for file Hamiltonians")
        if cfg.initial_state.startswith("omega") or cfg.initial_state == "noninteracting":
            raise ConfigError(
                f"{cfg.initial_state} initial state needs a lattice problem"
            )
        if cfg.num_qubits % 2 != 0:
            raise ConfigError("file Hamiltonians need an even qubit count")
    if cfg.initial_state == "computational" and cfg.initial_bits is None:
        raise ConfigError("computational initial state needs bits")


def load_config(path: str) -> ExperimentConfig:
    if path.startswith("preset:"):
        name = path.split(":", 1)[1]
        if name not in PRESETS:
            raise ConfigError(
                f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
            )
        return parse_config(PRESETS[name])
    try:
        text = Path(path).read_text(encoding="ascii")
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from None
    return parse_config(text)


def apply_overrides(cfg_text: str, overrides: list[str]) -> str:
    """Apply ``section.key=value`` CLI overrides on top of a config text."""
    parser = configparser.ConfigParser()
    parser.read_string(cfg_text)
    for item in overrides:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigError(f"override must look like section.key=value: {item!r}")
        target, value = item.split("=", 1)
        section, key = target.split(".", 1)
        if section not in parser:
            parser.add_section(section)
        parser[section][key] = value
    out = []
    for section in parser.sections():
        out.append(f"[{section}]")
        for key, value in parser[section].items():
            out.append(f"{key} = {value}")
        out.append("")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# Hamiltonian interchange files


def load_hamiltonian_file(path) -> tuple[PauliSum, dict]:
    """Load an interchange-format Hamiltonian plus its comment metadata.

    Metadata lines look like ``# key=value``.  The sum must be Hermitian.
    """
    text = Path(path).read_text(encoding="ascii")
    metadata = {}
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("#") and "=" in stripped:
            key, _, value = stripped.lstrip("# ").partition("=")
            metadata[key.strip()] = value.strip()
    ham = PauliSum.loads(text)
    if not ham.hermitian(1e-10):
        raise ValueError(f"{path}: Hamiltonian is not Hermitian")
    return ham, metadata


# ---------------------------------------------------------------------------
# Problem assembly


@dataclass
class PreparedProblem:
    hamiltonian: PauliSum
    num_qubits: int
    sites: int
    ansatz_lattice: LatticeSpec | None  # lattice the circuits are built from
    problem_lattice: LatticeSpec | None  # None for file Hamiltonians
    ground_space: GroundSpace
    metadata: dict = field(default_factory=dict)


def prepare_problem(cfg: ExperimentConfig) -> PreparedProblem:
    if cfg.lattice is not None:
        lattice = cfg.lattice
        if cfg.ansatz == "ftvha" or cfg.initial_state.startswith("omega"):
            # Fourier-based features run in the periodic-chain labeling; the
            # Hamiltonian, ansatz and diagnostics all use the same frame.
            lattice = lattice.as_periodic_chain()
        ham = jw_hubbard(lattice)
        return PreparedProblem(
            hamiltonian=ham,
            num_qubits=lattice.num_orbitals,
            sites=lattice.num_sites,
            ansatz_lattice=lattice,
            problem_lattice=lattice,
            ground_space=exact_ground_space(ham),
        )
    ham, metadata = load_hamiltonian_file(cfg.hamiltonian_file)
    if ham.num_qubits != cfg.num_qubits:
        raise ConfigError(
            f"hamiltonian file has {ham.num_qubits} qubits, config says "
            f"{cfg.num_qubits}"
        )
    sites = cfg.num_qubits // 2
    chain = LatticeSpec(
        1, sites, periodic=False, t=cfg.chain_t, u=cfg.chain_u, mu=cfg.chain_mu
    )
    return PreparedProblem(
        hamiltonian=ham,
        num_qubits=cfg.num_qubits,
        sites=sites,
        ansatz_lattice=chain,
        problem_lattice=None,
        ground_space=exact_ground_space(ham),
        metadata=metadata,
    )


def build_ansatz(cfg: ExperimentConfig, depth: int, problem: PreparedProblem) -> Circuit:
    if cfg.ansatz == "hea":
        return build_hea(problem.num_qubits, depth)
    if cfg.ansatz == "vha":
        return build_vha(problem.ansatz_lattice, depth, cfg.strategy)
    if cfg.ansatz == "ftvha":
        return build_ftvha(problem.ansatz_lattice, depth, cfg.strategy)
    if cfg.ansatz == "qoca":
        return build_qoca(problem.ansatz_lattice, depth, cfg.strategy)
    if cfg.ansatz == "sqoca":
        return build_sqoca(problem.ansatz_lattice, depth, cfg.strategy)
    raise ConfigError(f"unknown ansatz {cfg.ansatz!r}")


def initial_statevector(cfg: ExperimentConfig, problem: PreparedProblem) -> Statevector:
    kind = cfg.initial_state
    if kind == "hf":
        bits = cfg.initial_bits or problem.metadata.get("hf_bitstring")
        if not bits:
            raise ConfigError(
                "hf initial state needs bits in the config or an "
                "hf_bitstring metadata comment in the Hamiltonian file"
            )
        return prepare_initial_state("computational", problem.num_qubits, bits=bits)
    return prepare_initial_state(
        kind,
        problem.num_qubits,
        lattice=problem.ansatz_lattice,
        bits=cfg.initial_bits,
    )


def initial_parameters(cfg: ExperimentConfig, circuit: Circuit) -> np.ndarray:
    """Zero start for every ansatz except the short drive ansatz.

    The short ansatz converges prematurely from zero, so it draws uniform
    angles from the configured seed; ``init`` overrides the rule.
    """
    mode = cfg.theta_init
    if mode == "auto":
        mode = "random" if cfg.ansatz == "sqoca" else "zero"
    if mode == "zero":
        return np.zeros(circuit.num_params)
    rng = np.random.default_rng(cfg.optimizer.seed)
    return rng.uniform(-np.pi, np.pi, circuit.num_params)


# ---------------------------------------------------------------------------
# Running


def run_vqe(cfg: ExperimentConfig, depth: int | None = None):
    """Execute one (ansatz, depth) optimization; returns (trace, summary row).

    ``depth=None`` requires the config to carry exactly one depth.
    """
    if depth is None:
        if len(cfg.depths) != 1:
            raise ConfigError("run needs exactly one depth; use sweep for lists")
        depth = cfg.depths[0]
    problem = prepare_problem(cfg)
    init = initial_statevector(cfg, problem)
    number_op = jw_total_number(problem.num_qubits)

    if depth == 0:
        # Bare initial state: the depth-0 row of the sweeps.
        energy = init.expectation(problem.hamiltonian)
        fid = fidelity(init, problem.ground_space)
        occ = init.expectation(number_op) / problem.sites
        trace = OptimizationTrace(
            records=[TraceRecord(0, energy, fid, occ)],
            best_energy=energy,
            best_params=np.zeros(0),
            best_fidelity=fid,
            max_fidelity=fid,
            n_evals=0,
            status="initial-state",
        )
        row = summary_row(
            trace,
            ansatz=cfg.ansatz,
            depth=0,
            strategy=cfg.strategy.value,
            initial_state=cfg.initial_state,
            n_params_per_layer=0,
            n_cnot_per_layer=0,
        )
        return trace, row

    circuit = build_ansatz(cfg, depth, problem)
    objective = Objective(circuit, problem.hamiltonian, init)
    theta0 = initial_parameters(cfg, circuit)
    trace = run_optimization(
        objective,
        problem.ground_space,
        number_op,
        problem.sites,
        cfg.optimizer,
        theta0,
        record_every=cfg.record_every,
    )
    counts = count_resources(circuit)
    row = summary_row(
        trace,
        ansatz=cfg.ansatz,
        depth=depth,
        strategy=cfg.strategy.value,
        initial_state=cfg.initial_state,
        n_params_per_layer=counts.n_params_per_layer,
        n_cnot_per_layer=counts.n_cnot_per_layer,
    )
    return trace, row


def _sweep_point(args):
    text, depth = args
    cfg = parse_config(text)
    try:
        trace, row = run_vqe(cfg, depth)
        return depth, row, trace.to_csv(), None
    except Exception as err:  # recorded, sweep continues
        return depth, None, None, f"{type(err).__name__}: {err}"


def config_to_text(cfg: ExperimentConfig) -> str:
    """Serialize a config back to INI (used to ship configs to workers)."""
    lines = ["[problem]"]
    if cfg.lattice is not None:
        lat = cfg.lattice
        lines += [
            "type = lattice",
            f"rows = {lat.rows}",
            f"cols = {lat.cols}",
            f"periodic = {str(lat.periodic).lower()}",
            f"t = {lat.t!r}",
            f"U = {lat.u!r}",
            f"mu = {lat.mu!r}",
        ]
    else:
        lines += [
            "type = hamiltonian_file",
            f"hamiltonian_file = {cfg.hamiltonian_file}",
            f"num_qubits = {cfg.num_qubits}",
        ]
    lines += [
        "",
        "[ansatz]",
        f"kind = {cfg.ansatz}",
        f"depths = {','.join(str(d) for d in cfg.depths)}",
        f"strategy = {cfg.strategy.value}",
        f"chain_t = {cfg.chain_t!r}",
        f"chain_u = {cfg.chain_u!r}",
        f"chain_mu = {cfg.chain_mu!r}",
        "",
        "[initial_state]",
        f"kind = {cfg.initial_state}",
    ]
    if cfg.initial_bits:
        lines.append(f"bits = {cfg.initial_bits}")
    lines += [
        "",
        "[optimizer]",
        f"method = {cfg.optimizer.method}",
        f"max_evals = {cfg.optimizer.max_evals}",
        f"rho_begin = {cfg.optimizer.rho_begin!r}",
        f"rho_end = {cfg.optimizer.rho_end!r}",
        f"seed = {cfg.optimizer.seed}",
        f"init = {cfg.theta_init}",
        "",
        "[output]",
        f"dir = {cfg.output_dir}",
        f"record_every = {cfg.record_every}",
        "",
    ]
    return "\n".join(lines)


def output_dir(cfg: ExperimentConfig) -> Path:
    return Path(os.environ.get("QOCA_OUT", cfg.output_dir))


def run_sweep(cfg: ExperimentConfig, jobs: int = 1):
    """Run every depth in the config; returns (summary rows, failures).

    Per-run trace CSVs land in the output directory; the summary is written
    once at the end in depth order, so reruns are byte-identical.
    """
    out = output_dir(cfg)
    out.mkdir(parents=True, exist_ok=True)
    work = [(config_to_text(cfg), d) for d in cfg.depths]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_point, work))
    else:
        results = [_sweep_point(w) for w in work]
    rows = []
    failures = []
    for depth, row, csv_text, error in sorted(results, key=lambda r: r[0]):
        if error is not None:
            failures.append((depth, error))
            continue
        trace_path = out / f"trace_{cfg.ansatz}_d{depth}.csv"
        trace_path.write_text(csv_text, encoding="ascii")
        rows.append(row)
    save_summary(rows, out / "summary.json")
    return rows, failures


def emit_plot_data(traces: dict[str, OptimizationTrace], out_dir) -> list[Path]:
    """Write tidy long-format CSVs for the convergence panels.

    ``infidelity.csv`` and ``occupancy.csv`` carry ``series,iter,value``
    rows; ``final_infidelity.csv`` has one row per series with its best
    infidelity (for depth sweeps).
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, column in (("infidelity", "fidelity"), ("occupancy", "occupancy")):
        lines = ["series,iter,value"]
        for series, trace in traces.items():
            for rec in trace.records:
                value = 1.0 - rec.fidelity if column == "fidelity" else rec.occupancy
                lines.append(f"{series},{rec.iteration},{value:.17g}")
        path = out / f"{name}.csv"
        path.write_text("\n".join(lines) + "\n", encoding="ascii")
        paths.append(path)
    lines = ["series,final_infidelity"]
    for series, trace in traces.items():
        lines.append(f"{series},{1.0 - trace.max_fidelity:.17g}")
    path = out / "final_infidelity.csv"
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    paths.append(path)
    return paths


# ---------------------------------------------------------------------------
# Presets: the experiments behind the tables and figures


PRESETS: dict[str, str] = {
    "dimer_vha": """
[problem]
type = lattice
rows = 2
cols = 1

[ansatz]
kind = vha
depths = 1

[initial_state]
kind = noninteracting

[optimizer]
method = nelder-mead
max_evals = 5000

[output]
dir = runs/dimer_vha
""",
    "dimer_qoca": """
[problem]
type = lattice
rows = 2
cols = 1

[ansatz]
kind = qoca
depths = 1

[initial_state]
kind = plus_all

[optimizer]
method = nelder-mead
max_evals = 5000
init = zero

[output]
dir = runs/dimer_qoca
""",
    "dimer_sqoca": """
[problem]
type = lattice
rows = 2
cols = 1

[ansatz]
kind = sqoca
depths = 1

[initial_state]
kind = plus_all

[optimizer]
method = nelder-mead
max_evals = 5000
init = zero

[output]
dir = runs/dimer_sqoca
""",
    "dimer_hea": """
[problem]
type = lattice
rows = 2
cols = 1

[ansatz]
kind = hea
depths = 2

[initial_state]
kind = plus_all

[optimizer]
method = nelder-mead
max_evals = 5000

[output]
dir = runs/dimer_hea
""",
    "hubbard_2x2_qoca": """
[problem]
type = lattice
rows = 2
cols = 2

[ansatz]
kind = qoca
depths = 4

[initial_state]
kind = plus_all

[optimizer]
max_evals = 100000

[output]
dir = runs/hubbard_2x2_qoca
record_every = 10
""",
    "hubbard_2x2_qoca_scalable": """
[problem]
type = lattice
rows = 2
cols = 2

[ansatz]
kind = qoca
depths = 10
strategy = scalable

[initial_state]
kind = plus_all

[optimizer]
max_evals = 100000

[output]
dir = runs/hubbard_2x2_qoca_scalable
record_every = 10
""",
    "hubbard_2x2_vha_sweep": """
[problem]
type = lattice
rows = 2
cols = 2

[ansatz]
kind = vha
depths = 0,1,2,3,4,5,6,7,8

[initial_state]
kind = plus_all

[optimizer]
max_evals = 100000

[output]
dir = runs/hubbard_2x2_vha_sweep
record_every = 10
""",
    "hubbard_2x2_sqoca": """
[problem]
type = lattice
rows = 2
cols = 2

[ansatz]
kind = sqoca
depths = 9

[initial_state]
kind = plus_all

[optimizer]
max_evals = 100000
seed = 11

[output]
dir = runs/hubbard_2x2_sqoca
record_every = 10
""",
    "hubbard_2x2_ftvha": """
[problem]
type = lattice
rows = 2
cols = 2

[ansatz]
kind = ftvha
depths = 7

[initial_state]
kind = plus_all

[optimizer]
max_evals = 100000

[output]
dir = runs/hubbard_2x2_ftvha
record_every = 10
""",
    "hubbard_2x3_qoca": """
[problem]
type = lattice
rows = 2
cols = 3

[ansatz]
kind = qoca
depths = 9

[initial_state]
kind = plus_all

[optimizer]
max_evals = 100000

[output]
dir = runs/hubbard_2x3_qoca
record_every = 10
""",
    "hubbard_2x3_vha": """
[problem]
type = lattice
rows = 2
cols = 3

[ansatz]
kind = vha
depths = 10

[initial_state]
kind = plus_all

[optimizer]
max_evals = 100000

[output]
dir = runs/hubbard_2x3_vha
record_every = 10
""",
    "h2o_qoca": """
[problem]
type = hamiltonian_file
hamiltonian_file = tests/fixtures/h2o_sto3g_frozen_core.txt
num_qubits = 12

[ansatz]
kind = qoca
depths = 1,5

[initial_state]
kind = plus_all

[optimizer]
max_evals = 100000

[output]
dir = runs/h2o_qoca
record_every = 10
""",
    "h2o_qoca_hf": """
[problem]
type = hamiltonian_file
hamiltonian_file = tests/fixtures/h2o_sto3g_frozen_core.txt
num_qubits = 12

[ansatz]
kind = qoca
depths = 1

[initial_state]
kind = hf

[optimizer]
max_evals = 100000

[output]
dir = runs/h2o_qoca_hf
record_every = 10
""",
}
