"""Command-line entry points: run, sweep, check-hamiltonian, presets."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .experiments import (
    PRESETS,
    ConfigError,
    apply_overrides,
    config_to_text,
    emit_plot_data,
    load_config,
    load_hamiltonian_file,
    output_dir,
    parse_config,
    run_sweep,
    run_vqe,
)
from .vqe import save_summary

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUN = 3


def _load_with_overrides(path: str, overrides: list[str]):
    if path.startswith("preset:"):
        name = path.split(":", 1)[1]
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}")
        text = PRESETS[name]
    else:
        try:
            text = Path(path).read_text(encoding="ascii")
        except OSError as err:
            raise ConfigError(f"cannot read config {path}: {err}") from None
    if overrides:
        text = apply_overrides(text, overrides)
    return parse_config(text)


def _cmd_run(args) -> int:
    try:
        cfg = _load_with_overrides(args.config, args.set or [])
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        trace, row = run_vqe(cfg)
        out = output_dir(cfg)
        out.mkdir(parents=True, exist_ok=True)
        depth = row["depth"]
        trace.save_csv(out / f"trace_{cfg.ansatz}_d{depth}.csv")
        save_summary([row], out / "summary.json")
        emit_plot_data({f"{cfg.ansatz}_d{depth}": trace}, out)
        print(
            f"{cfg.ansatz} d={depth}: max_fidelity={row['max_fidelity']:.17g} "
            f"best_energy={row['best_energy']:.17g} n_evals={row['n_evals']}"
        )
        print(f"artifacts in {out}")
        return EXIT_OK
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as err:
        print(f"run failed: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_RUN


def _cmd_sweep(args) -> int:
    try:
        cfg = _load_with_overrides(args.config, args.set or [])
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        rows, failures = run_sweep(cfg, jobs=args.jobs)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as err:
        print(f"sweep failed: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_RUN
    for row in rows:
        print(
            f"{row['ansatz']} d={row['depth']}: "
            f"max_fidelity={row['max_fidelity']:.17g} "
            f"best_energy={row['best_energy']:.17g} n_evals={row['n_evals']}"
        )
    for depth, error in failures:
        print(f"d={depth} failed: {error}", file=sys.stderr)
    print(f"artifacts in {output_dir(cfg)}")
    return EXIT_RUN if failures else EXIT_OK


def _cmd_check_hamiltonian(args) -> int:
    try:
        ham, metadata = load_hamiltonian_file(args.file)
    except (OSError, ValueError) as err:
        print(f"invalid Hamiltonian file: {err}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"qubits: {ham.num_qubits}")
    print(f"terms: {ham.num_terms}")
    print(f"hermitian: {ham.hermitian()}")
    ident = ham.identity_coefficient
    print(f"identity coefficient: {ident.real:.17g}")
    for key, value in sorted(metadata.items()):
        print(f"metadata {key} = {value}")
    return EXIT_OK


def _cmd_presets(args) -> int:
    if args.write:
        target = Path(args.write)
        target.mkdir(parents=True, exist_ok=True)
        for name, text in sorted(PRESETS.items()):
            (target / f"{name}.ini").write_text(text.lstrip(), encoding="ascii")
        print(f"wrote {len(PRESETS)} preset configs to {target}")
        return EXIT_OK
    for name, text in sorted(PRESETS.items()):
        cfg = parse_config(text)
        if cfg.lattice is not None:
            problem = f"{cfg.lattice.rows}x{cfg.lattice.cols} Hubbard"
        else:
            problem = f"file {cfg.hamiltonian_file}"
        depths = ",".join(str(d) for d in cfg.depths)
        print(f"{name:28s} {problem:24s} {cfg.ansatz:6s} d={depths}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qocavqe",
        description="Statevector VQE workbench for drive-augmented ansatz circuits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a single (ansatz, depth) experiment")
    p_run.add_argument("config", help="config file path or preset:<name>")
    p_run.add_argument(
        "--set", action="append", metavar="SECTION.KEY=VALUE",
        help="override a config entry (repeatable)",
    )
    p_run.set_defaults(fn=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run every depth in the config")
    p_sweep.add_argument("config", help="config file path or preset:<name>")
    p_sweep.add_argument("--jobs", type=int, default=1, help="worker processes")
    p_sweep.add_argument("--set", action="append", metavar="SECTION.KEY=VALUE")
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_check = sub.add_parser(
        "check-hamiltonian", help="validate an interchange-format Hamiltonian"
    )
    p_check.add_argument("file")
    p_check.set_defaults(fn=_cmd_check_hamiltonian)

    p_presets = sub.add_parser("presets", help="list or write the named presets")
    p_presets.add_argument("--write", metavar="DIR", help="write preset .ini files")
    p_presets.set_defaults(fn=_cmd_presets)

    args = parser.parse_args(argv)
    return args.fn(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
