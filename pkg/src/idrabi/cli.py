"""Command-line interface.

Subcommands: spectrum, sweep, evolve, susy, converge.  Every flag can also
come from a JSON config (--config path, unknown keys rejected); explicit
flags win over the file, the file wins over defaults, and the resolved
configuration is echoed into each output (a '# config:' line in CSV, a
"config" field in JSON).  Exit codes: 0 success, 2 bad configuration or
domain error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .eigen import eigen_tridiagonal, ground_energy_vs_size
from .errors import EigensolverError
from .evolution import LatticeState, detect_revivals, evolve, site_state
from .model import ModelParams, Parity, build_hamiltonian
from .serialize import write_csv, write_json, atomic_write_text
from .susy import build_susy_pair, verify_isospectrality
from .sweep import analyze_crossings, evolution_svg, sweep_spectrum, sweep_svg

_MODEL = [
    ("omega", "float", 1.0, "mode frequency (energy unit)"),
    ("omega0", "float", 0.0, "qubit splitting"),
    ("g", "float", 0.0, "coupling strength"),
    ("k", "float", 0.5, "Bargmann index"),
]

_SCHEMAS = {
    "spectrum": _MODEL
    + [
        ("size", "int", 200, "truncation size"),
        ("levels", "int", 10, "levels to report"),
        ("format", "str", "csv", "output format: csv or json"),
        ("out", "str", "spectrum", "output path base"),
    ],
    "sweep": _MODEL
    + [
        ("sweep", "str", "omega0", "swept parameter: omega0 or g"),
        ("min", "float", 0.0, "grid start"),
        ("max", "float", 3.0, "grid end"),
        ("points", "int", 121, "grid points"),
        ("size", "int", 300, "truncation size"),
        ("levels", "int", 8, "levels per parity"),
        ("gap_tol", "float", 1e-6, "avoided-crossing reporting tolerance"),
        ("svg", "bool", False, "also write an SVG of the branches"),
        ("out", "str", "sweep", "output path base"),
    ],
    "evolve": _MODEL
    + [
        ("parity", "str", "+", "parity sector: + or -"),
        ("size", "int", 200, "truncation size"),
        ("tmax", "float", 40.0, "propagation span"),
        ("samples", "int", 1024, "uniform samples on [0, tmax]"),
        ("threshold", "float", 0.5, "revival detection threshold"),
        ("initial", "str", None, "JSON amplitude file (default: all on site 0)"),
        ("dump_amplitudes", "bool", False, "also write the full amplitude history"),
        ("svg", "bool", False, "also write an SVG of the observables"),
        ("out", "str", "evolve", "output path base"),
    ],
    "susy": _MODEL
    + [
        ("size", "int", 400, "truncation size"),
        ("levels", "int", 10, "levels to compare"),
        ("tol", "float", 1e-6, "isospectrality tolerance"),
        ("out", "str", "susy", "output path base"),
    ],
    "converge": _MODEL
    + [
        ("parity", "str", "+", "parity sector: + or -"),
        ("sizes", "intlist", [100, 200, 400], "comma-separated truncation sizes"),
        ("levels", "int", 1, "levels to track"),
        ("tol", "float", None, "convergence tolerance (default 1e-8 * omega)"),
        ("out", "str", "converge", "output path base"),
    ],
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved flag values for one subcommand run."""

    command: str
    values: dict

    def __getitem__(self, key):
        return self.values[key]

    def params(self) -> ModelParams:
        return ModelParams(
            omega=self["omega"], omega0=self["omega0"], g=self["g"], k=self["k"]
        )

    def parity(self) -> Parity:
        return Parity.from_label(self["parity"])

    def to_dict(self) -> dict:
        return {"command": self.command, **self.values}


def _coerce(name: str, kind: str, value):
    if value is None:
        return None
    if kind == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"{name} must be a number, got {value!r}")
        return float(value)
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"{name} must be an integer, got {value!r}")
        return int(value)
    if kind == "str":
        if not isinstance(value, str):
            raise ValueError(f"{name} must be a string, got {value!r}")
        return value
    if kind == "bool":
        if not isinstance(value, bool):
            raise ValueError(f"{name} must be a boolean, got {value!r}")
        return value
    if kind == "intlist":
        if isinstance(value, str):
            value = [part for part in value.split(",") if part.strip()]
            try:
                value = [int(part) for part in value]
            except ValueError:
                raise ValueError(f"{name} must be comma-separated integers") from None
        if not isinstance(value, list) or not value:
            raise ValueError(f"{name} must be a non-empty list of integers")
        out = []
        for item in value:
            if isinstance(item, bool) or not isinstance(item, int):
                raise ValueError(f"{name} entries must be integers, got {item!r}")
            out.append(int(item))
        return out
    raise AssertionError(kind)


def resolve_config(command: str, args: argparse.Namespace) -> RunConfig:
    """Layer defaults <- config file <- explicit flags, rejecting unknown keys."""
    schema = _SCHEMAS[command]
    names = [name for name, _, _, _ in schema]
    values = {name: default for name, _, default, _ in schema}

    if args.config is not None:
        text = Path(args.config).read_text(encoding="utf-8")
        loaded = json.loads(text)
        if not isinstance(loaded, dict):
            raise ValueError(f"config file {args.config} must hold a JSON object")
        unknown = sorted(set(loaded) - set(names))
        if unknown:
            raise ValueError(f"unknown config keys for '{command}': {', '.join(unknown)}")
        for name, kind, _, _ in schema:
            if name in loaded:
                values[name] = _coerce(name, kind, loaded[name])

    for name, kind, _, _ in schema:
        given = getattr(args, name)
        if given is not None:
            values[name] = _coerce(name, kind, given)
    return RunConfig(command=command, values=values)


def _report(path: Path) -> None:
    print(f"wrote {path}")


def cmd_spectrum(cfg: RunConfig) -> int:
    params = cfg.params()
    size, levels = cfg["size"], cfg["levels"]
    if not 1 <= levels <= size:
        raise ValueError(f"need 1 <= levels <= size, got levels={levels} size={size}")
    fmt = cfg["format"]
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
    results = [
        eigen_tridiagonal(build_hamiltonian(params, parity, size))
        for parity in (Parity.POSITIVE, Parity.NEGATIVE)
    ]
    base = Path(cfg["out"])
    if fmt == "csv":
        rows = []
        for result in results:
            parity = result.source.parity.value
            rows.extend((parity, i, v) for i, v in result.to_rows(levels))
        _report(write_csv(Path(f"{base}.csv"), ("parity", "index", "eigenvalue"), rows, cfg.to_dict()))
    else:
        payload = {
            "config": cfg.to_dict(),
            "results": [
                {"hamiltonian": r.source.to_dict(), **r.to_dict(levels)} for r in results
            ],
        }
        _report(write_json(Path(f"{base}.json"), payload))
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    which = cfg["sweep"]
    grid = np.linspace(cfg["min"], cfg["max"], cfg["points"])
    result = sweep_spectrum(cfg.params(), which, grid, cfg["levels"], cfg["size"])
    report = analyze_crossings(result, cfg["gap_tol"])
    base = Path(cfg["out"])
    _report(
        write_csv(
            Path(f"{base}_branches.csv"),
            ("parameter", "parity", "level", "energy", "converged"),
            result.to_rows(),
            cfg.to_dict(),
        )
    )
    _report(
        write_json(Path(f"{base}_crossings.json"), {"config": cfg.to_dict(), **report.to_dict()})
    )
    if cfg["svg"]:
        _report(atomic_write_text(Path(f"{base}.svg"), sweep_svg(result)))
    return 0


def _load_initial(path: str, parity: Parity) -> LatticeState:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, dict):
        if "amplitudes" not in data:
            raise ValueError(f"initial state file {path} lacks an 'amplitudes' key")
        if "parity" in data and Parity.from_label(data["parity"]) is not parity:
            raise ValueError("initial state parity does not match --parity")
        data = data["amplitudes"]
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim == 3:  # full history dump: restart from its first sample
        arr = arr[0]
    return LatticeState.from_pairs(arr, parity)


def cmd_evolve(cfg: RunConfig) -> int:
    params = cfg.params()
    parity = cfg.parity()
    h = build_hamiltonian(params, parity, cfg["size"])
    if cfg["initial"] is None:
        initial = site_state(cfg["size"], 0, parity)
    else:
        initial = _load_initial(cfg["initial"], parity)
    trace = evolve(h, initial, cfg["tmax"], cfg["samples"])
    revivals = detect_revivals(trace, cfg["threshold"])

    base = Path(cfg["out"])
    _report(
        write_csv(
            Path(f"{base}_trace.csv"),
            ("t", "site0_intensity", "mean_n", "sigma_z"),
            trace.to_rows(),
            cfg.to_dict(),
        )
    )
    payload = {
        "config": cfg.to_dict(),
        "norm_drift": trace.norm_drift,
        "leakage": trace.leakage,
        **revivals.to_dict(),
    }
    _report(write_json(Path(f"{base}_revivals.json"), payload))
    if cfg["dump_amplitudes"]:
        dump = {"config": cfg.to_dict(), **trace.amplitudes_dict()}
        _report(write_json(Path(f"{base}_amplitudes.json"), dump, indent=None))
    if cfg["svg"]:
        _report(atomic_write_text(Path(f"{base}.svg"), evolution_svg(trace)))
    return 0


def cmd_susy(cfg: RunConfig) -> int:
    pair = build_susy_pair(cfg.params(), cfg["size"])
    report = verify_isospectrality(pair, cfg["levels"], cfg["tol"])
    base = Path(cfg["out"])
    _report(write_json(Path(f"{base}.json"), {"config": cfg.to_dict(), **report.to_dict()}))
    _report(
        write_csv(
            Path(f"{base}.csv"),
            ("level", "omega_minus", "omega_plus_shifted", "residual"),
            report.to_rows(),
            cfg.to_dict(),
        )
    )
    if not report.passed:
        print(
            f"numerical failure: partner spectra differ beyond tol={report.tol:g}",
            file=sys.stderr,
        )
        return 3
    return 0


def cmd_converge(cfg: RunConfig) -> int:
    report = ground_energy_vs_size(
        cfg.params(), cfg.parity(), cfg["sizes"], cfg["levels"], cfg["tol"]
    )
    base = Path(cfg["out"])
    _report(
        write_csv(
            Path(f"{base}.csv"),
            ("size", "level", "energy", "verdict"),
            report.to_rows(),
            cfg.to_dict(),
        )
    )
    return 0


_HANDLERS = {
    "spectrum": cmd_spectrum,
    "sweep": cmd_sweep,
    "evolve": cmd_evolve,
    "susy": cmd_susy,
    "converge": cmd_converge,
}

_SUMMARIES = {
    "spectrum": "eigenvalues of both parity chains at fixed parameters",
    "sweep": "branch families and level crossings along omega0 or g",
    "evolve": "lattice propagation, observables, and revival detection",
    "susy": "build partner chains and verify isospectrality",
    "converge": "track low levels across truncation sizes",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idrabi",
        description="Spectra and dynamics of the intensity-dependent Rabi model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, schema in _SCHEMAS.items():
        p = sub.add_parser(command, help=_SUMMARIES[command])
        p.add_argument("--config", default=None, help="JSON file with flag values")
        for name, kind, default, help_text in schema:
            flag = "--" + name.replace("_", "-")
            shown = f"{help_text} (default: {default})" if default is not None else help_text
            if kind == "bool":
                p.add_argument(
                    flag, dest=name, action=argparse.BooleanOptionalAction,
                    default=None, help=shown,
                )
            elif kind == "float":
                p.add_argument(flag, dest=name, type=float, default=None, help=shown)
            elif kind == "int":
                p.add_argument(flag, dest=name, type=int, default=None, help=shown)
            else:  # str, intlist
                p.add_argument(flag, dest=name, default=None, help=shown)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args.command, args)
        return _HANDLERS[args.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EigensolverError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
