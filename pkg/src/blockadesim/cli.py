"""Configuration, figure presets, sweep orchestration, and the ``sim`` command.

Configs are YAML with three sections (``params``, ``sweep``, ``output``) plus
optional ``preset`` and ``parallelism`` keys.  A preset fills in a complete
parameter set; any field given explicitly in the config overrides the preset.
Outputs are CSV or JSON tables with a fixed column order and floats printed
with 10 significant digits, so identical configs produce byte-identical files
regardless of the worker count.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np
import yaml

from . import dressed
from .model import SystemParams
from .steady import TRUNCATION_WARN_LEVEL, Observables, default_workers, sweep

STEADY_COLUMNS = ("mean_n", "g2", "g3", "top_fock_pop", "flags")


class ParseError(ValueError):
    """Malformed or unrecognized configuration text."""


class ValidationError(ValueError):
    """A configuration value violates an invariant."""


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    points: int


@dataclass(frozen=True)
class OutputSpec:
    path: str
    format: str = "csv"


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    sweep: SweepSpec
    output: OutputSpec
    preset: str | None = None
    parallelism: int = 1
    mode: str = "steady"  # "steady" or "dressed"
    case: str | None = None  # dressed mode only
    omega_c_variants: tuple[float, ...] | None = None  # multi-curve presets

    def grid(self) -> np.ndarray:
        return np.linspace(self.sweep.start, self.sweep.stop, self.sweep.points)


# figure presets: caption parameters plus the default detuning grid
_STEADY_SWEEP = {"variable": "delta_p", "start": -60.0, "stop": 60.0, "points": 801}
_CONTROL_SWEEP = {"variable": "omega_c", "start": 0.0, "stop": 35.0, "points": 351}
_BASE_PARAMS = {
    "g": 20.0,
    "phi_z": 0.0,
    "eta": 0.2,
    "omega_c": 0.0,
    "delta_p": 0.0,
    "gamma_m": 1.0,
    "gamma_e": 0.01,
    "n_max": 6,
}

PRESETS: dict[str, dict] = {
    "fig3": {
        "mode": "steady",
        "params": dict(_BASE_PARAMS),
        "sweep": dict(_STEADY_SWEEP),
        "omega_c_variants": (0.0, 20.0),
    },
    "fig4a": {
        "mode": "steady",
        "params": dict(_BASE_PARAMS, eta=1.5, omega_c=0.0, n_max=8),
        "sweep": dict(_STEADY_SWEEP),
    },
    "fig4b": {
        "mode": "steady",
        "params": dict(_BASE_PARAMS, eta=1.5, omega_c=35.0, n_max=8),
        "sweep": dict(_STEADY_SWEEP),
    },
    # without the control the strong-pump out-of-phase run populates high Fock
    # levels at zero detuning; n_max = 12 keeps the truncation diagnostic
    # below 1e-6 there.  The control suppresses that central multiphoton
    # feature, so fig5b stays at the default strong-pump cutoff.
    "fig5a": {
        "mode": "steady",
        "params": dict(_BASE_PARAMS, eta=2.0, phi_z=math.pi, omega_c=0.0, n_max=12),
        "sweep": dict(_STEADY_SWEEP),
    },
    "fig5b": {
        "mode": "steady",
        "params": dict(_BASE_PARAMS, eta=2.0, phi_z=math.pi, omega_c=20.0, n_max=8),
        "sweep": dict(_STEADY_SWEEP),
    },
    "fig6a": {
        "mode": "dressed",
        "case": "in_phase",
        "params": dict(_BASE_PARAMS),
        "sweep": dict(_CONTROL_SWEEP),
        "columns": ("dE2ph_plus", "dE2ph_minus"),
    },
    "fig6b": {
        "mode": "dressed",
        "case": "out_phase",
        "params": dict(_BASE_PARAMS),
        "sweep": dict(_CONTROL_SWEEP),
        "columns": (
            "dE3ph_plus",
            "dE3ph_minus",
            "dE3ph_prime_plus",
            "dE3ph_prime_minus",
        ),
    },
}

_PARAM_KEYS = {f.name for f in fields(SystemParams)}
_SWEEP_KEYS = {"variable", "start", "stop", "points"}
_OUTPUT_KEYS = {"path", "format"}
_TOP_KEYS = {"preset", "params", "sweep", "output", "parallelism"}


def _reject_unknown(section: dict, allowed: set[str], where: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ParseError(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")


def _as_mapping(value, where: str) -> dict:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ParseError(f"{where} must be a mapping, got {type(value).__name__}")
    return value


def load_config(text: str) -> RunConfig:
    """Parse and validate a YAML run configuration."""
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = f" at line {mark.line + 1}" if mark is not None else ""
        raise ParseError(f"invalid YAML{line}: {exc}") from exc
    raw = _as_mapping(raw, "config")
    _reject_unknown(raw, _TOP_KEYS, "config")

    preset_name = raw.get("preset")
    preset = {}
    if preset_name is not None:
        if preset_name not in PRESETS:
            raise ValidationError(
                f"unknown preset {preset_name!r}; available: {', '.join(sorted(PRESETS))}"
            )
        preset = PRESETS[preset_name]

    user_params = _as_mapping(raw.get("params"), "params")
    _reject_unknown(user_params, _PARAM_KEYS, "params")
    param_values = dict(preset.get("params", _BASE_PARAMS))
    param_values.update(user_params)
    try:
        params = SystemParams(**param_values)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"invalid params: {exc}") from exc

    user_sweep = _as_mapping(raw.get("sweep"), "sweep")
    _reject_unknown(user_sweep, _SWEEP_KEYS, "sweep")
    sweep_values = dict(preset.get("sweep", _STEADY_SWEEP))
    sweep_values.update(user_sweep)
    variable = sweep_values.get("variable", "delta_p")
    if variable not in ("delta_p", "omega_c"):
        raise ValidationError(f"sweep.variable must be delta_p or omega_c, got {variable!r}")
    try:
        spec = SweepSpec(
            variable=variable,
            start=float(sweep_values["start"]),
            stop=float(sweep_values["stop"]),
            points=int(sweep_values["points"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"invalid sweep section: {exc}") from exc
    if spec.points < 1:
        raise ValidationError("sweep.points must be >= 1")
    if spec.start > spec.stop:
        raise ValidationError("sweep.start must be <= sweep.stop")

    user_output = _as_mapping(raw.get("output"), "output")
    _reject_unknown(user_output, _OUTPUT_KEYS, "output")
    out_format = user_output.get("format", "csv")
    if out_format not in ("csv", "json"):
        raise ValidationError(f"output.format must be csv or json, got {out_format!r}")
    output = OutputSpec(path=str(user_output.get("path", "")), format=out_format)

    parallelism = raw.get("parallelism", default_workers())
    if not isinstance(parallelism, int) or parallelism < 1:
        raise ValidationError("parallelism must be an integer >= 1")

    variants = preset.get("omega_c_variants")
    if variants is not None and "omega_c" in user_params:
        variants = None  # explicit value wins over the preset's curve family

    return RunConfig(
        params=params,
        sweep=spec,
        output=output,
        preset=preset_name,
        parallelism=parallelism,
        mode=preset.get("mode", "steady"),
        case=preset.get("case"),
        omega_c_variants=variants,
    )


def _fmt(value: float) -> str:
    return f"{value:.10g}"


def _row_flags(obs: Observables) -> str:
    flags = []
    if not obs.correlations_defined:
        flags.append("undefined-correlation")
    if obs.top_fock_pop >= TRUNCATION_WARN_LEVEL:
        flags.append("truncation-warning")
    return ";".join(flags)


def _steady_rows(config: RunConfig) -> tuple[tuple[str, ...], list[list]]:
    header = (config.sweep.variable,) + STEADY_COLUMNS
    grid = config.grid()
    rows: list[list] = []
    if config.sweep.variable == "delta_p":
        results = sweep(config.params, grid, workers=config.parallelism)
        for value, obs in results:
            rows.append([value, obs.mean_n, obs.g2, obs.g3, obs.top_fock_pop, _row_flags(obs)])
    else:
        from .steady import steady_observables

        for value in grid:
            obs = steady_observables(replace(config.params, omega_c=float(value)))
            rows.append(
                [float(value), obs.mean_n, obs.g2, obs.g3, obs.top_fock_pop, _row_flags(obs)]
            )
    return header, rows


def _dressed_rows(config: RunConfig) -> tuple[tuple[str, ...], list[list]]:
    columns = PRESETS[config.preset]["columns"]
    header = ("omega_c",) + columns
    rows = []
    for value in config.grid():
        diffs = dressed.energy_differences(config.case, config.params.g, float(value))
        rows.append([float(value)] + [getattr(diffs, name) for name in columns])
    return header, rows


def _write_table(path: Path, out_format: str, header: tuple[str, ...], rows: list[list]) -> None:
    if out_format == "csv":
        lines = [",".join(header)]
        for row in rows:
            cells = [cell if isinstance(cell, str) else _fmt(cell) for cell in row]
            lines.append(",".join(cells))
        path.write_text("\n".join(lines) + "\n")
        return
    payload_rows = []
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, str):
                cells.append(cell)
            elif math.isnan(cell):
                cells.append(None)
            else:
                cells.append(float(_fmt(cell)))
        payload_rows.append(cells)
    payload = {"columns": list(header), "rows": payload_rows}
    path.write_text(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _variant_path(path: Path, omega_c: float) -> Path:
    return path.with_name(f"{path.stem}.oc{omega_c:g}{path.suffix}")


def run(config: RunConfig) -> int:
    """Execute a configured run; returns 0 on success, nonzero otherwise.

    Multi-curve presets (fig3) write one file per control amplitude, inserting
    ``.oc<value>`` before the output suffix.
    """
    try:
        if not config.output.path:
            raise OSError("output path is empty")
        base = Path(config.output.path)
        if config.mode == "dressed":
            header, rows = _dressed_rows(config)
            _write_table(base, config.output.format, header, rows)
            return 0
        variants = config.omega_c_variants or (config.params.omega_c,)
        multi = len(variants) > 1
        for omega_c in variants:
            variant = replace(config, params=replace(config.params, omega_c=omega_c))
            header, rows = _steady_rows(variant)
            target = _variant_path(base, omega_c) if multi else base
            _write_table(target, config.output.format, header, rows)
        return 0
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def dressed_report(g: float, omega_c: float, case: str) -> dict:
    """Ladder summary: eigenvalues, predicted resonances, and diagnostics."""
    if case not in dressed.CASES:
        raise dressed.UnsupportedCase(f"case must be one of {dressed.CASES}, got {case!r}")
    if g < 0 or omega_c < 0:
        raise ValueError("g and omega_c must be non-negative")
    gp, gm = dressed.case_couplings(case, g)

    def rounded(values) -> list[float]:
        return [float(_fmt(v)) for v in values]

    manifolds = {}
    for n in (1, 2, 3):
        mh = dressed.manifold_hamiltonian(n, gp, gm, omega_c)
        manifolds[str(n)] = rounded(np.linalg.eigvalsh(mh.matrix))
    lam1 = dressed.analytic_eigenvalues(1, g, omega_c)
    lam2 = dressed.analytic_eigenvalues(2, g, omega_c)
    diffs = dressed.energy_differences(case, g, omega_c)
    return {
        "case": case,
        "g": g,
        "omega_c": omega_c,
        "manifold_eigenvalues": manifolds,
        "one_photon_resonances": rounded(sorted(set(lam1.values()))),
        "two_photon_resonances": rounded(sorted({v / 2.0 for v in lam2.values()})),
        "peak_splitting": float(_fmt(dressed.peak_splitting(g, omega_c))),
        "energy_differences": {
            name: float(_fmt(getattr(diffs, name)))
            for name in (
                "dE2ph_plus",
                "dE2ph_minus",
                "dE3ph_plus",
                "dE3ph_minus",
                "dE3ph_prime_plus",
                "dE3ph_prime_minus",
            )
        },
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sim",
        description="Steady-state photon statistics and dressed-ladder tools "
        "for the two-atom cavity model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a sweep described by a YAML config")
    p_sweep.add_argument("--config", required=True, help="path to the YAML config file")

    p_preset = sub.add_parser("preset", help="run a named figure preset")
    p_preset.add_argument("name", choices=sorted(PRESETS))
    p_preset.add_argument("--out", required=True, help="output file path")
    p_preset.add_argument("--format", choices=("csv", "json"), default="csv")

    p_dressed = sub.add_parser("dressed", help="print the dressed-ladder report")
    p_dressed.add_argument("--g", type=float, required=True)
    p_dressed.add_argument("--omega-c", type=float, required=True)
    p_dressed.add_argument("--case", choices=("in", "out"), required=True)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "sweep":
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return 1
        try:
            config = load_config(text)
        except (ParseError, ValidationError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        return run(config)
    if args.command == "preset":
        config = load_config(yaml.safe_dump({"preset": args.name}))
        config = replace(config, output=OutputSpec(path=args.out, format=args.format))
        return run(config)
    if args.command == "dressed":
        case = "in_phase" if args.case == "in" else "out_phase"
        report = dressed_report(args.g, args.omega_c, case)
        print(json.dumps(report, indent=2, sort_keys=True))
        return 0
    return 2


if __name__ == "__main__":
    sys.exit(main())
