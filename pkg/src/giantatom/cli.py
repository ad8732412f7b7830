"""Command-line entry point: scenario execution, pole analysis, field maps.

Every run writes its artifacts into a per-scenario directory under --out,
together with a manifest listing each emitted file with a sha256 content
hash. Nothing in the output depends on wall-clock time, so re-running the
same configuration reproduces every file byte for byte.

Exit codes: 0 success, 2 configuration/schema violation, 3 numerical
failure (the message names the failing module).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .config import (
    ConfigError,
    Scenario,
    diagnose,
    list_presets,
    load_scenario,
    preset_path,
)
from .dde import IntegrationError, integrate, integrate_point_atom, population, write_trajectory_csv
from .field import SpacetimeGrid, default_grid, intensity_map, write_field_csv
from .model import derive_rates
from .oracle import ModeGrid, default_mode_grid, integrate_full
from .spectral import design_double_bic, find_bics

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

ORACLE_COMPARE_CSV_HEADER = "t,p_dde,p_oracle,abs_diff"
ORACLE_PASS_TOL = 5e-3


class NumericalFailure(RuntimeError):
    """A physics job failed; carries the name of the responsible module."""

    def __init__(self, module: str, message: str):
        super().__init__(message)
        self.module = module


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _write_json(path: Path, doc) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _scenario_from_args(args) -> Scenario:
    if args.preset:
        path = preset_path(args.preset)
        if not path.is_file():
            raise ConfigError(
                "unknown preset %r; available: %s" % (args.preset, ", ".join(list_presets()))
            )
        return load_scenario(path)
    if args.config:
        return load_scenario(args.config)
    raise ConfigError("one of --preset or --config is required")


def _integrate_label(scenario: Scenario, params, n: int, t_max: float):
    try:
        if scenario.point_atom:
            return integrate_point_atom(
                params, n, scenario.init, t_max, scenario.steps_per_delay
            )
        return integrate(params, n, scenario.init, t_max, scenario.steps_per_delay)
    except (IntegrationError, ValueError) as exc:
        raise NumericalFailure("dde-engine", str(exc)) from exc


def _job_trajectory(scenario: Scenario, run_dir: Path, n: int, label: str, params):
    traj = _integrate_label(scenario, params, n, scenario.horizon)
    suffix = "_%s" % label if label else ""
    path = run_dir / ("trajectory_n%d%s.csv" % (n, suffix))
    write_trajectory_csv(traj, path)
    return [path]


def _job_poles(scenario: Scenario, run_dir: Path, params):
    try:
        entries = []
        for n in scenario.subspaces:
            for sol in find_bics(params, n, init=scenario.init):
                entries.append(
                    {
                        "n": sol.n,
                        "branch": sol.branch,
                        "omega": sol.omega,
                        "q": sol.q,
                        "residue_re": sol.residue_e.real,
                        "residue_im": sol.residue_e.imag,
                        "phase_residual": sol.phase_residual,
                    }
                )
    except ValueError as exc:
        raise NumericalFailure("spectral-analysis", str(exc)) from exc
    path = run_dir / "poles.json"
    _write_json(path, entries)
    return [path]


def _field_grid(scenario: Scenario, params) -> SpacetimeGrid:
    if scenario.field_grid:
        return SpacetimeGrid(**scenario.field_grid)
    return default_grid(params, scenario.horizon)


def _job_field_map(scenario: Scenario, run_dir: Path, n: int, params):
    grid = _field_grid(scenario, params)
    traj = _integrate_label(scenario, params, n, max(scenario.horizon, grid.t_max))
    try:
        fld = intensity_map(traj, params, grid)
    except ValueError as exc:
        raise NumericalFailure("field-reconstruction", str(exc)) from exc
    csv_path = run_dir / ("field_n%d.csv" % n)
    write_field_csv(fld, csv_path)
    meta_path = run_dir / ("field_n%d.meta.json" % n)
    _write_json(
        meta_path,
        {
            "n": n,
            "grid": {
                "x_min": grid.x_min,
                "x_max": grid.x_max,
                "nx": grid.nx,
                "t_min": grid.t_min,
                "t_max": grid.t_max,
                "nt": grid.nt,
            },
            "params": _params_doc(params),
        },
    )
    return [csv_path, meta_path]


def _job_oracle_compare(scenario: Scenario, run_dir: Path, n: int, params):
    rates = derive_rates(params)
    t_max = float(scenario.oracle.get("t_max", min(scenario.horizon, 20.0 / rates.gamma_total)))
    modes = int(scenario.oracle.get("modes_per_side", 8192))
    grid: ModeGrid = default_mode_grid(params, K=modes)
    traj_dde = _integrate_label(scenario, params, n, t_max)
    try:
        traj_oracle, history = integrate_full(params, n, scenario.init, grid, t_max)
    except ValueError as exc:
        raise NumericalFailure("mode-oracle", str(exc)) from exc

    ts = traj_oracle.times
    p_oracle = population(traj_oracle)
    p_dde = np.abs(traj_dde.interp_rotating(ts)) ** 2
    diff = np.abs(p_dde - p_oracle)
    # The comparison grid is the oracle's; thin it to a desk-scale CSV.
    stride = max(1, len(ts) // 4000)
    csv_path = run_dir / ("oracle_compare_n%d.csv" % n)
    with open(csv_path, "w", newline="") as fh:
        fh.write(ORACLE_COMPARE_CSV_HEADER + "\n")
        for k in range(0, len(ts), stride):
            fh.write(
                "%s,%s,%s,%s\n"
                % (repr(float(ts[k])), repr(float(p_dde[k])), repr(float(p_oracle[k])), repr(float(diff[k])))
            )
    verdict_path = run_dir / ("oracle_verdict_n%d.json" % n)
    _write_json(
        verdict_path,
        {
            "n": n,
            "max_diff": float(diff.max()),
            "norm_drift": history.norm_drift,
            "pass": bool(diff.max() < ORACLE_PASS_TOL),
        },
    )
    return [csv_path, verdict_path]


def _params_doc(params) -> dict:
    return {
        "omega_e": params.omega_e,
        "omega_s": params.omega_s,
        "omega_c": params.omega_c,
        "g": params.g,
        "j1_mag": params.j1_mag,
        "j2_mag": params.j2_mag,
        "phi1": params.phi1,
        "phi2": params.phi2,
        "v": params.v,
        "d": params.d,
    }


def _run_scenario(scenario: Scenario, out_dir: Path, workers: int, outputs=None) -> Path:
    """Execute the requested outputs and write the manifest. Returns run dir."""
    if outputs is None:
        outputs = scenario.outputs
    run_dir = out_dir / scenario.name
    run_dir.mkdir(parents=True, exist_ok=True)

    jobs = []
    for label, params in scenario.sweep_points():
        if "trajectory" in outputs:
            for n in scenario.subspaces:
                jobs.append((_job_trajectory, (scenario, run_dir, n, label, params)))
        if "poles" in outputs and not label:
            jobs.append((_job_poles, (scenario, run_dir, params)))
        if "field-map" in outputs and not label:
            for n in scenario.subspaces:
                jobs.append((_job_field_map, (scenario, run_dir, n, params)))
        if "oracle-compare" in outputs and not label:
            for n in scenario.subspaces:
                jobs.append((_job_oracle_compare, (scenario, run_dir, n, params)))

    written = []
    if jobs:
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            futures = [pool.submit(fn, *args) for fn, args in jobs]
            for fut in futures:
                written.extend(fut.result())

    manifest = {
        "tool": "giantatom",
        "version": __version__,
        "scenario": scenario.name,
        "units": scenario.units,
        "params": _params_doc(scenario.params),
        "subspaces": scenario.subspaces,
        "horizon": scenario.horizon,
        "outputs": list(outputs),
        "files": {p.name: _sha256(p) for p in sorted(written)},
    }
    _write_json(run_dir / "manifest.json", manifest)
    return run_dir


def _cmd_run_outputs(args, outputs=None) -> int:
    scenario = _scenario_from_args(args)
    hard, warnings_ = diagnose(scenario)
    for msg in warnings_:
        print("warning: %s" % msg, file=sys.stderr)
    if hard:
        for msg in hard:
            print("error: %s" % msg, file=sys.stderr)
        return EXIT_CONFIG
    run_dir = _run_scenario(scenario, Path(args.out), args.workers, outputs)
    print(run_dir)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    return _cmd_run_outputs(args)


def _cmd_poles(args) -> int:
    return _cmd_run_outputs(args, outputs=["poles"])


def _cmd_field_map(args) -> int:
    return _cmd_run_outputs(args, outputs=["field-map"])


def _cmd_oracle_compare(args) -> int:
    return _cmd_run_outputs(args, outputs=["oracle-compare"])


def _cmd_validate(args) -> int:
    scenario = _scenario_from_args(args)
    hard, warnings_ = diagnose(scenario)
    for msg in warnings_:
        print("warning: %s" % msg)
    for msg in hard:
        print("error: %s" % msg)
    if not hard and not warnings_:
        print("ok: scenario %r is valid" % scenario.name)
    return EXIT_CONFIG if hard else EXIT_OK


def _cmd_design_bic(args) -> int:
    try:
        omega_e, g_n = design_double_bic(args.target, args.tau, args.q_plus, args.q_minus)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    doc = {
        "omega_e": omega_e,
        "g_n": g_n,
        "q_plus": args.q_plus,
        "q_minus": args.q_minus,
        "tau": args.tau,
        "omega_e_over_pi": omega_e * args.tau / math.pi,
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK


def _add_scenario_args(sub) -> None:
    sub.add_argument("--config", metavar="PATH", help="scenario JSON file")
    sub.add_argument("--preset", metavar="NAME", help="named preset shipped with the package")
    sub.add_argument("--out", metavar="DIR", default="runs", help="output root directory")
    sub.add_argument("--workers", metavar="N", type=int, default=4, help="worker pool size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="giantatom",
        description="Emission dynamics and bound states in the continuum "
        "of a two-point-coupled three-level emitter in a 1D waveguide.",
    )
    parser.add_argument("--version", action="version", version="giantatom %s" % __version__)
    subs = parser.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
        ("simulate", _cmd_simulate, "run all outputs requested by the scenario"),
        ("poles", _cmd_poles, "emit the pure-imaginary pole list as JSON"),
        ("field-map", _cmd_field_map, "emit the spacetime intensity map as CSV"),
        ("oracle-compare", _cmd_oracle_compare, "cross-check the delay engine against the discretized-continuum model"),
        ("validate", _cmd_validate, "check a scenario file and report all diagnostics"),
    ):
        sub = subs.add_parser(name, help=helptext)
        _add_scenario_args(sub)
        sub.set_defaults(fn=fn)

    sub = subs.add_parser("design-bic", help="parameters hosting two bound states at once")
    sub.add_argument("--target", type=float, required=True, help="target omega_e (rad/time)")
    sub.add_argument("--tau", type=float, required=True, help="delay tau = d/v")
    sub.add_argument("--q-plus", type=int, required=True, help="winding integer of the + branch")
    sub.add_argument("--q-minus", type=int, required=True, help="winding integer of the - branch")
    sub.set_defaults(fn=_cmd_design_bic)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print("configuration error:\n%s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except NumericalFailure as exc:
        print("numerical failure in %s: %s" % (exc.module, exc), file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
