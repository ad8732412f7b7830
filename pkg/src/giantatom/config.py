"""Scenario configuration: JSON schema, loading, and physics diagnostics.

A scenario file fixes the physical parameters, the excitation subspaces to
run, the initial condition, the horizon, and the list of requested outputs.
Complex amplitudes are written as [re, im] pairs. Every file carries an
explicit units string so natural-unit conventions never travel implicitly.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field

import jsonschema

from .dde import InitialCondition
from .model import SystemParams, derive_rates

__all__ = [
    "Scenario",
    "ConfigError",
    "CONFIG_SCHEMA",
    "load_scenario",
    "scenario_from_dict",
    "diagnose",
    "preset_path",
    "list_presets",
]

OUTPUT_KINDS = ("trajectory", "poles", "field-map", "oracle-compare")

_COMPLEX = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["name", "units", "params", "subspaces", "horizon", "outputs"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "units": {"type": "string"},
        "params": {
            "type": "object",
            "required": ["omega_e", "omega_s", "omega_c", "g", "j1_mag", "j2_mag"],
            "additionalProperties": False,
            "properties": {
                "omega_e": {"type": "number", "exclusiveMinimum": 0},
                "omega_s": {"type": "number"},
                "omega_c": {"type": "number"},
                "g": {"type": "number", "minimum": 0},
                "j1_mag": {"type": "number", "minimum": 0},
                "j2_mag": {"type": "number", "minimum": 0},
                "phi1": {"type": "number"},
                "phi2": {"type": "number"},
                "v": {"type": "number"},
                "d": {"type": "number"},
            },
        },
        "subspaces": {
            "type": "array",
            "items": {"type": "integer", "minimum": 0},
            "minItems": 1,
        },
        "init": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"u_e0": _COMPLEX, "u_s0": _COMPLEX},
        },
        "horizon": {"type": "number", "exclusiveMinimum": 0},
        "outputs": {
            "type": "array",
            "items": {"enum": list(OUTPUT_KINDS)},
        },
        "point_atom": {"type": "boolean"},
        "steps_per_delay": {"type": "integer", "minimum": 20},
        "sweep": {
            "type": "object",
            "required": ["field", "values"],
            "additionalProperties": False,
            "properties": {
                "field": {"enum": ["g", "j1_mag", "j2_mag", "d", "omega_e"]},
                "values": {
                    "type": "array",
                    "items": {"type": "number"},
                    "minItems": 1,
                },
            },
        },
        "field_grid": {
            "type": "object",
            "required": ["x_min", "x_max", "nx", "t_min", "t_max", "nt"],
            "additionalProperties": False,
            "properties": {
                "x_min": {"type": "number"},
                "x_max": {"type": "number"},
                "nx": {"type": "integer", "minimum": 2},
                "t_min": {"type": "number", "minimum": 0},
                "t_max": {"type": "number", "exclusiveMinimum": 0},
                "nt": {"type": "integer", "minimum": 2},
            },
        },
        "oracle": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "modes_per_side": {"type": "integer", "minimum": 64},
                "t_max": {"type": "number", "exclusiveMinimum": 0},
            },
        },
    },
}


class ConfigError(ValueError):
    """Scenario file failed schema validation; message lists every violation."""


@dataclass
class Scenario:
    """A fully validated run description."""

    name: str
    units: str
    params: SystemParams
    subspaces: list
    init: InitialCondition
    horizon: float
    outputs: list
    point_atom: bool = False
    steps_per_delay: int = 200
    sweep: dict | None = None
    field_grid: dict | None = None
    oracle: dict = field(default_factory=dict)

    def sweep_points(self):
        """Yield (label, SystemParams) for each sweep value, or the base params."""
        if not self.sweep:
            yield "", self.params
            return
        fld = self.sweep["field"]
        for value in self.sweep["values"]:
            yield "%s%s" % (fld, repr(float(value))), dataclasses.replace(
                self.params, **{fld: value}
            )


def _as_complex(pair, default):
    if pair is None:
        return default
    return complex(pair[0], pair[1])


def scenario_from_dict(doc: dict) -> Scenario:
    """Validate a parsed scenario document and build the Scenario value.

    Schema violations are collected exhaustively and raised together as one
    ConfigError, each line naming the offending key path.
    """
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        lines = []
        for err in errors:
            path = "/".join(str(part) for part in err.absolute_path) or "(root)"
            lines.append("%s: %s" % (path, err.message))
        raise ConfigError("\n".join(lines))

    pd = doc["params"]
    params = SystemParams(
        omega_e=pd["omega_e"],
        omega_s=pd["omega_s"],
        omega_c=pd["omega_c"],
        g=pd["g"],
        j1_mag=pd["j1_mag"],
        j2_mag=pd["j2_mag"],
        phi1=pd.get("phi1", 0.0),
        phi2=pd.get("phi2", 0.0),
        v=pd.get("v", 1.0),
        d=pd.get("d", 1.0),
    )
    init_doc = doc.get("init", {})
    init = InitialCondition(
        u_e0=_as_complex(init_doc.get("u_e0"), 1.0 + 0.0j),
        u_s0=_as_complex(init_doc.get("u_s0"), 0.0j),
    )
    return Scenario(
        name=doc["name"],
        units=doc["units"],
        params=params,
        subspaces=list(doc["subspaces"]),
        init=init,
        horizon=float(doc["horizon"]),
        outputs=list(doc["outputs"]),
        point_atom=bool(doc.get("point_atom", False)),
        steps_per_delay=int(doc.get("steps_per_delay", 200)),
        sweep=doc.get("sweep"),
        field_grid=doc.get("field_grid"),
        oracle=doc.get("oracle", {}),
    )


def load_scenario(path) -> Scenario:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("not valid JSON: %s" % exc) from exc
    if not isinstance(doc, dict):
        raise ConfigError("(root): scenario document must be a JSON object")
    return scenario_from_dict(doc)


def diagnose(scenario: Scenario) -> tuple[list, list]:
    """Physics-level diagnostics on a schema-valid scenario.

    Returns (hard_errors, warnings). Hard errors make every requested output
    meaningless; warnings flag parameter regimes where some outputs are known
    to be empty or outside the modeled regime.
    """
    hard = []
    warn = []
    p = scenario.params
    try:
        p.validate()
        rates = derive_rates(p)
    except ValueError as exc:
        hard.append(str(exc))
        return hard, warn

    if rates.gamma_total < abs(rates.gamma_coll) - 1e-12 * rates.gamma_total:
        hard.append(
            "collective rate |gamma| = %g exceeds total rate Gamma = %g"
            % (abs(rates.gamma_coll), rates.gamma_total)
        )
    wants_poles = "poles" in scenario.outputs or "field-map" in scenario.outputs
    if rates.gamma_coll == 0 and "poles" in scenario.outputs:
        warn.append("gamma = 0: no pure-imaginary poles possible, poles output will be empty")
    elif wants_poles and abs(rates.gamma_total - abs(rates.gamma_coll)) > 1e-9 * rates.gamma_total:
        warn.append(
            "|gamma| != Gamma (%g vs %g): no bound state in the continuum can emerge"
            % (abs(rates.gamma_coll), rates.gamma_total)
        )
    if p.d < rates.lambda_e:
        warn.append(
            "d = %g below the characteristic wavelength %g: small-atom regime"
            % (p.d, rates.lambda_e)
        )
    if scenario.point_atom and "oracle-compare" in scenario.outputs:
        warn.append("oracle-compare ignores point_atom: the full model always carries the delay")
    tau = rates.tau
    if not math.isfinite(tau) or tau <= 0:
        hard.append("delay tau = d/v must be positive and finite")
    return hard, warn


def preset_path(name: str):
    """Path of a named preset shipped with the package."""
    from importlib.resources import files

    return files("giantatom").joinpath("presets", name + ".json")


def list_presets() -> list:
    from importlib.resources import files

    root = files("giantatom").joinpath("presets")
    return sorted(entry.name[:-5] for entry in root.iterdir() if entry.name.endswith(".json"))
