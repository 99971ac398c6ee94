"""Strict config parsing for the batch front end.

Configs are TOML: flat keys plus a ``[measure]`` or ``[system]`` section.
Parsing is strict in both directions: unknown keys are rejected with a
field-level message and missing required keys name themselves.  Relative
paths are resolved against the config file's directory, so a run directory
is self-contained.
"""

import sys
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ValidationError
from .measures import AtomicMeasure, BernoulliMeasure, DensityMeasure, SpectralMeasure
from .oracle import TrapSystem, random_system, shift_system


def load_config(path) -> dict:
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"config {path}: {exc}") from exc


def check_keys(section: dict, allowed: set[str], required: set[str], context: str) -> None:
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise ValidationError(f"{context}: unknown keys {unknown}")
    missing = sorted(required - set(section))
    if missing:
        raise ValidationError(f"{context}: missing required keys {missing}")


def _float_list(value, context: str) -> np.ndarray:
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{context}: expected a list of numbers") from exc
    if arr.ndim != 1:
        raise ValidationError(f"{context}: expected a flat list of numbers")
    return arr


def measure_from_config(section: dict, base_dir: Path) -> SpectralMeasure:
    if not isinstance(section, dict):
        raise ValidationError("[measure]: expected a table")
    kind = section.get("type")
    if kind == "atomic":
        check_keys(section, {"type", "angles", "weights"}, {"type", "angles", "weights"}, "[measure]")
        return AtomicMeasure(
            _float_list(section["angles"], "[measure].angles"),
            _float_list(section["weights"], "[measure].weights"),
        )
    if kind == "density":
        check_keys(section, {"type", "values", "values_csv"}, {"type"}, "[measure]")
        if ("values" in section) == ("values_csv" in section):
            raise ValidationError("[measure]: give exactly one of 'values' or 'values_csv'")
        if "values" in section:
            return DensityMeasure(_float_list(section["values"], "[measure].values"))
        csv_path = base_dir / str(section["values_csv"])
        rows = [line for line in csv_path.read_text().splitlines() if line.strip()]
        return DensityMeasure(_float_list([float(v) for v in rows], "[measure].values_csv"))
    if kind == "bernoulli":
        check_keys(section, {"type", "p", "level"}, {"type", "p"}, "[measure]")
        return BernoulliMeasure(float(section["p"]), int(section.get("level", 13)))
    raise ValidationError("[measure].type must be one of: atomic, density, bernoulli")


def system_from_config(section: dict) -> TrapSystem:
    if not isinstance(section, dict):
        raise ValidationError("[system]: expected a table")
    kind = section.get("kind")
    if kind == "shift":
        check_keys(
            section,
            {"kind", "dim", "trap_probs", "trap_sites", "trap_vectors_re", "trap_vectors_im"},
            {"kind", "dim"},
            "[system]",
        )
        probs = _float_list(section.get("trap_probs", [1.0]), "[system].trap_probs")
        if "trap_vectors_re" in section:
            re = np.asarray(section["trap_vectors_re"], dtype=float)
            im = np.asarray(section.get("trap_vectors_im", np.zeros_like(re)), dtype=float)
            if re.shape != im.shape or re.ndim != 2:
                raise ValidationError("[system]: trap vector parts must be matching lists of rows")
            return shift_system(int(section["dim"]), probs, trap_vectors=re + 1j * im)
        if "trap_vectors_im" in section:
            raise ValidationError("[system]: trap_vectors_im needs trap_vectors_re")
        sites = [int(j) for j in section.get("trap_sites", [0])]
        return shift_system(int(section["dim"]), probs, sites)
    if kind == "random":
        check_keys(
            section,
            {"kind", "dim", "seed", "trap_rank", "trap_probs"},
            {"kind", "dim", "seed"},
            "[system]",
        )
        probs = section.get("trap_probs")
        if probs is not None:
            probs = _float_list(probs, "[system].trap_probs")
        return random_system(
            int(section["dim"]),
            int(section["seed"]),
            trap_rank=int(section.get("trap_rank", 1)),
            trap_probs=probs,
        )
    raise ValidationError("[system].kind must be one of: shift, random")
