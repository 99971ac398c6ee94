"""Deterministic CSV/JSON emission for archival runs.

Every float is printed with 17 significant digits so that parse/print
round-trips are bit-exact; keys are emitted in sorted order and nothing
time- or host-dependent is written.  Re-running a command with the same
config must reproduce every artifact byte for byte.
"""

import hashlib
import math
from pathlib import Path

from .errors import ValidationError


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValidationError("artifacts must not contain non-finite numbers")
    return format(x, ".17g")


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_cell(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    return path


def dumps_json(obj, indent: int = 0) -> str:
    """Minimal JSON emitter with sorted keys and 17-digit floats."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"')
        out = out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")
        return f'"{out}"'
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for key in sorted(obj):
            if not isinstance(key, str):
                raise ValidationError("JSON object keys must be strings")
            items.append(f'{inner}{dumps_json(key)}: {dumps_json(obj[key], indent + 1)}')
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not len(obj):
            return "[]"
        items = [f"{inner}{dumps_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    raise ValidationError(f"cannot serialize {type(obj).__name__} into an artifact")


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_json(obj) + "\n", encoding="ascii")
    return path


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    digest.update(Path(path).read_bytes())
    return digest.hexdigest()


def write_manifest(prefix, command: str, resolved_config: dict, artifact_paths) -> Path:
    manifest = {
        "command": command,
        "config": resolved_config,
        "artifacts": {Path(p).name: sha256_file(p) for p in artifact_paths},
    }
    return write_json(Path(str(prefix) + ".manifest.json"), manifest)
