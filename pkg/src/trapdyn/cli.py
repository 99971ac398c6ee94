"""Batch front end.

Usage: ``trapdyn <command> <config.toml>``.  Each run reads one strict
config, writes its CSV/JSON artifacts next to the configured prefix and
always finishes with a manifest that echoes the resolved config and the
artifact checksums.  Exit codes: 0 success, 1 validation failure, 2
tolerance failure in a cross-route comparison, 3 I/O failure.

The only environment knob is ``TRAPDYN_WORKERS``: ladder points of a scan
are independent and fan out over that many threads; results are reduced
in ladder order, so the artifacts do not depend on the worker count.
"""

import argparse
import csv
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .artifacts import write_csv, write_json, write_manifest
from .config import check_keys, load_config, measure_from_config, system_from_config
from .dynamics import (
    DEFAULT_MESH,
    current_series,
    dyadic_ladder,
    jtilde_integral,
    k_sequence,
)
from .entropy import evolved_defect, refined_entropy
from .errors import ArgumentError, ToleranceError, ValidationError
from .exponents import bernoulli_bound, fit_exponent
from .jacobi import hermitian_eig
from .measures import moments
from .oracle import (
    krylov_current,
    state_moments,
    trap_current_series,
    trapped_number_series,
)
from .baselines import rw_current
from .util import exact_sum

CURRENT_TOL = 1e-10
TELESCOPE_TOL = 1e-9


def _worker_count() -> int:
    raw = os.environ.get("TRAPDYN_WORKERS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValidationError(f"TRAPDYN_WORKERS must be an integer, got {raw!r}") from exc
    if n < 1:
        raise ValidationError("TRAPDYN_WORKERS must be at least 1")
    return n


def _ordered_map(fn, items):
    workers = _worker_count()
    items = list(items)
    if workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _prefix(cfg: dict, base_dir: Path) -> Path:
    prefix = cfg.get("out_prefix")
    if not isinstance(prefix, str) or not prefix:
        raise ValidationError("config: 'out_prefix' (string) is required")
    out = base_dir / prefix
    out.parent.mkdir(parents=True, exist_ok=True)
    return out


def _ladder(cfg: dict) -> np.ndarray:
    if "r_values" in cfg:
        rs = np.asarray(cfg["r_values"], dtype=float)
        if rs.ndim != 1 or rs.size == 0 or np.any(rs < 0.0) or np.any(rs >= 1.0):
            raise ValidationError("config: r_values must be radii in [0, 1)")
        return rs
    return dyadic_ladder(int(cfg.get("k_min", 3)), int(cfg.get("k_max", 10)))


def cmd_moments(cfg: dict, base_dir: Path):
    check_keys(cfg, {"out_prefix", "order", "measure"}, {"out_prefix", "order", "measure"}, "config")
    measure = measure_from_config(cfg["measure"], base_dir)
    order = int(cfg["order"])
    seq = moments(measure, order)
    prefix = _prefix(cfg, base_dir)
    path = write_csv(
        Path(str(prefix) + ".moments.csv"),
        ["s", "mu_re", "mu_im"],
        [(s, float(seq.coeffs[s].real), float(seq.coeffs[s].imag)) for s in range(order + 1)],
    )
    return [path], {"order": order}


def cmd_current(cfg: dict, base_dir: Path):
    check_keys(cfg, {"out_prefix", "steps", "measure"}, {"out_prefix", "steps", "measure"}, "config")
    measure = measure_from_config(cfg["measure"], base_dir)
    steps = int(cfg["steps"])
    K = k_sequence(moments(measure, steps), steps)
    series = current_series(K, steps)
    prefix = _prefix(cfg, base_dir)
    rows = [
        (t, float(K[t - 1].real), float(K[t - 1].imag), float(series.J[t - 1]), float(series.N[t - 1]))
        for t in range(1, steps + 1)
    ]
    path = write_csv(Path(str(prefix) + ".current.csv"), ["t", "K_re", "K_im", "J", "N"], rows)
    return [path], {"steps": steps}


def _scan_rows(measure, rs: np.ndarray, mesh: int):
    from .dynamics import required_moment_order

    seq = moments(measure, required_moment_order(float(np.max(rs))))

    def one(r: float):
        true = jtilde_integral(seq, r, mesh, include_imaginary=True)
        noim = jtilde_integral(seq, r, mesh, include_imaginary=False)
        return (float(r), float(1.0 - r), true, noim)

    return _ordered_map(one, rs)


def cmd_jtilde_scan(cfg: dict, base_dir: Path):
    check_keys(
        cfg,
        {"out_prefix", "mesh", "k_min", "k_max", "r_values", "measure"},
        {"out_prefix", "measure"},
        "config",
    )
    measure = measure_from_config(cfg["measure"], base_dir)
    mesh = int(cfg.get("mesh", DEFAULT_MESH))
    rs = _ladder(cfg)
    rows = _scan_rows(measure, rs, mesh)
    prefix = _prefix(cfg, base_dir)
    path = write_csv(
        Path(str(prefix) + ".jtilde.csv"),
        ["r", "one_minus_r", "Jtilde_true", "Jtilde_noIm"],
        rows,
    )
    return [path], {"mesh": mesh, "r_values": [float(r) for r in rs]}


def _read_xy(path: Path, x_column: str | None, y_column: str | None) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        table = [row for row in reader if row]
    if len(table) < 2:
        raise ValidationError(f"{path}: expected a header row and data rows")
    header = table[0]
    if x_column is None and y_column is None:
        if len(header) != 2:
            raise ValidationError(f"{path}: has {len(header)} columns; name x_column and y_column")
        xi, yi = 0, 1
    else:
        if x_column not in header or y_column not in header:
            raise ValidationError(f"{path}: columns {x_column!r}, {y_column!r} not in {header}")
        xi, yi = header.index(x_column), header.index(y_column)
    try:
        data = [(float(row[xi]), float(row[yi])) for row in table[1:]]
    except (IndexError, ValueError) as exc:
        raise ValidationError(f"{path}: malformed numeric rows") from exc
    return np.asarray(data, dtype=float)


def cmd_exponent(cfg: dict, base_dir: Path):
    check_keys(
        cfg,
        {"out_prefix", "input_csv", "x_column", "y_column", "mode", "window_lo", "window_hi"},
        {"out_prefix", "input_csv"},
        "config",
    )
    points = _read_xy(base_dir / str(cfg["input_csv"]), cfg.get("x_column"), cfg.get("y_column"))
    window = None
    if "window_lo" in cfg or "window_hi" in cfg:
        window = (int(cfg.get("window_lo", 0)), int(cfg.get("window_hi", len(points))))
    fit = fit_exponent(points, window=window, mode=str(cfg.get("mode", "alpha")))
    prefix = _prefix(cfg, base_dir)
    path = write_json(
        Path(str(prefix) + ".exponent.json"),
        {
            "exponent": fit.exponent,
            "intercept": fit.intercept,
            "residual": fit.residual,
            "window": list(fit.window),
        },
    )
    return [path], {"mode": str(cfg.get("mode", "alpha"))}


def cmd_bernoulli_table(cfg: dict, base_dir: Path):
    check_keys(
        cfg,
        {"out_prefix", "p_values", "level", "mesh", "k_min", "k_max", "window_lo", "window_hi"},
        {"out_prefix", "p_values"},
        "config",
    )
    p_values = [float(p) for p in cfg["p_values"]]
    level = int(cfg.get("level", 13))
    mesh = int(cfg.get("mesh", DEFAULT_MESH))
    k_min = int(cfg.get("k_min", 4))
    k_max = int(cfg.get("k_max", 10))
    rs = dyadic_ladder(k_min, k_max)
    window = None
    if "window_lo" in cfg or "window_hi" in cfg:
        window = (int(cfg.get("window_lo", 0)), int(cfg.get("window_hi", rs.size)))

    from .measures import BernoulliMeasure

    rows = []
    for p in p_values:
        scan = np.asarray(_scan_rows(BernoulliMeasure(p, level), rs, mesh), dtype=float)
        alpha_true = fit_exponent(scan[:, [1, 2]], window=window, mode="alpha").exponent
        alpha_noim = fit_exponent(scan[:, [1, 3]], window=window, mode="alpha").exponent
        rows.append((p, bernoulli_bound(p)[1], alpha_noim, alpha_true))
    prefix = _prefix(cfg, base_dir)
    path = write_csv(
        Path(str(prefix) + ".table.csv"),
        ["p", "alpha_analytical", "alpha_noIm", "alpha_withIm"],
        rows,
    )
    return [path], {"level": level, "mesh": mesh, "k_min": k_min, "k_max": k_max}


def cmd_entropy(cfg: dict, base_dir: Path):
    check_keys(
        cfg,
        {"out_prefix", "kappa", "t_max", "bits", "system"},
        {"out_prefix", "kappa", "t_max", "system"},
        "config",
    )
    system = system_from_config(cfg["system"])
    kappa = float(cfg["kappa"])
    t_max = int(cfg["t_max"])
    bits = bool(cfg.get("bits", False))
    if t_max < 1:
        raise ValidationError("config: t_max must be at least 1")
    survival = system.survival
    reports = [
        refined_entropy(kappa, evolved_defect(system.U, survival, t), t) for t in range(1, t_max + 1)
    ]
    ln2 = float(np.log(2.0))
    records = []
    for rep in reports:
        record = {
            "t": rep.t,
            "kappa": rep.kappa,
            "defect_spectrum": [float(v) for v in rep.defect_spectrum],
            "trace_defect": rep.trace_defect,
            "H_exact_nats": rep.h_exact,
            "H_lower_nats": rep.h_lower,
        }
        if bits:
            # display-only conversion; the nats fields stay the contract
            record["H_exact_bits"] = rep.h_exact / ln2
            record["H_lower_bits"] = rep.h_lower / ln2
        records.append(record)
    prefix = _prefix(cfg, base_dir)
    json_path = write_json(Path(str(prefix) + ".entropy.json"), records)
    header = ["t", "trace_defect", "H_exact_nats", "H_lower_nats"]
    rows = [[rep.t, rep.trace_defect, rep.h_exact, rep.h_lower] for rep in reports]
    if bits:
        header += ["H_exact_bits", "H_lower_bits"]
        for row, rep in zip(rows, reports):
            row += [rep.h_exact / ln2, rep.h_lower / ln2]
    csv_path = write_csv(Path(str(prefix) + ".entropy.csv"), header, rows)
    return [json_path, csv_path], {"kappa": kappa, "t_max": t_max, "bits": bits}


def _rank_one_state(system) -> np.ndarray:
    evals, evecs = hermitian_eig(system.A)
    close_to_one = np.abs(evals - 1.0) <= 1e-10
    close_to_zero = np.abs(evals) <= 1e-10
    if close_to_one.sum() != 1 or close_to_one.sum() + close_to_zero.sum() != evals.size:
        raise ValidationError("oracle-compare needs a rank-1 projector trap")
    return evecs[:, int(np.argmax(close_to_one))]


def cmd_oracle_compare(cfg: dict, base_dir: Path):
    check_keys(cfg, {"out_prefix", "t_max", "system"}, {"out_prefix", "system"}, "config")
    system = system_from_config(cfg["system"])
    t_max = int(cfg.get("t_max", 31))
    if t_max < 2:
        raise ValidationError("config: t_max must be at least 2")
    phi = _rank_one_state(system)
    seq = state_moments(system.U, phi, t_max)
    series = current_series(k_sequence(seq, t_max), t_max)
    krylov = krylov_current(seq, t_max)
    matrix_j = trap_current_series(system, t_max)
    matrix_n = trapped_number_series(system, t_max)

    rows = [
        (t, float(series.J[t - 1]), float(krylov[t - 1]), float(matrix_j[t - 1]), float(matrix_n[t - 1]))
        for t in range(1, t_max + 1)
    ]
    # J(1) = 1 is a convention shared by all three routes; compare from t = 2 on
    dev_rk = float(np.max(np.abs(series.J[1:] - krylov[1:])))
    dev_rm = float(np.max(np.abs(series.J[1:] - matrix_j[1:])))
    dev_km = float(np.max(np.abs(krylov[1:] - matrix_j[1:])))
    partial = np.array([exact_sum(matrix_j[:t]) for t in range(1, t_max + 1)])
    dev_tel = float(np.max(np.abs(matrix_n - partial)))
    passed = max(dev_rk, dev_rm, dev_km) <= CURRENT_TOL and dev_tel <= TELESCOPE_TOL

    prefix = _prefix(cfg, base_dir)
    csv_path = write_csv(
        Path(str(prefix) + ".compare.csv"),
        ["t", "J_recursion", "J_krylov", "J_matrix", "N_matrix"],
        rows,
    )
    json_path = write_json(
        Path(str(prefix) + ".compare.json"),
        {
            "max_dev_recursion_krylov": dev_rk,
            "max_dev_recursion_matrix": dev_rm,
            "max_dev_krylov_matrix": dev_km,
            "max_dev_telescoping": dev_tel,
            "tol_current": CURRENT_TOL,
            "tol_telescoping": TELESCOPE_TOL,
            "pass": bool(passed),
        },
    )
    if not passed:
        raise ToleranceError(
            f"oracle routes disagree: currents {max(dev_rk, dev_rm, dev_km):.3e}, "
            f"telescoping {dev_tel:.3e}"
        )
    return [csv_path, json_path], {"t_max": t_max}


def cmd_baselines(cfg: dict, base_dir: Path):
    check_keys(cfg, {"out_prefix", "t_max", "t_values"}, {"out_prefix"}, "config")
    if "t_values" in cfg:
        ts = [int(t) for t in cfg["t_values"]]
    else:
        ts = list(range(1, int(cfg.get("t_max", 1024)) + 1))
    if not ts or min(ts) < 1:
        raise ValidationError("config: walk times must be positive integers")
    rows = [(t, rw_current(t).J) for t in ts]
    prefix = _prefix(cfg, base_dir)
    path = write_csv(Path(str(prefix) + ".baseline.csv"), ["t", "J"], rows)
    return [path], {"t_values": ts}


COMMANDS = {
    "moments": cmd_moments,
    "current": cmd_current,
    "jtilde-scan": cmd_jtilde_scan,
    "exponent": cmd_exponent,
    "bernoulli-table": cmd_bernoulli_table,
    "entropy": cmd_entropy,
    "oracle-compare": cmd_oracle_compare,
    "baselines": cmd_baselines,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trapdyn",
        description="Trap currents, scaling exponents and entropy bounds from archival configs.",
    )
    parser.add_argument("--version", action="version", version=f"trapdyn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name, help=f"run the {name} pipeline from a config file")
        cmd.add_argument("config", help="path to the TOML run config")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config_path = Path(args.config)
    try:
        cfg = load_config(config_path)
        if "command" in cfg:
            if cfg["command"] != args.command:
                raise ValidationError(
                    f"config names command {cfg['command']!r} but {args.command!r} was invoked"
                )
            cfg = {k: v for k, v in cfg.items() if k != "command"}
        base_dir = config_path.resolve().parent
        artifacts, extras = COMMANDS[args.command](cfg, base_dir)
        resolved = dict(cfg)
        resolved.update(extras)
        manifest = write_manifest(
            base_dir / cfg["out_prefix"], args.command, resolved, artifacts
        )
        for path in [*artifacts, manifest]:
            print(path)
    except ToleranceError as exc:
        print(f"tolerance failure: {exc}", file=sys.stderr)
        return 2
    except (ArgumentError, ValidationError) as exc:
        print(f"invalid run: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
