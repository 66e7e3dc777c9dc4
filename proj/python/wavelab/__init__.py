"""Python interface to the wavelab solver.

The heavy lifting happens in the compiled ``_wavelab`` extension; this module
converts between JSON strings and Python objects and reads the files written
by ``wavelab run``, ``wavelab residual-study`` and ``wavelab sweep``.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from . import _wavelab
from ._wavelab import ConfigError, convolve_P, kernel_norms, preset_names

__all__ = [
    "ConfigError",
    "blowup_criterion",
    "classify",
    "coefficients",
    "consistency_order",
    "convolve_P",
    "kernel_norms",
    "preset",
    "preset_names",
    "read_breaking",
    "read_manifest",
    "read_slopes",
    "read_snapshot",
    "read_summary",
    "round_trip",
    "run",
    "run_config_file",
    "slope_bounds_fraction",
    "snapshots",
]


def coefficients(family: str, param: str, theta2: str = "1/3") -> dict:
    """Exact and floating coefficients of a family, plus its classification."""
    return json.loads(_wavelab.coefficients_json(family, str(param), str(theta2)))


def preset(name: str) -> dict:
    return json.loads(_wavelab.preset_json(name))


def classify(coeffs: dict, tol: float = 1e-12) -> str:
    return _wavelab.classify_json(json.dumps(coeffs), tol)


def run(config: dict) -> dict:
    """Run an experiment described by a config dict (same schema as the JSON files)."""
    cfg = dict(config)
    cfg.setdefault("name", "run")
    out = _wavelab.run_json(json.dumps(cfg))
    if out["breaking"] is not None:
        out["breaking"] = json.loads(out["breaking"])
    return out


def blowup_criterion(zeta0, length: float, eps: float, mu: float, mu0: float = 1.0, M: float = 1.0,
                     mode: str = "sup_zeta0") -> dict:
    return json.loads(_wavelab.blowup_criterion_json(np.asarray(zeta0, dtype=float), length, eps, mu, mu0, M, mode))


def slope_bounds_fraction(t, m, eps: float, mu: float, c0: float, rel_slack: float = 1e-9):
    """(fraction, passed, total) for the slope differential inequalities."""
    return _wavelab.slope_bounds_fraction(np.asarray(t, dtype=float), np.asarray(m, dtype=float), eps, mu, c0,
                                          rel_slack)


def consistency_order(family="one-param", p="-1/12", theta2="1/3", mu_list=(0.2, 0.1, 0.05, 0.025),
                      t_probe=0.5, n=1024, length=20.0) -> dict:
    return json.loads(_wavelab.consistency_order_json(family, str(p), str(theta2), list(mu_list), t_probe, n, length))


def round_trip(family="one-param", p="-1/12", theta2="1/3", mu_list=(0.2, 0.1, 0.05, 0.025),
               depth_mode="free-surface") -> dict:
    return _wavelab.round_trip(family, str(p), str(theta2), list(mu_list), depth_mode)


def run_config_file(config, out_dir) -> tuple[int, str]:
    """Same as ``wavelab run``; returns (exit code, console text)."""
    return _wavelab.cmd_run(Path(config), Path(out_dir))


# Readers for the output files.

def _read_columns(path) -> dict:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [r for r in reader]
    cols = {}
    for j, name in enumerate(header):
        try:
            cols[name] = np.array([float(r[j]) for r in rows])
        except ValueError:
            cols[name] = [r[j] for r in rows]
    return cols


def read_snapshot(path) -> tuple[np.ndarray, np.ndarray]:
    cols = _read_columns(path)
    x = cols.pop("x")
    (values,) = cols.values()
    return x, values


def snapshots(run_dir) -> list[tuple[float, np.ndarray, np.ndarray]]:
    """(t, x, u) for every snapshot listed in the run's manifest, in order."""
    run_dir = Path(run_dir)
    out = []
    for entry in read_manifest(run_dir)["snapshots"]:
        x, u = read_snapshot(run_dir / entry["file"])
        out.append((entry["time"], x, u))
    return out


def read_slopes(path) -> dict:
    path = Path(path)
    return _read_columns(path / "slopes.csv" if path.is_dir() else path)


def read_manifest(run_dir) -> dict:
    return json.loads((Path(run_dir) / "manifest.json").read_text())


def read_breaking(run_dir):
    p = Path(run_dir) / "breaking.json"
    return json.loads(p.read_text()) if p.exists() else None


def read_summary(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
