"""Module-configuration files: exact JSON descriptions of gl-modules.

A config is a JSON document

    {"m": 1, "n": 1, "dim": 3,
     "parity": [0, 0, 1],
     "mu": ["0", "1/2", "0"],
     "action": {"E_0_0": [["1","0","0"], ...], ...}}

with every scalar a string like "p/q" or "p/q+r/si" so exactness
survives the round trip.  Loading validates shapes, enforces the
vanishing odd shift entries, and runs the representation-axiom check.
"""

from __future__ import annotations

import json
from pathlib import Path

from .glmodules import GlModule, MuVector, RepReport, natural_module, rep_check
from .parser import ParseError, parse_scalar_literal
from .scalars import Scalar, format_scalar


class ConfigError(ValueError):
    """Malformed configuration file (CLI exit code 2)."""


class RepCheckFailure(ValueError):
    """Well-formed config whose action matrices are not a representation
    (CLI exit code 1)."""

    def __init__(self, report: RepReport):
        pairs = ", ".join(str(v[1]) for v in report.violations[:5])
        super().__init__(f"representation check failed: {pairs}")
        self.report = report


def _scalar(text, where: str) -> Scalar:
    if not isinstance(text, str):
        raise ConfigError(f"{where}: scalars must be strings, got {text!r}")
    try:
        return parse_scalar_literal(text)
    except ParseError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def load_module_config(path) -> tuple[GlModule, MuVector]:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    return module_from_dict(doc)


def module_from_dict(doc: dict) -> tuple[GlModule, MuVector]:
    for key in ("m", "n", "dim", "parity", "mu", "action"):
        if key not in doc:
            raise ConfigError(f"missing key {key!r}")
    m, n, dim = doc["m"], doc["n"], doc["dim"]
    if not (isinstance(m, int) and isinstance(n, int) and isinstance(dim, int)):
        raise ConfigError("m, n and dim must be integers")
    if m < 1 or n < 1 or dim < 0:
        raise ConfigError("need m >= 1, n >= 1 and dim >= 0")
    parity = doc["parity"]
    if not isinstance(parity, list) or len(parity) != dim:
        raise ConfigError("parity must list one 0/1 entry per basis vector")
    if any(p not in (0, 1) for p in parity):
        raise ConfigError("parity entries must be 0 or 1")
    mu_raw = doc["mu"]
    if not isinstance(mu_raw, list) or len(mu_raw) != m + n + 1:
        raise ConfigError(f"mu must list m+n+1 = {m + n + 1} entries")
    mu_vals = [_scalar(v, f"mu[{i}]") for i, v in enumerate(mu_raw)]
    try:
        mu = MuVector(m, n, mu_vals)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    action = doc["action"]
    if not isinstance(action, dict):
        raise ConfigError("action must map E_a_b keys to matrices")
    gl = m + 1 + n
    act = {}
    for a in range(gl):
        for b in range(gl):
            key = f"E_{a}_{b}"
            if key not in action:
                raise ConfigError(f"missing action matrix {key}")
            rows = action[key]
            if not isinstance(rows, list) or len(rows) != dim or any(
                not isinstance(r, list) or len(r) != dim for r in rows
            ):
                raise ConfigError(f"{key} must be a {dim}x{dim} matrix")
            act[(a, b)] = [
                [_scalar(c, f"{key}[{i}][{j}]") for j, c in enumerate(row)]
                for i, row in enumerate(rows)
            ]
    known = {f"E_{a}_{b}" for a in range(gl) for b in range(gl)}
    extra = set(action) - known
    if extra:
        raise ConfigError(f"unknown action keys: {sorted(extra)}")
    try:
        mod = GlModule(m, n, dim, parity, act)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    report = rep_check(mod)
    if not report.ok:
        raise RepCheckFailure(report)
    return mod, mu


def module_to_dict(mod: GlModule, mu: MuVector) -> dict:
    return {
        "m": mod.m,
        "n": mod.n,
        "dim": mod.dim,
        "parity": list(mod.parities),
        "mu": [format_scalar(v) for v in mu.values],
        "action": {
            f"E_{a}_{b}": [
                [format_scalar(c) for c in row] for row in mod.act[(a, b)]
            ]
            for a in range(mod.gl_dim)
            for b in range(mod.gl_dim)
        },
    }


def natural_config_dict(m: int, n: int, mu: MuVector | None = None) -> dict:
    mod = natural_module(m, n)
    return module_to_dict(mod, mu or MuVector.zero(m, n))


def write_natural_config(path, m: int, n: int):
    Path(path).write_text(json.dumps(natural_config_dict(m, n), indent=1))
