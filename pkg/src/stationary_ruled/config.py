"""Run configuration: a JSON document with command-line ``--key value`` overrides.

Schema (every key optional except ``family``)::

    {
      "family": "sol1",                 # plane sol1 sol2 sol3 sol4 rotational wulff
                                        # cyl_ex1 cyl_ex2 cyl_custom
      "params": {"c1": 1.0, "b1": 1.0}, # names checked against the family
      "lambda": 2.0,                    # only for families with a free Lambda
      "eval_lambda": 1.0,               # Lambda used in residuals (default: the family's)
      "variant": "tan",                 # sol1: "tan"; sol3: "arccot"
      "grid": {"s_range": [0, 6.283], "t_range": [-2, 2], "ns": 64, "nt": 16},
      "s_samples": 32,                  # coeffs
      "ode": {"s_span": [0, 4], "step": 0.05, "mesh": false},
      "energy": {"n0": 65, "levels": 3, "bumps": 5},
      "seed": 0
    }

Graph families may spell the grid ``x_range, y_range, nx, ny``. Nested keys
are overridden with dotted names, for example ``--grid.ns 32`` or
``--params.m 0.8``; values are parsed as JSON when possible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .cases import SCHEMAS, resolve_params
from .errors import ConfigError

TOP_KEYS = {"family", "params", "lambda", "eval_lambda", "variant", "grid", "s_samples",
            "ode", "energy", "seed"}
GRID_ALIASES = {"x_range": "s_range", "y_range": "t_range", "nx": "ns", "ny": "nt"}


@dataclass(frozen=True)
class RunConfig:
    family: str
    params: dict
    lam: float
    eval_lambda: float
    variant: str | None = None
    s_range: tuple = ()
    t_range: tuple = ()
    ns: int = 64
    nt: int = 16
    s_samples: int = 32
    ode_span: tuple = (0.0, 4.0)
    ode_step: float = 0.05
    ode_mesh: bool = False
    energy_n0: int = 65
    energy_levels: int = 3
    energy_bumps: int = 5
    seed: int = 0
    raw: dict = field(default_factory=dict, compare=False)


def parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(doc: dict, pairs: list[tuple[str, str]]) -> dict:
    doc = json.loads(json.dumps(doc))
    for key, text in pairs:
        parts = key.replace("-", "_").split(".")
        node = doc
        for p in parts[:-1]:
            node = node.setdefault(p, {})
            if not isinstance(node, dict):
                raise ConfigError(f"cannot override {key}: {p} is not a section")
        node[parts[-1]] = parse_value(text)
    return doc


def split_overrides(tokens: list[str]) -> list[tuple[str, str]]:
    """``['--a', '1', '--b.c', 'x']`` to ``[('a', '1'), ('b.c', 'x')]``."""
    if len(tokens) % 2:
        raise ConfigError(f"overrides must come in '--key value' pairs: {tokens}")
    pairs = []
    for key, val in zip(tokens[::2], tokens[1::2]):
        if not key.startswith("--") or len(key) < 3:
            raise ConfigError(f"unexpected argument {key!r}")
        pairs.append((key[2:], val))
    return pairs


def load_document(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    return doc


def _range(value, name):
    try:
        lo, hi = (float(v) for v in value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a pair of numbers") from None
    if not lo < hi:
        raise ConfigError(f"{name} must be nonempty (lo < hi)")
    return lo, hi


def _count(value, name, minimum=2):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise ConfigError(f"{name} must be an integer")
    if value < minimum:
        raise ConfigError(f"{name} must be at least {minimum}")
    return int(value)


def _section(doc, name):
    sec = doc.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(f"{name} must be an object")
    return sec


def build_config(doc: dict) -> RunConfig:
    unknown = set(doc) - TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    family = doc.get("family")
    if family is None:
        raise ConfigError("config must name a family")
    if not isinstance(doc.get("params", {}), dict):
        raise ConfigError("params must be an object")
    try:
        params, lam = resolve_params(family, doc.get("params"), doc.get("lambda"),
                                     doc.get("variant"))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid parameter value: {exc}") from None
    schema = SCHEMAS[family]
    grid = {GRID_ALIASES.get(k, k): v for k, v in _section(doc, "grid").items()}
    bad = set(grid) - {"s_range", "t_range", "ns", "nt"}
    if bad:
        raise ConfigError(f"unknown grid keys: {sorted(bad)}")
    ode = _section(doc, "ode")
    energy = _section(doc, "energy")
    step = ode.get("step", 0.05)
    if isinstance(step, bool) or not isinstance(step, (int, float)) or not step > 0:
        raise ConfigError("ode.step must be a positive number")
    eval_lambda = doc.get("eval_lambda", lam)
    if not isinstance(eval_lambda, (int, float)) or isinstance(eval_lambda, bool):
        raise ConfigError("eval_lambda must be a number")
    return RunConfig(
        family=family,
        params=params,
        lam=lam,
        eval_lambda=float(eval_lambda),
        variant=doc.get("variant"),
        s_range=_range(grid.get("s_range", schema.s_range), "s_range"),
        t_range=_range(grid.get("t_range", schema.t_range), "t_range"),
        ns=_count(grid.get("ns", 64), "ns"),
        nt=_count(grid.get("nt", 16), "nt"),
        s_samples=_count(doc.get("s_samples", 32), "s_samples", 1),
        ode_span=_range(ode.get("s_span", (0.0, 4.0)), "ode.s_span"),
        ode_step=float(step),
        ode_mesh=bool(ode.get("mesh", False)),
        energy_n0=_count(energy.get("n0", 65), "energy.n0", 3),
        energy_levels=_count(energy.get("levels", 3), "energy.levels", 3),
        energy_bumps=_count(energy.get("bumps", 5), "energy.bumps", 1),
        seed=_count(doc.get("seed", 0), "seed", 0),
        raw=doc,
    )


def load_config(path: str | None, overrides: list[tuple[str, str]] = ()) -> RunConfig:
    return build_config(apply_overrides(load_document(path), list(overrides)))
