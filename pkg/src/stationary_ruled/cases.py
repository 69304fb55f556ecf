"""Named family instances with their parameter schema, Lambda and sampling domain."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import cylinder as C
from . import families as F
from .errors import ConfigError
from .geometry import graph_map


@dataclass(frozen=True)
class FamilySchema:
    params: dict  # name -> default
    lam: float | None  # fixed Lambda, or None when Lambda is a free parameter
    default_lam: float = 0.0
    kind: str = "ruled"  # ruled | graph | cylinder
    s_range: tuple = (0.0, 2.0 * np.pi)
    t_range: tuple = (-2.0, 2.0)
    tan_based: bool = False
    variants: tuple = ()


SCHEMAS = {
    "plane": FamilySchema(dict(m=0.5, c1=1.0, b0=0.0), 0.0, t_range=(0.25, 2.0)),
    "sol1": FamilySchema(dict(c1=1.0, b1=1.0), 0.0, variants=("tan",)),
    "sol2": FamilySchema(dict(c1=1.0, c2=0.0, b1=1.0), 0.0, s_range=(-1.4, 1.4), tan_based=True),
    "sol3": FamilySchema(dict(c1=0.0, c2=0.0, b1=1.0, m=0.5), 0.0, s_range=(-3.0, 3.0),
                         variants=("arccot",)),
    "sol4": FamilySchema(dict(c1=1.0, c2=0.0, b1=1.0), None, 2.0, s_range=(-1.4, 1.4),
                         tan_based=True),
    "rotational": FamilySchema(dict(c1=1.0, c2=0.0), None, 0.0, kind="graph",
                               s_range=(0.6, 2.0), t_range=(0.6, 1.4)),
    "wulff": FamilySchema({}, 8.0, 8.0, kind="graph", s_range=(-1.0, 1.0), t_range=(-1.0, 1.0)),
    "cyl_ex1": FamilySchema(dict(theta0=np.pi / 2), None, 2.0, kind="cylinder",
                            s_range=(0.0, 3.0), t_range=(-1.0, 1.0)),
    "cyl_ex2": FamilySchema(dict(theta0=0.0), None, 2.0, kind="cylinder",
                            s_range=(0.0, 3.0), t_range=(-1.0, 1.0)),
    "cyl_custom": FamilySchema(dict(varphi=0.3, phi=0.5, theta0=0.7), None, 1.0,
                               kind="cylinder", s_range=(0.0, 3.0), t_range=(-1.0, 1.0)),
}

ODE_STEP = 0.01


@dataclass(frozen=True)
class FamilyCase:
    """A concrete family member ready for sampling."""

    family: str
    params: dict
    lam: float
    kind: str
    surface: Callable
    s_range: tuple
    t_range: tuple
    tan_based: bool = False
    spec: object = None  # RuledSpec, CylSpec or the graph function u
    trajectory: object = None

    def exclude(self, s, t):
        """True where a sample is skipped as a known singularity of the parametrization."""
        s = np.asarray(s, dtype=float)
        bad = np.zeros(np.broadcast(s, np.asarray(t)).shape, dtype=bool)
        if self.tan_based:
            bad |= np.abs(np.cos(s)) < 0.1
        return bad


def resolve_params(family: str, params: dict | None, lam=None, variant=None):
    """Validate names against the family schema and fill defaults."""
    if family not in SCHEMAS:
        raise ConfigError(f"unknown family {family!r}; choose from {sorted(SCHEMAS)}")
    schema = SCHEMAS[family]
    params = dict(params or {})
    unknown = set(params) - set(schema.params)
    if unknown:
        raise ConfigError(f"unknown parameters for {family}: {sorted(unknown)}")
    full = {k: float(params.get(k, v)) for k, v in schema.params.items()}
    if schema.lam is not None:
        if lam is not None and float(lam) != schema.lam:
            raise ConfigError(f"{family} has fixed lambda {schema.lam}")
        lam = schema.lam
    else:
        lam = schema.default_lam if lam is None else float(lam)
    if variant is not None and variant not in schema.variants:
        raise ConfigError(f"{family} has no variant {variant!r}")
    return full, float(lam)


def build_case(family: str, params: dict | None = None, lam=None, variant=None,
               step: float = ODE_STEP, s_range=None, t_range=None) -> FamilyCase:
    p, lam = resolve_params(family, params, lam, variant)
    schema = SCHEMAS[family]
    s_range = tuple(s_range or schema.s_range)
    t_range = tuple(t_range or schema.t_range)
    traj = None
    if schema.kind == "ruled":
        if family == "plane":
            spec = F.family_plane(**p)
        elif family == "sol1":
            spec = (F.family_sol1_tan_variant if variant == "tan" else F.family_sol1)(**p)
        elif family == "sol2":
            spec = F.family_sol2(**p)
        elif family == "sol3":
            spec = (F.family_sol3_arccot_variant if variant == "arccot" else F.family_sol3)(**p)
        else:
            spec = F.family_sol4(lam=lam, **p)
        surface = spec.surface()
    elif schema.kind == "graph":
        spec = F.family_wulff() if family == "wulff" else F.family_rotational(lam=lam, **p)
        surface = graph_map(spec)
    else:
        if family == "cyl_ex1":
            spec = C.example_vertical_plane(lam, p["theta0"])
        elif family == "cyl_ex2":
            spec = C.example_tilted(lam, p["theta0"])
        else:
            spec = C.cylspec_from_angles(p["varphi"], p["phi"], lam, p["theta0"])
        traj = C.integrate_theta(spec, s_range, step)
        surface = C.cylinder_surface(spec, traj)
    return FamilyCase(family, p, lam, schema.kind, surface, s_range, t_range,
                      schema.tan_based or variant == "tan",
                      spec, traj)
