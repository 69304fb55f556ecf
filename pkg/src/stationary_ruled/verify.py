"""Grid verification of family cases against the Lambda identity and the oracles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle as O
from .anisotropy import lambda_residual
from .cases import FamilyCase
from .errors import GeometryError
from .geometry import fundamental_data, jet_of, mean_curvature
from .ruled import coeff_extract

RESIDUAL_TOL = 1e-8
COEFF_TOL = 1e-8
MINIMAL_TOL = 1e-9
ORDER_MIN = 1.9
EXACT_TOL = 1e-12
# samples with nu3^2 above this are skipped: the principal frame degenerates
NEAR_HORIZONTAL = 1.0 - 1e-6


@dataclass(frozen=True)
class ResidualReport:
    """Per-point residuals on a sampling grid; excluded samples hold NaN."""

    name: str
    s: np.ndarray
    t: np.ndarray
    residual: np.ndarray
    tolerance: float = RESIDUAL_TOL

    @property
    def valid(self):
        return np.isfinite(self.residual)

    @property
    def n_excluded(self) -> int:
        return int(np.size(self.residual) - np.count_nonzero(self.valid))

    @property
    def max_residual(self) -> float:
        r = np.abs(self.residual[self.valid])
        return float(r.max()) if r.size else float("nan")

    @property
    def mean_residual(self) -> float:
        r = np.abs(self.residual[self.valid])
        return float(r.mean()) if r.size else float("nan")

    @property
    def passed(self) -> bool:
        return bool(np.any(self.valid)) and self.max_residual < self.tolerance


@dataclass(frozen=True)
class Check:
    name: str
    max_residual: float
    tolerance: float
    passed: bool
    detail: dict

    def as_dict(self):
        return dict(name=self.name, max_residual=self.max_residual,
                    tolerance=self.tolerance, passed=self.passed, **self.detail)


def sample_grid(case: FamilyCase, ns: int = 64, nt: int = 16):
    s = np.linspace(*case.s_range, ns)
    t = np.linspace(*case.t_range, nt)
    return np.meshgrid(s, t, indexing="ij")


def _admissible(case: FamilyCase, S, T, jet):
    fd = fundamental_data(jet, strict=False)
    ok = np.isfinite(fd.nu3) & (fd.nu3**2 <= NEAR_HORIZONTAL) & ~case.exclude(S, T)
    return fd, ok


def residual_grid(case: FamilyCase, ns: int = 64, nt: int = 16,
                  tolerance: float = RESIDUAL_TOL) -> ResidualReport:
    """Residual of the Lambda identity with the family's Lambda over an ``ns`` by ``nt`` grid.

    Samples at known singularities and where ``nu3^2 > 1 - 1e-6`` are excluded.
    """
    S, T = sample_grid(case, ns, nt)
    jet = jet_of(case.surface, S, T, strict=False)
    _, ok = _admissible(case, S, T, jet)
    with np.errstate(all="ignore"):
        r = lambda_residual(jet, case.lam, strict=False)
    return ResidualReport(case.family, S, T, np.where(ok, r, np.nan), tolerance)


def mean_curvature_grid(case: FamilyCase, ns: int = 64, nt: int = 16) -> ResidualReport:
    S, T = sample_grid(case, ns, nt)
    jet = jet_of(case.surface, S, T, strict=False)
    fd, ok = _admissible(case, S, T, jet)
    with np.errstate(all="ignore"):
        H = mean_curvature(fd)
    return ResidualReport(case.family, S, T, np.where(ok, H, np.nan), MINIMAL_TOL)


def coefficient_samples(case: FamilyCase, n: int = 32, seed: int = 0):
    """``(s, A)`` for ``n`` admissible s-samples; ``A`` has shape ``(n_ok, 6)``."""
    s_all = np.linspace(*case.s_range, n + 2)[1:-1]
    s_ok = s_all[~case.exclude(s_all, 0.0)]
    rows = [coeff_extract(case.surface, case.lam, s, seed=seed).A for s in s_ok]
    return s_ok, np.array(rows)


def run_checks(case: FamilyCase, ns: int = 64, nt: int = 16, seed: int = 0) -> list[Check]:
    """All checks that apply to the case's kind."""
    checks = []
    rep = residual_grid(case, ns, nt)
    checks.append(Check("lambda_residual", rep.max_residual, rep.tolerance, rep.passed,
                        dict(mean_residual=rep.mean_residual, excluded=rep.n_excluded,
                             samples=int(rep.residual.size))))
    if case.kind in ("ruled", "cylinder"):
        try:
            s, A = coefficient_samples(case, 32, seed)
            worst = float(np.max(np.abs(A)))
            checks.append(Check("coefficients_vanish", worst, COEFF_TOL, worst < COEFF_TOL,
                                dict(samples=int(len(s)))))
        except GeometryError as exc:
            checks.append(Check("coefficients_vanish", float("nan"), COEFF_TOL, False,
                                dict(error=str(exc))))
    if case.family == "sol1":
        H = mean_curvature_grid(case, ns, nt)
        checks.append(Check("minimal_surface", H.max_residual, H.tolerance, H.passed, {}))
    if case.kind == "graph":
        study = O.laplacian_refinement_study(case.spec, case.lam, case.s_range, case.t_range,
                                             n0=65)
        exact = study.exact(EXACT_TOL)
        ok = exact or study.order_estimate >= ORDER_MIN
        checks.append(Check("pde_stencil", study.max_residual, EXACT_TOL, bool(ok),
                            dict(order_estimate=study.order_estimate, levels=list(study.levels),
                                 roundoff_floor=study.roundoff_floor)))
    return checks
