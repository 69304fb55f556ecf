"""Command-line front end.

Subcommands ``generate``, ``verify``, ``coeffs``, ``ode`` and ``energy-check``
read a JSON run configuration (see :mod:`stationary_ruled.config`) and
write their results to ``--out``. Exit status: 0 when every check passes,
1 when a verification check fails, 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

import numpy as np

from . import cylinder as C
from . import families as F
from . import oracle as O
from .anisotropy import lambda_residual
from .cases import FamilyCase, build_case
from .config import RunConfig, load_config, split_overrides
from .errors import ConfigError, GeometryError
from .geometry import jet_of
from .mesh import grid_mesh, write_csv, write_json, write_obj, write_scalars
from .ruled import RuledSpec, branch_coefficients, detect_branch, directrix
from .verify import EXACT_TOL, ORDER_MIN, coefficient_samples, run_checks, sample_grid

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
BALANCE_TOL = 1e-8
ODE_ORDER_MIN = 3.9
CONTROL_RTOL = 1e-2
# first-variation values below this are rounding noise of an exact discrete solution
VARIATION_FLOOR = 1e-8


def _case(cfg: RunConfig, s_range=None) -> FamilyCase:
    case = build_case(cfg.family, cfg.params, cfg.lam, cfg.variant, step=cfg.ode_step,
                      s_range=s_range or cfg.s_range, t_range=cfg.t_range)
    return dataclasses.replace(case, lam=cfg.eval_lambda)


def _header(cfg: RunConfig, command: str) -> dict:
    return dict(command=command, family=cfg.family, params=cfg.params, variant=cfg.variant,
                family_lambda=cfg.lam, eval_lambda=cfg.eval_lambda, seed=cfg.seed)


def _finish(out: Path, name: str, cfg: RunConfig, command: str, checks: list,
            extra: dict | None = None) -> int:
    passed = all(c["passed"] for c in checks)
    write_json(out / name, dict(_header(cfg, command), checks=checks, passed=passed,
                                **(extra or {})))
    for c in checks:
        print(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}: max {c['max_residual']:.3g}"
              f" (tol {c['tolerance']:.3g})")
    return EXIT_OK if passed else EXIT_FAIL


def _surface_mesh(case: FamilyCase, cfg: RunConfig):
    S, T = sample_grid(case, cfg.ns, cfg.nt)
    jet = jet_of(case.surface, S, T, strict=False)
    with np.errstate(all="ignore"):
        res = lambda_residual(jet, case.lam, strict=False)
    return grid_mesh(jet.X, res)


def cmd_generate(cfg: RunConfig, out: Path) -> int:
    case = _case(cfg)
    mesh = _surface_mesh(case, cfg)
    write_obj(out / "mesh.obj", mesh)
    write_scalars(out / "mesh_residual.csv", mesh)
    s = np.linspace(*case.s_range, cfg.ns)
    if isinstance(case.spec, RuledSpec):
        alpha = directrix(case.spec, s)
    elif case.kind == "cylinder":
        alpha = C.state_at(case.spec, case.trajectory, s)[1]
    else:
        alpha = None
    if alpha is not None:
        write_csv(out / "directrix.csv", ["s", "x", "y", "z"],
                  zip(s, alpha[0], alpha[1], alpha[2]))
    print(f"wrote {len(mesh.vertices)} vertices, {len(mesh.faces)} faces to {out}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out: Path) -> int:
    checks = [c.as_dict() for c in run_checks(_case(cfg), cfg.ns, cfg.nt, cfg.seed)]
    return _finish(out, "report.json", cfg, "verify", checks)


def cmd_coeffs(cfg: RunConfig, out: Path) -> int:
    case = _case(cfg)
    if case.kind == "graph":
        raise ConfigError("coeffs applies to ruled and cylindrical families")
    s, A = coefficient_samples(case, cfg.s_samples, cfg.seed)
    header = ["s"] + [f"A{n}" for n in range(6)] + ["branch"] + [f"closed_A{n}" for n in range(6)]
    rows = []
    for si, Ai in zip(s, A):
        branch, closed = "", {}
        if isinstance(case.spec, RuledSpec):
            b = detect_branch(case.spec, case.lam, si)
            branch = b.value
            closed = branch_coefficients(b, case.spec, case.lam, si)
        rows.append([si, *Ai, branch] + [closed[n] if n in closed else "" for n in range(6)])
    write_csv(out / "coeffs.csv", header, rows)
    print(f"wrote {len(rows)} rows to {out / 'coeffs.csv'}; max |A_n| = {np.max(np.abs(A)):.3g}")
    return EXIT_OK


def cmd_ode(cfg: RunConfig, out: Path) -> int:
    case = _case(cfg, s_range=cfg.ode_span)
    if case.kind != "cylinder":
        raise ConfigError("ode applies to the cylindrical families cyl_ex1, cyl_ex2, cyl_custom")
    spec = case.spec
    traj = case.trajectory
    write_csv(out / "ode.csv", ["s", "theta", "alpha_x", "alpha_y", "alpha_z"],
              zip(traj.s, traj.theta, *traj.alpha))
    checks = []
    try:
        bal = np.abs(C.verify_cylindrical_balance(spec, traj.theta, C.theta_rate(spec, traj.theta)))
        worst = float(bal.max())
        checks.append(dict(name="cylindrical_balance", max_residual=worst, tolerance=BALANCE_TOL,
                           passed=worst < BALANCE_TOL))
    except GeometryError as exc:
        checks.append(dict(name="cylindrical_balance", max_residual=float("nan"),
                           tolerance=BALANCE_TOL, passed=False, error=str(exc)))
    study = C.convergence_study(spec, cfg.ode_span, cfg.ode_step)
    ok = (not study.resolved) or study.order >= ODE_ORDER_MIN
    ratios = [a / b for a, b in zip(study.deviations, study.deviations[1:]) if b > 0]
    checks.append(dict(name="parabola_convergence", max_residual=max(study.deviations),
                       tolerance=C.DEVIATION_FLOOR, passed=bool(ok), order_estimate=study.order,
                       resolved=study.resolved, steps=list(study.steps),
                       deviations=list(study.deviations), error_ratios=ratios))
    if cfg.ode_mesh:
        mesh = _surface_mesh(case, cfg)
        write_obj(out / "cylinder.obj", mesh)
        write_scalars(out / "cylinder_residual.csv", mesh)
    return _finish(out, "ode_report.json", cfg, "ode", checks)


def graph_form(case: FamilyCase, cfg: RunConfig):
    """``(u, x_range, y_range)`` of the families that are graphs over the xy-plane."""
    if case.kind == "graph":
        return case.spec, cfg.s_range, cfg.t_range
    if case.family == "cyl_ex1":
        slope = np.cos(case.spec.theta0) / np.sin(case.spec.theta0)
        return F.parabolic_cylinder(cfg.lam, slope), (-1.0, 1.0), (-1.0, 1.0)
    raise ConfigError("energy-check applies to rotational, wulff and cyl_ex1")


def cmd_energy_check(cfg: RunConfig, out: Path) -> int:
    case = _case(cfg)
    u, xr, yr = graph_form(case, cfg)
    lam = cfg.eval_lambda
    checks = []
    study = O.laplacian_refinement_study(u, lam, xr, yr, cfg.energy_n0, cfg.energy_levels)
    exact = study.exact(EXACT_TOL)
    checks.append(dict(name="pde_stencil", max_residual=study.max_residual,
                       tolerance=EXACT_TOL, passed=bool(exact or study.order_estimate >= ORDER_MIN),
                       order_estimate=study.order_estimate, levels=list(study.levels),
                       roundoff_floor=study.roundoff_floor))
    rng = np.random.default_rng(cfg.seed)
    for k in range(cfg.energy_bumps):
        bump = O.random_bump(rng, xr, yr)
        fv = O.first_variation_study(u, lam, bump, xr, yr, cfg.energy_n0, cfg.energy_levels)
        ok = fv.max_residual < VARIATION_FLOOR or fv.order_estimate >= ORDER_MIN
        checks.append(dict(name=f"first_variation_{k}", max_residual=fv.max_residual,
                           tolerance=VARIATION_FLOOR, passed=bool(ok),
                           order_estimate=fv.order_estimate, levels=list(fv.levels)))
    rel = negative_control(rng, lam, xr, yr, cfg.energy_n0 * 2 - 1)
    checks.append(dict(name="negative_control_cubic", max_residual=rel, tolerance=CONTROL_RTOL,
                       passed=rel < CONTROL_RTOL))
    grid = O.GridFunction.sample(u, xr, yr, cfg.energy_n0, cfg.energy_n0)
    return _finish(out, "energy_report.json", cfg, "energy-check", checks,
                   dict(discrete_energy=O.discrete_energy(grid, lam)))


def negative_control(rng, lam, xr, yr, n) -> float:
    """Relative gap between the first variation of ``u = x^3`` and ``int (lam - 12 x) b``."""
    bump = O.random_bump(rng, xr, yr, zero_mean=False)
    U = O.GridFunction.sample(lambda x, y: x**3 + 0.0 * y, xr, yr, n, n)
    B = O.GridFunction.sample(bump, xr, yr, n, n)
    B = B.with_values(O._zero_edges(B.values))
    x, _ = U.coords()
    expected = O.integrate(U.with_values((lam - 12.0 * x) * B.values))
    got = O.first_variation_test(U, lam, B)
    return abs(got - expected) / abs(expected)


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "coeffs": cmd_coeffs,
    "ode": cmd_ode,
    "energy-check": cmd_energy_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stationary-ruled",
        description="Construct and verify stationary surfaces of the Dirichlet energy.",
        epilog="Any other '--key value' pair overrides a config entry (dotted keys for "
               "nested entries, e.g. --grid.ns 32 --params.m 0.8).")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", metavar="PATH", help="JSON run configuration")
    parser.add_argument("--out", metavar="DIR", default="out", help="output directory")
    parser.add_argument("--seed", metavar="N", type=int, help="seed for fallback randomness")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args, rest = parser.parse_known_args(argv)
    try:
        overrides = split_overrides(rest)
        if args.seed is not None:
            overrides.append(("seed", str(args.seed)))
        cfg = load_config(args.config, overrides)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](cfg, out)
    except (ConfigError, GeometryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
