"""Scenario registry, bound checks, and report emission.

Each registered scenario binds a catalog field configuration to the
solvers it exercises and the properties expected to hold: bracket
audits, solution-pair cancellation, PDE residuals, multiplicity
values, closed-form bracket shapes, and the causal-phase identity.
``run_scenario`` executes the bound checks and returns a
:class:`RunReport`; ``emit`` serialises it as CSV or JSON with a
fixed column schema and deterministic ordering.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field as dc_field
from typing import Callable

from . import __version__
from .errors import ConfigurationError
from .fields import (
    Constants,
    FieldDifference,
    ScenarioConfig,
    build_field,
    mollify,
    shift_vector_potential,
)
from .gauge_spacetime import (
    BracketSetXYT,
    SpacetimeRect,
    audit_brackets_xyt,
    lambda3,
    lambda4,
    lambda_full,
    naive_brown_holland,
    select_brackets_xt,
    spacetime_multiplicities,
    van_kampen_delta,
)
from .gauge_static import (
    ObservationRect,
    ab_multiplicities,
    audit_brackets,
    enclosed_flux_polar,
    lambda1,
    lambda2,
    lambda_polar1,
    lambda_polar2,
    select_brackets,
    select_brackets_polar,
)
from .numerics import Axis, FdSpec, GridSpec, QuadratureSpec, central_diff
from .verify import check_cancellation, residual_full, residual_static, residual_xt

__all__ = [
    "CheckRow",
    "ScenarioRun",
    "RunReport",
    "ScenarioDescriptor",
    "list_scenarios",
    "run_scenario",
    "emit",
]

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class CheckRow:
    """One check outcome; ``direction`` is 'le' (value must not exceed the
    threshold) or 'ge' (value must reach it, used by negative controls)."""

    check_id: str
    value: float
    threshold: float
    units: str
    direction: str = "le"
    x: float | None = None
    y: float | None = None
    t: float | None = None

    @property
    def status(self) -> str:
        ok = value_ok = (self.value <= self.threshold if self.direction == "le"
                         else self.value >= self.threshold)
        return "pass" if ok else "fail"


@dataclass(frozen=True)
class ScenarioDescriptor:
    """Registry entry: id, catalog kind, parameter defaults, and what the
    scenario demonstrates."""

    scenario_id: str
    kind: str
    defaults: dict
    notes: str


@dataclass
class ScenarioRun:
    """Resolved inputs for one scenario execution."""

    scenario_id: str
    params: dict = dc_field(default_factory=dict)
    tol_abs: float = 1e-10
    tol_rel: float = 1e-9
    fd_step: float | None = None
    constants: Constants = Constants()
    grid_overrides: dict = dc_field(default_factory=dict)

    def quad(self) -> QuadratureSpec:
        return QuadratureSpec(abs_tol=self.tol_abs, rel_tol=self.tol_rel)

    def fd(self) -> FdSpec:
        return FdSpec(step=self.fd_step)

    def axis(self, name: str, lo: float, hi: float, n: int) -> Axis:
        if name in self.grid_overrides:
            lo, hi, n = self.grid_overrides[name]
        return Axis(name, lo, hi, int(n))


@dataclass(frozen=True)
class RunReport:
    scenario_id: str
    rows: tuple[CheckRow, ...]
    metadata: dict

    @property
    def overall_status(self) -> str:
        return "pass" if all(r.status == "pass" for r in self.rows) else "fail"


def _row(check_id, value, threshold, units, direction="le", point=None):
    x = y = t = None
    if point is not None:
        coords = list(point) + [None] * (3 - len(point))
        x, y, t = coords[0], coords[1], coords[2]
    return CheckRow(check_id, float(value), float(threshold), units, direction, x, y, t)


def _pairs(axis_a: Axis, axis_b: Axis) -> list[tuple[float, float]]:
    return [(float(u), float(v)) for u in axis_a.points() for v in axis_b.points()]


def _curl_residual(field: FieldDifference, pts, t: float = 0.0) -> float:
    fd = FdSpec(step=1e-5)
    worst = 0.0
    for x, y in pts:
        dayx = central_diff(lambda u, v: field.ay(u, v, t), (x, y), 0, fd)
        daxy = central_diff(lambda u, v: field.ax(u, v, t), (x, y), 1, fd)
        worst = max(worst, abs(dayx - daxy - field.bz(x, y, t)))
    return worst


def _e_residual(field: FieldDifference, pts_xt, y: float = 0.0) -> float:
    fd = FdSpec(step=1e-5)
    c = field.constants.c
    worst = 0.0
    for x, t in pts_xt:
        dphix = central_diff(lambda u, v: field.phi(u, y, v), (x, t), 0, fd)
        daxt = central_diff(lambda u, v: field.ax(u, y, v), (x, t), 1, fd)
        worst = max(worst, abs(-dphix - daxt / c - field.ex(x, y, t)))
    return worst


# --- per-scenario check builders ------------------------------------------

def _strip_like_rows(run: ScenarioRun, cfg: ScenarioConfig, base, bracket_axes,
                     cancel_axes, res_axes, zero_sum_solution: str,
                     mol_width: float):
    """Shared checks for the two rectangular-strip scenarios."""
    quad = run.quad()
    tight = quad.tighter(1e-2)
    field = build_field(cfg, run.constants)
    bw = GridSpec(bracket_axes)
    brackets = select_brackets(field, bw, base, 0.0, tight)

    rows = []
    curl_pts = [(1.2, 0.7), (1.6, 1.3), (2.6, 0.5), (0.4, 1.7)]
    rows.append(_row("field_consistency_curl", _curl_residual(field, curl_pts), 1e-6,
                     "field"))

    fmax = max(1.0, abs(brackets.h(bracket_axes[1].hi)) + abs(brackets.g(bracket_axes[0].hi)))
    var_g, var_h = audit_brackets(field, brackets, bw, base, 0.0, tight)
    rows.append(_row("bracket_audit_g", var_g, 1e-6 * fmax, "flux"))
    rows.append(_row("bracket_audit_h", var_h, 1e-6 * fmax, "flux"))

    pts = _pairs(*cancel_axes)
    rep = check_cancellation(
        lambda x, y: lambda1(field, ObservationRect(*base, x, y), 0.0, brackets, tight).total,
        lambda x, y: lambda2(field, ObservationRect(*base, x, y), 0.0, brackets, tight).total,
        pts, expected="zero")
    rows.append(_row("cancellation_constant", abs(rep.fitted_constant), 2e-9, "phase"))
    rows.append(_row("lambda1_minus_lambda2", rep.max_deviation, 2e-9, "phase",
                     point=rep.worst_point))

    solver = lambda1 if zero_sum_solution == "lambda1" else lambda2
    worst = 0.0
    for x, y in pts[:: max(1, len(pts) // 9)]:
        gv = solver(field, ObservationRect(*base, x, y), 0.0, brackets, tight)
        worst = max(worst, abs(gv.nonlocal_part + gv.bracket_part))
    rows.append(_row(f"{zero_sum_solution}_nonlocal_plus_bracket", worst, 1e-8, "phase"))

    mol = mollify(field, mol_width)
    mbrackets = select_brackets(mol, bw, base, 0.0, tight)
    grid = GridSpec(res_axes)
    for name, fn in (("lambda1", lambda1), ("lambda2", lambda2)):
        rep = residual_static(
            lambda x, y: fn(mol, ObservationRect(*base, x, y), 0.0, mbrackets, tight).total,
            mol, grid, 0.0, run.fd(), exclude_margin=2 * mol_width,
            reference_scale=cfg.get("B0", 1.0))
        rows.append(_row(f"residual_{name}_max_rel", rep.max_rel, 1e-5, "rel",
                         point=rep.worst_point))
    return rows


def _run_vertical_strip(run: ScenarioRun):
    cfg = ScenarioConfig("vertical-strip-B", run.params)
    base = (0.0, 0.0)
    return _strip_like_rows(
        run, cfg, base,
        bracket_axes=(run.axis("x", 2.3, 3.3, 5), Axis("y", 0.0, 2.0, 5)),
        cancel_axes=(run.axis("x", 2.4, 3.2, 5), run.axis("y", 0.4, 2.0, 5)),
        res_axes=(run.axis("x", 2.5, 3.3, 10), run.axis("y", 0.3, 1.9, 5)),
        zero_sum_solution="lambda2",
        mol_width=0.1 * (cfg.get("x2", 2.0) - cfg.get("x1", 1.0)),
    )


def _run_horizontal_strip(run: ScenarioRun):
    cfg = ScenarioConfig("horizontal-strip-B", run.params)
    base = (0.0, 0.0)
    return _strip_like_rows(
        run, cfg, base,
        bracket_axes=(Axis("x", 0.0, 3.0, 5), run.axis("y", 2.3, 3.3, 5)),
        cancel_axes=(run.axis("x", 0.5, 3.0, 5), run.axis("y", 2.4, 3.2, 5)),
        res_axes=(run.axis("x", 0.5, 3.0, 10), run.axis("y", 2.5, 3.3, 5)),
        zero_sum_solution="lambda1",
        mol_width=0.1 * (cfg.get("y2", 2.0) - cfg.get("y1", 1.0)),
    )


def triangle_bracket_reference(b0: float, a: float):
    """Closed-form brackets for the triangular region, additive constant free."""
    def g_ref(x: float) -> float:
        return b0 * (-(_SQRT3 * a * x - 0.5 * _SQRT3 * x * x) + 0.25 * _SQRT3 * a * a)

    def h_ref(y: float) -> float:
        return b0 * ((a * y - y * y / _SQRT3) - 0.25 * _SQRT3 * a * a)

    return g_ref, h_ref


def _run_triangle(run: ScenarioRun):
    cfg = ScenarioConfig("triangle-B", run.params)
    b0 = cfg.get("B0", 1.0)
    a = cfg.get("a", 1.0)
    base = (0.0, 0.0)
    quad = run.quad()
    tight = quad.tighter(1e-2)
    field = build_field(cfg, run.constants)
    bw = GridSpec((run.axis("x", 0.78 * a, 0.95 * a, 5),
                   run.axis("y", 0.52 * a, 0.80 * a, 5)))
    brackets = select_brackets(field, bw, base, 0.0, tight)

    rows = []
    curl_pts = [(0.5 * a, 0.3 * a), (0.6 * a, 0.5 * a), (0.9 * a, 0.2 * a)]
    rows.append(_row("field_consistency_curl",
                     _curl_residual(mollify(field, 0.05 * a), curl_pts), 1e-6, "field"))

    g_ref, h_ref = triangle_bracket_reference(b0, a)
    xs = [0.78 * a + 0.17 * a * i / 4 for i in range(5)]
    ys = [0.52 * a + 0.28 * a * i / 4 for i in range(5)]
    off_g = brackets.g(xs[0]) - g_ref(xs[0])
    dev_g = max(abs(brackets.g(x) - g_ref(x) - off_g) for x in xs)
    off_h = brackets.h(ys[0]) - h_ref(ys[0])
    dev_h = max(abs(brackets.h(y) - h_ref(y) - off_h) for y in ys)
    rows.append(_row("g_matches_closed_form", dev_g, 1e-6 * b0 * a * a, "phase"))
    rows.append(_row("h_matches_closed_form", dev_h, 1e-6 * b0 * a * a, "phase"))

    d = 0.05 * a
    x_mid, y_mid = 0.86 * a, 0.66 * a
    gpp = (brackets.g(x_mid - d) - 2 * brackets.g(x_mid) + brackets.g(x_mid + d)) / d ** 2
    hpp = (brackets.h(y_mid - d) - 2 * brackets.h(y_mid) + brackets.h(y_mid + d)) / d ** 2
    rows.append(_row("g_second_derivative_rel_err",
                     abs(gpp - _SQRT3 * b0) / (_SQRT3 * b0), 1e-4, "rel"))
    rows.append(_row("h_second_derivative_rel_err",
                     abs(hpp + 2 * b0 / _SQRT3) / (2 * b0 / _SQRT3), 1e-4, "rel"))

    pts = _pairs(run.axis("x", 0.79 * a, 0.94 * a, 5), run.axis("y", 0.54 * a, 0.79 * a, 5))
    rep = check_cancellation(
        lambda x, y: lambda1(field, ObservationRect(*base, x, y), 0.0, brackets, tight).total,
        lambda x, y: lambda2(field, ObservationRect(*base, x, y), 0.0, brackets, tight).total,
        pts, expected="zero")
    rows.append(_row("cancellation_constant", abs(rep.fitted_constant), 2e-9, "phase"))
    rows.append(_row("lambda1_minus_lambda2", rep.max_deviation, 2e-9, "phase",
                     point=rep.worst_point))

    w = 0.1 * a
    mol = mollify(field, w)
    mbrackets = select_brackets(mol, bw, base, 0.0, tight)
    grid = GridSpec((run.axis("x", 0.79 * a, 0.94 * a, 10),
                     run.axis("y", 0.54 * a, 0.79 * a, 5)))
    for name, fn in (("lambda1", lambda1), ("lambda2", lambda2)):
        rep = residual_static(
            lambda x, y: fn(mol, ObservationRect(*base, x, y), 0.0, mbrackets, tight).total,
            mol, grid, 0.0, run.fd(), exclude_margin=0.04 * a, reference_scale=b0 * a)
        rows.append(_row(f"residual_{name}_max_rel", rep.max_rel, 1e-5, "rel",
                         point=rep.worst_point))
    return rows


def _halving_ratio(residual_fn, base_step: float) -> float:
    coarse = residual_fn(FdSpec(step=base_step))
    fine = residual_fn(FdSpec(step=0.5 * base_step))
    return coarse.max_rel / max(fine.max_rel, 1e-300)


def _run_disk(run: ScenarioRun):
    cfg = ScenarioConfig("disk-B", run.params)
    b0 = cfg.get("B0", 1.0)
    r = cfg.get("R", 1.0)
    base = (-3.0 * r, -3.0 * r)
    quad = run.quad()
    tight = quad.tighter(1e-2)
    w = 0.1 * r
    mol = mollify(build_field(cfg, run.constants), w)
    bw = GridSpec((run.axis("x", 1.5 * r, 3.0 * r, 5), run.axis("y", -0.5 * r, 0.5 * r, 5)))
    brackets = select_brackets(mol, bw, base, 0.0, tight)

    rows = []
    curl_pts = [(0.3 * r, 0.4 * r), (-0.5 * r, 0.2 * r), (0.8 * r, -0.3 * r)]
    rows.append(_row("field_consistency_curl", _curl_residual(mol, curl_pts), 1e-6,
                     "field"))

    pts = _pairs(run.axis("x", 1.6 * r, 2.8 * r, 5), run.axis("y", -0.45 * r, 0.45 * r, 5))
    rep = check_cancellation(
        lambda x, y: lambda1(mol, ObservationRect(*base, x, y), 0.0, brackets, tight).total,
        lambda x, y: lambda2(mol, ObservationRect(*base, x, y), 0.0, brackets, tight).total,
        pts, expected="zero")
    rows.append(_row("cancellation_constant", abs(rep.fitted_constant), 2e-9, "phase"))
    rows.append(_row("lambda1_minus_lambda2", rep.max_deviation, 2e-9, "phase",
                     point=rep.worst_point))

    grid = GridSpec((run.axis("x", 1.6 * r, 2.8 * r, 10), run.axis("y", -0.45 * r, 0.45 * r, 5)))

    def res_l1(fd):
        return residual_static(
            lambda x, y: lambda1(mol, ObservationRect(*base, x, y), 0.0, brackets, tight).total,
            mol, grid, 0.0, fd, exclude_margin=2 * w, reference_scale=b0 * r)

    rep1 = res_l1(run.fd())
    rows.append(_row("residual_lambda1_max_rel", rep1.max_rel, 1e-5, "rel",
                     point=rep1.worst_point))
    rep2 = residual_static(
        lambda x, y: lambda2(mol, ObservationRect(*base, x, y), 0.0, brackets, tight).total,
        mol, grid, 0.0, run.fd(), exclude_margin=2 * w, reference_scale=b0 * r)
    rows.append(_row("residual_lambda2_max_rel", rep2.max_rel, 1e-5, "rel",
                     point=rep2.worst_point))
    rows.append(_row("fd_halving_ratio", _halving_ratio(res_l1, 4e-3), 3.0, "ratio",
                     direction="ge"))

    # polar pair on the exact (unmollified) field, base inside the disk
    exact = build_field(cfg, run.constants)
    rho0 = cfg.get("rho0", 0.5 * r)
    pw = GridSpec((run.axis("rho", 1.6 * r, 2.4 * r, 4), run.axis("phi", 0.4, 1.2, 4)))
    pbrackets = select_brackets_polar(exact, pw, (rho0, 0.0), 0.0, tight)
    ppts = _pairs(pw.axis("rho"), pw.axis("phi"))
    prep = check_cancellation(
        lambda rho, phi: lambda_polar1(exact, (rho0, 0.0), (rho, phi), 0.0, pbrackets, tight).total,
        lambda rho, phi: lambda_polar2(exact, (rho0, 0.0), (rho, phi), 0.0, pbrackets, tight).total,
        ppts, expected="zero")
    rows.append(_row("polar_equality", max(prep.max_deviation, abs(prep.fitted_constant)),
                     1e-8, "phase"))
    sector = enclosed_flux_polar(exact, (rho0, 0.0), (2.0 * r, 1.0), 0.0, tight)
    expect = 0.5 * b0 * (r * r - rho0 * rho0) * 1.0
    rows.append(_row("polar_enclosed_term", abs(sector - expect), 1e-8, "flux"))
    return rows


def _run_solenoid(run: ScenarioRun):
    cfg = ScenarioConfig("solenoid-AB", run.params)
    flux = cfg.get("flux", 2.0 * math.pi)
    quad = run.quad()
    tight = quad.tighter(1e-2)
    field = build_field(cfg, run.constants)
    rect = ObservationRect(-1.0, -1.0, 1.0, 1.0)

    rows = []
    f_y0, hhat_x0 = ab_multiplicities(field, rect, 0.0, tight)
    rows.append(_row("multiplicity_f_y0", abs(f_y0 + flux), 1e-8, "flux"))
    rows.append(_row("multiplicity_hhat_x0", abs(hhat_x0 - flux), 1e-8, "flux"))

    from .gauge_static import BracketSet2D
    br = BracketSet2D(g=lambda x: 0.0, h=lambda y: 0.0, f_y0=f_y0, hhat_x0=hhat_x0)
    worst1 = worst2 = worst_d = 0.0
    for corner in ((1.0, 1.0), (0.7, 1.0), (1.0, 0.6)):
        rc = ObservationRect(-1.0, -1.0, *corner)
        v1 = lambda1(field, rc, 0.0, br, tight)
        v2 = lambda2(field, rc, 0.0, br, tight)
        worst1 = max(worst1, abs(v1.nonlocal_part + v1.multiplicity_part))
        worst2 = max(worst2, abs(v2.nonlocal_part + v2.multiplicity_part))
        worst_d = max(worst_d, abs(v1.total - v2.total + flux))
    rows.append(_row("reduction_lambda1_nonlocal_plus_multiplicity", worst1, 1e-8, "flux"))
    rows.append(_row("reduction_lambda2_nonlocal_plus_multiplicity", worst2, 1e-8, "flux"))
    rows.append(_row("ab_difference_minus_flux", worst_d, 1e-8, "phase"))

    zero_rect = ObservationRect(0.3, 0.3, 1.0, 1.0)
    zf, zh = ab_multiplicities(field, zero_rect, 0.0, tight)
    rows.append(_row("zero_winding_multiplicities", max(abs(zf), abs(zh)), 1e-9, "flux"))

    base = (0.4, 0.3)
    grid = GridSpec((run.axis("x", 0.8, 1.6, 10), run.axis("y", 0.6, 1.4, 5)))

    def res_l1(fd):
        return residual_static(
            lambda x, y: lambda1(field, ObservationRect(*base, x, y), 0.0, None, tight).total,
            field, grid, 0.0, fd, reference_scale=flux / (2 * math.pi))

    rep1 = res_l1(run.fd())
    rows.append(_row("residual_lambda1_max_rel", rep1.max_rel, 1e-5, "rel",
                     point=rep1.worst_point))
    rep2 = residual_static(
        lambda x, y: lambda2(field, ObservationRect(*base, x, y), 0.0, None, tight).total,
        field, grid, 0.0, run.fd(), reference_scale=flux / (2 * math.pi))
    rows.append(_row("residual_lambda2_max_rel", rep2.max_rel, 1e-5, "rel",
                     point=rep2.worst_point))
    rows.append(_row("fd_halving_ratio", _halving_ratio(res_l1, 4e-3), 3.0, "ratio",
                     direction="ge"))

    curl_pts = [(0.1, 0.05), (0.5, 0.8), (-0.6, 0.4)]
    rows.append(_row("field_consistency_curl", _curl_residual(field, curl_pts), 1e-6,
                     "field"))
    return rows


def _run_capacitor(run: ScenarioRun):
    cfg = ScenarioConfig("capacitor-xt", run.params)
    e0 = cfg.get("E0", 1.0)
    quad = run.quad()
    tight = quad.tighter(1e-2)
    field = build_field(cfg, run.constants)
    base = (0.0, 0.0)
    bw = GridSpec((run.axis("x", 2.3, 3.3, 5), Axis("t", 0.0, 2.0, 5)))
    brackets = select_brackets_xt(field, bw, base, 0.0, tight)

    rows = []
    e_pts = [(1.5, 0.5), (1.2, 1.3), (2.6, 0.8)]
    rows.append(_row("field_consistency_e", _e_residual(field, e_pts), 1e-6, "field"))

    pts = _pairs(run.axis("x", 2.4, 3.2, 5), run.axis("t", 0.4, 2.0, 5))
    rep = check_cancellation(
        lambda x, t: lambda3(field, SpacetimeRect(*base, x, t), 0.0, brackets, tight).total,
        lambda x, t: lambda4(field, SpacetimeRect(*base, x, t), 0.0, brackets, tight).total,
        pts, expected="zero")
    rows.append(_row("cancellation_constant", abs(rep.fitted_constant), 2e-9, "phase"))
    rows.append(_row("lambda3_minus_lambda4", rep.max_deviation, 2e-9, "phase",
                     point=rep.worst_point))

    worst = 0.0
    for x, t in pts[:: max(1, len(pts) // 9)]:
        gv = lambda4(field, SpacetimeRect(*base, x, t), 0.0, brackets, tight)
        worst = max(worst, abs(gv.nonlocal_part + gv.bracket_part))
    rows.append(_row("lambda4_nonlocal_plus_bracket", worst, 1e-8, "phase"))

    w = 0.1 * (cfg.get("x2", 2.0) - cfg.get("x1", 1.0))
    mol = mollify(field, w)
    mbrackets = select_brackets_xt(mol, bw, base, 0.0, tight)
    grid = GridSpec((run.axis("x", 2.5, 3.3, 10), run.axis("t", 0.3, 1.9, 5)))
    for name, fn in (("lambda3", lambda3), ("lambda4", lambda4)):
        rr = residual_xt(
            lambda x, t: fn(mol, SpacetimeRect(*base, x, t), 0.0, mbrackets, tight).total,
            mol, grid, 0.0, run.fd(), exclude_margin=2 * w, reference_scale=e0)
        rows.append(_row(f"residual_{name}_max_rel", rr.max_rel, 1e-5, "rel",
                         point=rr.worst_point))

    bh_grid = GridSpec((run.axis("x", 1.3, 1.7, 5), run.axis("t", 1.0, 2.0, 5)))
    bh = residual_xt(
        lambda x, t: naive_brown_holland(mol, SpacetimeRect(*base, x, t), 0.0, tight),
        mol, bh_grid, 0.0, run.fd(), exclude_margin=0.0, reference_scale=e0)
    rows.append(_row("naive_two_leg_residual_inside", bh.max_abs, 1e-2, "field",
                     direction="ge", point=bh.worst_point))
    return rows


def _run_pulsed(run: ScenarioRun):
    cfg = ScenarioConfig("pulsed-uniform-E-xt", run.params)
    e0 = cfg.get("E0", 1.0)
    quad = run.quad()
    tight = quad.tighter(1e-2)
    field = build_field(cfg, run.constants)
    base = (0.0, -1.0)
    bw = GridSpec((Axis("x", 0.0, 2.0, 5), run.axis("t", 1.5, 3.0, 5)))
    brackets = select_brackets_xt(field, bw, base, 0.0, tight)

    rows = []
    e_pts = [(0.5, 0.5), (1.5, 0.3), (1.0, 0.8)]
    rows.append(_row("field_consistency_e", _e_residual(field, e_pts), 1e-6, "field"))

    pts = _pairs(run.axis("x", 0.4, 2.0, 5), run.axis("t", 1.7, 3.0, 5))
    rep = check_cancellation(
        lambda x, t: lambda3(field, SpacetimeRect(*base, x, t), 0.0, brackets, tight).total,
        lambda x, t: lambda4(field, SpacetimeRect(*base, x, t), 0.0, brackets, tight).total,
        pts, expected="zero")
    rows.append(_row("cancellation_constant", abs(rep.fitted_constant), 2e-9, "phase"))
    rows.append(_row("lambda3_minus_lambda4", rep.max_deviation, 2e-9, "phase",
                     point=rep.worst_point))

    worst = 0.0
    for x, t in pts[:: max(1, len(pts) // 9)]:
        gv = lambda3(field, SpacetimeRect(*base, x, t), 0.0, brackets, tight)
        worst = max(worst, abs(gv.nonlocal_part + gv.bracket_part))
    rows.append(_row("lambda3_nonlocal_plus_bracket", worst, 1e-8, "phase"))

    w = 0.1 * (cfg.get("t2", 1.0) - cfg.get("t1", 0.0))
    mol = mollify(field, w)
    mbrackets = select_brackets_xt(mol, bw, base, 0.0, tight)
    grid = GridSpec((run.axis("x", 0.4, 2.0, 10), run.axis("t", 1.4, 3.0, 5)))
    for name, fn in (("lambda3", lambda3), ("lambda4", lambda4)):
        rr = residual_xt(
            lambda x, t: fn(mol, SpacetimeRect(*base, x, t), 0.0, mbrackets, tight).total,
            mol, grid, 0.0, run.fd(), exclude_margin=2 * w, reference_scale=2 * e0)
        rows.append(_row(f"residual_{name}_max_rel", rr.max_rel, 1e-5, "rel",
                         point=rr.worst_point))
    return rows


def _run_van_kampen(run: ScenarioRun):
    params = dict(run.params)
    params.setdefault("profile", "linear")
    params.setdefault("flux", 2.0 * math.pi)
    params.setdefault("rate", 0.5)
    cfg = ScenarioConfig("van-kampen-flux", params)
    quad = run.quad()
    tight = quad.tighter(1e-2)
    field = build_field(cfg, run.constants)
    flux0 = cfg.get("flux", 2.0 * math.pi)
    rect = ObservationRect(-1.0, -1.0, 1.0, 1.0)
    t0 = cfg.get("t_ref", 0.0)

    rows = []
    delta = van_kampen_delta(field, rect, t0, 1.5, tight)
    rows.append(_row("delta_lambda_equals_phi_t0", abs(delta - flux0), 1e-6, "phase",
                     point=(None, None, 1.5)))

    times = [0.25 + 0.25 * i for i in range(7)]
    vals = [van_kampen_delta(field, rect, t0, t, tight) for t in times]
    rows.append(_row("delta_t_independence_spread", max(vals) - min(vals), 1e-6, "phase"))

    shifted = shift_vector_potential(field, 0.37, -0.21)
    delta_s = van_kampen_delta(shifted, rect, t0, 1.5, tight)
    rows.append(_row("gauge_invariance_constant_A", abs(delta_s - delta), 1e-9, "phase"))

    # induction law on the loop at one probe time
    from .numerics import line_integral
    path = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0)]
    t_probe = 0.8
    loop_e = line_integral(lambda x, y: (field.ex(x, y, t_probe), field.ey(x, y, t_probe)),
                           path, tight, field.x_breaks, field.y_breaks)
    dphi = central_diff(lambda t: _loop_a(field, path, t, tight), (t_probe,), 0,
                        FdSpec(step=1e-5))
    rows.append(_row("faraday_loop_e", abs(loop_e + dphi / run.constants.c), 1e-6, "field"))

    # full-variant behaviour in the unreached-window regime: constant profile
    frozen = build_field(ScenarioConfig("van-kampen-flux",
                                        {**params, "profile": "constant"}), run.constants)
    base3 = (0.4, 0.3, 0.0)
    window = GridSpec((run.axis("x", 0.8, 1.6, 5), run.axis("y", 0.6, 1.4, 5)))
    audit = audit_brackets_xyt(frozen, BracketSetXYT(
        G=lambda y, t: 0.0, Ghat=lambda x, t: 0.0, F=lambda x, y: 0.0),
        window, base3, 1.0, tight)
    rows.append(_row("full_zero_bracket_audit", max(audit.values()), 1e-8, "flux"))

    corners = [(0.9, 0.8, 1.0), (1.5, 0.7, 1.2), (1.0, 1.3, 0.6), (1.4, 1.2, 1.4)]
    spread = 0.0
    for c3 in corners:
        vals3 = [lambda_full(v, frozen, base3, c3, None, tight).total
                 for v in ("full1", "full2", "full4", "fin")]
        spread = max(spread, max(vals3) - min(vals3))
    rows.append(_row("full_variant_spread", spread, 1e-8, "phase"))

    grid = GridSpec((run.axis("x", 0.8, 1.6, 5), run.axis("y", 0.6, 1.4, 5),
                     run.axis("t", 0.5, 1.5, 2)))

    def res_full(fd):
        return residual_full(
            lambda x, y, t: lambda_full("full2", frozen, base3, (x, y, t), None, tight).total,
            frozen, grid, fd, reference_scale=flux0 / (2 * math.pi))

    repf = res_full(run.fd())
    rows.append(_row("residual_full2_max_rel", repf.max_rel, 1e-5, "rel",
                     point=repf.worst_point))
    rows.append(_row("fd_halving_ratio", _halving_ratio(res_full, 4e-3), 3.0, "ratio",
                     direction="ge"))
    return rows


def _loop_a(field, path, t, spec):
    from .numerics import line_integral
    return line_integral(lambda x, y: (field.ax(x, y, t), field.ay(x, y, t)),
                         path, spec, field.x_breaks, field.y_breaks)


_REGISTRY: dict[str, tuple[ScenarioDescriptor, Callable[[ScenarioRun], list[CheckRow]]]] = {
    "vertical-strip-B": (
        ScenarioDescriptor(
            "vertical-strip-B", "vertical-strip-B",
            {"B0": 1.0, "x1": 1.0, "x2": 2.0},
            "Uniform B_z strip between two vertical lines; ramp gauge. "
            "Solution pair cancels; one solution carries no net flux term."),
        _run_vertical_strip),
    "horizontal-strip-B": (
        ScenarioDescriptor(
            "horizontal-strip-B", "horizontal-strip-B",
            {"B0": 1.0, "y1": 1.0, "y2": 2.0},
            "Mirror strip between horizontal lines; the other solution "
            "carries no net flux term."),
        _run_horizontal_strip),
    "triangle-B": (
        ScenarioDescriptor(
            "triangle-B", "triangle-B",
            {"B0": 1.0, "a": 1.0, "dx": 0.0, "dy": 0.0},
            "Uniform B_z on an equilateral triangle; both bracket functions "
            "are quadratic with known second derivatives."),
        _run_triangle),
    "disk-B": (
        ScenarioDescriptor(
            "disk-B", "disk-B",
            {"B0": 1.0, "R": 1.0, "cx": 0.0, "cy": 0.0},
            "Uniform B_z on a disk; cartesian pair plus the polar-coordinate "
            "solution pair with sector flux."),
        _run_disk),
    "solenoid-AB": (
        ScenarioDescriptor(
            "solenoid-AB", "solenoid-AB",
            {"flux": 2.0 * math.pi, "core_radius": 0.2},
            "Confined flux line: multiplicity constants equal the enclosed "
            "flux and reduce the solutions to the closed-loop result."),
        _run_solenoid),
    "capacitor-xt": (
        ScenarioDescriptor(
            "capacitor-xt", "capacitor-xt",
            {"E0": 1.0, "x1": 1.0, "x2": 2.0},
            "Static E_x strip in (x, t); spacetime pair cancels and the "
            "naive two-leg form fails inside the strip."),
        _run_capacitor),
    "pulsed-uniform-E-xt": (
        ScenarioDescriptor(
            "pulsed-uniform-E-xt", "pulsed-uniform-E-xt",
            {"E0": 1.0, "t1": 0.0, "t2": 1.0},
            "Spatially uniform E_x pulse; after the pulse the phase memory "
            "is position-independent."),
        _run_pulsed),
    "van-kampen-flux": (
        ScenarioDescriptor(
            "van-kampen-flux", "van-kampen-flux",
            {"flux": 2.0 * math.pi, "rate": 0.5, "core_radius": 0.2,
             "profile": "linear"},
            "Time-dependent confined flux: loop phase plus induction term "
            "recovers the start-time flux for any profile."),
        _run_van_kampen),
}


def list_scenarios() -> list[ScenarioDescriptor]:
    """Descriptors for all registered scenarios, sorted by id."""
    return [entry[0] for _id, entry in sorted(_REGISTRY.items())]


def run_scenario(run: ScenarioRun) -> RunReport:
    """Execute a scenario's bound checks.

    Raises
    ------
    ConfigurationError
        For unknown ids or invalid parameters, before any check runs.
    """
    if run.scenario_id not in _REGISTRY:
        raise ConfigurationError(
            f"unknown scenario {run.scenario_id!r}; try --list")
    descriptor, check_fn = _REGISTRY[run.scenario_id]
    # validate parameters early so config errors abort before computation
    merged = {**descriptor.defaults, **run.params}
    build_field(ScenarioConfig(descriptor.kind, merged), run.constants)
    run = ScenarioRun(run.scenario_id, merged, run.tol_abs, run.tol_rel,
                      run.fd_step, run.constants, run.grid_overrides)
    rows = tuple(sorted(check_fn(run), key=lambda r: r.check_id))
    metadata = {
        "package": "gaugeflux",
        "version": __version__,
        "scenario": run.scenario_id,
        "params": {k: merged[k] for k in sorted(merged)},
        "tol_abs": run.tol_abs,
        "tol_rel": run.tol_rel,
        "fd_step": run.fd_step,
        "c": run.constants.c,
    }
    return RunReport(run.scenario_id, rows, metadata)


def _fmt(v: float | None) -> str:
    if v is None:
        return ""
    return format(float(v), ".17g")


def emit(report: RunReport, format: str = "csv", destination=None) -> None:
    """Serialise a report as CSV or JSON to a path or standard output.

    CSV columns are exactly ``check_id,status,value,threshold,units,x,y,t``
    with the header always present and rows ordered by check id; numbers
    carry 17 significant digits so round-trips are lossless.
    """
    if format not in ("csv", "json"):
        raise ConfigurationError(f"unknown format {format!r}")
    rows = sorted(report.rows, key=lambda r: r.check_id)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["check_id", "status", "value", "threshold", "units",
                         "x", "y", "t"])
        for r in rows:
            writer.writerow([r.check_id, r.status, _fmt(r.value), _fmt(r.threshold),
                             r.units, _fmt(r.x), _fmt(r.y), _fmt(r.t)])
        payload = buf.getvalue()
    else:
        doc = {
            "scenario": report.scenario_id,
            "overall_status": report.overall_status,
            "metadata": report.metadata,
            "rows": [
                {"check_id": r.check_id, "status": r.status, "value": r.value,
                 "threshold": r.threshold, "units": r.units,
                 "x": r.x, "y": r.y, "t": r.t}
                for r in rows
            ],
        }
        payload = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if destination is None:
        sys.stdout.write(payload)
    else:
        with open(destination, "w", encoding="utf-8") as fh:
            fh.write(payload)
