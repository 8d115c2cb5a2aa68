"""Finite-difference verification of gauge-function candidates.

A candidate solves the defining system when its gradient reproduces
the potential differences:

* planar:    dL/dx = A_x,  dL/dy = A_y  (at fixed t);
* (x, t):    dL/dx = A_x,  -(1/c) dL/dt = phi  (at fixed y);
* (x, y, t): all three.

Residuals are evaluated with second-order central differences on a
grid of observation points; points within an exclusion margin of any
field-region edge are skipped (the candidate is only piecewise C2
across mollified edges).  Relative residuals are normalised by the
local potential magnitude ``max(|A|, |phi|)`` with a floor of
``1e-3`` times the global scale (the grid maximum, or an explicit
``reference_scale`` for windows where the potentials vanish but the
scenario still has a natural field amplitude) and an absolute floor
of 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .fields import FieldDifference
from .numerics import FdSpec, GridSpec, central_diff

__all__ = [
    "ResidualReport",
    "CancellationReport",
    "residual_static",
    "residual_xt",
    "residual_full",
    "check_cancellation",
]


@dataclass(frozen=True)
class ResidualReport:
    """Worst-case residuals of one candidate over a grid."""

    max_abs: float
    max_rel: float
    worst_point: tuple[float, ...]
    worst_equation: str
    n_points: int
    fd_step: float

    def passes(self, tol: float) -> bool:
        return self.max_rel <= tol


@dataclass(frozen=True)
class CancellationReport:
    """Pointwise difference of two candidates over a grid."""

    fitted_constant: float
    max_deviation: float
    worst_point: tuple[float, ...]
    n_points: int
    expected: str

    def passes(self, tol: float) -> bool:
        ok = self.max_deviation <= tol
        if self.expected == "zero":
            ok = ok and abs(self.fitted_constant) <= tol
        return ok


def _filter_margin(points: list[tuple[float, ...]],
                   breaks_per_axis: Sequence[Sequence[float]],
                   margin: float) -> list[tuple[float, ...]]:
    if margin <= 0:
        return points
    kept = []
    for pt in points:
        close = False
        for coord, breaks in zip(pt, breaks_per_axis):
            if any(abs(coord - b) < margin for b in breaks):
                close = True
                break
        if not close:
            kept.append(pt)
    return kept


def _scan(points, equations, local_scale, reference_scale, fd_step):
    """equations: list of (name, residual_fn); local_scale maps a point
    to the potential magnitude there."""
    scales = [local_scale(*pt) for pt in points]
    global_scale = max([reference_scale] + scales)
    max_abs = 0.0
    max_rel = 0.0
    worst_pt: tuple[float, ...] = points[0]
    worst_eq = equations[0][0]
    for pt, sc in zip(points, scales):
        norm = max(sc, 1e-3 * global_scale, 1e-12)
        for name, res_fn in equations:
            r = abs(res_fn(*pt))
            rel = r / norm
            max_abs = max(max_abs, r)
            if rel > max_rel:
                max_rel = rel
                worst_pt = pt
                worst_eq = name
    return max_abs, max_rel, worst_pt, worst_eq


def residual_static(
    lam: Callable[[float, float], float],
    field: FieldDifference,
    grid: GridSpec,
    t: float = 0.0,
    fd: FdSpec | None = None,
    exclude_margin: float = 0.0,
    reference_scale: float = 0.0,
) -> ResidualReport:
    """Planar residuals ``dL/dx - A_x`` and ``dL/dy - A_y`` on a grid.

    ``grid`` must carry axes ``x`` and ``y``; ``exclude_margin`` drops
    points near any x- or y-breakpoint of the field.
    """
    fd = fd or FdSpec()
    ax_x, ax_y = grid.axis("x"), grid.axis("y")
    pts = [(float(x), float(y)) for x in ax_x.points() for y in ax_y.points()]
    pts = _filter_margin(pts, (field.x_breaks, field.y_breaks), exclude_margin)
    step = fd.step_for(ax_x.scale)

    def res_x(x, y):
        return central_diff(lam, (x, y), 0, fd, ax_x.scale) - field.ax(x, y, t)

    def res_y(x, y):
        return central_diff(lam, (x, y), 1, fd, ax_y.scale) - field.ay(x, y, t)

    def scale(x, y):
        return math.hypot(field.ax(x, y, t), field.ay(x, y, t))

    eqs = [("dL/dx - Ax", res_x), ("dL/dy - Ay", res_y)]
    max_abs, max_rel, worst_pt, worst_eq = _scan(pts, eqs, scale, reference_scale, step)
    return ResidualReport(max_abs, max_rel, worst_pt, worst_eq, len(pts), step)


def residual_xt(
    lam: Callable[[float, float], float],
    field: FieldDifference,
    grid: GridSpec,
    y: float = 0.0,
    fd: FdSpec | None = None,
    exclude_margin: float = 0.0,
    reference_scale: float = 0.0,
) -> ResidualReport:
    """(x, t) residuals ``dL/dx - A_x`` and ``(1/c) dL/dt + phi``."""
    fd = fd or FdSpec()
    c = field.constants.c
    ax_x, ax_t = grid.axis("x"), grid.axis("t")
    pts = [(float(x), float(t)) for x in ax_x.points() for t in ax_t.points()]
    pts = _filter_margin(pts, (field.x_breaks, field.t_breaks), exclude_margin)
    step = fd.step_for(ax_x.scale)

    def res_x(x, t):
        return central_diff(lam, (x, t), 0, fd, ax_x.scale) - field.ax(x, y, t)

    def res_t(x, t):
        return central_diff(lam, (x, t), 1, fd, ax_t.scale) / c + field.phi(x, y, t)

    def scale(x, t):
        return max(abs(field.ax(x, y, t)), abs(field.phi(x, y, t)))

    eqs = [("dL/dx - Ax", res_x), ("(1/c) dL/dt + phi", res_t)]
    max_abs, max_rel, worst_pt, worst_eq = _scan(pts, eqs, scale, reference_scale, step)
    return ResidualReport(max_abs, max_rel, worst_pt, worst_eq, len(pts), step)


def residual_full(
    lam: Callable[[float, float, float], float],
    field: FieldDifference,
    grid: GridSpec,
    fd: FdSpec | None = None,
    exclude_margin: float = 0.0,
    reference_scale: float = 0.0,
) -> ResidualReport:
    """Full residuals of all three defining equations on an (x, y, t) grid."""
    fd = fd or FdSpec()
    c = field.constants.c
    ax_x, ax_y, ax_t = grid.axis("x"), grid.axis("y"), grid.axis("t")
    pts = [(float(x), float(y), float(t))
           for x in ax_x.points() for y in ax_y.points() for t in ax_t.points()]
    pts = _filter_margin(pts, (field.x_breaks, field.y_breaks, field.t_breaks),
                         exclude_margin)
    step = fd.step_for(ax_x.scale)

    def res_x(x, y, t):
        return central_diff(lam, (x, y, t), 0, fd, ax_x.scale) - field.ax(x, y, t)

    def res_y(x, y, t):
        return central_diff(lam, (x, y, t), 1, fd, ax_y.scale) - field.ay(x, y, t)

    def res_t(x, y, t):
        return central_diff(lam, (x, y, t), 2, fd, ax_t.scale) / c + field.phi(x, y, t)

    def scale(x, y, t):
        return max(math.hypot(field.ax(x, y, t), field.ay(x, y, t)),
                   abs(field.phi(x, y, t)))

    eqs = [("dL/dx - Ax", res_x), ("dL/dy - Ay", res_y),
           ("(1/c) dL/dt + phi", res_t)]
    max_abs, max_rel, worst_pt, worst_eq = _scan(pts, eqs, scale, reference_scale, step)
    return ResidualReport(max_abs, max_rel, worst_pt, worst_eq, len(pts), step)


def check_cancellation(
    value_a: Callable[..., float],
    value_b: Callable[..., float],
    points: list[tuple[float, ...]],
    expected: str = "zero",
) -> CancellationReport:
    """Compare two candidates pointwise, fitting one additive constant.

    ``expected`` is ``"zero"`` (the fitted constant must also vanish)
    or ``"constant"`` (any shared offset is acceptable; used for the
    enclosed-flux case, where the caller compares the fitted constant
    against the expected flux).
    """
    if expected not in ("zero", "constant"):
        raise ValueError("expected must be 'zero' or 'constant'")
    diffs = [value_a(*pt) - value_b(*pt) for pt in points]
    k = sum(diffs) / len(diffs)
    max_dev = 0.0
    worst = points[0]
    for pt, d in zip(points, diffs):
        dev = abs(d - k)
        if dev > max_dev:
            max_dev = dev
            worst = pt
    return CancellationReport(
        fitted_constant=k, max_deviation=max_dev, worst_point=worst,
        n_points=len(points), expected=expected,
    )
