"""Quadrature and finite-difference primitives.

All gauge-function evaluations reduce to one-dimensional integrals
(possibly iterated) of piecewise-smooth integrands, plus central
differences used by the verification harness.  Two independent
quadrature routes are provided so results can be cross-checked:

* adaptive Simpson with interval bisection (default), and
* composite 16-point Gauss-Legendre with panel doubling.

Both honour explicit breakpoints, where integrands are allowed to be
non-smooth, by splitting the range there before refinement starts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import PathAlignmentError, QuadratureConvergenceError

__all__ = [
    "QuadratureSpec",
    "FdSpec",
    "Axis",
    "GridSpec",
    "integrate_1d",
    "integrate_rect",
    "line_integral",
    "central_diff",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for one quadrature evaluation.

    Parameters
    ----------
    abs_tol, rel_tol : float
        Target absolute and relative error; the effective tolerance for
        an integral estimate I is ``max(abs_tol, rel_tol * |I|)``.
    max_subdivisions : int
        Budget of interval splits (adaptive Simpson) or panels per
        smooth piece (Gauss-Legendre) before giving up.
    method : str
        ``"adaptive-simpson"`` or ``"composite-gauss-legendre"``.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_subdivisions: int = 2000
    method: str = "adaptive-simpson"

    def __post_init__(self) -> None:
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.method not in ("adaptive-simpson", "composite-gauss-legendre"):
            raise ValueError(f"unknown quadrature method: {self.method!r}")

    def tighter(self, factor: float) -> "QuadratureSpec":
        """Return a copy with both tolerances scaled down by ``factor``."""
        return replace(self, abs_tol=self.abs_tol * factor, rel_tol=self.rel_tol * factor)


@dataclass(frozen=True)
class FdSpec:
    """Central-difference step control.

    ``step`` is an absolute step when given; otherwise the step is
    ``scale_fraction`` times the characteristic scale of the axis the
    caller is differentiating along.
    """

    step: float | None = None
    scale_fraction: float = 1e-4

    def step_for(self, scale: float) -> float:
        if self.step is not None:
            return self.step
        return self.scale_fraction * max(abs(scale), 1.0)


@dataclass(frozen=True)
class Axis:
    """A uniformly sampled closed range ``[lo, hi]`` with ``n`` points."""

    name: str
    lo: float
    hi: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("axis needs at least one point")
        if self.hi < self.lo:
            raise ValueError(f"axis {self.name}: hi < lo")

    def points(self) -> np.ndarray:
        if self.n == 1:
            return np.array([0.5 * (self.lo + self.hi)])
        return np.linspace(self.lo, self.hi, self.n)

    @property
    def scale(self) -> float:
        return max(self.hi - self.lo, 1e-12)


@dataclass(frozen=True)
class GridSpec:
    """An ordered collection of axes defining an evaluation grid."""

    axes: tuple[Axis, ...]

    def axis(self, name: str) -> Axis:
        for ax in self.axes:
            if ax.name == name:
                return ax
        raise KeyError(f"no axis named {name!r}")

    def mesh(self) -> list[tuple[float, ...]]:
        grids = [ax.points() for ax in self.axes]
        out: list[tuple[float, ...]] = []
        for idx in np.ndindex(*[len(g) for g in grids]):
            out.append(tuple(float(grids[k][i]) for k, i in enumerate(idx)))
        return out


# --- 1-D quadrature -------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


class _Budget:
    __slots__ = ("left",)

    def __init__(self, n: int):
        self.left = n

    def spend(self) -> bool:
        self.left -= 1
        return self.left >= 0


def _simpson(f, a, fa, b, fb, m, fm) -> float:
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, budget: _Budget) -> tuple[float, float]:
    """Return (estimate, error_bound) for one panel; recursion splits at midpoints."""
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(f, a, fa, m, fm, lm, flm)
    right = _simpson(f, m, fm, b, fb, rm, frm)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol or (b - a) < 1e-14 * (1.0 + abs(a) + abs(b)):
        return left + right + delta / 15.0, abs(delta) / 15.0
    if not budget.spend():
        raise QuadratureConvergenceError(
            "adaptive Simpson subdivision budget exhausted",
            estimate=left + right + delta / 15.0,
            error_bound=abs(delta) / 15.0,
        )
    lv, le = _adaptive_simpson(f, a, fa, m, fm, lm, flm, left, tol / 2.0, budget)
    rv, re = _adaptive_simpson(f, m, fm, b, fb, rm, frm, right, tol / 2.0, budget)
    return lv + rv, le + re


def _split_at_breakpoints(a: float, b: float, breakpoints: Iterable[float] | None) -> list[tuple[float, float]]:
    pts = [a, b]
    if breakpoints:
        lo, hi = min(a, b), max(a, b)
        pts += [p for p in breakpoints if lo < p < hi]
    pts = sorted(set(pts)) if a <= b else sorted(set(pts), reverse=True)
    return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]


def _simpson_piece(f, a, b, tol, budget) -> tuple[float, float]:
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = _simpson(f, a, fa, b, fb, m, fm)
    return _adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, budget)


def _gauss_piece(f, a, b, tol, max_panels) -> tuple[float, float]:
    prev = None
    panels = 1
    while panels <= max_panels:
        edges = np.linspace(a, b, panels + 1)
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            half = 0.5 * (hi - lo)
            mid = 0.5 * (hi + lo)
            xs = mid + half * _GL_NODES
            total += half * float(sum(w * f(float(x)) for x, w in zip(xs, _GL_WEIGHTS)))
        if prev is not None:
            err = abs(total - prev)
            if err <= tol:
                return total, err
        prev = total
        panels *= 2
    raise QuadratureConvergenceError(
        "Gauss-Legendre panel budget exhausted",
        estimate=prev if prev is not None else 0.0,
        error_bound=float("inf"),
    )


def integrate_1d(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
    breakpoints: Sequence[float] | None = None,
) -> float:
    """Integrate ``f`` over ``[a, b]``.

    An empty range returns exactly 0.  Reversed bounds negate the
    result.  ``breakpoints`` are interior points where ``f`` may be
    non-smooth; the range is split there before adaptive refinement.

    Raises
    ------
    QuadratureConvergenceError
        When the subdivision budget runs out before the error estimate
        drops below ``max(abs_tol, rel_tol * |I|)``.
    """
    spec = spec or QuadratureSpec()
    if a == b:
        return 0.0
    if b < a:
        return -integrate_1d(f, b, a, spec, breakpoints)
    pieces = _split_at_breakpoints(a, b, breakpoints)
    # First pass with a coarse estimate to set the relative-error scale.
    rough = 0.0
    for lo, hi in pieces:
        m = 0.5 * (lo + hi)
        rough += _simpson(f, lo, f(lo), hi, f(hi), m, f(m))
    tol_total = max(spec.abs_tol, spec.rel_tol * abs(rough))
    total = 0.0
    if spec.method == "adaptive-simpson":
        budget = _Budget(spec.max_subdivisions)
        for lo, hi in pieces:
            piece_tol = tol_total * (hi - lo) / (b - a)
            val, _err = _simpson_piece(f, lo, hi, piece_tol, budget)
            total += val
    else:
        for lo, hi in pieces:
            piece_tol = tol_total * (hi - lo) / (b - a)
            val, _err = _gauss_piece(f, lo, hi, piece_tol, spec.max_subdivisions)
            total += val
    return total


def integrate_rect(
    f: Callable[[float, float], float],
    u_bounds: tuple[float, float],
    v_bounds: tuple[float, float],
    spec: QuadratureSpec | None = None,
    u_breakpoints: Sequence[float] | None = None,
    v_breakpoints: Sequence[float] | None = None,
) -> float:
    """Iterated integral of ``f(u, v)`` with ``u`` inner and ``v`` outer.

    The inner integral runs at a tolerance tightened by 1e-2 so its
    noise floor stays below what the outer adaptive pass resolves.
    """
    spec = spec or QuadratureSpec()
    inner_spec = spec.tighter(1e-2)
    u0, u1 = u_bounds

    def outer(v: float) -> float:
        return integrate_1d(lambda u: f(u, v), u0, u1, inner_spec, u_breakpoints)

    return integrate_1d(outer, v_bounds[0], v_bounds[1], spec, v_breakpoints)


def line_integral(
    v: Callable[[float, float], tuple[float, float]],
    path: Sequence[tuple[float, float]],
    spec: QuadratureSpec | None = None,
    breakpoints_x: Sequence[float] | None = None,
    breakpoints_y: Sequence[float] | None = None,
) -> float:
    """Integrate a planar vector field along an axis-aligned polyline.

    ``path`` is a vertex sequence; every segment must be parallel to a
    coordinate axis (others raise :class:`PathAlignmentError`).
    Zero-length segments contribute nothing.
    """
    if len(path) < 2:
        return 0.0
    total = 0.0
    for (x0, y0), (x1, y1) in zip(path[:-1], path[1:]):
        if x0 == x1 and y0 == y1:
            continue
        if y0 == y1:
            total += integrate_1d(lambda x: v(x, y0)[0], x0, x1, spec, breakpoints_x)
        elif x0 == x1:
            total += integrate_1d(lambda y: v(x0, y)[1], y0, y1, spec, breakpoints_y)
        else:
            raise PathAlignmentError(
                f"segment ({x0},{y0})->({x1},{y1}) is not axis-aligned"
            )
    return total


def central_diff(
    f: Callable[..., float],
    point: Sequence[float],
    axis: int,
    fd: FdSpec | None = None,
    scale: float = 1.0,
) -> float:
    """Second-order central difference of ``f`` along one coordinate.

    ``scale`` feeds the default step choice (a fraction of the axis
    characteristic scale); pass an explicit ``FdSpec(step=...)`` to pin
    the step.
    """
    fd = fd or FdSpec()
    h = fd.step_for(scale)
    lo = list(point)
    hi = list(point)
    lo[axis] -= h
    hi[axis] += h
    return (f(*hi) - f(*lo)) / (2.0 * h)
