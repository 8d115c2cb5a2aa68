"""Gauge-function solutions for static planar field differences.

Each solution is the sum of four parts, reported separately:

* ``dirac``        -- line integral of A along two perpendicular
  axis-aligned legs from the base point to the observation corner;
* ``nonlocal``     -- signed flux of B_z over the spanned rectangle;
* ``bracket``      -- the single-variable function that keeps the
  flux-plus-bracket combination independent of the swept coordinate;
* ``multiplicity`` -- a path-class constant (zero in simply connected
  windows; plus/minus the enclosed flux when an inaccessible flux
  line sits inside the loop).

Solution 1 routes the vertical leg through the base abscissa
("clockwise"); solution 2 routes it through the observation abscissa
("counter-clockwise").  Their difference is minus the closed-loop
integral of A around the rectangle, which is what makes the pair
cancel in simply connected regions and differ by the enclosed flux in
Aharonov-Bohm configurations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ._brackets import SeparablePair, extract_separable
from .errors import ConfigurationError
from .fields import FieldDifference
from .numerics import GridSpec, QuadratureSpec, integrate_1d, integrate_rect, line_integral

__all__ = [
    "ObservationRect",
    "BracketSet2D",
    "GaugeValue",
    "dirac_phase_cw",
    "dirac_phase_ccw",
    "enclosed_flux",
    "select_brackets",
    "audit_brackets",
    "lambda1",
    "lambda2",
    "ab_multiplicities",
    "loop_integral_A",
    "lambda_polar1",
    "lambda_polar2",
    "select_brackets_polar",
    "enclosed_flux_polar",
]


@dataclass(frozen=True)
class ObservationRect:
    """Base point and observation corner spanning an axis-aligned rectangle."""

    x0: float
    y0: float
    x: float
    y: float

    def __post_init__(self) -> None:
        if self.x == self.x0 and self.y == self.y0:
            raise ConfigurationError("observation corner must differ from base point")


@dataclass(frozen=True)
class BracketSet2D:
    """Bracket functions and multiplicity constants for the planar pair."""

    g: Callable[[float], float]
    h: Callable[[float], float]
    f_y0: float = 0.0
    hhat_x0: float = 0.0
    shared_constant: float = 0.0


@dataclass(frozen=True)
class GaugeValue:
    """One gauge-function evaluation, split into its contract parts."""

    dirac_part: float
    nonlocal_part: float
    bracket_part: float
    multiplicity_part: float

    @property
    def total(self) -> float:
        return self.dirac_part + self.nonlocal_part + self.bracket_part + self.multiplicity_part


_ZERO_BRACKETS = BracketSet2D(g=lambda x: 0.0, h=lambda y: 0.0)


def dirac_phase_cw(
    field: FieldDifference, rect: ObservationRect, t: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """A-path with the horizontal leg at the observation ordinate.

    ``int_{x0}^{x} A_x(x', y) dx' + int_{y0}^{y} A_y(x0, y') dy'``.
    """
    leg_x = integrate_1d(lambda xp: field.ax(xp, rect.y, t), rect.x0, rect.x,
                         spec, field.x_breaks)
    leg_y = integrate_1d(lambda yp: field.ay(rect.x0, yp, t), rect.y0, rect.y,
                         spec, field.y_breaks)
    return leg_x + leg_y


def dirac_phase_ccw(
    field: FieldDifference, rect: ObservationRect, t: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """A-path with the horizontal leg at the base ordinate.

    ``int_{x0}^{x} A_x(x', y0) dx' + int_{y0}^{y} A_y(x, y') dy'``.
    """
    leg_x = integrate_1d(lambda xp: field.ax(xp, rect.y0, t), rect.x0, rect.x,
                         spec, field.x_breaks)
    leg_y = integrate_1d(lambda yp: field.ay(rect.x, yp, t), rect.y0, rect.y,
                         spec, field.y_breaks)
    return leg_x + leg_y


def enclosed_flux(
    field: FieldDifference, rect: ObservationRect, t: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """Signed flux of B_z over the rectangle (x' inner, y' outer)."""
    return integrate_rect(
        lambda xp, yp: field.bz(xp, yp, t),
        (rect.x0, rect.x), (rect.y0, rect.y),
        spec, field.x_breaks, field.y_breaks,
    )


def select_brackets(
    field: FieldDifference,
    window: GridSpec,
    base: tuple[float, float],
    t: float = 0.0,
    spec: QuadratureSpec | None = None,
    rel_tol: float = 1e-6,
    shared_constant: float = 0.0,
) -> BracketSet2D:
    """Extract g(x), h(y) from the enclosed flux over an observation window.

    The window axes are named ``x`` and ``y``; the anchor is the window
    minimum corner.  Raises :class:`SeparabilityError` when the flux
    over the window rectangle does not split into x- and y-parts.
    """
    x0, y0 = base

    def flux(x: float, y: float) -> float:
        if x == x0 or y == y0:
            # degenerate rectangle: no area, no flux
            if x == x0 and y == y0:
                return 0.0
            if x == x0 or y == y0:
                return 0.0
        return enclosed_flux(field, ObservationRect(x0, y0, x, y), t, spec)

    ax_x = window.axis("x")
    ax_y = window.axis("y")
    pair = extract_separable(
        flux, list(ax_x.points()), list(ax_y.points()), rel_tol, shared_constant
    )
    return BracketSet2D(g=pair.g, h=pair.h, shared_constant=shared_constant)


def audit_brackets(
    field: FieldDifference,
    brackets: BracketSet2D,
    window: GridSpec,
    base: tuple[float, float],
    t: float = 0.0,
    spec: QuadratureSpec | None = None,
    n_fixed: int = 5,
) -> tuple[float, float]:
    """Max variation of the two bracket conditions over the window.

    Returns ``(var_g, var_h)`` where ``var_g`` is the spread of
    ``{flux + g(x)}`` over x at ``n_fixed`` fixed y values and
    ``var_h`` the spread of ``{-flux + h(y)}`` over y at fixed x.
    """
    x0, y0 = base
    ax_x = window.axis("x")
    ax_y = window.axis("y")
    xs = list(ax_x.points())
    ys = list(ax_y.points())
    fixed_y = ys[:: max(1, len(ys) // n_fixed)][:n_fixed]
    fixed_x = xs[:: max(1, len(xs) // n_fixed)][:n_fixed]
    var_g = 0.0
    for yv in fixed_y:
        vals = [enclosed_flux(field, ObservationRect(x0, y0, xv, yv), t, spec)
                + brackets.g(xv) for xv in xs]
        var_g = max(var_g, max(vals) - min(vals))
    var_h = 0.0
    for xv in fixed_x:
        vals = [-enclosed_flux(field, ObservationRect(x0, y0, xv, yv), t, spec)
                + brackets.h(yv) for yv in ys]
        var_h = max(var_h, max(vals) - min(vals))
    return var_g, var_h


def lambda1(
    field: FieldDifference, rect: ObservationRect, t: float = 0.0,
    brackets: BracketSet2D | None = None, spec: QuadratureSpec | None = None,
) -> GaugeValue:
    """First planar solution: base-abscissa vertical leg, +flux, g(x)."""
    br = brackets or _ZERO_BRACKETS
    return GaugeValue(
        dirac_part=dirac_phase_cw(field, rect, t, spec),
        nonlocal_part=enclosed_flux(field, rect, t, spec),
        bracket_part=br.g(rect.x),
        multiplicity_part=br.f_y0,
    )


def lambda2(
    field: FieldDifference, rect: ObservationRect, t: float = 0.0,
    brackets: BracketSet2D | None = None, spec: QuadratureSpec | None = None,
) -> GaugeValue:
    """Second planar solution: observation-abscissa vertical leg, -flux, h(y)."""
    br = brackets or _ZERO_BRACKETS
    return GaugeValue(
        dirac_part=dirac_phase_ccw(field, rect, t, spec),
        nonlocal_part=-enclosed_flux(field, rect, t, spec),
        bracket_part=br.h(rect.y),
        multiplicity_part=br.hhat_x0,
    )


def loop_integral_A(
    field: FieldDifference, rect: ObservationRect, t: float = 0.0,
    spec: QuadratureSpec | None = None,
) -> float:
    """Closed-loop integral of A around the rectangle, positive sense."""
    path = [
        (rect.x0, rect.y0), (rect.x, rect.y0), (rect.x, rect.y),
        (rect.x0, rect.y), (rect.x0, rect.y0),
    ]
    return line_integral(
        lambda x, y: (field.ax(x, y, t), field.ay(x, y, t)),
        path, spec, field.x_breaks, field.y_breaks,
    )


def ab_multiplicities(
    field: FieldDifference, rect: ObservationRect, t: float = 0.0,
    spec: QuadratureSpec | None = None,
) -> tuple[float, float]:
    """Multiplicity constants ``(f_y0, hhat_x0)`` for a confined flux line.

    ``f_y0`` is minus the positive-sense loop integral of A around the
    rectangle (the limit of solution 1 closing back onto the base);
    ``hhat_x0`` is plus the same loop.  For a flux line of strength
    ``flux`` inside the loop these are ``(-flux, +flux)``; for a loop
    enclosing nothing, ``(0, 0)``.
    """
    loop = loop_integral_A(field, rect, t, spec)
    return -loop, loop


# --- polar-coordinate pair ------------------------------------------------

def _polar_components(field: FieldDifference, rho: float, phi: float, t: float) -> tuple[float, float]:
    x = rho * math.cos(phi)
    y = rho * math.sin(phi)
    ax = field.ax(x, y, t)
    ay = field.ay(x, y, t)
    a_rho = ax * math.cos(phi) + ay * math.sin(phi)
    a_phi = -ax * math.sin(phi) + ay * math.cos(phi)
    return a_rho, a_phi


def enclosed_flux_polar(
    field: FieldDifference,
    base: tuple[float, float],
    corner: tuple[float, float],
    t: float = 0.0,
    spec: QuadratureSpec | None = None,
) -> float:
    """Flux over the annular sector, ``rho'`` inner with area weight, ``phi'`` outer."""
    rho0, phi0 = base
    rho, phi = corner

    def integrand(rp: float, pp: float) -> float:
        return rp * field.bz(rp * math.cos(pp), rp * math.sin(pp), t)

    return integrate_rect(integrand, (rho0, rho), (phi0, phi), spec)


def select_brackets_polar(
    field: FieldDifference,
    window: GridSpec,
    base: tuple[float, float],
    t: float = 0.0,
    spec: QuadratureSpec | None = None,
    rel_tol: float = 1e-6,
) -> BracketSet2D:
    """Extract g(rho), h(phi) from the sector flux over a (rho, phi) window."""
    ax_r = window.axis("rho")
    ax_p = window.axis("phi")

    def flux(rho: float, phi: float) -> float:
        if rho == base[0] or phi == base[1]:
            return 0.0
        return enclosed_flux_polar(field, base, (rho, phi), t, spec)

    pair = extract_separable(flux, list(ax_r.points()), list(ax_p.points()), rel_tol)
    return BracketSet2D(g=pair.g, h=pair.h)


def lambda_polar1(
    field: FieldDifference,
    base: tuple[float, float],
    corner: tuple[float, float],
    t: float = 0.0,
    brackets: BracketSet2D | None = None,
    spec: QuadratureSpec | None = None,
) -> GaugeValue:
    """Polar solution 1: radial leg at the observation azimuth, +sector flux, g(rho)."""
    rho0, phi0 = base
    rho, phi = corner
    if rho0 <= 0 or rho <= 0:
        raise ConfigurationError("polar radii must be positive")
    br = brackets or _ZERO_BRACKETS
    leg_rho = integrate_1d(lambda rp: _polar_components(field, rp, phi, t)[0],
                           rho0, rho, spec)
    leg_phi = integrate_1d(lambda pp: rho0 * _polar_components(field, rho0, pp, t)[1],
                           phi0, phi, spec)
    return GaugeValue(
        dirac_part=leg_rho + leg_phi,
        nonlocal_part=enclosed_flux_polar(field, base, corner, t, spec),
        bracket_part=br.g(rho),
        multiplicity_part=br.f_y0,
    )


def lambda_polar2(
    field: FieldDifference,
    base: tuple[float, float],
    corner: tuple[float, float],
    t: float = 0.0,
    brackets: BracketSet2D | None = None,
    spec: QuadratureSpec | None = None,
) -> GaugeValue:
    """Polar solution 2: radial leg at the base azimuth, -sector flux, h(phi)."""
    rho0, phi0 = base
    rho, phi = corner
    if rho0 <= 0 or rho <= 0:
        raise ConfigurationError("polar radii must be positive")
    br = brackets or _ZERO_BRACKETS
    leg_rho = integrate_1d(lambda rp: _polar_components(field, rp, phi0, t)[0],
                           rho0, rho, spec)
    leg_phi = integrate_1d(lambda pp: rho * _polar_components(field, rho, pp, t)[1],
                           phi0, phi, spec)
    return GaugeValue(
        dirac_part=leg_rho + leg_phi,
        nonlocal_part=-enclosed_flux_polar(field, base, corner, t, spec),
        bracket_part=br.h(phi),
        multiplicity_part=br.hhat_x0,
    )
