"""Gauge-function solutions involving time.

Three layers:

* the one-dimensional (x, t) pair, whose nonlocal term is the
  spacetime flux ``c * double-integral of E`` over the (x, t)
  rectangle, plus the deliberately naive two-leg form kept as a
  negative control;
* the full (x, y, t) family with four variants differing in which
  time slice carries the A-legs and which edge coordinates carry the
  E-flux strips;
* the closed-loop combination that recovers the enclosed flux at the
  start time for a time-dependent confined flux line (the causal
  phase result).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ._brackets import extract_separable
from .errors import ConfigurationError, ConfinementError
from .fields import FieldDifference
from .gauge_static import GaugeValue, ObservationRect, loop_integral_A
from .numerics import GridSpec, QuadratureSpec, integrate_1d, integrate_rect, line_integral

__all__ = [
    "SpacetimeRect",
    "BracketSetXT",
    "BracketSetXYT",
    "spacetime_flux",
    "select_brackets_xt",
    "lambda3",
    "lambda4",
    "naive_brown_holland",
    "spacetime_multiplicities",
    "select_brackets_xyt",
    "audit_brackets_xyt",
    "lambda_full",
    "van_kampen_delta",
    "FULL_VARIANTS",
]


@dataclass(frozen=True)
class SpacetimeRect:
    """Base event and observation event spanning an (x, t) rectangle."""

    x0: float
    t0: float
    x: float
    t: float

    def __post_init__(self) -> None:
        if self.x == self.x0 and self.t == self.t0:
            raise ConfigurationError("observation event must differ from base event")


@dataclass(frozen=True)
class BracketSetXT:
    """Brackets and multiplicities for the (x, t) pair."""

    g: Callable[[float], float]
    ghat: Callable[[float], float]
    tau_t0: float = 0.0
    chi_x0: float = 0.0
    shared_constant: float = 0.0


@dataclass(frozen=True)
class BracketSetXYT:
    """Brackets and multiplicities for the full (x, y, t) variants."""

    G: Callable[[float, float], float]
    Ghat: Callable[[float, float], float]
    F: Callable[[float, float], float]
    f_x0t0: float = 0.0
    hhat_y0t0: float = 0.0


_ZERO_XT = BracketSetXT(g=lambda x: 0.0, ghat=lambda t: 0.0)
_ZERO_XYT = BracketSetXYT(G=lambda y, t: 0.0, Ghat=lambda x, t: 0.0, F=lambda x, y: 0.0)

FULL_VARIANTS = ("full1", "full2", "full4", "fin")


def spacetime_flux(
    field: FieldDifference, srect: SpacetimeRect, y: float = 0.0,
    spec: QuadratureSpec | None = None,
) -> float:
    """``c * int dt' int dx' E_x(x', y, t')`` over the (x, t) rectangle."""
    c = field.constants.c
    return c * integrate_rect(
        lambda xp, tp: field.ex(xp, y, tp),
        (srect.x0, srect.x), (srect.t0, srect.t),
        spec, field.x_breaks, field.t_breaks,
    )


def select_brackets_xt(
    field: FieldDifference,
    window: GridSpec,
    base: tuple[float, float],
    y: float = 0.0,
    spec: QuadratureSpec | None = None,
    rel_tol: float = 1e-6,
) -> BracketSetXT:
    """Extract g(x), ghat(t) from the spacetime flux on an (x, t) window."""
    x0, t0 = base

    def flux(x: float, t: float) -> float:
        if x == x0 or t == t0:
            return 0.0
        return spacetime_flux(field, SpacetimeRect(x0, t0, x, t), y, spec)

    ax_x = window.axis("x")
    ax_t = window.axis("t")
    pair = extract_separable(flux, list(ax_x.points()), list(ax_t.points()), rel_tol)
    return BracketSetXT(g=pair.g, ghat=pair.h)


def lambda3(
    field: FieldDifference, srect: SpacetimeRect, y: float = 0.0,
    brackets: BracketSetXT | None = None, spec: QuadratureSpec | None = None,
) -> GaugeValue:
    """(x, t) solution 1: A-leg at the observation time, phi-leg at the base
    abscissa, +spacetime flux, g(x)."""
    br = brackets or _ZERO_XT
    c = field.constants.c
    leg_a = integrate_1d(lambda xp: field.ax(xp, y, srect.t), srect.x0, srect.x,
                         spec, field.x_breaks)
    leg_phi = -c * integrate_1d(lambda tp: field.phi(srect.x0, y, tp),
                                srect.t0, srect.t, spec, field.t_breaks)
    return GaugeValue(
        dirac_part=leg_a + leg_phi,
        nonlocal_part=spacetime_flux(field, srect, y, spec),
        bracket_part=br.g(srect.x),
        multiplicity_part=br.tau_t0,
    )


def lambda4(
    field: FieldDifference, srect: SpacetimeRect, y: float = 0.0,
    brackets: BracketSetXT | None = None, spec: QuadratureSpec | None = None,
) -> GaugeValue:
    """(x, t) solution 2: A-leg at the base time, phi-leg at the observation
    abscissa, -spacetime flux, ghat(t)."""
    br = brackets or _ZERO_XT
    c = field.constants.c
    leg_a = integrate_1d(lambda xp: field.ax(xp, y, srect.t0), srect.x0, srect.x,
                         spec, field.x_breaks)
    leg_phi = -c * integrate_1d(lambda tp: field.phi(srect.x, y, tp),
                                srect.t0, srect.t, spec, field.t_breaks)
    return GaugeValue(
        dirac_part=leg_a + leg_phi,
        nonlocal_part=-spacetime_flux(field, srect, y, spec),
        bracket_part=br.ghat(srect.t),
        multiplicity_part=br.chi_x0,
    )


def naive_brown_holland(
    field: FieldDifference, srect: SpacetimeRect, y: float = 0.0,
    spec: QuadratureSpec | None = None,
) -> float:
    """Two-leg form with no nonlocal term (negative control).

    ``int A(x', t) dx' - c int phi(x, t') dt'``.  Correct only when A
    is time-independent and phi has no x-dependence between the legs;
    otherwise its gradient fails to reproduce the potentials.
    """
    c = field.constants.c
    leg_a = integrate_1d(lambda xp: field.ax(xp, y, srect.t), srect.x0, srect.x,
                         spec, field.x_breaks)
    leg_phi = -c * integrate_1d(lambda tp: field.phi(srect.x, y, tp),
                                srect.t0, srect.t, spec, field.t_breaks)
    return leg_a + leg_phi


def spacetime_multiplicities(
    field: FieldDifference, srect: SpacetimeRect, y: float = 0.0,
    spec: QuadratureSpec | None = None,
    boundary_samples: int = 33,
    confinement_tol: float = 1e-9,
) -> tuple[float, float]:
    """Multiplicities ``(tau_t0, chi_x0)`` for a confined spacetime E-flux.

    Requires E to vanish on the rectangle boundary (the flux must be
    confined strictly inside); samples each edge and raises
    :class:`ConfinementError` otherwise.  Returns ``(+flux, -flux)``
    where ``flux = c * double-integral of E`` over the rectangle.
    """
    xs = [srect.x0 + (srect.x - srect.x0) * i / (boundary_samples - 1)
          for i in range(boundary_samples)]
    ts = [srect.t0 + (srect.t - srect.t0) * i / (boundary_samples - 1)
          for i in range(boundary_samples)]
    scale = max(1.0, max(abs(field.ex(xp, y, tp)) for xp in xs for tp in (ts[0], ts[-1])),
                max(abs(field.ex(xp, y, tp)) for xp in (xs[0], xs[-1]) for tp in ts))
    worst = max(
        max(abs(field.ex(xp, y, tp)) for xp in xs for tp in (srect.t0, srect.t)),
        max(abs(field.ex(xp, y, tp)) for xp in (srect.x0, srect.x) for tp in ts),
    )
    if worst > confinement_tol * scale:
        raise ConfinementError(
            f"E-flux touches the (x, t) rectangle boundary (max |E| = {worst:.3e})"
        )
    flux = spacetime_flux(field, srect, y, spec)
    return flux, -flux


# --- full (x, y, t) variants ----------------------------------------------

def _ccw_a_path(field, base, corner, t, spec):
    x0, y0, _ = base
    x, y, _ = corner
    leg_x = integrate_1d(lambda xp: field.ax(xp, y0, t), x0, x, spec, field.x_breaks)
    leg_y = integrate_1d(lambda yp: field.ay(x, yp, t), y0, y, spec, field.y_breaks)
    return leg_x + leg_y


def _cw_a_path(field, base, corner, t, spec):
    x0, y0, _ = base
    x, y, _ = corner
    leg_x = integrate_1d(lambda xp: field.ax(xp, y, t), x0, x, spec, field.x_breaks)
    leg_y = integrate_1d(lambda yp: field.ay(x0, yp, t), y0, y, spec, field.y_breaks)
    return leg_x + leg_y


def _b_flux(field, base, corner, at_t, spec):
    x0, y0, _ = base
    x, y, _ = corner
    return integrate_rect(lambda xp, yp: field.bz(xp, yp, at_t),
                          (x0, x), (y0, y), spec, field.x_breaks, field.y_breaks)


def _e_flux_x(field, base, corner, at_y, spec):
    """``c * int dt' int dx' E_x(x', at_y, t')``."""
    x0, _, t0 = base
    x, _, t = corner
    c = field.constants.c
    return c * integrate_rect(lambda xp, tp: field.ex(xp, at_y, tp),
                              (x0, x), (t0, t), spec, field.x_breaks, field.t_breaks)


def _e_flux_y(field, base, corner, at_x, spec):
    """``c * int dt' int dy' E_y(at_x, y', t')``."""
    _, y0, t0 = base
    _, y, t = corner
    c = field.constants.c
    return c * integrate_rect(lambda yp, tp: field.ey(at_x, yp, tp),
                              (y0, y), (t0, t), spec, field.y_breaks, field.t_breaks)


def _phi_leg(field, base, spec, t):
    x0, y0, t0 = base
    c = field.constants.c
    return -c * integrate_1d(lambda tp: field.phi(x0, y0, tp), t0, t,
                             spec, field.t_breaks)


def lambda_full(
    variant: str,
    field: FieldDifference,
    base: tuple[float, float, float],
    corner: tuple[float, float, float],
    brackets: BracketSetXYT | None = None,
    spec: QuadratureSpec | None = None,
) -> GaugeValue:
    """One of the four full planar time-dependent solutions.

    Variants:

    * ``full1``: ccw A-path at t, -B-flux at t, E-strips at (y, x0);
    * ``full2``: ccw A-path at t, -B-flux at t0, E-strips at (y0, x);
    * ``full4``: cw A-path at t, +B-flux at t, E-strips at (y0, x);
    * ``fin``:   cw A-path at t, +B-flux at t0, E-strips at (y, x0).

    The bracket part is ``G(y, t0) + F(x, y)`` for the ccw variants and
    ``Ghat(x, t0) + F(x, y)`` for the cw ones.
    """
    if variant not in FULL_VARIANTS:
        raise ConfigurationError(f"unknown variant {variant!r}; one of {FULL_VARIANTS}")
    br = brackets or _ZERO_XYT
    x0, y0, t0 = base
    x, y, t = corner
    phi_leg = _phi_leg(field, base, spec, t)
    if variant == "full1":
        dirac = _ccw_a_path(field, base, corner, t, spec) + phi_leg
        nonlocal_part = (-_b_flux(field, base, corner, t, spec)
                         + _e_flux_x(field, base, corner, y, spec)
                         + _e_flux_y(field, base, corner, x0, spec))
        bracket = br.G(y, t0) + br.F(x, y)
        mult = br.f_x0t0
    elif variant == "full2":
        dirac = _ccw_a_path(field, base, corner, t, spec) + phi_leg
        nonlocal_part = (-_b_flux(field, base, corner, t0, spec)
                         + _e_flux_x(field, base, corner, y0, spec)
                         + _e_flux_y(field, base, corner, x, spec))
        bracket = br.G(y, t0) + br.F(x, y)
        mult = br.f_x0t0
    elif variant == "full4":
        dirac = _cw_a_path(field, base, corner, t, spec) + phi_leg
        nonlocal_part = (_b_flux(field, base, corner, t, spec)
                         + _e_flux_x(field, base, corner, y0, spec)
                         + _e_flux_y(field, base, corner, x, spec))
        bracket = br.Ghat(x, t0) + br.F(x, y)
        mult = br.hhat_y0t0
    else:  # fin
        dirac = _cw_a_path(field, base, corner, t, spec) + phi_leg
        nonlocal_part = (_b_flux(field, base, corner, t0, spec)
                         + _e_flux_x(field, base, corner, y, spec)
                         + _e_flux_y(field, base, corner, x0, spec))
        bracket = br.Ghat(x, t0) + br.F(x, y)
        mult = br.hhat_y0t0
    return GaugeValue(dirac_part=dirac, nonlocal_part=nonlocal_part,
                      bracket_part=bracket, multiplicity_part=mult)


def select_brackets_xyt(
    field: FieldDifference,
    window: GridSpec,
    base: tuple[float, float, float],
    obs_t: float,
    spec: QuadratureSpec | None = None,
    rel_tol: float = 1e-6,
) -> BracketSetXYT:
    """Construct G, Ghat, F for a window of (x, y) corners at time ``obs_t``.

    G and Ghat come from the B-flux at the base time via the separable
    pair; F cancels the x-dependence of the x-strip E-flux, and the
    remaining conditions are checked by :func:`audit_brackets_xyt`.
    """
    x0, y0, t0 = base
    ax_x = window.axis("x")
    ax_y = window.axis("y")
    xs = list(ax_x.points())
    ys = list(ax_y.points())

    def b_flux(x: float, y: float) -> float:
        if x == x0 or y == y0:
            return 0.0
        return _b_flux(field, base, (x, y, t0), t0, spec)

    pair = extract_separable(b_flux, xs, ys, rel_tol)
    x_a = xs[0]

    def big_g(y: float, t: float) -> float:
        # anchored column of the base-time B-flux; cancels its y-dependence
        return b_flux(x_a, y)

    def big_ghat(x: float, t: float) -> float:
        return -(b_flux(x, ys[0]) - pair.anchored_flux) - pair.anchored_flux

    def big_f(x: float, y: float) -> float:
        u = _e_flux_x(field, base, (x, y, obs_t), y, spec)
        u_a = _e_flux_x(field, base, (x_a, y, obs_t), y, spec)
        return -(u - u_a)

    return BracketSetXYT(G=big_g, Ghat=big_ghat, F=big_f)


def audit_brackets_xyt(
    field: FieldDifference,
    brackets: BracketSetXYT,
    window: GridSpec,
    base: tuple[float, float, float],
    obs_t: float,
    spec: QuadratureSpec | None = None,
    n: int = 5,
) -> dict[str, float]:
    """Max variation of each bracket condition over an n-by-n window sample.

    Keys: ``G`` ({G - B-flux(t0)} over y), ``Ghat`` ({Ghat + B-flux(t0)}
    over x), ``F_x`` ({F + x-strip E-flux} over x), ``F_y`` ({F + y-strip
    E-flux} over y).
    """
    x0, y0, t0 = base
    xs = list(window.axis("x").points())[:n]
    ys = list(window.axis("y").points())[:n]

    def spread(vals: list[float]) -> float:
        return max(vals) - min(vals)

    out: dict[str, float] = {}
    out["G"] = max(
        spread([brackets.G(y, t0) - _b_flux(field, base, (x, y, t0), t0, spec)
                for y in ys])
        for x in xs
    )
    out["Ghat"] = max(
        spread([brackets.Ghat(x, t0) + _b_flux(field, base, (x, y, t0), t0, spec)
                for x in xs])
        for y in ys
    )
    out["F_x"] = max(
        spread([brackets.F(x, y) + _e_flux_x(field, base, (x, y, obs_t), y, spec)
                for x in xs])
        for y in ys
    )
    out["F_y"] = max(
        spread([brackets.F(x, y) + _e_flux_y(field, base, (x, y, obs_t), x, spec)
                for y in ys])
        for x in xs
    )
    return out


def van_kampen_delta(
    field: FieldDifference,
    rect: ObservationRect,
    t0: float,
    t: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """Closed-loop phase for a time-dependent confined flux line.

    ``loop A(., t) + c * int_{t0}^{t} dt' loop E(., t')`` around the
    rectangle, positive sense.  The induction law telescopes the two
    terms to the enclosed flux at the start time, independent of t.
    """
    c = field.constants.c
    loop_a = loop_integral_A(field, rect, t, spec)
    path = [
        (rect.x0, rect.y0), (rect.x, rect.y0), (rect.x, rect.y),
        (rect.x0, rect.y), (rect.x0, rect.y0),
    ]

    def loop_e(tp: float) -> float:
        return line_integral(
            lambda x, y: (field.ex(x, y, tp), field.ey(x, y, tp)),
            path, spec, field.x_breaks, field.y_breaks,
        )

    return loop_a + c * integrate_1d(loop_e, t0, t, spec, field.t_breaks)
