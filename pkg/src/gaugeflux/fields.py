"""Field-difference catalog.

A :class:`FieldDifference` bundles the potential differences
``(ax, ay, phi)`` between two electromagnetic configurations together
with the analytic field differences ``(bz, ex, ey)`` they derive from,
plus the breakpoint coordinates where samplers are only piecewise
smooth.  All samplers take ``(x, y, t)``.

Gauge choices are documented per scenario kind:

* ``vertical-strip-B``   -- ramp gauge ``A_y(x)``; optional
  ``time_slope`` makes the strip amplitude ``B0*(1+eps*t)``.
* ``horizontal-strip-B`` -- ramp gauge ``A_x(y)`` (sign makes
  ``curl A = +B0`` inside the strip).
* ``triangle-B``         -- sweep gauge ``A_y(x,y) = B0 * chord
  length of the region left of x at height y``.
* ``disk-B``             -- same sweep gauge, circular chords.
* ``solenoid-AB``        -- azimuthal gauge with a finite parabolic
  flux core of radius ``core_radius``; outside the core
  ``A = (flux/2 pi) (-y, x)/rho^2``.
* ``van-kampen-flux``    -- same geometry with a time-dependent flux
  profile and ``E = -(1/c) dA/dt``, temporal gauge ``phi = 0``.
* ``capacitor-xt``       -- scalar ramp gauge ``phi(x)``, ``A = 0``.
* ``pulsed-uniform-E-xt``-- ``phi(x,t) = -E0 * x * pulse(t)``.

Region edges are mollified with a C1 smoothstep of the configured
width; the smoothing is flux-preserving (the smoothstep is odd about
each edge), so integrated fluxes over fully-containing rectangles are
unchanged.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Mapping

from .errors import ConfigurationError

__all__ = [
    "Constants",
    "ScenarioConfig",
    "FieldDifference",
    "build_field",
    "mollify",
    "phase_factor",
    "build_strip_pair_field",
    "shift_vector_potential",
]

Sampler = Callable[[float, float, float], float]

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class Constants:
    """Unit system; Gaussian-style with the speed of light kept explicit."""

    c: float = 1.0
    q: float = 1.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        if self.c <= 0 or self.hbar <= 0:
            raise ConfigurationError("c and hbar must be positive")


@dataclass(frozen=True)
class ScenarioConfig:
    """A catalog kind plus its real-valued parameters."""

    kind: str
    params: Mapping[str, float] = dc_field(default_factory=dict)
    mollify_width: float = 0.0

    def get(self, key: str, default: float) -> float:
        return float(self.params.get(key, default))


@dataclass(frozen=True)
class FieldDifference:
    """Potential and field differences between two configurations."""

    ax: Sampler
    ay: Sampler
    phi: Sampler
    bz: Sampler
    ex: Sampler
    ey: Sampler
    x_breaks: tuple[float, ...] = ()
    y_breaks: tuple[float, ...] = ()
    t_breaks: tuple[float, ...] = ()
    constants: Constants = Constants()
    remollify: Callable[[float], "FieldDifference"] | None = None


def _zero(x: float, y: float, t: float) -> float:
    return 0.0


# --- C1 smoothstep edge and its antiderivative ----------------------------

def _edge(s: float, w: float) -> float:
    """0 -> 1 transition of width ``w`` centred on ``s = 0`` (C1 cubic)."""
    if w <= 0.0:
        return 1.0 if s >= 0.0 else 0.0
    u = (s + 0.5 * w) / w
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return 1.0
    return u * u * (3.0 - 2.0 * u)


def _edge_int(s: float, w: float) -> float:
    """Antiderivative of :func:`_edge` vanishing as ``s -> -inf``."""
    if w <= 0.0:
        return s if s > 0.0 else 0.0
    u = (s + 0.5 * w) / w
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return s  # integral of the symmetric step equals s exactly
    return w * (u ** 3 - 0.5 * u ** 4)


def _edge_deriv(s: float, w: float) -> float:
    if w <= 0.0:
        return 0.0
    u = (s + 0.5 * w) / w
    if u <= 0.0 or u >= 1.0:
        return 0.0
    return 6.0 * u * (1.0 - u) / w


def _interval_profile(s: float, lo: float, hi: float, w: float) -> float:
    return _edge(s - lo, w) - _edge(s - hi, w)


def _interval_ramp(s: float, lo: float, hi: float, w: float) -> float:
    return _edge_int(s - lo, w) - _edge_int(s - hi, w)


def _interval_breaks(lo: float, hi: float, w: float) -> tuple[float, ...]:
    if w <= 0.0:
        return (lo, hi)
    return (lo - 0.5 * w, lo + 0.5 * w, hi - 0.5 * w, hi + 0.5 * w)


# --- catalog builders -----------------------------------------------------

def _build_vertical_strip(cfg: ScenarioConfig, const: Constants) -> FieldDifference:
    b0 = cfg.get("B0", 1.0)
    x1 = cfg.get("x1", 1.0)
    x2 = cfg.get("x2", 2.0)
    eps = cfg.get("time_slope", 0.0)
    w = cfg.mollify_width
    if x2 <= x1:
        raise ConfigurationError("vertical-strip-B needs x2 > x1")

    def amp(t: float) -> float:
        return b0 * (1.0 + eps * t)

    def ay(x, y, t):
        return amp(t) * _interval_ramp(x, x1, x2, w)

    def bz(x, y, t):
        return amp(t) * _interval_profile(x, x1, x2, w)

    def ey(x, y, t):
        return -(b0 * eps / const.c) * _interval_ramp(x, x1, x2, w)

    return FieldDifference(
        ax=_zero, ay=ay, phi=_zero, bz=bz, ex=_zero, ey=ey,
        x_breaks=_interval_breaks(x1, x2, w), constants=const,
        remollify=lambda width: _build_vertical_strip(
            ScenarioConfig(cfg.kind, cfg.params, width), const),
    )


def _build_horizontal_strip(cfg: ScenarioConfig, const: Constants) -> FieldDifference:
    b0 = cfg.get("B0", 1.0)
    y1 = cfg.get("y1", 1.0)
    y2 = cfg.get("y2", 2.0)
    w = cfg.mollify_width
    if y2 <= y1:
        raise ConfigurationError("horizontal-strip-B needs y2 > y1")

    def ax(x, y, t):
        return -b0 * _interval_ramp(y, y1, y2, w)

    def bz(x, y, t):
        return b0 * _interval_profile(y, y1, y2, w)

    return FieldDifference(
        ax=ax, ay=_zero, phi=_zero, bz=bz, ex=_zero, ey=_zero,
        y_breaks=_interval_breaks(y1, y2, w), constants=const,
        remollify=lambda width: _build_horizontal_strip(
            ScenarioConfig(cfg.kind, cfg.params, width), const),
    )


def _triangle_chord(y: float, a: float, dx: float, dy: float) -> tuple[float, float] | None:
    """Horizontal chord of the equilateral triangle at height ``y``.

    Vertices sit at (dx, dy), (dx+a, dy) and (dx+a/2, dy+sqrt(3)a/2).
    """
    s = y - dy
    h = 0.5 * _SQRT3 * a
    if s < 0.0 or s > h:
        return None
    return dx + s / _SQRT3, dx + a - s / _SQRT3


def _build_triangle(cfg: ScenarioConfig, const: Constants) -> FieldDifference:
    b0 = cfg.get("B0", 1.0)
    a = cfg.get("a", 1.0)
    dx = cfg.get("dx", 0.0)
    dy = cfg.get("dy", 0.0)
    w = cfg.mollify_width
    if a <= 0:
        raise ConfigurationError("triangle-B needs a > 0")
    h = 0.5 * _SQRT3 * a

    def ay(x, y, t):
        chord = _triangle_chord(y, a, dx, dy)
        if chord is None:
            return 0.0
        xl, xr = chord
        return b0 * (_edge_int(x - xl, w) - _edge_int(x - xr, w))

    def bz(x, y, t):
        chord = _triangle_chord(y, a, dx, dy)
        if chord is None:
            return 0.0
        xl, xr = chord
        return b0 * (_edge(x - xl, w) - _edge(x - xr, w))

    return FieldDifference(
        ax=_zero, ay=ay, phi=_zero, bz=bz, ex=_zero, ey=_zero,
        x_breaks=(dx - 0.5 * w, dx + 0.5 * a, dx + a + 0.5 * w),
        y_breaks=(dy, dy + h),
        constants=const,
        remollify=lambda width: _build_triangle(
            ScenarioConfig(cfg.kind, cfg.params, width), const),
    )


def _build_disk(cfg: ScenarioConfig, const: Constants) -> FieldDifference:
    b0 = cfg.get("B0", 1.0)
    r = cfg.get("R", 1.0)
    cx = cfg.get("cx", 0.0)
    cy = cfg.get("cy", 0.0)
    w = cfg.mollify_width
    if r <= 0:
        raise ConfigurationError("disk-B needs R > 0")

    def chord(y: float) -> tuple[float, float] | None:
        s2 = r * r - (y - cy) ** 2
        if s2 <= 0.0:
            return None
        s = math.sqrt(s2)
        return cx - s, cx + s

    def ay(x, y, t):
        ch = chord(y)
        if ch is None:
            return 0.0
        xl, xr = ch
        return b0 * (_edge_int(x - xl, w) - _edge_int(x - xr, w))

    def bz(x, y, t):
        ch = chord(y)
        if ch is None:
            return 0.0
        xl, xr = ch
        return b0 * (_edge(x - xl, w) - _edge(x - xr, w))

    return FieldDifference(
        ax=_zero, ay=ay, phi=_zero, bz=bz, ex=_zero, ey=_zero,
        x_breaks=(cx - r - 0.5 * w, cx + r + 0.5 * w),
        y_breaks=(cy - r, cy + r),
        constants=const,
        remollify=lambda width: _build_disk(
            ScenarioConfig(cfg.kind, cfg.params, width), const),
    )


def _core_shape(rho: float, r_core: float) -> float:
    """``A_phi / (flux * rho)`` for a parabolic flux core of radius r_core.

    Outside the core this is 1/(2 pi rho^2), the pure circulation form;
    inside, the enclosed flux is ``flux * (2 u^2 - u^4)`` with
    ``u = rho / r_core``, which is C1 at the core edge and integrates to
    the full flux exactly.
    """
    if rho >= r_core:
        return 1.0 / (2.0 * math.pi * rho * rho)
    u2 = (rho / r_core) ** 2
    return (2.0 - u2) * u2 / (2.0 * math.pi * rho * rho) if rho > 0 else \
        1.0 / (math.pi * r_core * r_core)


def _core_bz(rho: float, r_core: float) -> float:
    """Magnetic profile of the parabolic core, unit total flux."""
    if rho >= r_core:
        return 0.0
    return 2.0 * (1.0 - (rho / r_core) ** 2) / (math.pi * r_core * r_core)


def _flux_profile(cfg: ScenarioConfig) -> tuple[Callable[[float], float], Callable[[float], float]]:
    kind = str(cfg.params.get("profile", "constant"))
    phi0 = cfg.get("flux", cfg.get("phi0", 2.0 * math.pi))
    t_ref = cfg.get("t_ref", 0.0)
    if kind == "constant":
        return (lambda t: phi0), (lambda t: 0.0)
    if kind == "linear":
        k = cfg.get("rate", 0.5)
        return (lambda t: phi0 + k * (t - t_ref)), (lambda t: k)
    if kind == "sinusoidal":
        amp = cfg.get("amp", 0.5)
        om = cfg.get("omega", 1.0)
        return (
            lambda t: phi0 + amp * math.sin(om * (t - t_ref)),
            lambda t: amp * om * math.cos(om * (t - t_ref)),
        )
    raise ConfigurationError(f"unknown flux profile {kind!r}")


def _build_flux_line(cfg: ScenarioConfig, const: Constants, time_dependent: bool) -> FieldDifference:
    r_core = cfg.get("core_radius", 0.2)
    if r_core <= 0:
        raise ConfigurationError("core_radius must be > 0")
    if time_dependent:
        flux, dflux = _flux_profile(cfg)
    else:
        phi0 = cfg.get("flux", cfg.get("phi0", 2.0 * math.pi))
        flux, dflux = (lambda t: phi0), (lambda t: 0.0)

    def shape(x: float, y: float) -> float:
        return _core_shape(math.hypot(x, y), r_core)

    def ax(x, y, t):
        return -y * flux(t) * shape(x, y)

    def ay(x, y, t):
        return x * flux(t) * shape(x, y)

    def ex(x, y, t):
        return y * dflux(t) * shape(x, y) / const.c

    def ey(x, y, t):
        return -x * dflux(t) * shape(x, y) / const.c

    def bz(x, y, t):
        return flux(t) * _core_bz(math.hypot(x, y), r_core)

    return FieldDifference(
        ax=ax, ay=ay, phi=_zero, bz=bz, ex=ex, ey=ey,
        x_breaks=(-r_core, 0.0, r_core), y_breaks=(-r_core, 0.0, r_core),
        constants=const,
        remollify=lambda width: _build_flux_line(cfg, const, time_dependent),
    )


def _build_capacitor(cfg: ScenarioConfig, const: Constants) -> FieldDifference:
    e0 = cfg.get("E0", 1.0)
    x1 = cfg.get("x1", 1.0)
    x2 = cfg.get("x2", 2.0)
    w = cfg.mollify_width
    if x2 <= x1:
        raise ConfigurationError("capacitor-xt needs x2 > x1")

    def phi(x, y, t):
        return -e0 * _interval_ramp(x, x1, x2, w)

    def ex(x, y, t):
        return e0 * _interval_profile(x, x1, x2, w)

    return FieldDifference(
        ax=_zero, ay=_zero, phi=phi, bz=_zero, ex=ex, ey=_zero,
        x_breaks=_interval_breaks(x1, x2, w), constants=const,
        remollify=lambda width: _build_capacitor(
            ScenarioConfig(cfg.kind, cfg.params, width), const),
    )


def _build_pulsed_e(cfg: ScenarioConfig, const: Constants) -> FieldDifference:
    e0 = cfg.get("E0", 1.0)
    t1 = cfg.get("t1", 0.0)
    t2 = cfg.get("t2", 1.0)
    w = cfg.mollify_width
    if t2 <= t1:
        raise ConfigurationError("pulsed-uniform-E-xt needs t2 > t1")

    def pulse(t: float) -> float:
        return _interval_profile(t, t1, t2, w)

    def phi(x, y, t):
        return -e0 * x * pulse(t)

    def ex(x, y, t):
        return e0 * pulse(t)

    return FieldDifference(
        ax=_zero, ay=_zero, phi=phi, bz=_zero, ex=ex, ey=_zero,
        t_breaks=_interval_breaks(t1, t2, w), constants=const,
        remollify=lambda width: _build_pulsed_e(
            ScenarioConfig(cfg.kind, cfg.params, width), const),
    )


_BUILDERS = {
    "vertical-strip-B": _build_vertical_strip,
    "horizontal-strip-B": _build_horizontal_strip,
    "triangle-B": _build_triangle,
    "disk-B": _build_disk,
    "solenoid-AB": lambda cfg, const: _build_flux_line(cfg, const, time_dependent=False),
    "van-kampen-flux": lambda cfg, const: _build_flux_line(cfg, const, time_dependent=True),
    "capacitor-xt": _build_capacitor,
    "pulsed-uniform-E-xt": _build_pulsed_e,
}

CATALOG_KINDS = tuple(sorted(_BUILDERS))


def build_field(config: ScenarioConfig, constants: Constants | None = None) -> FieldDifference:
    """Construct the field difference for a catalog kind.

    Raises
    ------
    ConfigurationError
        For unknown kinds or invalid parameter combinations.
    """
    if config.kind not in _BUILDERS:
        raise ConfigurationError(
            f"unknown scenario kind {config.kind!r}; known: {', '.join(CATALOG_KINDS)}"
        )
    if config.mollify_width < 0:
        raise ConfigurationError("mollify_width must be >= 0")
    return _BUILDERS[config.kind](config, constants or Constants())


def mollify(field: FieldDifference, width: float) -> FieldDifference:
    """Return a copy of ``field`` with region edges smoothed over ``width``."""
    if width <= 0:
        raise ConfigurationError("mollify width must be > 0")
    if field.remollify is None:
        raise ConfigurationError("field does not support re-mollification")
    return field.remollify(width)


def phase_factor(lam: float, constants: Constants | None = None) -> complex:
    """Quantum phase ``exp(i q Lambda / (hbar c))`` with argument in (-pi, pi]."""
    const = constants or Constants()
    theta = const.q * lam / (const.hbar * const.c)
    reduced = math.remainder(theta, 2.0 * math.pi)
    if reduced == -math.pi:
        reduced = math.pi
    return cmath.exp(1j * reduced)


def build_strip_pair_field(
    b0: float = 1.0,
    eps: float = 0.3,
    strip1: tuple[float, float] = (1.0, 2.0),
    strip2: tuple[float, float] = (2.5, 3.0),
    mollify_width: float = 0.0,
    constants: Constants | None = None,
) -> FieldDifference:
    """Flux-compensated pair of vertical strips with time-dependent amplitudes.

    Strip 1 carries ``B0 * (1 + eps*t)``; strip 2 carries the opposite
    time-varying flux so the total flux (and hence the potentials and
    field differences to the right of both strips) stays constant in
    time.  Observation windows to the right therefore see zero field
    difference while nonlocal flux terms remain nontrivial.
    """
    const = constants or Constants()
    x1, x2 = strip1
    x3, x4 = strip2
    if not (x1 < x2 <= x3 < x4):
        raise ConfigurationError("strips must be ordered and disjoint")
    w1 = x2 - x1
    w2 = x4 - x3
    w = mollify_width

    def b_1(t: float) -> float:
        return b0 * (1.0 + eps * t)

    def b_2(t: float) -> float:
        return -b0 * eps * t * (w1 / w2)

    def ay(x, y, t):
        return b_1(t) * _interval_ramp(x, x1, x2, w) + b_2(t) * _interval_ramp(x, x3, x4, w)

    def bz(x, y, t):
        return b_1(t) * _interval_profile(x, x1, x2, w) + b_2(t) * _interval_profile(x, x3, x4, w)

    def ey(x, y, t):
        d1 = b0 * eps * _interval_ramp(x, x1, x2, w)
        d2 = -b0 * eps * (w1 / w2) * _interval_ramp(x, x3, x4, w)
        return -(d1 + d2) / const.c

    return FieldDifference(
        ax=_zero, ay=ay, phi=_zero, bz=bz, ex=_zero, ey=ey,
        x_breaks=_interval_breaks(x1, x2, w) + _interval_breaks(x3, x4, w),
        constants=const,
        remollify=lambda width: build_strip_pair_field(
            b0, eps, strip1, strip2, width, const),
    )


def shift_vector_potential(field: FieldDifference, ax0: float, ay0: float) -> FieldDifference:
    """Add a constant vector to ``A`` (a pure gauge change; fields untouched)."""
    base_ax, base_ay = field.ax, field.ay
    return FieldDifference(
        ax=lambda x, y, t: base_ax(x, y, t) + ax0,
        ay=lambda x, y, t: base_ay(x, y, t) + ay0,
        phi=field.phi, bz=field.bz, ex=field.ex, ey=field.ey,
        x_breaks=field.x_breaks, y_breaks=field.y_breaks, t_breaks=field.t_breaks,
        constants=field.constants, remollify=None,
    )
