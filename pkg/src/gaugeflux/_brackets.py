"""Separable extraction of bracket functions from a flux surface.

Given a two-argument flux function F(u, v) sampled on a window, the
two solution families need single-variable brackets such that

    { F(u, v) + g(u) }  is independent of u, and
    { -F(u, v) + h(v) } is independent of v.

Both exist iff F splits as S1(u) + S2(v) + K on the window.  With the
anchor (u_a, v_a) at the window minimum corner,

    S1(u) = F(u, v_a) - K,   S2(v) = F(u_a, v) - K,   K = F(u_a, v_a),

and the convention used throughout the package is

    g(u) = -S1(u) + C,       h(v) = S2(v) + K + C,

with a single shared constant C (default 0).  The anchored flux K is
absorbed into h so the two solution totals agree exactly, not merely
up to a constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import SeparabilityError

__all__ = ["SeparablePair", "extract_separable"]


@dataclass(frozen=True)
class SeparablePair:
    """Bracket pair extracted from one flux surface."""

    g: Callable[[float], float]
    h: Callable[[float], float]
    anchor: tuple[float, float]
    anchored_flux: float
    max_mixed_difference: float
    shared_constant: float = 0.0


def extract_separable(
    flux: Callable[[float, float], float],
    u_points: list[float],
    v_points: list[float],
    rel_tol: float = 1e-6,
    shared_constant: float = 0.0,
) -> SeparablePair:
    """Check separability on the window grid and build the bracket pair.

    Raises
    ------
    SeparabilityError
        When the mixed difference
        ``F(u,v) - F(u,v_a) - F(u_a,v) + F(u_a,v_a)`` exceeds
        ``rel_tol * max|F|`` anywhere on the grid.
    """
    u_a, v_a = u_points[0], v_points[0]
    k = flux(u_a, v_a)
    col = {v: flux(u_a, v) for v in v_points}
    row = {u: flux(u, v_a) for u in u_points}
    max_abs = max(1e-30, max(abs(val) for val in list(col.values()) + list(row.values())))
    worst = 0.0
    for u in u_points[1:]:
        for v in v_points[1:]:
            f = flux(u, v)
            max_abs = max(max_abs, abs(f))
            worst = max(worst, abs(f - row[u] - col[v] + k))
    if worst > rel_tol * max_abs:
        raise SeparabilityError(
            f"flux surface is not separable on window: mixed difference "
            f"{worst:.3e} > {rel_tol:.1e} * {max_abs:.3e}"
        )

    c = shared_constant

    def g(u: float) -> float:
        return -(flux(u, v_a) - k) + c

    def h(v: float) -> float:
        return flux(u_a, v) + c

    return SeparablePair(
        g=g, h=h, anchor=(u_a, v_a), anchored_flux=k,
        max_mixed_difference=worst, shared_constant=c,
    )
