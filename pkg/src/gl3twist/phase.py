"""Phase-function analysis for the oscillatory part of the transform.

Holds the phase f(t), its first two derivatives, the cubic C(t), the
stationary-point offset Delta, root finding for f' = 0, and the dyadic
decomposition of the t-line by the size of C(t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .forms import LanglandsParams

__all__ = [
    "PhaseSingularityError",
    "PhaseContext",
    "DyadicCell",
    "C_poly",
    "f_eval",
    "f_prime",
    "f_second",
    "delta",
    "stationary_points",
    "dyadic_cells",
]

PI3 = math.pi**3
EIGHT_PI3 = 8.0 * PI3


class PhaseSingularityError(ValueError):
    """t hit a logarithmic singularity of the phase."""


@dataclass(frozen=True)
class PhaseContext:
    """(x, N, theta, params) with x = n/q^3 the transform argument."""

    x: float
    N: float
    theta: float
    params: LanglandsParams

    def __post_init__(self):
        if self.x <= 0 or self.N < 1:
            raise ValueError("need x > 0 and N >= 1")

    @property
    def singularities(self) -> tuple[float, ...]:
        return tuple(sorted({0.0, -self.params.a1, -self.params.a2, -self.params.a3}))


def C_poly(params: LanglandsParams, t):
    """C(t) = prod_i (t + a_i); equals t^3 - (a1^2 - a2*a3) t + a1*a2*a3."""
    a1, a2, a3 = params.as_tuple()
    return (t + a1) * (t + a2) * (t + a3)


def _check_regular(ctx: PhaseContext, t: float, tol: float = 1e-12):
    for s in ctx.singularities:
        if abs(t - s) <= tol * max(1.0, abs(t)):
            raise PhaseSingularityError(f"phase singularity at t = {t}")


def f_eval(ctx: PhaseContext, t: float) -> float:
    """f(t) = t log(pi^3 x |t| / (e |theta|)) - sum_i (t+a_i) log(|t+a_i| / 2e)."""
    _check_regular(ctx, t)
    if ctx.theta == 0:
        raise PhaseSingularityError("phase undefined for theta = 0")
    val = t * math.log(PI3 * ctx.x * abs(t) / (math.e * abs(ctx.theta)))
    for a in ctx.params.as_tuple():
        val -= (t + a) * math.log(abs(t + a) / (2.0 * math.e))
    return val


def f_prime(ctx: PhaseContext, t: float) -> float:
    """f'(t) = log(8 pi^3 x N |t| / |theta N C(t)|)."""
    _check_regular(ctx, t)
    if ctx.theta == 0:
        raise PhaseSingularityError("phase undefined for theta = 0")
    c = C_poly(ctx.params, t)
    return math.log(EIGHT_PI3 * ctx.x * ctx.N * abs(t) / abs(ctx.theta * ctx.N * c))


def f_second(ctx: PhaseContext, t: float) -> float:
    """f''(t) = (a1 a2 a3 - 2 t^3) / (t C(t)), also 1/t - sum_i 1/(t+a_i)."""
    _check_regular(ctx, t)
    a1, a2, a3 = ctx.params.as_tuple()
    return (a1 * a2 * a3 - 2.0 * t**3) / (t * C_poly(ctx.params, t))


def delta(ctx: PhaseContext, t: float) -> float:
    """Delta = xN - |theta N| prod_i |t+a_i| / (8 pi^3 |t|); zero iff f'(t) = 0."""
    if t == 0:
        raise PhaseSingularityError("Delta undefined at t = 0")
    prod = abs(C_poly(ctx.params, t))
    return ctx.x * ctx.N - abs(ctx.theta * ctx.N) * prod / (EIGHT_PI3 * abs(t))


def stationary_points(ctx: PhaseContext, t_range: tuple[float, float],
                      grid: int = 2000) -> list[float]:
    """All roots of f' in t_range, by sign-change bisection between
    singularities, polished to |f'| <= 1e-9."""
    lo, hi = t_range
    if not lo < hi:
        raise ValueError("empty t_range")
    cuts = [lo] + [s for s in ctx.singularities if lo < s < hi] + [hi]
    roots: list[float] = []
    margin = 1e-9 * max(1.0, abs(lo), abs(hi))
    for left, right in zip(cuts[:-1], cuts[1:]):
        a, b = left + margin, right - margin
        if a >= b:
            continue
        ts = np.linspace(a, b, grid)
        vals = np.array([f_prime(ctx, float(t)) for t in ts])
        sign = np.sign(vals)
        for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
            r = brentq(lambda t: f_prime(ctx, t), ts[i], ts[i + 1], xtol=1e-14, rtol=1e-15)
            if abs(f_prime(ctx, r)) <= 1e-9:
                roots.append(float(r))
    return sorted(roots)


@dataclass(frozen=True)
class DyadicCell:
    """Preimage C^{-1}([M, 2M) u (-2M, -M]) clipped to the working range."""

    M: float
    intervals: tuple[tuple[float, float], ...]
    flagged_small: bool = False  # M below the conductor^eps floor the analysis discards


def _real_roots_of_level(params: LanglandsParams, level: float) -> list[float]:
    """Real solutions of C(t) = level."""
    a1, a2, a3 = params.as_tuple()
    coeffs = [1.0, 0.0, -(a1 * a1 - a2 * a3), a1 * a2 * a3 - level]
    roots = np.roots(coeffs)
    return [float(r.real) for r in roots if abs(r.imag) < 1e-9 * max(1.0, abs(r))]


def dyadic_cells(params: LanglandsParams, M: float, t_range: tuple[float, float],
                 eps: float = 0.2) -> DyadicCell:
    """Intervals where |C(t)| lies in [M, 2M), as a union of <= 6 components."""
    if M < 1:
        raise ValueError("M must be at least 1")
    lo, hi = t_range
    breaks = {lo, hi}
    for level in (M, 2.0 * M, -M, -2.0 * M):
        for r in _real_roots_of_level(params, level):
            if lo < r < hi:
                breaks.add(r)
    pts = sorted(breaks)
    intervals: list[tuple[float, float]] = []
    for left, right in zip(pts[:-1], pts[1:]):
        mid = 0.5 * (left + right)
        c = C_poly(params, mid)
        if (M <= c < 2.0 * M) or (-2.0 * M < c <= -M):
            if intervals and abs(intervals[-1][1] - left) < 1e-12 * max(1.0, abs(left)):
                intervals[-1] = (intervals[-1][0], right)
            else:
                intervals.append((left, right))
    conductor = math.prod(1.0 + abs(a) for a in params.as_tuple())
    return DyadicCell(M, tuple(intervals), flagged_small=M < conductor**eps)
