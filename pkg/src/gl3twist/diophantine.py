"""Dirichlet rational approximation of the additive twist.

Splits alpha = a/q + theta/(2 pi) with (a, q) = 1, q <= Q and
|theta| <= 2 pi / (q Q), via continued-fraction convergents plus the
maximal intermediate fraction below the cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["RationalApproximation", "dirichlet_approx", "choose_Q"]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RationalApproximation:
    a: int
    q: int
    theta: float
    Q: float

    @property
    def theta_bound(self) -> float:
        return TWO_PI / (self.q * self.Q)


def _candidates(alpha: float, Q: float):
    """Convergents p/q of alpha with q <= Q, plus, per step, the largest
    intermediate fraction whose denominator still fits under the cap."""
    p0, q0 = 1, 0
    p1, q1 = int(math.floor(alpha)), 1
    yield p1, q1
    x = alpha - math.floor(alpha)
    for _ in range(64):
        if x <= 1e-15:
            return
        x = 1.0 / x
        ai = int(math.floor(x))
        x -= ai
        p2, q2 = ai * p1 + p0, ai * q1 + q0
        if q2 > Q:
            # best semiconvergent j*q1 + q0 <= Q (largest j gives smallest error)
            j = int((Q - q0) // q1)
            if j >= 1:
                yield j * p1 + p0, j * q1 + q0
            return
        yield p2, q2
        p0, q0, p1, q1 = p1, q1, p2, q2


def dirichlet_approx(alpha: float, Q: float) -> RationalApproximation:
    """Best Dirichlet decomposition of alpha with denominator cap Q.

    Among pairs (a, q) with gcd(a, q) = 1, q <= Q and
    |alpha - a/q| <= 1/(q Q), the one minimizing |theta| is returned,
    ties broken by smaller q.  Dirichlet's theorem guarantees the
    candidate set is nonempty.
    """
    if Q < 1:
        raise ValueError("Q must be at least 1")
    best: tuple[float, int, int] | None = None
    for a, q in _candidates(alpha, Q):
        g = math.gcd(a, q)
        a, q = a // g, q // g
        err = alpha - a / q
        if abs(err) > 1.0 / (q * Q) + 1e-15:
            continue
        key = (abs(err), q)
        if best is None or key < (best[0], best[2]):
            best = (abs(err), a, q)
    if best is None:
        # float pathologies only; fall back to the nearest integer
        a = round(alpha)
        best = (abs(alpha - a), a, 1)
    _, a, q = best
    return RationalApproximation(a, q, TWO_PI * (alpha - a / q), float(Q))


def choose_Q(N: float, conductor: float) -> float:
    """Balancing cap Q = N^{1/2} / conductor^{1/6}, floored at 1."""
    if N < 1 or conductor < 1:
        raise ValueError("need N >= 1 and conductor >= 1")
    return max(1.0, math.sqrt(N) * conductor ** (-1.0 / 6.0))
