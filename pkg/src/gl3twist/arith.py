"""Modular arithmetic and Kloosterman sums for the dual side of Voronoi.

Kloosterman sums are evaluated by direct O(c) summation; the moduli that
occur here are q/n1 <= Q <= N^{1/2}, small enough that factorization
tricks would not pay off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["KloostermanQuery", "mod_inverse", "kloosterman"]


@dataclass(frozen=True)
class KloostermanQuery:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("modulus must be positive")


def mod_inverse(a: int, q: int) -> int:
    """x in [0, q) with a*x = 1 (mod q); q = 1 returns the canonical 0."""
    if q < 1:
        raise ValueError("modulus must be positive")
    if q == 1:
        return 0
    try:
        return pow(a, -1, q)
    except ValueError:
        raise ValueError(f"{a} is not invertible modulo {q}") from None


def kloosterman(a: int, b: int, c: int, imag_tol: float = 1e-9) -> float:
    """S(a, b; c) = sum over units x mod c of e((a x + b x^-1)/c).

    The sum is real; the residual imaginary part (<= imag_tol * c) is
    checked and dropped.
    """
    if c < 1:
        raise ValueError("modulus must be positive")
    if c == 1:
        return 1.0
    xs = []
    invs = []
    for x in range(1, c):
        if math.gcd(x, c) == 1:
            xs.append(x)
            invs.append(pow(x, -1, c))
    xs = np.array(xs, dtype=float)
    invs = np.array(invs, dtype=float)
    total = np.exp(2j * np.pi * (a * xs + b * invs) / c).sum()
    if abs(total.imag) > imag_tol * c:
        raise ArithmeticError(f"S({a},{b};{c}) imaginary part {total.imag:.3e} exceeds tolerance")
    return float(total.real)
