"""Dirichlet decomposition invariants and continued-fraction oracles."""

import math
from fractions import Fraction

import numpy as np
import pytest

from gl3twist.diophantine import choose_Q, dirichlet_approx

TWO_PI = 2.0 * math.pi


def test_known_convergents():
    # pi with Q = 10 picks 22/7
    r = dirichlet_approx(math.pi, 10.0)
    assert (r.a, r.q) == (22, 7)
    # golden ratio's convergents are Fibonacci quotients
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    r = dirichlet_approx(phi, 12.0)
    assert (r.a, r.q) == (13, 8)


def test_exact_rational_and_zero():
    r = dirichlet_approx(0.0, 10.0)
    assert (r.a, r.q, r.theta) == (0, 1, 0.0)
    r = dirichlet_approx(3.0 / 7.0, 50.0)
    assert (r.a, r.q) == (3, 7)
    assert abs(r.theta) < 1e-12


def test_negative_alpha():
    r = dirichlet_approx(-math.pi, 10.0)
    assert (r.a, r.q) == (-22, 7)


def test_invariants_random():
    rng = np.random.default_rng(20260823)
    alphas = rng.uniform(-2.0, 2.0, size=10_000)
    Qs = rng.choice([10.0, 100.0, 1000.0], size=alphas.size)
    for alpha, Q in zip(alphas, Qs):
        r = dirichlet_approx(float(alpha), float(Q))
        assert 1 <= r.q <= Q
        assert math.gcd(r.a, r.q) == 1
        # theta = 2 pi (alpha - a/q), |theta| <= 2 pi / (q Q)
        assert r.theta == pytest.approx(TWO_PI * (alpha - r.a / r.q), abs=1e-12)
        assert abs(r.theta) <= r.theta_bound * (1.0 + 1e-9) + 1e-12


def test_against_fraction_oracle():
    # Fraction.limit_denominator gives the best approximation with q <= Q;
    # the Dirichlet pair can have smaller q but never a larger error than
    # the Dirichlet bound itself.
    rng = np.random.default_rng(7)
    for alpha in rng.uniform(0.0, 1.0, size=200):
        Q = 100
        r = dirichlet_approx(float(alpha), float(Q))
        best = Fraction(float(alpha)).limit_denominator(Q)
        assert abs(alpha - r.a / r.q) <= 1.0 / (r.q * Q) + 1e-15
        # the oracle's error is a lower bound for any q <= Q choice
        assert abs(alpha - r.a / r.q) >= abs(alpha - best) - 1e-15 or r.q <= best.denominator


def test_choose_Q():
    assert choose_Q(10_000.0, 1.0) == pytest.approx(100.0)
    assert choose_Q(10_000.0, 64.0) == pytest.approx(100.0 / 2.0)
    assert choose_Q(1.0, 1000.0) == 1.0  # floored
    with pytest.raises(ValueError):
        choose_Q(0.5, 1.0)


def test_validation():
    with pytest.raises(ValueError):
        dirichlet_approx(0.3, 0.5)
