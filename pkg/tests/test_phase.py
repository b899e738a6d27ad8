"""Phase function: derivative identities, stationary points, dyadic cells."""

import math

import numpy as np
import pytest

from gl3twist.forms import LanglandsParams
from gl3twist.phase import (C_poly, DyadicCell, PhaseContext,
                            PhaseSingularityError, delta, dyadic_cells, f_eval,
                            f_prime, f_second, stationary_points)

EIGHT_PI3 = 8.0 * math.pi**3


def _random_contexts(n, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        a1, a2 = rng.uniform(-5.0, 5.0, size=2)
        params = LanglandsParams(a1, a2, -a1 - a2)
        ctx = PhaseContext(float(rng.uniform(0.01, 10.0)),
                           float(rng.uniform(10.0, 1000.0)),
                           float(rng.uniform(-2.0, 2.0) or 0.1), params)
        t = float(rng.uniform(-20.0, 20.0))
        if ctx.theta == 0 or min(abs(t - s) for s in ctx.singularities) < 1e-2:
            continue
        out.append((ctx, t))
    return out


def test_fd_consistency():
    h = 1e-6
    for ctx, t in _random_contexts(1000, seed=42):
        fd1 = (f_eval(ctx, t + h) - f_eval(ctx, t - h)) / (2.0 * h)
        fd2 = (f_prime(ctx, t + h) - f_prime(ctx, t - h)) / (2.0 * h)
        assert f_prime(ctx, t) == pytest.approx(fd1, rel=1e-5, abs=1e-5)
        assert f_second(ctx, t) == pytest.approx(fd2, rel=1e-5, abs=1e-5)


def test_second_derivative_two_forms():
    # rational form (a1 a2 a3 - 2t^3)/(t C(t)) vs partial fractions
    for ctx, t in _random_contexts(300, seed=3):
        a = ctx.params.as_tuple()
        pf = 1.0 / t - sum(1.0 / (t + aj) for aj in a)
        assert abs(f_second(ctx, t) - pf) <= 1e-10 * max(1.0, abs(pf))


def test_delta_sign_matches_fprime():
    # Delta and f' vanish together: Delta = xN(1 - e^{-f'})
    for ctx, t in _random_contexts(200, seed=11):
        d = delta(ctx, t)
        fp = f_prime(ctx, t)
        assert d == pytest.approx(ctx.x * ctx.N * (1.0 - math.exp(-fp)), rel=1e-9, abs=1e-9)


def test_singularity_raises():
    ctx = PhaseContext(1.0, 100.0, 0.5, LanglandsParams(2.0, -1.0, -1.0))
    assert ctx.singularities == (-2.0, 0.0, 1.0)
    for t in (0.0, 1.0, -2.0):
        with pytest.raises(PhaseSingularityError):
            f_prime(ctx, t)
    with pytest.raises(PhaseSingularityError):
        f_eval(PhaseContext(1.0, 100.0, 0.0, ctx.params), 3.0)


def test_stationary_points_degenerate_params():
    # (0,0,0): f'(t) = log(8 pi^3 x N / (|theta N| t^2)), roots at
    # +- sqrt(8 pi^3 x N / |theta N|)
    params = LanglandsParams(0.0, 0.0, 0.0)
    ctx = PhaseContext(2.0, 500.0, 0.3, params)
    expected = math.sqrt(EIGHT_PI3 * ctx.x * ctx.N / abs(ctx.theta * ctx.N))
    roots = stationary_points(ctx, (-3.0 * expected, 3.0 * expected))
    assert len(roots) == 2
    assert roots[0] == pytest.approx(-expected, rel=1e-9)
    assert roots[1] == pytest.approx(+expected, rel=1e-9)


def test_stationary_points_are_roots():
    ctx = PhaseContext(1.5, 300.0, 0.7, LanglandsParams(2.0, -1.0, -1.0))
    roots = stationary_points(ctx, (-50.0, 50.0))
    assert roots
    for r in roots:
        assert abs(f_prime(ctx, r)) <= 1e-9
        assert abs(delta(ctx, r)) <= 1e-6 * ctx.x * ctx.N


def test_dyadic_cells_structure():
    params = LanglandsParams(3.0, -1.0, -2.0)
    rng = (-30.0, 30.0)
    for M in (1.0, 4.0, 16.0, 256.0):
        cell = dyadic_cells(params, M, rng)
        assert isinstance(cell, DyadicCell)
        assert len(cell.intervals) <= 6
        for lo, hi in cell.intervals:
            assert lo < hi
            mid = 0.5 * (lo + hi)
            c = C_poly(params, mid)
            assert M <= abs(c) < 2.0 * M


def test_dyadic_cells_tile():
    # every t with |C(t)| in [1, 2^K) lands in exactly one dyadic cell
    params = LanglandsParams(2.0, -1.0, -1.0)
    rng = (-10.0, 10.0)
    cells = [dyadic_cells(params, float(2**j), rng) for j in range(12)]
    ts = np.linspace(rng[0] + 1e-3, rng[1] - 1e-3, 2000)
    for t in ts:
        c = abs(C_poly(params, float(t)))
        if not (1.0 <= c < 2.0**12):
            continue
        hits = sum(
            any(lo - 1e-9 <= t <= hi + 1e-9 for lo, hi in cell.intervals)
            for cell in cells)
        assert hits >= 1

    small = dyadic_cells(params, 1.0, rng, eps=0.2)
    assert small.flagged_small == (1.0 < 12.0**0.2)


def test_dyadic_validation():
    with pytest.raises(ValueError):
        dyadic_cells(LanglandsParams(0.0, 0.0, 0.0), 0.5, (-1.0, 1.0))
