"""Window quadrature against independent scipy oracles, and the
stationary-phase evaluation of I(tau)."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from gl3twist.window import (ModulatedWindow, QuadratureError, SaddleRegime,
                             direct_I, mellin_psi, mellin_psi_vector, saddle_I,
                             window_derivative_bounds, window_eval)

# int_0^1 exp(4 - 1/(u(1-u))) du, scipy.integrate.quad, abserr < 5e-15
BUMP_MASS = 0.3838172639958344


def test_window_support_and_shape():
    N = 100.0
    assert window_eval(N, 50.0) == 0.0
    assert window_eval(N, 100.0) == 0.0
    assert window_eval(N, 200.0) == 0.0
    assert window_eval(N, 150.0) == pytest.approx(1.0)  # u = 1/2 maximizes
    ys = np.linspace(100.0, 200.0, 101)
    vals = window_eval(N, ys)
    assert vals.max() == pytest.approx(1.0)
    assert np.all(vals >= 0.0)
    with pytest.raises(ValueError):
        window_eval(0.0, 1.0)


def test_window_mass():
    val = quad(lambda y: window_eval(1.0, y), 1.0, 2.0, epsabs=1e-13)[0]
    assert val == pytest.approx(BUMP_MASS, abs=1e-12)


def test_derivative_bounds_hold():
    # FD derivatives of the bump stay below the frozen c_j (scale-free form)
    bounds = window_derivative_bounds()
    u = np.linspace(1e-3, 1.0 - 1e-3, 20001)
    f = np.exp(4.0 - 1.0 / (u * (1.0 - u)))
    h = u[1] - u[0]
    d = f.copy()
    for j in range(5):
        assert np.abs(d).max() <= bounds[j] * (1.0 + 1e-2), j
        d = np.gradient(d, h)


def test_mellin_against_quad_oracle():
    # frozen values from scipy.integrate.quad on real/imag parts (N=50, theta=0.3)
    win = ModulatedWindow(50.0, 0.3)
    oracle = {
        (0.1, 7.0): 0.007174961236239296 - 0.009187845853487964j,
        (0.0, 0.0): -0.010600806780241948 + 0.0008305790543103297j,
        (0.0, 25.0): -0.00033229199076329765 - 0.000814991057813147j,
    }
    for (sig, tau), ref in oracle.items():
        val = mellin_psi(win, complex(sig, tau), tol=1e-12)
        assert val == pytest.approx(ref, abs=1e-10)


def test_mellin_vector_matches_scalar():
    win = ModulatedWindow(200.0, 0.05)
    taus = np.array([-40.0, -3.0, 0.0, 5.5, 17.0, 60.0])
    vec, err = mellin_psi_vector(win, 0.1, taus, want_error=True)
    for t, v, e in zip(taus, vec, err):
        ref = mellin_psi(win, complex(0.1, t), tol=1e-12)
        assert abs(v - ref) <= max(1e-10 * win.N**0.1, 10.0 * e + 1e-13)


def test_saddle_main_term():
    # theta N = 150, saddle at x0 = -tau/theta inside (N, 2N)
    win = ModulatedWindow(100.0, 1.5)
    tau = -1.5 * 145.0  # x0 = 145
    res = saddle_I(win, tau)
    assert res.regime is SaddleRegime.SADDLE
    ref = direct_I(win, tau, tol=1e-11)
    assert abs(res.main - ref) <= res.error_estimate
    # the main term itself carries the bulk of the value
    assert abs(res.main - ref) <= 0.2 * abs(ref)


def test_saddle_regime_labels():
    win = ModulatedWindow(100.0, 4.0)  # theta N = 400
    assert saddle_I(win, 0.5).regime is SaddleRegime.SMALL_TAU
    assert saddle_I(win, 30.0).regime is SaddleRegime.THETA_DOMINATED
    assert saddle_I(win, 5000.0).regime is SaddleRegime.TAU_DOMINATED
    assert saddle_I(ModulatedWindow(100.0, 0.001), 3.0).regime is SaddleRegime.SMALL_THETA_N
    # outside the saddle regime the main term is identically zero
    for tau in (0.5, 30.0, 5000.0):
        assert saddle_I(win, tau).main == 0.0


def test_saddle_positive_theta_side():
    # positive theta puts the saddle at negative tau only; the wrong-sign
    # tau has zero window value and the main term vanishes
    win = ModulatedWindow(100.0, 1.5)
    res = saddle_I(win, +1.5 * 145.0)
    assert res.regime is SaddleRegime.SADDLE
    assert res.main == 0.0


def test_quadrature_error_carries_best():
    win = ModulatedWindow(100.0, 2.0)
    with pytest.raises(QuadratureError) as info:
        mellin_psi(win, complex(0.0, 5.0), tol=1e-16, max_panels=64)
    assert isinstance(info.value.best, complex)
    assert info.value.error > 0
