"""Profile of the Voronoi transform Psi_0(x) across its effective support.

Shows the three regimes at a glance: a flat conductor-sized plateau when
theta N is small, the oscillatory saddle band when theta N is large, and
superpolynomial decay beyond the cutoff x N = N^0.2 U.
"""

import numpy as np

from gl3twist.forms import LanglandsParams
from gl3twist.transform import GammaQuotientSpec, envelope_U, psi_k_grid
from gl3twist.window import ModulatedWindow

N = 1000.0
params = LanglandsParams(2.0, -1.0, -1.0)
spec = GammaQuotientSpec(0, params)

for theta_N in (0.0, 100.0):
    win = ModulatedWindow(N, theta_N / N)
    U = envelope_U(12.0, theta_N)
    x_cut = N**0.2 * U / N
    if theta_N == 0.0:
        xs = np.geomspace(1e-4, 1.2 * x_cut, 10)
    else:
        xs = np.geomspace(0.5, 20.0, 10)
    res = psi_k_grid(xs, spec, win, tol=1e-5)
    print(f"# theta N = {theta_N:g}, conductor = 12, cutoff x = {x_cut:.3g}")
    print(f"{'x':>12} {'|Psi_0|':>12} {'regime':>14} {'sigma':>6} {'err':>9}")
    for x, r in zip(xs, res):
        print(f"{x:12.5g} {abs(r.value):12.4e} {r.regime.value:>14} "
              f"{r.contour_sigma:6.1f} {r.quadrature_error:9.1e}")
    print()
