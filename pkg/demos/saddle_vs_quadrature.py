"""Stationary phase against brute-force quadrature.

Sweeps tau through the saddle window of I(tau) = int w(x) e^{i theta x}
x^{i tau - 1/2} dx and prints the main term, the quadrature value, and
the scaled error |I - main| * |tau|^{3/2}, which stays bounded by a
single constant across theta N.
"""

import numpy as np

from gl3twist.window import ModulatedWindow, direct_I, saddle_I

N = 1000.0

print(f"{'thetaN':>7} {'tau':>9} {'|main|':>11} {'|quad|':>11} "
      f"{'|diff|':>10} {'C = diff*tau^1.5':>17}")
for theta_N in (20.0, 100.0, 400.0):
    win = ModulatedWindow(N, theta_N / N, sigma=-0.5)
    for frac in (1.15, 1.3, 1.5, 1.7, 1.85):
        tau = -frac * theta_N  # saddle at x0 = frac * N
        main = saddle_I(win, tau).main
        quad = direct_I(win, tau, tol=1e-10)
        diff = abs(main - quad)
        print(f"{theta_N:7.0f} {tau:9.1f} {abs(main):11.4e} {abs(quad):11.4e} "
              f"{diff:10.2e} {diff * abs(tau) ** 1.5:17.3f}")
