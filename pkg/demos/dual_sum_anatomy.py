"""Anatomy of the dual (Voronoi) side of a twisted sum.

For S = sum A(1, n) e(n a / q) w(n) the dual side is a short sum of
coefficients against Kloosterman sums and the transform Psi_+-; this
script prints every dual term for a small modulus.  With the Eisenstein
provider the polar main terms are deliberately omitted, so the residual
measures exactly that polar contribution.
"""

import warnings

from gl3twist.forms import EisensteinForm, LanglandsParams
from gl3twist.sums import SumExperiment, SumMode, dual_sum

form = EisensteinForm(LanglandsParams(0.0, 0.0, 0.0))
N, a, q = 60.0, 1, 3

exp = SumExperiment.create(form, N, a / q, Q=float(q), mode=SumMode.SMOOTH)
print(f"# N = {N:g}, alpha = {a}/{q}, theta = {exp.approx.theta:.3g}")
with warnings.catch_warnings():
    warnings.simplefilter("ignore")  # polar-term notice, expected here
    report = dual_sum(exp, tol=1e-6)

print(f"direct sum      : {report.direct:.6f}")
print(f"dual plus       : {report.dual_plus:.6f}")
print(f"dual minus      : {report.dual_minus:.6f}")
print(f"dual terms used : {report.dual_terms_used}")
print(f"residual        : {report.residual:.6f}   (polar terms, not noise)")
