"""Twisted coefficient sums: the direct sum S, its Voronoi dual side,
the reduced majorant T_k, predicted envelopes, and empirical exponent
fits over alpha sweeps.

The direct/dual pair is the end-to-end consistency check of the whole
stack: S = S_+ + S_- holds exactly for cuspidal providers, while the
Eisenstein provider omits polar terms and is only used for cancellation
experiments.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .arith import kloosterman, mod_inverse
from .diophantine import RationalApproximation, choose_Q, dirichlet_approx
from .forms import InsufficientDataError
from .transform import EPS_CLASSIFY, GammaQuotientSpec, envelope_U, psi_k_grid
from .window import ModulatedWindow, window_eval

__all__ = [
    "SumMode",
    "SumExperiment",
    "VoronoiReport",
    "ExponentFit",
    "MeanSquareReport",
    "direct_sum",
    "dual_sum",
    "T_k",
    "predicted_bound",
    "theorem_envelopes",
    "exponent_fit",
    "alpha_preset_mixed",
    "mean_square_check",
]

TWO_PI = 2.0 * math.pi


class SumMode(enum.Enum):
    SMOOTH = "smooth"   # sum A(1,n) e(n alpha) w(n) over the window support
    SHARP = "sharp"     # sum_{n <= N} A(1,n) e(n alpha)


@dataclass(frozen=True)
class SumExperiment:
    """One (form, N, alpha) cell with its Dirichlet decomposition."""

    spec: object
    N: float
    alpha: float
    Q: float
    approx: RationalApproximation
    mode: SumMode = SumMode.SMOOTH

    @classmethod
    def create(cls, spec, N: float, alpha: float, Q: float | None = None,
               mode: SumMode = SumMode.SMOOTH) -> "SumExperiment":
        if N < 1:
            raise ValueError("N must be at least 1")
        if Q is None:
            Q = choose_Q(N, spec.conductor)
        return cls(spec, float(N), float(alpha), float(Q),
                   dirichlet_approx(alpha, Q), mode)


def _compensated(terms: np.ndarray) -> complex:
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def direct_sum(exp: SumExperiment) -> complex:
    """S by direct summation in compensated arithmetic.

    Smooth mode sums A(1,n) e(n alpha) w(n) over the window support
    (N, 2N); Sharp mode sums A(1,n) e(n alpha) for n <= N.
    """
    top = math.floor(exp.N if exp.mode is SumMode.SHARP else 2.0 * exp.N)
    if top < 1:
        return 0.0 + 0.0j
    coeffs = exp.spec.series(top)
    ns = np.arange(1, top + 1)
    terms = coeffs[1:top + 1] * np.exp(TWO_PI * 1j * exp.alpha * ns)
    if exp.mode is SumMode.SMOOTH:
        terms = terms * window_eval(exp.N, ns.astype(float))
    return _compensated(terms)


@dataclass(frozen=True)
class VoronoiReport:
    direct: complex
    dual_plus: complex
    dual_minus: complex
    residual: float
    dual_terms_used: int


def _divisors(q: int) -> list[int]:
    return [d for d in range(1, q + 1) if q % d == 0]


def _dual_support(exp: SumExperiment) -> tuple[ModulatedWindow, list[tuple[int, int, float]]]:
    """Window and the (n1, n2, x) triples inside the effective-support cutoff
    x N <= N^0.2 U of the transform."""
    q = exp.approx.q
    win = ModulatedWindow(exp.N, exp.approx.theta)
    U = envelope_U(exp.spec.conductor, win.theta_N)
    xN_cap = exp.N**EPS_CLASSIFY * U
    triples = []
    for n1 in _divisors(q):
        n2_max = int(q**3 * xN_cap / (exp.N * n1 * n1))
        for n2 in range(1, n2_max + 1):
            triples.append((n1, n2, n2 * n1 * n1 / q**3))
    return win, triples


def dual_sum(exp: SumExperiment, tol: float = 1e-6) -> VoronoiReport:
    """Voronoi dual evaluation S_+ + S_- against the direct sum.

    S_pm = q sum_{n1|q} sum_{n2} A(n2,n1)/(n1 n2) S(abar, +-n2; q/n1)
    Psi_pm(n2 n1^2 / q^3), with the n2 sum truncated at the transform's
    effective-support cutoff and each transform evaluated at tolerance
    tol / terms.
    """
    if exp.mode is not SumMode.SMOOTH:
        raise ValueError("dual_sum requires Smooth mode")
    if not getattr(exp.spec, "cuspidal", False):
        warnings.warn("polar terms omitted; residual not expected to vanish")
    a, q = exp.approx.a, exp.approx.q
    win, triples = _dual_support(exp)
    nterms = len(triples)
    direct = direct_sum(exp)
    if nterms == 0:
        return VoronoiReport(direct, 0.0, 0.0, abs(direct), 0)

    spec0 = GammaQuotientSpec(0, exp.spec.params)
    spec1 = GammaQuotientSpec(1, exp.spec.params)
    xs = np.array([x for _, _, x in triples])
    per_tol = tol / nterms
    res0 = psi_k_grid(xs, spec0, win, tol=per_tol)
    res1 = psi_k_grid(xs, spec1, win, tol=per_tol)

    abar = mod_inverse(a % q if q > 1 else 0, q)
    norm = 1.0 / (2.0 * math.pi**1.5)
    plus_terms = np.empty(nterms, dtype=complex)
    minus_terms = np.empty(nterms, dtype=complex)
    for i, (n1, n2, _x) in enumerate(triples):
        coeff = exp.spec.coeff(n2, n1) / (n1 * n2)
        p0, p1 = res0[i].value, res1[i].value
        psi_plus = norm * (p0 + p1 / 1j)
        psi_minus = norm * (p0 - p1 / 1j)
        plus_terms[i] = coeff * kloosterman(abar, n2, q // n1) * psi_plus
        minus_terms[i] = coeff * kloosterman(abar, -n2, q // n1) * psi_minus
    dual_plus = q * _compensated(plus_terms)
    dual_minus = q * _compensated(minus_terms)
    residual = abs(direct - (dual_plus + dual_minus))
    return VoronoiReport(direct, dual_plus, dual_minus, residual, nterms)


def T_k(exp: SumExperiment, k: int, tol: float = 1e-6) -> float:
    """Reduced majorant q^{3/2+0.1} sum_n (|A(n,1)|/n) |Psi_k(n/q^3)|,
    truncated at the effective-support cutoff."""
    if exp.mode is not SumMode.SMOOTH:
        raise ValueError("T_k requires Smooth mode")
    q = exp.approx.q
    win = ModulatedWindow(exp.N, exp.approx.theta)
    U = envelope_U(exp.spec.conductor, win.theta_N)
    n_max = int(q**3 * exp.N**EPS_CLASSIFY * U / exp.N)
    if n_max < 1:
        return 0.0
    spec_k = GammaQuotientSpec(k, exp.spec.params)
    xs = np.arange(1, n_max + 1) / q**3
    res = psi_k_grid(xs, spec_k, win, tol=tol / n_max)
    terms = [abs(exp.spec.coeff(n, 1)) / n * abs(res[n - 1].value)
             for n in range(1, n_max + 1)]
    return q ** (1.5 + 0.1) * math.fsum(terms)


def predicted_bound(N: float, conductor: float, Q: float, thetaN: float = 0.0,
                    eps: float = 0.05) -> float:
    """(QN)^eps (Q^{3/2} c^{1/2} + N Q^{-1/2} + (N/Q)^{3/2}).

    thetaN is carried for interface symmetry with the per-regime callers;
    the envelope itself is uniform in theta.
    """
    if N <= 0 or conductor <= 0 or Q <= 0:
        raise ValueError("arguments must be positive")
    return (Q * N) ** eps * (Q**1.5 * conductor**0.5 + N * Q**-0.5 + (N / Q) ** 1.5)


def theorem_envelopes(N: float, conductor: float, eps: float = 0.05) -> tuple[float, float]:
    """(Ramanujan, unconditional) envelopes N^{3/4+eps} c^{1/4} and
    N^{3/4+eps} c^{5/12} at the balancing choice of Q."""
    base = N ** (0.75 + eps)
    return base * conductor**0.25, base * conductor ** (5.0 / 12.0)


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    N_values: tuple[float, ...]
    m_values: tuple[float, ...]
    per_alpha_slopes: dict[float, float] = field(default_factory=dict)


def exponent_fit(spec, N_list, alpha_list) -> ExponentFit:
    """Least-squares slope of log max_alpha |S(N, alpha)| against log N.

    Sharp sums; one coefficient pass at max(N_list) shared by every cell
    through cumulative partial sums.
    """
    N_list = [float(N) for N in N_list]
    if len(N_list) < 5:
        raise ValueError("need at least 5 N values")
    ratios = [N_list[i + 1] / N_list[i] for i in range(len(N_list) - 1)]
    if any(abs(r - ratios[0]) > 1e-9 * ratios[0] for r in ratios):
        raise ValueError("N_list must be geometric")
    top = int(math.floor(max(N_list)))
    coeffs = spec.series(top)
    cuts = np.array([int(math.floor(N)) for N in N_list])
    ns = np.arange(1, top + 1)

    mods = np.empty((len(alpha_list), len(N_list)))
    for i, alpha in enumerate(alpha_list):
        partial = np.cumsum(coeffs[1:top + 1] * np.exp(TWO_PI * 1j * float(alpha) * ns))
        mods[i] = np.abs(partial[cuts - 1])
    m = mods.max(axis=0)
    logN = np.log(np.array(N_list))
    slope, intercept = np.polyfit(logN, np.log(np.maximum(m, 1e-300)), 1)
    per_alpha = {
        float(alpha): float(np.polyfit(logN, np.log(np.maximum(mods[i], 1e-300)), 1)[0])
        for i, alpha in enumerate(alpha_list)
    }
    return ExponentFit(float(slope), float(intercept), tuple(N_list), tuple(m), per_alpha)


def alpha_preset_mixed(n_random: int = 100, q_max: int = 20,
                       seed: int = 1729) -> list[float]:
    """Low-q rationals (alpha = a/q, 1 <= a < q <= q_max, coprime),
    three quadratic irrationals, and seeded uniform points.

    alpha = 0 is excluded: it is the no-cancellation control case and is
    measured separately.
    """
    alphas = [a / q for q in range(2, q_max + 1)
              for a in range(1, q) if math.gcd(a, q) == 1]
    alphas += [(math.sqrt(5.0) - 1.0) / 2.0, math.sqrt(2.0) - 1.0, math.sqrt(3.0) - 1.0]
    rng = np.random.default_rng(seed)
    alphas += [float(x) for x in rng.uniform(0.0, 1.0, size=n_random)]
    return alphas


@dataclass(frozen=True)
class MeanSquareReport:
    grid_average: float
    reference: float
    relative_deviation: float
    grid_size: int


def mean_square_check(spec, N: float, oversample: int = 2) -> MeanSquareReport:
    """Average of |S(j/M)|^2 over a full-period grid against the Parseval
    reference sum w(n)^2 |A(1,n)|^2.

    The grid size M = oversample * 2N + 1 exceeds the coefficient range, so
    exponentials at distinct n are orthogonal on the grid and the two sides
    agree up to floating-point error; a larger discrepancy indicates a bug
    in the direct summation.
    """
    top = int(math.floor(2.0 * N))
    M = oversample * top + 1
    ns = np.arange(1, top + 1)
    c = spec.series(top)[1:top + 1] * window_eval(N, ns.astype(float))
    reference = float(np.sum(np.abs(c) ** 2))
    total = 0.0
    chunk = max(1, int(4e6 // max(1, top)))
    js = np.arange(M)
    for i in range(0, M, chunk):
        E = np.exp(TWO_PI * 1j * np.outer(js[i:i + chunk] / M, ns))
        total += float(np.sum(np.abs(E @ c) ** 2))
    return MeanSquareReport(total / M, reference,
                            abs(total / M - reference) / max(reference, 1e-300), M)
