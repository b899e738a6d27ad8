"""GL(3) Fourier coefficients A(m, n) for several form families.

Coefficients are generated from local Satake parameters through Schur
polynomials, which makes Hecke multiplicativity and the rank-3 Hecke
relations hold by construction.  Three providers are available:

* Eisenstein: minimal-parabolic Eisenstein data with Satake parameters
  p^{i a_j}; A(1, n) equals the ordered triple-divisor sum
  sum_{d1 d2 d3 = n} d1^{i a1} d2^{i a2} d3^{i a3}.
* Symmetric square: lift of a GL(2) Hecke eigenform given by a table of
  real eigenvalues lambda_p.
* File backed: a finite table of (m, n) -> A(m, n) values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "InsufficientDataError",
    "LanglandsParams",
    "SatakeLocal",
    "GL2EigenvalueTable",
    "analytic_conductor",
    "sym_square_satake",
    "schur_two_row",
    "EisensteinForm",
    "SymSquareForm",
    "FileBackedForm",
    "ShortSumResult",
    "short_sum_ratio",
    "rankin_selberg_partial",
    "ingest_gl2_table",
]


class InsufficientDataError(Exception):
    """Raised when a coefficient request falls outside the provider's data."""


@dataclass(frozen=True)
class LanglandsParams:
    """Imaginary parts (a1, a2, a3) of tempered spectral parameters i*a_j.

    Stored sorted so |a1| >= |a2| >= |a3|; the triple must sum to zero.
    """

    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        vals = (self.a1, self.a2, self.a3)
        scale = max(1.0, *(abs(a) for a in vals))
        if abs(sum(vals)) > 1e-9 * scale:
            raise ValueError(f"spectral parameters must sum to zero, got {vals}")
        ordered = sorted(vals, key=abs, reverse=True)
        object.__setattr__(self, "a1", ordered[0])
        object.__setattr__(self, "a2", ordered[1])
        object.__setattr__(self, "a3", ordered[2])

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a1, self.a2, self.a3)


def analytic_conductor(params: LanglandsParams) -> float:
    """prod_j (1 + |a_j|), always >= 1."""
    return math.prod(1.0 + abs(a) for a in params.as_tuple())


@dataclass(frozen=True)
class SatakeLocal:
    """Satake parameters (beta1, beta2, beta3) at a prime p.

    Trivial central character forces beta1*beta2*beta3 = 1; tempered
    providers have all |beta_j| = 1.
    """

    p: int
    beta1: complex
    beta2: complex
    beta3: complex

    def __post_init__(self):
        prod = self.beta1 * self.beta2 * self.beta3
        if abs(prod - 1.0) > 1e-8:
            raise ValueError(f"Satake parameters at p={self.p} have product {prod}, expected 1")

    def betas(self) -> tuple[complex, complex, complex]:
        return (self.beta1, self.beta2, self.beta3)


def sym_square_satake(lambda_p: float | complex, p: int = 2) -> SatakeLocal:
    """Local symmetric-square parameters (alpha^2, 1, alpha^-2).

    alpha solves alpha + 1/alpha = lambda_p; the branch with |alpha| >= 1
    (principal square root) is taken, which keeps conjugate inputs
    conjugate outputs.
    """
    lam = complex(lambda_p)
    disc = cmath.sqrt(lam * lam - 4.0)
    alpha = (lam + disc) / 2.0
    if abs(alpha) < 1.0:
        alpha = (lam - disc) / 2.0
    return SatakeLocal(p, alpha**2, 1.0 + 0.0j, alpha**-2)


def _complete_homogeneous(e1: complex, e2: complex, e3: complex, kmax: int) -> list[complex]:
    """h_0..h_kmax in three variables from the elementary symmetric functions."""
    h = [1.0 + 0.0j] * (kmax + 1)
    for k in range(1, kmax + 1):
        val = e1 * h[k - 1]
        if k >= 2:
            val -= e2 * h[k - 2]
        if k >= 3:
            val += e3 * h[k - 3]
        h[k] = val
    return h


def schur_two_row(l1: int, l2: int, betas: tuple[complex, complex, complex]) -> complex:
    """Schur polynomial s_{(l1, l2, 0)} at three Satake parameters.

    Evaluated through the Jacobi-Trudi determinant
    s = h_{l1} h_{l2} - h_{l1+1} h_{l2-1}, which stays stable when the
    parameters collide (the bialternant form does not).
    """
    if l2 < 0 or l1 < l2:
        return 0.0 + 0.0j
    e1 = betas[0] + betas[1] + betas[2]
    e2 = betas[0] * betas[1] + betas[0] * betas[2] + betas[1] * betas[2]
    e3 = betas[0] * betas[1] * betas[2]
    h = _complete_homogeneous(e1, e2, e3, l1 + 1)
    second = h[l1 + 1] * h[l2 - 1] if l2 >= 1 else 0.0
    return h[l1] * h[l2] - second


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class _SatakeForm:
    """Shared machinery for providers defined by local Satake data.

    Immutable after construction; the A(1, n) cache is populated once and
    then only read, so instances are safe to share across workers.
    """

    params: LanglandsParams

    def __init__(self, params: LanglandsParams):
        self.params = params
        self.conductor = analytic_conductor(params)
        self._series_cache: np.ndarray | None = None

    def satake_at(self, p: int) -> SatakeLocal:
        raise NotImplementedError

    def coeff(self, m: int, n: int) -> complex:
        """A(m, n), multiplicative over coprime prime contributions.

        At p with exponents (k1, k2) in (m, n) the local factor is the
        Schur polynomial of shape (k1 + k2, k1, 0); this is the convention
        under which A(1, p) is the trace beta1 + beta2 + beta3.
        """
        if m < 1 or n < 1:
            raise ValueError("coefficient indices must be positive")
        fm = _factorize(m)
        fn = _factorize(n)
        val = 1.0 + 0.0j
        for p in sorted(set(fm) | set(fn)):
            k1 = fm.get(p, 0)
            k2 = fn.get(p, 0)
            val *= schur_two_row(k1 + k2, k1, self.satake_at(p).betas())
        return val

    def series(self, nmax: int) -> np.ndarray:
        """A(1, n) for n = 0..nmax (index 0 unused) as a cached array."""
        if self._series_cache is not None and len(self._series_cache) > nmax:
            return self._series_cache
        nmax = int(nmax)
        spf = np.zeros(nmax + 1, dtype=np.int64)
        for p in range(2, nmax + 1):
            if spf[p] == 0:
                spf[p::p] = np.where(spf[p::p] == 0, p, spf[p::p])
        out = np.zeros(nmax + 1, dtype=complex)
        out[1] = 1.0
        hcache: dict[int, list[complex]] = {}
        for n in range(2, nmax + 1):
            p = int(spf[n])
            e = 0
            rest = n
            while rest % p == 0:
                rest //= p
                e += 1
            h = hcache.get(p)
            if h is None or len(h) <= e:
                kmax = int(math.log(nmax, p)) + 1
                betas = self.satake_at(p).betas()
                e1 = betas[0] + betas[1] + betas[2]
                e2 = betas[0] * betas[1] + betas[0] * betas[2] + betas[1] * betas[2]
                e3 = betas[0] * betas[1] * betas[2]
                h = _complete_homogeneous(e1, e2, e3, kmax)
                hcache[p] = h
            out[n] = out[rest] * h[e]
        self._series_cache = out
        return out


class EisensteinForm(_SatakeForm):
    """Minimal-parabolic Eisenstein coefficients for tempered (a1, a2, a3).

    Exact closed-form coefficients for every (m, n); the L-function has
    poles, so this provider is excluded from Voronoi-identity checks.
    """

    cuspidal = False

    def __init__(self, params: LanglandsParams):
        super().__init__(params)
        self._local: dict[int, SatakeLocal] = {}

    def satake_at(self, p: int) -> SatakeLocal:
        loc = self._local.get(p)
        if loc is None:
            betas = [cmath.exp(1j * a * math.log(p)) for a in self.params.as_tuple()]
            # renormalize the product to exactly 1 against rounding drift
            prod = betas[0] * betas[1] * betas[2]
            betas[2] /= prod
            loc = SatakeLocal(p, *betas)
            self._local[p] = loc
        return loc


@dataclass(frozen=True)
class GL2EigenvalueTable:
    """Spectral parameter r (eigenvalue 1/4 + r^2) and Hecke data lambda_p."""

    r: float
    entries: dict[int, float]
    flagged: tuple[int, ...] = ()  # primes with |lambda_p| > 2 + tol, kept but reported


class SymSquareForm(_SatakeForm):
    """Symmetric-square lift built from a GL(2) eigenvalue table."""

    cuspidal = True

    def __init__(self, table: GL2EigenvalueTable):
        super().__init__(LanglandsParams(2.0 * table.r, 0.0, -2.0 * table.r))
        self.table = table
        self._local: dict[int, SatakeLocal] = {}

    def satake_at(self, p: int) -> SatakeLocal:
        loc = self._local.get(p)
        if loc is None:
            lam = self.table.entries.get(p)
            if lam is None:
                raise InsufficientDataError(f"no GL(2) eigenvalue for prime {p}")
            loc = sym_square_satake(lam, p)
            self._local[p] = loc
        return loc


class FileBackedForm:
    """Finite coefficient table; out-of-range requests raise, never return 0."""

    cuspidal = True

    def __init__(self, params: LanglandsParams, table: dict[tuple[int, int], complex]):
        self.params = params
        self.conductor = analytic_conductor(params)
        self.table = dict(table)

    def coeff(self, m: int, n: int) -> complex:
        try:
            return self.table[(m, n)]
        except KeyError:
            raise InsufficientDataError(f"insufficient data: A({m},{n}) not in table") from None

    def series(self, nmax: int) -> np.ndarray:
        out = np.zeros(nmax + 1, dtype=complex)
        out[1:] = [self.coeff(1, n) for n in range(1, nmax + 1)]
        return out


@dataclass(frozen=True)
class ShortSumResult:
    value: float
    envelope_unconditional: float  # (B/A)^{1/2} (A*conductor)^eps
    envelope_ramanujan: float      # (B/A)^{1}   (A*conductor)^eps
    eps: float = 0.1


def short_sum_ratio(form, A: float, B: float, eps: float = 0.1) -> ShortSumResult:
    """sum_{A <= n <= A+B} |A(1, n)|/n against the two reference envelopes."""
    if not (A >= B > 0 or (B == 0 and A > 0)):
        raise ValueError("need A >= B > 0 (or B = 0)")
    lo = math.ceil(A)
    hi = math.floor(A + B)
    if lo > hi:
        value = 0.0
    else:
        coeffs = form.series(hi)
        ns = np.arange(lo, hi + 1)
        value = float(np.sum(np.abs(coeffs[lo : hi + 1]) / ns))
    ratio = B / A if B > 0 else 1.0 / A
    base = (A * form.conductor) ** eps
    return ShortSumResult(value, math.sqrt(ratio) * base, ratio * base, eps)


def rankin_selberg_partial(form, X: float) -> float:
    """sum_{n <= X} |A(1, n)|^2 / n, the logarithmic-growth mean square."""
    top = math.floor(X)
    if top < 1:
        raise ValueError("X must be at least 1")
    coeffs = form.series(top)
    ns = np.arange(1, top + 1)
    return float(np.sum(np.abs(coeffs[1 : top + 1]) ** 2 / ns))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def ingest_gl2_table(source: str | Path, flag_tol: float = 1e-6) -> GL2EigenvalueTable:
    """Parse a GL(2) eigenvalue file.

    Format: first data line "R <decimal>", then "<prime> <lambda_p>" with
    ascending primes; '#' starts a comment.  Entries with |lambda_p| above
    the tempered bound are flagged, not rejected.
    """
    text = Path(source).read_text()
    r: float | None = None
    entries: dict[int, float] = {}
    flagged: list[int] = []
    last_p = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if r is None:
            if len(parts) != 2 or parts[0] != "R":
                raise ValueError(f"line {lineno}: expected header 'R <decimal>', got {raw!r}")
            r = float(parts[1])
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: malformed entry {raw!r}")
        p = int(parts[0])
        lam = float(parts[1])
        if not _is_prime(p):
            raise ValueError(f"line {lineno}: {p} is not prime")
        if p in entries:
            raise ValueError(f"line {lineno}: duplicate entry for prime {p}")
        if p < last_p:
            raise ValueError(f"line {lineno}: primes must be ascending")
        last_p = p
        entries[p] = lam
        if abs(lam) > 2.0 + flag_tol:
            flagged.append(p)
    if r is None:
        raise ValueError("missing 'R <decimal>' header line")
    if not entries:
        raise ValueError("no eigenvalue entries")
    missing = [p for p in range(2, last_p + 1) if _is_prime(p) and p not in entries]
    if missing:
        raise ValueError(f"missing primes up to declared bound: {missing}")
    return GL2EigenvalueTable(r, entries, tuple(flagged))
