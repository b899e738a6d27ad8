"""Coefficient providers: Hecke relations, duality, divisor-sum oracles,
ingestion, and envelope reports."""

import cmath
import math

import numpy as np
import pytest

from gl3twist.forms import (EisensteinForm, FileBackedForm,
                            InsufficientDataError, LanglandsParams,
                            analytic_conductor, ingest_gl2_table,
                            rankin_selberg_partial, schur_two_row,
                            short_sum_ratio, sym_square_satake)

from conftest import PRIMES_100


def test_params_normalization():
    p = LanglandsParams(-1.0, 2.0, -1.0)
    assert p.as_tuple() == (2.0, -1.0, -1.0)
    assert analytic_conductor(p) == pytest.approx(12.0)
    with pytest.raises(ValueError):
        LanglandsParams(1.0, 1.0, 1.0)


def test_triple_divisor_oracle(eis_trivial, eis_211):
    # A(1, n) for the Eisenstein provider equals the ordered factorization sum
    def oracle(form, n):
        a1, a2, a3 = form.params.as_tuple()
        total = 0.0 + 0.0j
        for d1 in range(1, n + 1):
            if n % d1:
                continue
            m = n // d1
            for d2 in range(1, m + 1):
                if m % d2:
                    continue
                d3 = m // d2
                total += cmath.exp(1j * (a1 * math.log(d1) + a2 * math.log(d2)
                                         + a3 * math.log(d3)))
        return total

    for form in (eis_trivial, eis_211):
        series = form.series(60)
        for n in range(1, 61):
            assert series[n] == pytest.approx(oracle(form, n), abs=1e-10)
            assert form.coeff(1, n) == pytest.approx(oracle(form, n), abs=1e-10)


def test_tau3_partial_sum(eis_trivial):
    # trivial parameters give the triple-divisor function; sum_{n<=10} d3(n) = 53
    assert np.sum(eis_trivial.series(10)[1:11]).real == pytest.approx(53.0, abs=1e-9)


def _providers(eis_trivial, eis_211, symsquare_form):
    table = {}
    for p in PRIMES_100:
        for m, n in [(1, 1), (1, p), (p, 1), (1, p * p), (p, p)]:
            table[(m, n)] = eis_211.coeff(m, n)
    file_form = FileBackedForm(eis_211.params, table)
    return [eis_trivial, eis_211, symsquare_form, file_form]


def test_hecke_relation_all_providers(eis_trivial, eis_211, symsquare_form):
    # A(1,p)^2 = A(1,p^2) + A(p,1) at every prime p <= 100
    for form in _providers(eis_trivial, eis_211, symsquare_form):
        for p in PRIMES_100:
            lhs = form.coeff(1, p) ** 2
            rhs = form.coeff(1, p * p) + form.coeff(p, 1)
            scale = max(1.0, abs(lhs))
            assert abs(lhs - rhs) <= 1e-12 * scale, (type(form).__name__, p)


def test_full_hecke_pieri(eis_211, symsquare_form):
    # A(1,p) A(m,n) = A(m,np) + [p|n] A(mp, n/p) + [p|m] A(m/p, n)
    for form in (eis_211, symsquare_form):
        for p in (2, 3, 5):
            for m, n in [(1, 1), (p, 1), (1, p), (p, p), (4, 9), (p * p, p)]:
                lhs = form.coeff(1, p) * form.coeff(m, n)
                rhs = form.coeff(m, n * p)
                if n % p == 0:
                    rhs += form.coeff(m * p, n // p)
                if m % p == 0:
                    rhs += form.coeff(m // p, n)
                assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


def test_duality_and_multiplicativity(eis_211, symsquare_form):
    for form in (eis_211, symsquare_form):
        # dual coefficient is the complex conjugate
        for m, n in [(1, 2), (2, 3), (4, 1), (2, 9), (6, 5)]:
            assert form.coeff(n, m) == pytest.approx(np.conj(form.coeff(m, n)), abs=1e-10)
        # multiplicative across coprime pairs
        assert form.coeff(1, 6) == pytest.approx(form.coeff(1, 2) * form.coeff(1, 3), abs=1e-10)
        assert form.coeff(6, 35) == pytest.approx(
            form.coeff(2, 5) * form.coeff(3, 7), abs=1e-10)


def test_series_matches_coeff(eis_211, symsquare_form):
    for form in (eis_211, symsquare_form):
        series = form.series(100)
        for n in (1, 2, 17, 64, 99, 100):
            assert series[n] == pytest.approx(form.coeff(1, n), abs=1e-10)


def test_schur_basics():
    betas = (1.0 + 0.0j, 1.0 + 0.0j, 1.0 + 0.0j)
    # dimension of the (2,1,0) representation of GL(3) is 8
    assert schur_two_row(2, 1, betas) == pytest.approx(8.0)
    assert schur_two_row(1, 0, betas) == pytest.approx(3.0)
    assert schur_two_row(0, 0, betas) == pytest.approx(1.0)
    assert schur_two_row(1, 2, betas) == 0.0


def test_sym_square_satake():
    loc = sym_square_satake(2.0, 2)  # lambda = 2 -> alpha = 1
    assert loc.betas() == pytest.approx((1.0, 1.0, 1.0))
    loc = sym_square_satake(0.5, 3)
    assert all(abs(abs(b) - 1.0) < 1e-12 for b in loc.betas())
    # A(1, p) for the lift is lambda^2 - 1
    assert sum(loc.betas()) == pytest.approx(0.5**2 - 1.0, abs=1e-12)


def test_symsquare_lift_coeff(symsquare_form):
    for p in (2, 3, 5, 7):
        lam = symsquare_form.table.entries[p]
        assert symsquare_form.coeff(1, p) == pytest.approx(lam * lam - 1.0, abs=1e-12)
    with pytest.raises(InsufficientDataError):
        symsquare_form.coeff(1, 101)


def test_file_backed_raises(eis_211):
    form = FileBackedForm(eis_211.params, {(1, 1): 1.0 + 0.0j})
    assert form.coeff(1, 1) == 1.0
    with pytest.raises(InsufficientDataError):
        form.coeff(1, 2)
    with pytest.raises(InsufficientDataError):
        form.series(2)


def test_ingest_round_trip(gl2_table_path):
    table = ingest_gl2_table(gl2_table_path)
    assert table.r == pytest.approx(2.75)
    assert set(table.entries) == set(PRIMES_100)
    assert table.flagged == ()


def test_ingest_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("R 1.0\n4 0.5\n")
    with pytest.raises(ValueError, match="not prime"):
        ingest_gl2_table(bad)
    bad.write_text("2 0.5\n")
    with pytest.raises(ValueError, match="header"):
        ingest_gl2_table(bad)
    bad.write_text("R 1.0\n2 0.5\n2 0.7\n")
    with pytest.raises(ValueError, match="duplicate"):
        ingest_gl2_table(bad)
    bad.write_text("R 1.0\n2 0.5\n5 0.7\n")
    with pytest.raises(ValueError, match="missing primes"):
        ingest_gl2_table(bad)
    bad.write_text("R 1.0\n2 0.5\n3 2.5\n")
    table = ingest_gl2_table(bad)
    assert table.flagged == (3,)  # beyond the tempered bound: flagged, kept


def test_short_sum_and_rankin(eis_trivial):
    res = short_sum_ratio(eis_trivial, 100.0, 50.0)
    assert res.value > 0
    assert res.envelope_unconditional == pytest.approx(
        math.sqrt(0.5) * 100.0**0.1, rel=1e-12)
    # Rankin-Selberg partial sums grow, slowly
    r1 = rankin_selberg_partial(eis_trivial, 100.0)
    r2 = rankin_selberg_partial(eis_trivial, 1000.0)
    assert 0 < r1 < r2 < 50.0 * r1
