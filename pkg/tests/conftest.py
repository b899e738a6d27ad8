"""Shared fixtures: form providers and a synthetic GL(2) eigenvalue table.

The eigenvalue table is synthetic (lambda_p = 2 cos(2 sqrt(p)), tempered
by construction): it exercises ingestion and the Satake machinery, but it
is NOT a genuine Hecke eigenform, so identities that rely on the global
functional equation (the Voronoi check) must use real data supplied via
GL3TWIST_CUSPIDAL_DATA instead.
"""

import math

import pytest

from gl3twist.forms import (EisensteinForm, LanglandsParams, SymSquareForm,
                            ingest_gl2_table)

PRIMES_100 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
              59, 61, 67, 71, 73, 79, 83, 89, 97]


@pytest.fixture(scope="session")
def gl2_table_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "gl2_synthetic.txt"
    lines = ["# synthetic tempered eigenvalues, lambda_p = 2 cos(2 sqrt(p))",
             "R 2.75"]
    for p in PRIMES_100:
        lines.append(f"{p} {2.0 * math.cos(2.0 * math.sqrt(p)):.15f}")
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture(scope="session")
def symsquare_form(gl2_table_path):
    return SymSquareForm(ingest_gl2_table(gl2_table_path))


@pytest.fixture(scope="session")
def eis_trivial():
    return EisensteinForm(LanglandsParams(0.0, 0.0, 0.0))


@pytest.fixture(scope="session")
def eis_211():
    return EisensteinForm(LanglandsParams(2.0, -1.0, -1.0))
