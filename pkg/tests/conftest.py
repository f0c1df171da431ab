from __future__ import annotations

import pytest

import cocycle_forge as cf

# The running example: r = (0,1,2,3,4,1,2,3,3) on Z/9Z and the cocycle it
# induces.  The table is pinned independently of cocycle_from_r so that the
# construction itself is under test, not self-verifying.
GOLDEN_R_VALUES = (0, 1, 2, 3, 4, 1, 2, 3, 3)
GOLDEN_ROWS = (
    "111111111",
    "111101100",
    "111001000",
    "110000000",
    "100000000",
    "111000001",
    "110000000",
    "100000000",
    "100001000",
)

# Dihedral example of order 6 over e, a, a2, b, ab, a2b.
D3_ROWS = (
    "111111",
    "110100",
    "100000",
    "111000",
    "100000",
    "110000",
)


def int_rows(rows):
    return tuple(tuple(int(ch) for ch in row) for row in rows)


@pytest.fixture(scope="session")
def z9():
    return cf.make_cyclic(9)


@pytest.fixture(scope="session")
def golden_r(z9):
    return cf.as_semilinear(z9, cf.AdditiveNaturals(), GOLDEN_R_VALUES)


@pytest.fixture(scope="session")
def golden(z9):
    return cf.as_cocycle(int_rows(GOLDEN_ROWS), z9)


@pytest.fixture(scope="session")
def golden_ctx(golden):
    return cf.AlgebraContext(golden)


@pytest.fixture(scope="session")
def d3():
    return cf.make_dihedral(3)


@pytest.fixture(scope="session")
def d3_cocycle(d3):
    return cf.as_cocycle(int_rows(D3_ROWS), d3)


@pytest.fixture(scope="session")
def d3_ctx(d3_cocycle):
    return cf.AlgebraContext(d3_cocycle)
