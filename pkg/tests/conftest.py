import random
from fractions import Fraction

import pytest

from omegasym import RationalMatrix, validate_form
from omegasym.poly import MultiPoly

GOLDEN_L = [[-1, 1, -1, 2], [3, 0, 4, 1], [-1, 2, 0, 2], [3, 1, 1, 1]]
GOLDEN_OMEGA = [[0, 1, 0, 2], [-1, 0, -1, 0], [0, 1, 0, 1], [-2, 0, -1, 0]]


@pytest.fixture
def golden_l():
    return RationalMatrix(GOLDEN_L)


@pytest.fixture
def golden_omega():
    return RationalMatrix(GOLDEN_OMEGA)


@pytest.fixture
def golden_form(golden_omega):
    return validate_form(golden_omega)


def xs(n):
    return [MultiPoly.var(i, n) for i in range(n)]


def quartic_field_components():
    x1, x2, x3, x4 = xs(4)
    return [
        x1 ** 2 * x3 + x1 * x2 * x4,
        x1 * x2 * x3 + x2 ** 2 * x4,
        x1 * x3 ** 2 + x2 * x3 * x4,
        x1 * x3 * x4 + x2 * x4 ** 2,
    ]


def six_dim_field_components():
    x1, x2, x3, x4, x5, x6 = xs(6)
    return [
        x1 + x3 + x5 + x1 ** 2,
        x2 + x4 + x6 + x2 * x4 * x6,
        -x3 + x5 + x3 * x5,
        3 * x4,
        -3 * x5 + x6 - x6 ** 3,
        2 * x6,
    ]


def random_poly(nvars, rng, max_degree=5, nterms=6, min_degree=1):
    terms = {}
    for _ in range(nterms):
        deg = rng.randint(min_degree, max_degree)
        e = [0] * nvars
        for _ in range(deg):
            e[rng.randrange(nvars)] += 1
        terms[tuple(e)] = Fraction(rng.randint(-5, 5), rng.choice((1, 2, 3)))
    return MultiPoly(nvars, terms)


def random_matrix(n, rng, bound=3, m=None):
    m = n if m is None else m
    return RationalMatrix([[Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 2))) for _ in range(m)]
                           for _ in range(n)])


def random_symmetric(n, rng, bound=3):
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = Fraction(rng.randint(-bound, bound), rng.choice((1, 2)))
    return RationalMatrix(rows)


@pytest.fixture
def rng():
    return random.Random(20261016)


# acceptance summary: one line per criterion, failing if any of its tests fail
_acceptance = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call" and not (call.when == "setup" and call.excinfo):
        return
    cid, title = marker.args
    ok = call.excinfo is None
    prev = _acceptance.get(cid, (title, True))
    _acceptance[cid] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_acceptance):
        title, ok = _acceptance[cid]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  [{cid:>2}] {title}")
