import random
from fractions import Fraction

import pytest

from monodromy import Matrix, SpectrumSpec, root_of_unity

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def random_root_spectrum(rng, n, q):
    """n roots of unity k/q (with repeats allowed)."""
    return SpectrumSpec([root_of_unity(Fraction(rng.randrange(q), q)) for _ in range(n)])


def random_disjoint_spectra(rng, n, p, q):
    """p pairwise distinct spectra of size n in Q(zeta_q) with empty total intersection.

    q is raised when it is too small to allow such spectra (q = 1 has only {1}).
    """
    misses = 0
    while True:
        misses += 1
        if misses % 20 == 0 and q < 12:
            q += 1
        specs = [random_root_spectrum(rng, n, q) for _ in range(p)]
        if len(set(specs)) < p:
            continue
        common = specs[0].polynomial()
        for s in specs[1:]:
            common = common.gcd(s.polynomial())
        if common.degree == 0:
            return specs


def random_matrix(rng, n, lo=-3, hi=3, zeta=None):
    """Entries from [lo, hi], optionally plus small multiples of a root of unity."""
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            x = rng.randint(lo, hi)
            if zeta is not None and rng.random() < 0.3:
                x = zeta * rng.randint(-2, 2) + x
            row.append(x)
        rows.append(row)
    return Matrix(rows)


def random_invertible(rng, n, **kw):
    while True:
        M = random_matrix(rng, n, **kw)
        if M.is_invertible():
            return M


@pytest.fixture
def rng():
    return random.Random(12345)
