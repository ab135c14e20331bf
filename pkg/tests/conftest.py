import random

import numpy as np
import pytest

from satscheme.fixtures import fixture
from satscheme.scheme_core import Scheme


@pytest.fixture(scope="session")
def f4():
    return fixture("F4")


@pytest.fixture(scope="session")
def f5():
    return fixture("F5")


@pytest.fixture(scope="session")
def g():
    return fixture("G")


@pytest.fixture(scope="session")
def gext():
    return fixture("Gext")


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger JIT compilation before any timed assertion runs."""
    from satscheme import kernels

    tiny = np.array([[1, -1], [0, 1]], dtype=np.int8)
    kernels.assignment_scan(tiny, collect=True)
    kernels.cubic_form_scan(
        2,
        np.array([0.5, -0.25]),
        np.zeros((0, 3), dtype=np.int64),
        np.zeros(0),
    )


def random_scheme(
    rng: random.Random,
    n_min=1,
    n_max=10,
    m_min=0,
    m_max=15,
    k_max=3,
    empty_row_prob=0.0,
) -> Scheme:
    n = rng.randint(n_min, n_max)
    m = rng.randint(m_min, m_max)
    rows = []
    for _ in range(m):
        if empty_row_prob and rng.random() < empty_row_prob:
            rows.append([0] * n)
            continue
        k = rng.randint(1, max(1, min(k_max, n)))
        row = [0] * n
        for c in rng.sample(range(n), k):
            row[c] = rng.choice((1, -1))
        rows.append(row)
    return Scheme.from_rows(rows, n=n)


def random_horn_scheme(rng: random.Random, n_max=10, m_max=15) -> Scheme:
    n = rng.randint(1, n_max)
    m = rng.randint(0, m_max)
    rows = []
    for _ in range(m):
        k = rng.randint(1, max(1, min(3, n)))
        cols = rng.sample(range(n), k)
        row = [0] * n
        pos_at = rng.choice(cols) if rng.random() < 0.6 else None
        for c in cols:
            row[c] = 1 if c == pos_at else -1
        rows.append(row)
    return Scheme.from_rows(rows, n=n)
