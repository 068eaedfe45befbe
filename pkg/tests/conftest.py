import math

import numpy as np
import pytest

from choimap.core import build_map


@pytest.fixture
def choi():
    return build_map(2, 1, 0)


@pytest.fixture
def reduction():
    return build_map(1, 1, 1)


@pytest.fixture
def hyperbola():
    return build_map(1, 2, 0.5)


@pytest.fixture
def same_shape():
    return build_map(1.4, 0.8, 0.8, 0.4, -0.2, -0.2)


def omega():
    """Maximally entangled vector sum_i e_i (x) e_i / sqrt(3)."""
    return np.eye(3).reshape(9) / math.sqrt(3)


def random_pure(rng, n=3):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_density(rng, n=3, rank=None):
    rank = rank or n
    G = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def saturated_edge_point(rng, k):
    """Random map with F_k = 1 exactly, found by solving for a with the plane point fixed.

    F_k grows monotonically in a once the diagonal radicand is positive, so a
    sign change is guaranteed when sqrt((b+x)(c+x)) < 1.
    """
    from scipy.optimize import brentq

    from choimap.positivity import edge_values_raw

    while True:
        b, c = rng.uniform(0.1, 1.2, 2)
        d, e = rng.uniform(-0.3, 0.3, 2)
        p = (d, e, -d - e)
        x = p[k - 1]
        if min(b, c) + min(p) <= 0.05 or (b + x) * (c + x) >= 0.8:
            continue
        # diagonal radicand of F_k uses the two coordinates other than x
        others = [p[i] for i in range(3) if i != k - 1]
        lo = 1.0 - min(others) + 1e-9
        g = lambda a: float(edge_values_raw(a, b, c, *p)[k - 1]) - 1.0
        if g(lo) >= 0:
            continue
        a = brentq(g, lo, 10.0, xtol=1e-15)
        if a - 1 + min(p) < 0.02:
            continue
        return a, b, c, p
