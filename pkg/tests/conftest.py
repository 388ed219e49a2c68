import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def brute_mobius(table, n):
    """Möbius coefficients by the defining alternating sum over submasks."""
    out = {}
    for S in range(1 << n):
        c = 0
        X = S
        while True:
            c += (-1) ** bin(S ^ X).count("1") * int(table[X])
            if X == 0:
                break
            X = (X - 1) & S
        if c:
            out[S] = c
    return out


def brute_patterns(table, n):
    supp = sorted(brute_mobius(table, n))
    return {tuple(int(x & s == s) for s in supp) for x in range(1 << n)}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
