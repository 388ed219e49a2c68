import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

import boolift as bl
from boolift.errors import PreconditionError
from boolift.transforms import (PLUS_MINUS, ZERO_ONE, MobiusSpectrum, inverse_mobius,
                                symmetric_mobius_weights)
from boolift.verify import corrupt_spectrum

from conftest import brute_mobius


def tables(nmax):
    return st.integers(1, nmax).flatmap(
        lambda n: st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))


def test_and_single_coefficient():
    for n in range(1, 8):
        assert bl.mobius_spectrum(bl.and_(n)).as_dict() == {(1 << n) - 1: 1}


def test_omb2_and_nor2():
    assert bl.mobius_spectrum(bl.omb(2)).as_dict() == {0b10: 1, 0b11: -1}
    s = bl.mobius_spectrum(bl.nor(2))
    assert s.as_dict() == {0: 1, 1: -1, 2: -1, 3: 1} and s.sparsity == 4


def test_sparsity_examples():
    assert bl.mobius_sparsity(bl.omb(4)) == 4
    assert bl.mobius_sparsity(bl.omb(5)) == 6
    assert bl.mobius_sparsity(bl.addr(4)) == 9
    assert bl.mobius_sparsity(bl.constant(3, 0)) == 0
    assert bl.mobius_support(bl.omb(4)).tolist() == [0b1000, 0b1100, 0b1110, 0b1111]


@given(tables(6))
def test_mobius_matches_defining_sum(t):
    n = len(t).bit_length() - 1
    f = bl.BooleanFunction(n, t)
    assert bl.mobius_spectrum(f).as_dict() == brute_mobius(t, n)


def test_reconstruction_exhaustive_small():
    for n in range(1, 5):
        for v in range(1 << (1 << n)):
            t = (v >> np.arange(1 << n)) & 1
            f = bl.BooleanFunction(n, t)
            assert np.array_equal(inverse_mobius(bl.mobius_spectrum(f).dense()), t)


@pytest.mark.parametrize("n", range(5, 13))
def test_reconstruction_random(n):
    rng = np.random.default_rng(n)
    for _ in range(1000 if n <= 9 else 100):
        t = rng.integers(0, 2, 1 << n)
        spec = bl.mobius_spectrum(bl.BooleanFunction(n, t))
        assert np.array_equal(inverse_mobius(spec.dense()), t)


def brute_fourier(t, n, conv):
    vals = [int(v) if conv == ZERO_ONE else 1 - 2 * int(v) for v in t]
    return {S: c for S in range(1 << n)
            if (c := sum(vals[x] * (-1) ** bin(S & x).count("1") for x in range(1 << n)))}


def test_fourier_examples():
    for n in range(1, 6):
        assert bl.fourier_spectrum(bl.xor(n)).as_dict() == {(1 << n) - 1: 1 << n}
    s = bl.fourier_spectrum(bl.and_(2), ZERO_ONE)
    assert s.as_dict() == {0: 1, 1: -1, 2: -1, 3: 1}


@given(tables(6), st.sampled_from([ZERO_ONE, PLUS_MINUS]))
def test_fourier_matches_oracle(t, conv):
    n = len(t).bit_length() - 1
    spec = bl.fourier_spectrum(bl.BooleanFunction(n, t), conv)
    assert spec.as_dict() == brute_fourier(t, n, conv)


@given(tables(6))
def test_fourier_inversion(t):
    n = len(t).bit_length() - 1
    spec = bl.fourier_spectrum(bl.BooleanFunction(n, t), PLUS_MINUS)
    for x in range(1 << n):
        s = sum(c * (-1) ** bin(S & x).count("1") for S, c in spec.as_dict().items())
        assert s == (1 << n) * (1 - 2 * t[x])


def test_hand_sparsities():
    for n in range(1, 5):
        full = 1 << n
        assert bl.mobius_sparsity(bl.and_(n)) == 1
        assert bl.mobius_sparsity(bl.or_(n)) == full - 1
        assert bl.mobius_sparsity(bl.xor(n)) == full - 1
        assert bl.mobius_sparsity(bl.nor(n)) == full
        assert bl.fourier_sparsity(bl.xor(n)) == 1
        expect = 1 if n == 1 else full
        for f in (bl.and_(n), bl.or_(n), bl.nor(n)):
            assert bl.fourier_sparsity(f) == expect


def test_partial_rejected():
    with pytest.raises(PreconditionError):
        bl.mobius_spectrum(bl.ombp(3))


def test_titsworth():
    assert bl.titsworth_check(bl.nor(2)) == (True, None)
    rng = np.random.default_rng(8)
    for _ in range(20):
        f = bl.BooleanFunction(8, rng.integers(0, 2, 256))
        assert bl.titsworth_check(f)[0]
    bad = corrupt_spectrum(bl.mobius_spectrum(bl.nor(2)))
    ok, W = bl.titsworth_check(bad)
    assert not ok and W is not None


def test_titsworth_rejects_nonboolean_sum():
    # coefficients of 2 * AND_2: reconstructs to a 0/2 function, so the identity fails
    spec = MobiusSpectrum(2, np.array([3]), np.array([2]))
    assert bl.titsworth_check(spec) == (False, 3)


def test_titsworth_exact_fallback():
    # huge coefficient forces the Python-int route; the identity fails at mask 1
    spec = MobiusSpectrum(1, np.array([1]), np.array([1 << 40]))
    assert bl.titsworth_check(spec) == (False, 1)


def test_symmetric_weights_match_transform():
    for n in range(1, 8):
        for vals in itertools.product((0, 1), repeat=n + 1):
            f = bl.sym(vals)
            dense = bl.transforms.mobius_dense(f)
            w = symmetric_mobius_weights(vals)
            assert all(dense[(1 << k) - 1] == w[k] for k in range(n + 1))
