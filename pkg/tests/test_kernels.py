"""Loop kernels (numba-compiled when available) against their numpy twins."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from boolift import kernels as K
from boolift.querymodels import pack_bits


def arrays(nmax=8, lo=-5, hi=5):
    return st.integers(0, nmax).flatmap(
        lambda n: st.lists(st.integers(lo, hi), min_size=1 << n, max_size=1 << n))


def pair(name):
    loop = getattr(K, f"_{name}_loop")
    alt = getattr(K, f"_{name}_numpy", None) or getattr(K, f"_{name}_python")
    return loop, alt


@pytest.mark.parametrize("name", ["mobius", "zeta", "walsh", "or_closure"])
@given(vals=arrays())
def test_lattice_transforms(name, vals):
    loop, alt = pair(name)
    a = np.array(vals, np.int64)
    if name == "or_closure":
        a = np.abs(a) & (len(vals) - 1)
    b = a.copy()
    loop(a)
    alt(b)
    assert np.array_equal(a, b)


@given(arrays(lo=0, hi=1))
def test_alternating(vals):
    loop, alt = pair("alternating")
    t = np.array(vals, np.uint8)
    assert loop(t) == alt(t)


@given(st.integers(1, 4), st.data())
def test_min_family(n, data):
    loop, alt = pair("min_family")
    t = np.array(data.draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n)))
    xs = np.arange(1 << n)
    cands = np.arange(1, 1 << n)
    C = pack_bits((xs[None, :] & cands[:, None]) == cands[:, None])
    one, zero = pack_bits(t == 1), pack_bits(t == 0)
    for k in range(0, n + 1):
        f1, i1 = loop(C, one, zero, k, 1 << k)
        f2, i2 = alt(C, one, zero, k, 1 << k)
        assert f1 == f2 and list(i1) == list(i2)


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_rref_mod(R, C, data):
    loop, alt = pair("rref_mod")
    p = 67108859
    a = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=R * C, max_size=R * C)),
                 np.float64).reshape(R, C)
    r1, p1, m1 = loop(a, p)
    r2, p2, m2 = alt(a, p)
    assert r1 == r2 and list(p1) == list(p2)
    assert np.array_equal(m1[:r1], m2[:r2])


@given(st.lists(st.integers(0, 10006), min_size=1, max_size=6))
def test_ratrecon(vals):
    loop, alt = pair("ratrecon")
    v = np.array(vals, np.int64)
    ok1, n1, d1 = loop(v, 10007, 70)
    ok2, n2, d2 = alt(v, 10007, 70)
    assert ok1 == ok2
    if ok1:
        assert np.array_equal(n1, n2) and np.array_equal(d1, d2)
        assert all((a - b * int(x)) % 10007 == 0 for a, b, x in zip(n1, d1, vals))


@given(st.integers(2, 7), st.integers(1, 3), st.lists(st.integers(1, 127), max_size=10))
def test_separating(n, k, fam):
    loop, alt = pair("separating")
    k = min(k, n - 1)
    fam = np.array([m & ((1 << n) - 1) for m in fam], np.int64)
    i1, K1 = loop(fam, n, k)
    i2, K2 = alt(fam, n, k)
    assert (i1 < 0) == (i2 < 0)
    for i, Km in ((i1, K1), (i2, K2)):
        if i >= 0:
            assert bin(int(Km)).count("1") == k and not Km >> i & 1
            assert not any(S >> i & 1 and not S & Km for S in fam.tolist())


@given(st.integers(1, 30), st.integers(1, 5), st.data())
def test_and_patterns(N, s, data):
    loop, alt = pair("and_patterns")
    xs = np.array(data.draw(st.lists(st.integers(0, 255), min_size=N, max_size=N)), np.int64)
    fam = np.array(data.draw(st.lists(st.integers(0, 255), min_size=s, max_size=s)), np.int64)
    assert np.array_equal(loop(xs, fam), alt(xs, fam))


@given(st.integers(1, 5), st.data())
def test_union_square(n, data):
    loop, alt = pair("union_square")
    masks = np.array(sorted(data.draw(st.sets(st.integers(0, (1 << n) - 1), min_size=1))), np.int64)
    coeffs = np.array(data.draw(st.lists(st.integers(-9, 9), min_size=masks.size,
                                         max_size=masks.size)), np.int64)
    assert np.array_equal(loop(masks, coeffs, 1 << n), alt(masks, coeffs, 1 << n))


@given(st.integers(1, 10), st.integers(1, 6), st.integers(1, 3), st.data())
def test_first_shattered(R, C, d, data):
    loop, alt = pair("first_shattered")
    m = np.array(data.draw(st.lists(st.integers(0, 1), min_size=R * C, max_size=R * C)),
                 np.uint8).reshape(R, C)
    c1, _ = loop(m, d, 1 << 40)
    c2, _ = alt(m, d, 1 << 40)
    assert list(c1) == list(c2)


@given(st.integers(2, 4), st.integers(1, 5), st.integers(1, 5), st.data())
def test_intersect_violation(q, n, d, data):
    loop, alt = pair("intersect_violation")
    d = min(d, n)
    rows = data.draw(st.lists(st.tuples(*[st.integers(1, q)] * n), unique=True, min_size=1,
                              max_size=30))
    arr = np.array(sorted(rows), np.int8)
    a1, b1 = loop(arr, d)
    a2, b2 = alt(arr, d)
    assert (a1 < 0) == (a2 < 0)
    for a, b in ((a1, b1), (a2, b2)):
        if a >= 0:
            assert a != b and int((arr[a] == arr[b]).sum()) < d


def test_fallback_backend_subprocess():
    env = dict(os.environ, BOOLIFT_NO_NUMBA="1")
    code = ("import boolift, sys; from boolift.verify import run_suite; "
            "assert boolift.backend() == 'numpy'; "
            "rs = run_suite('fast', 0, [1, 2, 4, 7, 11]); "
            "sys.exit(0 if all(r.ok for r in rs) else 1)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         timeout=600)
    assert out.returncode == 0, out.stderr
