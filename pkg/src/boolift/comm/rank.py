"""Exact rank of integer matrices over the rationals.

Default route: eliminate modulo a prime p < 2^26 in float64 (every product
stays below 2^53, so the arithmetic is exact). The modular rank r is a lower
bound on the rational rank. For the matching upper bound the kernel basis is
lifted to rationals by rational reconstruction and checked exactly with
integer arithmetic: n - r independent integer kernel vectors prove rank <= r.
If reconstruction fails, further primes are used until their product exceeds
a Hadamard bound on the (r+1)-minors.

``method="bareiss"`` runs fraction-free elimination in Python integers.
"""
import math

import numpy as np

from .. import config, kernels
from ..errors import PreconditionError


def _is_prime(m):
    if m < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % p == 0:
            return m == p
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def primes_below(limit, count):
    out = []
    m = limit - 1
    while len(out) < count:
        if _is_prime(m):
            out.append(m)
        m -= 1
    return out


PRIMES = primes_below(1 << 26, 64)


def _dedupe(a):
    a = np.unique(a, axis=0)
    a = np.unique(a, axis=1)
    return a


def bareiss_rank(a):
    """Fraction-free elimination over Python integers."""
    m = [[int(v) for v in row] for row in np.asarray(a)]
    R = len(m)
    C = len(m[0]) if R else 0
    r = 0
    prev = 1
    for c in range(C):
        piv = next((i for i in range(r, R) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        for i in range(r + 1, R):
            row = m[i]
            f = row[c]
            for j in range(c + 1, C):
                row[j] = (pr[c] * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = pr[c]
        r += 1
        if r == R:
            break
    return r


def _rank_mod(a, p):
    r, piv, red = kernels.rref_mod(np.mod(a, p).astype(np.float64), float(p))
    return int(r), np.asarray(piv), red


def _kernel_certificate(a, p, piv, red):
    """True if every reconstructed kernel vector is an exact integer null vector."""
    R, C = a.shape
    r = piv.size
    free = np.setdiff1d(np.arange(C), piv)
    if free.size == 0:
        return True
    bound = int(math.isqrt((p - 1) // 2))
    # kernel vector for free column j: 1 at j, -red[i, j] at piv[i]
    vals = np.mod(-red[:r][:, free], p).astype(np.int64)  # (r, |free|)
    ok, nums, dens = kernels.ratrecon(vals.ravel(order="F").copy(), p, bound)
    if not ok:
        return False
    nums = nums.reshape(free.size, r)
    dens = dens.reshape(free.size, r)
    amax = int(np.abs(a).max()) if a.size else 0
    for t, j in enumerate(free):
        L = 1
        for d in dens[t]:
            L = L * int(d) // math.gcd(L, int(d))
        w = np.zeros(C, dtype=object)
        w[j] = L
        for i in range(r):
            w[piv[i]] = int(nums[t, i]) * (L // int(dens[t, i]))
        wmax = max(abs(int(v)) for v in w)
        if amax * wmax * C < (1 << 62):
            prod = a.astype(np.int64) @ w.astype(np.int64)
        else:
            prod = a.astype(object) @ w
        if np.any(prod != 0):
            return False
    return True


def _hadamard_log2(a, k):
    """log2 of the product of the k largest row norms (bounds any k x k minor)."""
    norms = np.sqrt((a.astype(np.float64) ** 2).sum(axis=1))
    top = np.sort(norms)[::-1][:k]
    top = top[top > 0]
    return float(np.log2(top).sum()) + 1.0 if top.size else 0.0


def integer_rank(a, method="modular"):
    """Exact rank over Q of a small-integer matrix."""
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise PreconditionError("rank needs a 2-d matrix")
    if a.size == 0 or not a.any():
        return 0
    a = _dedupe(a)
    if a.shape[0] > a.shape[1]:
        a = a.T.copy()
    config.check(min(a.shape), config.caps().max_rank_dim, "rank dimension")
    if method == "bareiss":
        return bareiss_rank(a)
    if method != "modular":
        raise PreconditionError(f"unknown rank method {method!r}")
    p = PRIMES[0]
    r, piv, red = _rank_mod(a, p)
    if r == min(a.shape):
        return r
    if _kernel_certificate(a, p, piv, red):
        return r
    # multi-prime fallback: rank over Q = max modular rank once the primes'
    # product exceeds every (r+1)-minor
    logprod = math.log2(p)
    for q in PRIMES[1:]:
        if logprod > _hadamard_log2(a, r + 1):
            return r
        rq, _, _ = _rank_mod(a, q)
        r = max(r, rq)
        logprod += math.log2(q)
    raise RuntimeError("ran out of primes for the rank certificate")


def matrix_rank(m, method="modular"):
    """Rank of a total CommMatrix (or a plain integer array) over the rationals."""
    from .matrix import CommMatrix
    if isinstance(m, CommMatrix):
        if not m.is_total:
            raise PreconditionError("rank needs a total matrix")
        m = m.entries
    return integer_rank(m, method)
