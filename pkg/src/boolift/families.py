"""Extremal d-intersecting families of q-ary strings and the size bounds built on them.

Strings live in [q]^n with alphabet {1, ..., q}; the family B_r collects the
strings that carry the letter 1 on at least d+r of the first d+2r positions.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from . import config, kernels
from .errors import PreconditionError


@dataclass
class QaryFamily:
    q: int
    n: int
    members: np.ndarray  # (N, n) int8 in lexicographic order, letters 1..q
    descriptor: tuple = None

    def __len__(self):
        return int(self.members.shape[0])

    def lines(self):
        """Members as digit strings (letters above 9 are written in base 36)."""
        digits = "0123456789abcdefghijklmnopqrstuvwxyz"
        return ["".join(digits[v] for v in row) for row in self.members]


def _check_args(q, n, d, r):
    if min(q, n, d, r) < 0:
        raise PreconditionError("arguments must be nonnegative")
    if n < d + 2 * r:
        raise PreconditionError(f"need n >= d + 2r, got n={n}, d={d}, r={r}")


def all_strings(q, n):
    config.check(q ** n, config.caps().family_enum, "q^n strings")
    idx = np.arange(q ** n, dtype=np.int64)
    out = np.empty((idx.size, n), np.int8)
    for pos in range(n - 1, -1, -1):
        out[:, pos] = idx % q + 1
        idx //= q
    return out


def br_enumerate(q, n, d, r):
    _check_args(q, n, d, r)
    s = all_strings(q, n)
    ones = (s[:, : d + 2 * r] == 1).sum(axis=1)
    return QaryFamily(q, n, s[ones >= d + r], (q, n, d, r))


def br_size(q, n, d, r):
    """Exact |B_r| = sum_{j >= d+r} C(d+2r, j) (q-1)^(d+2r-j) q^(n-d-2r)."""
    _check_args(q, n, d, r)
    m = d + 2 * r
    return sum(comb(m, j) * (q - 1) ** (m - j) for j in range(d + r, m + 1)) * q ** (n - m)


def inter_bound(q, n, d, r):
    """C(d+2r, d+r) q^(n-d-r), the simple upper bound on |B_r|."""
    _check_args(q, n, d, r)
    return comb(d + 2 * r, d + r) * q ** (n - d - r)


def ft_radius(q, d):
    return (d - 1) // (q - 2)


def agr(q, n, d):
    """Largest d-intersecting family in [q]^n, via the B_r with r = floor((d-1)/(q-2))."""
    if q < 3 or d < 1:
        raise PreconditionError("agr needs q >= 3 and d >= 1")
    r = ft_radius(q, d)
    if n < d + 2 * r:
        raise PreconditionError(f"need n >= d + 2r = {d + 2 * r}")
    return br_size(q, n, d, r)


def intersecting_check(fam, d):
    """(ok, pair): pair is two member strings agreeing on fewer than d positions."""
    rows = fam.members if isinstance(fam, QaryFamily) else np.asarray(fam, np.int8)
    N = rows.shape[0]
    config.check(N * N, config.caps().pair_checks, "pair comparisons")
    if N == 0:
        return True, None
    if d > rows.shape[1]:
        # no two distinct strings can agree on more than n places; the kernels assume d <= n
        if N < 2:
            return True, None
        return False, (tuple(int(v) for v in rows[0]), tuple(int(v) for v in rows[1]))
    order = np.lexsort(rows.T[::-1])
    srt = np.ascontiguousarray(rows[order].astype(np.int8))
    a, b = kernels.intersect_violation(srt, d)
    if a < 0:
        return True, None
    return False, (tuple(int(v) for v in srt[a]), tuple(int(v) for v in srt[b]))


def packing_check(q, n, d):
    """agr(q, n, d)^10 < q^(10n - d), i.e. |A| < q^(n - d/10), exactly."""
    if q < 3 or d < 1 or 3 * d > n:
        raise PreconditionError("packing check needs q >= 3 and 1 <= d <= n/3")
    return agr(q, n, d) ** 10 < q ** (10 * n - d)


def _e_bounds(terms):
    """Rational lower and upper bounds on e from the first ``terms`` series terms."""
    lo = sum(Fraction(1, factorial(k)) for k in range(terms))
    return lo, lo + Fraction(2, factorial(terms))


def q_exceeds_en_over_d_squared(q, n, d):
    """Exact decision of q > (e n / d)^2."""
    terms = 12
    while True:
        lo, hi = _e_bounds(terms)
        lhs = Fraction(q * d * d)
        if lhs > hi * hi * n * n:
            return True
        if lhs <= lo * lo * n * n:
            return False
        terms += 8


def largeq_check(q, n, d):
    """agr(q, n, d)^4 < q^(4n - d), under q > (e n / d)^2."""
    if q < 3 or d < 1 or d > n:
        raise PreconditionError("largeq check needs q >= 3 and 1 <= d <= n")
    if not q_exceeds_en_over_d_squared(q, n, d):
        raise PreconditionError(f"q = {q} does not exceed (e n / d)^2")
    return agr(q, n, d) ** 4 < q ** (4 * n - d)


# (n, d, q) triples; each satisfies q > (e n / d)^2
LARGEQ_GRID = ((3, 1, 67), (3, 1, 100), (6, 2, 67), (6, 2, 200), (9, 3, 100),
               (10, 3, 83), (15, 5, 70), (20, 5, 119), (8, 2, 120), (60, 20, 67))
