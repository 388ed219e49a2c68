"""VC dimension of communication matrices and the inner-product shattering witness."""
from dataclasses import dataclass

import numpy as np

from .. import config, kernels
from ..bfcore import ComposedFunction, compose, depends_on_all, gadget_ip
from ..errors import PreconditionError
from .matrix import CommMatrix


@dataclass
class VCResult:
    dim: int
    columns: tuple
    capped: bool


def vc_dim_bruteforce(m, cap_d=None, budget=None):
    """Largest d (up to cap_d) with a shattered set of d columns.

    Shattering is closed under taking subsets, so d is searched upwards and
    each level returns the lexicographically least shattered column set.
    """
    a = m.entries if isinstance(m, CommMatrix) else np.asarray(m, np.uint8)
    if isinstance(m, CommMatrix) and not m.is_total:
        raise PreconditionError("VC dimension needs a total matrix")
    budget = config.caps().max_search if budget is None else budget
    # identical columns never help beyond d = 1; keep first occurrences
    _, first = np.unique(a.T, axis=0, return_index=True)
    cols = np.sort(first)
    a = np.ascontiguousarray(np.unique(a[:, cols], axis=0))
    R, C = a.shape
    limit = min(C, (R.bit_length() - 1) if R else 0)
    if cap_d is not None:
        limit = min(limit, cap_d)
    best = ()
    d = 0
    work = 0
    while d < limit:
        got, w = kernels.first_shattered(a, d + 1, budget - work)
        work += int(w)
        if got.size == 1 and got[0] == -2:
            return VCResult(d, best, True)
        if got.size == 1 and got[0] == -1:
            return VCResult(d, best, False)
        d += 1
        best = tuple(int(cols[c]) for c in got)
    capped = cap_d is not None and d == cap_d and d < min(C, R.bit_length() - 1)
    return VCResult(d, best, capped)


def shattering_check(m, columns):
    """Every 0/1 pattern on ``columns`` occurs in some row.

    ``m`` is a CommMatrix or a ComposedFunction (evaluated on those columns only).
    """
    cols = np.asarray(columns, dtype=np.int64)
    d = cols.size
    if d == 0:
        return True
    if isinstance(m, ComposedFunction):
        X = np.arange(1 << m.alice_arity, dtype=np.int64)[:, None]
        sub = m.values(X, cols[None, :])
    else:
        sub = m.entries[:, cols]
    codes = sub.astype(np.int64) @ (1 << np.arange(d, dtype=np.int64))
    return np.unique(codes).size == (1 << d)


@dataclass
class ShatterWitness:
    n: int
    b: int
    columns: list        # Bob inputs y^(i,j), ordered by (i, j)
    index: list          # (i, j) for each column, 1-based
    pairs: list          # (z0, z1, v_i) per coordinate i
    expected_size: int

    def row_for(self, c):
        """Alice input realising pattern c (bit t of c is the target on column t)."""
        x = 0
        t = 0
        for i in range(self.n):
            v = self.pairs[i][2]
            block = 1
            for j in range(2, self.b + 1):
                block |= (((c >> t) & 1) ^ v) << (j - 1)
                t += 1
            x |= block << (i * self.b)
        return x


def ip_shattering_witness(f, b):
    """Column set of size n(b-1) in the matrix of f o IP_b shattered by explicit rows.

    For coordinate i take the sensitive pair z0, z1 (differing at i) and
    v = f(z0). Column y^(i,j) carries bit 0 = z0_k in every block k != i and
    a single 1 at position j of block i.
    """
    f.require_total("the shattering witness")
    ok, wit = depends_on_all(f)
    if not ok:
        i = next(i for i, w in enumerate(wit) if w is None)
        raise PreconditionError(f"function does not depend on input {i + 1}")
    n = f.arity
    if b < 1:
        raise PreconditionError("block size must be at least 1")
    pairs = [(z0, z1, int(f.table[z0])) for z0, z1 in wit]
    cols, index = [], []
    if b >= 2:
        config.check(n * (b - 1), 24, "shattered set size")
        for i in range(n):
            z0 = pairs[i][0]
            for j in range(2, b + 1):
                y = 0
                for k in range(n):
                    if k != i:
                        y |= ((z0 >> k) & 1) << (k * b)
                y |= 1 << (i * b + j - 1)
                cols.append(y)
                index.append((i + 1, j))
    return ShatterWitness(n, b, cols, index, pairs, n * (b - 1))


def witness_rows_check(f, w):
    """Evaluate f o IP_b on the constructed rows: row_for(c) must show pattern c."""
    if not w.columns:
        return True
    cf = compose(f, gadget_ip(w.b))
    d = len(w.columns)
    cs = np.arange(1 << d, dtype=np.int64)
    X = np.array([w.row_for(int(c)) for c in cs], np.int64)[:, None]
    vals = cf.values(X, np.array(w.columns, np.int64)[None, :]).astype(np.int64)
    got = vals @ (1 << np.arange(d, dtype=np.int64))
    return bool(np.array_equal(got, cs))
