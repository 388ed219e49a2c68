"""Gadget cross-completeness and the message-partition audit for f o IP_b."""
import math
from itertools import combinations

import numpy as np

from .. import config
from ..bfcore import compose, gadget_ip
from ..errors import PreconditionError
from .matrix import comm_matrix, one_way_cc_partial


def cross_complete(g):
    """rel[a1, a2]: for all bits (c1, c2) some y has g(a1, y) = c1 and g(a2, y) = c2."""
    G = g.matrix().astype(np.int64)
    A = G.shape[0]
    rel = np.zeros((A, A), bool)
    for a1 in range(A):
        codes = 2 * G[a1][None, :] + G
        for a2 in range(A):
            if a2 != a1:
                rel[a1, a2] = np.unique(codes[a2]).size == 4
    return rel


def gadget_property_check(g):
    """(ok, X): X is a set of >= 3 Alice inputs, pairwise cross-complete.

    X starts from the lexicographically least good triple and is extended
    greedily by increasing Alice input.
    """
    config.check(1 << g.alice_bits, config.caps().gadget_alice_inputs, "gadget Alice inputs")
    rel = cross_complete(g)
    A = rel.shape[0]
    for tri in combinations(range(A), 3):
        a, b, c = tri
        if rel[a, b] and rel[a, c] and rel[b, c]:
            X = list(tri)
            for v in range(c + 1, A):
                if all(rel[v, u] for u in X):
                    X.append(v)
            return True, tuple(X)
    return False, None


def _determined_by(f, I):
    """f restricted to its domain depends only on the coordinates in mask I."""
    xs = np.flatnonzero(f.domain_mask).astype(np.int64)
    keys = (xs & I) * 2 + f.table[xs].astype(np.int64)
    u = np.unique(keys)
    return not np.any(np.diff(u >> 1) == 0)


def lift_audit(f, b):
    """Audit the message-partition argument on f o IP_b.

    Builds an optimal message colouring of Alice's inputs, restricts it to
    inputs with every block nonzero, takes the heaviest colour class and the
    pair in it agreeing on the fewest blocks. The agreement set I should
    determine f on its domain.
    """
    q = (1 << b) - 1
    if q < 3:
        raise PreconditionError("the audit needs b >= 2")
    n = f.arity
    config.check(q ** n, config.caps().family_enum, "nonzero-block inputs")
    cf = compose(f, gadget_ip(b))
    m = comm_matrix(cf)
    D, colors = one_way_cc_partial(m)
    X = np.arange(1 << (n * b), dtype=np.int64)
    blocks = np.stack([(X >> (i * b)) & q for i in range(n)], axis=1)
    inZ = np.all(blocks != 0, axis=1)
    Z = X[inZ]
    zc = colors[inZ]
    labels, counts = np.unique(zc, return_counts=True)
    part_color = int(labels[np.argmax(counts)])
    part = Z[zc == part_color]
    c = D / math.log2(q)
    warnings = []
    if part.size < 2:
        pair = None
        I = (1 << n) - 1
        agree = n
        warnings.append("heaviest part has fewer than two strings; using all coordinates")
    else:
        pb = blocks[part]
        best = None
        for s in range(part.size - 1):
            ag = (pb[s + 1:] == pb[s]).sum(axis=1)
            t = int(np.argmin(ag))
            if best is None or ag[t] < best[0]:
                best = (int(ag[t]), s, s + 1 + t)
        agree, s, t = best
        pair = (int(part[s]), int(part[t]))
        I = int(sum(1 << i for i in range(n) if pb[s, i] == pb[t, i]))
    return {
        "c_messages": c,
        "oneway": int(D),
        "q": q,
        "heavy_part_size": int(part.size),
        "heavy_part_color": part_color,
        "pair": pair,
        "agreement_set": [i + 1 for i in range(n) if I >> i & 1],
        "agreement_mask": I,
        "determined": bool(_determined_by(f, I)),
        "below_10c": bool(bin(I).count("1") < 10 * c),
        "precondition_c_below_n_over_30": bool(c < n / 30),
        "warnings": warnings,
    }
