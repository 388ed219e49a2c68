"""Communication matrices of composed functions and one-way message counts."""
import numpy as np

from .. import config
from ..errors import PreconditionError
from ..grammar import table_to_hex
from .coloring import chromatic_number


class CommMatrix:
    """Rows indexed by Alice's input X, columns by Bob's input Y.

    ``entries`` is a uint8 array; ``defined`` is a bool array of the same shape,
    or None when every entry is defined. Undefined entries hold 0.
    """

    def __init__(self, entries, defined=None):
        e = np.ascontiguousarray(entries, dtype=np.uint8)
        if defined is not None:
            defined = np.ascontiguousarray(defined, dtype=bool)
            if defined.all():
                defined = None
            else:
                e = e * defined
        self.entries = e
        self.defined = defined

    @property
    def shape(self):
        return self.entries.shape

    @property
    def is_total(self):
        return self.defined is None

    @property
    def defined_mask(self):
        return np.ones(self.shape, bool) if self.defined is None else self.defined

    def row_hex(self):
        """Each row as big-endian hex of sum_y M[x, y] 2^y."""
        return [table_to_hex(row) for row in self.entries]

    def to_pbm(self):
        """Plain PBM text; undefined entries are written as 0."""
        R, C = self.shape
        lines = ["P1", f"{C} {R}"]
        lines += [" ".join(map(str, row)) for row in self.entries]
        return "\n".join(lines) + "\n"


def comm_matrix(cf, cap_cells=None):
    """Materialise the matrix of a ComposedFunction, in row chunks."""
    R = 1 << cf.alice_arity
    C = 1 << cf.bob_arity
    config.check(R * C, cap_cells or config.caps().max_cells, "matrix cells")
    entries = np.empty((R, C), np.uint8)
    total = cf.outer.is_total
    defined = None if total else np.empty((R, C), bool)
    Y = np.arange(C, dtype=np.int64)[None, :]
    step = max(1, (1 << 20) // C)
    table = cf.outer.table
    dom = cf.outer.domain_mask
    for lo in range(0, R, step):
        X = np.arange(lo, min(R, lo + step), dtype=np.int64)[:, None]
        z = cf.inner(X, Y)
        entries[lo:lo + step] = table[z]
        if not total:
            defined[lo:lo + step] = dom[z]
    return CommMatrix(entries, defined)


def _row_keys(a):
    packed = np.packbits(a, axis=1)
    return np.ascontiguousarray(packed).view(np.dtype((np.void, packed.shape[1]))).ravel()


def distinct_rows(m):
    """(number of distinct rows, class index of every row)."""
    a = m.entries if isinstance(m, CommMatrix) else np.asarray(m, np.uint8)
    _, inv = np.unique(_row_keys(a), return_inverse=True)
    return int(inv.max()) + 1 if inv.size else 0, inv


def ceil_log2(k):
    return 0 if k <= 1 else (int(k) - 1).bit_length()


def one_way_cc(m):
    """ceil(log2 #distinct rows) of a total matrix."""
    if not m.is_total:
        raise PreconditionError("matrix is partial; use one_way_cc_partial")
    k, _ = distinct_rows(m)
    return ceil_log2(k)


def conflict_graph(m):
    """Row classes and their conflict adjacency (as Python-int bitsets).

    Two rows conflict when some column has both entries defined and different.
    Returns (class index per row, adjacency list).
    """
    D = m.defined_mask
    E = m.entries.astype(bool)
    key = np.concatenate([_row_keys(E & D)[:, None], _row_keys(D)[:, None]], axis=1)
    key = np.ascontiguousarray(key).view(np.dtype((np.void, key.dtype.itemsize * 2))).ravel()
    _, first, inv = np.unique(key, return_index=True, return_inverse=True)
    V = first.size
    config.check(V, config.caps().max_color_classes, "row classes")
    A = (D & E)[first].astype(np.float32)
    B = (D & ~E)[first].astype(np.float32)
    conf = np.zeros((V, V), bool)
    C = A.shape[1]
    for lo in range(0, C, 1 << 16):
        a, b = A[:, lo:lo + (1 << 16)], B[:, lo:lo + (1 << 16)]
        conf |= (a @ b.T) > 0
    conf |= conf.T
    np.fill_diagonal(conf, False)
    adj = [sum(1 << int(j) for j in np.flatnonzero(conf[i])) for i in range(V)]
    return inv, adj


def one_way_cc_partial(m):
    """(ceil(log2 chi), colour of every row) for the row conflict graph."""
    inv, adj = conflict_graph(m)
    chi, colors = chromatic_number(adj)
    row_colors = np.array(colors, np.int64)[inv] if len(colors) else np.zeros(m.shape[0], np.int64)
    return ceil_log2(chi), row_colors
