import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

import boolift as bl
from boolift import config
from boolift.comm import (CommMatrix, bareiss_rank, binary_entropy, ceil_log2, chromatic_number,
                          comm_matrix, conflict_graph, distinct_rows, gadget_property_check,
                          integer_rank, ip_shattering_witness, klauck_bound, lift_audit,
                          matrix_rank, one_way_cc, one_way_cc_partial, power_log3_2_at_most,
                          shattering_check, vc_dim_bruteforce, witness_rows_check)
from boolift.errors import PreconditionError


def func(t):
    return bl.BooleanFunction(len(t).bit_length() - 1, t)


def tables(lo, hi):
    return st.integers(lo, hi).flatmap(
        lambda n: st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))


def fraction_rank(a):
    m = [[Fraction(int(v)) for v in row] for row in a]
    rank, col = 0, 0
    rows, cols = len(m), len(m[0]) if m else 0
    while rank < rows and col < cols:
        piv = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rows):
            if r != rank and m[r][col] != 0:
                fac = m[r][col] / m[rank][col]
                m[r] = [x - fac * y for x, y in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


def brute_vc(a):
    a = np.asarray(a)
    R, C = a.shape
    best = 0
    for d in range(1, C + 1):
        if any(len({tuple(row[list(cols)]) for row in a}) == 1 << d
               for cols in itertools.combinations(range(C), d)):
            best = d
        else:
            break
    return best


# --- matrices ----------------------------------------------------------------

def test_matrix_examples():
    m = comm_matrix(bl.compose(bl.constant(2, 0), bl.gadget_and()))
    assert not m.entries.any() and one_way_cc(m) == 0
    m = comm_matrix(bl.compose(bl.and_(1), bl.gadget_and()))
    assert m.entries.tolist() == [[0, 0], [0, 1]]
    cf = bl.compose(bl.omb(3), bl.gadget_and())
    m = comm_matrix(cf)
    assert m.shape == (8, 8)
    assert all(m.entries[x, y] == bl.omb(3)(x & y) for x in range(8) for y in range(8))


def test_matrix_exports():
    m = comm_matrix(bl.compose(bl.and_(1), bl.gadget_and()))
    assert m.row_hex() == ["0", "2"]
    assert m.to_pbm() == "P1\n2 2\n0 0\n0 1\n"


def test_matrix_cell_cap():
    with pytest.raises(bl.CapExceeded):
        comm_matrix(bl.compose(bl.omb(5), bl.gadget_and()), cap_cells=100)


def test_oneway_examples():
    assert one_way_cc(comm_matrix(bl.compose(bl.omb(5), bl.gadget_and()))) == 3
    for n in range(1, 9):
        m = comm_matrix(bl.compose(bl.omb(n), bl.gadget_and()))
        assert one_way_cc(m) == math.ceil(math.log2(n + 1))
    with pytest.raises(PreconditionError):
        one_way_cc(comm_matrix(bl.compose(bl.ombp(2), bl.gadget_and())))


def test_ceil_log2():
    assert [ceil_log2(k) for k in range(1, 10)] == [0, 1, 2, 2, 3, 3, 3, 3, 4]


@given(tables(1, 4))
def test_oneway_is_log_pat(t):
    f = func(t)
    m = comm_matrix(bl.compose(f, bl.gadget_and()))
    rows = {tuple(r) for r in m.entries.tolist()}
    assert distinct_rows(m)[0] == len(rows)
    assert one_way_cc(m) == math.ceil(math.log2(len(rows)))
    assert one_way_cc(m) == math.ceil(math.log2(bl.pattern_complexity(f)))


# --- partial one-way cost ------------------------------------------------------

def test_partial_total_agrees():
    for f in (bl.omb(3), bl.maj(3), bl.xor(2)):
        m = comm_matrix(bl.compose(f, bl.gadget_and()))
        assert one_way_cc_partial(m)[0] == one_way_cc(m)


def test_partial_everywhere_undefined():
    m = CommMatrix(np.zeros((4, 4)), np.zeros((4, 4), bool))
    assert one_way_cc_partial(m)[0] == 0


def test_partial_ombp3_ip2():
    f = bl.ombp(3)
    m = comm_matrix(bl.compose(f, bl.gadget_ip(2)))
    k, colors = one_way_cc_partial(m)
    # oracle: the rows 0, 16, 20, ..., 44 pairwise conflict (chi >= 9), and the
    # colouring below is proper with at most 16 colours
    assert k == 4
    D, E = m.defined_mask, m.entries

    def conflict(u, v):
        both = D[u] & D[v]
        return bool(np.any(E[u][both] != E[v][both]))

    clique = [0, 16, 20, 24, 28, 32, 36, 40, 44]
    assert all(conflict(u, v) for u, v in itertools.combinations(clique, 2))
    assert len(set(colors.tolist())) <= 16
    for u, v in itertools.combinations(range(64), 2):
        if colors[u] == colors[v]:
            assert not conflict(u, v)


@given(st.integers(2, 4), st.integers(2, 4), st.data())
def test_partial_matches_brute_coloring(R, C, data):
    e = np.array(data.draw(st.lists(st.integers(0, 1), min_size=R * C, max_size=R * C))).reshape(R, C)
    d = np.array(data.draw(st.lists(st.booleans(), min_size=R * C, max_size=R * C))).reshape(R, C)
    m = CommMatrix(e, d)
    conf = [[bool(np.any((d[u] & d[v]) & (e[u] != e[v]))) for v in range(R)] for u in range(R)]
    chi = next(c for c in range(1, R + 1)
               if any(all(not conf[u][v] or col[u] != col[v] for u in range(R) for v in range(u))
                      for col in itertools.product(range(c), repeat=R)))
    assert one_way_cc_partial(m)[0] == ceil_log2(chi)


def brute_chi(adj):
    V = len(adj)
    if V == 0:
        return 0
    for c in range(1, V + 1):
        for col in itertools.product(range(c), repeat=V):
            if all(not (adj[u] >> v & 1) or col[u] != col[v] for u in range(V) for v in range(u)):
                return c


@given(st.integers(0, 7), st.data())
def test_chromatic_number(V, data):
    edges = data.draw(st.lists(st.booleans(), min_size=V * V, max_size=V * V))
    adj = [0] * V
    for u in range(V):
        for v in range(u):
            if edges[u * V + v]:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    chi, col = chromatic_number(adj)
    assert chi == brute_chi(adj)
    assert all(col[u] != col[v] for u in range(V) for v in range(V) if adj[u] >> v & 1)


def test_chromatic_known_graphs():
    # odd cycle C7 and the Petersen graph both need 3 colours
    c7 = [(1 << ((i + 1) % 7)) | (1 << ((i - 1) % 7)) for i in range(7)]
    assert chromatic_number(c7)[0] == 3
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    adj = [0] * 10
    for u, v in outer + inner + spokes:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    assert chromatic_number(adj)[0] == 3
    k6 = [((1 << 6) - 1) ^ (1 << i) for i in range(6)]
    assert chromatic_number(k6)[0] == 6


def test_conflict_graph_classes():
    m = CommMatrix([[1, 0], [1, 0], [0, 1]], [[True, False], [True, False], [True, True]])
    inv, adj = conflict_graph(m)
    assert inv[0] == inv[1] != inv[2]


# --- rank ----------------------------------------------------------------------

def test_rank_examples():
    assert matrix_rank(comm_matrix(bl.compose(bl.nor(2), bl.gadget_and()))) == 4
    assert matrix_rank(np.zeros((5, 3), np.int64)) == 0
    assert matrix_rank(comm_matrix(bl.compose(bl.omb(3), bl.gadget_and()))) == 4


@given(st.integers(1, 7), st.integers(1, 7), st.data())
def test_rank_vs_fractions(R, C, data):
    a = np.array(data.draw(st.lists(st.integers(-3, 3), min_size=R * C, max_size=R * C))).reshape(R, C)
    r = fraction_rank(a.tolist())
    assert integer_rank(a) == r
    assert integer_rank(a, method="bareiss") == r
    assert bareiss_rank(a.copy()) == r


def test_rank_large_structured():
    # Sylvester Hadamard 64x64 has full rank; its +-1 row space spans everything
    h = np.array([[1]])
    for _ in range(6):
        h = np.block([[h, h], [h, -h]])
    assert integer_rank(h) == 64
    # rank-deficient: outer products summed
    rng = np.random.default_rng(3)
    u = rng.integers(-2, 3, (80, 5))
    v = rng.integers(-2, 3, (5, 90))
    assert integer_rank(u @ v) == fraction_rank((u @ v).tolist()) == 5


@given(tables(1, 5))
def test_sparsity_equals_rank(t):
    f = func(t)
    m = comm_matrix(bl.compose(f, bl.gadget_and()))
    assert matrix_rank(m) == bl.mobius_sparsity(f)


def test_rank_cap_and_partial():
    with config.override(max_rank_dim=3):
        with pytest.raises(bl.CapExceeded):
            integer_rank(np.eye(5, dtype=np.int64))
    with pytest.raises(PreconditionError):
        matrix_rank(comm_matrix(bl.compose(bl.ombp(2), bl.gadget_and())))


# --- VC dimension ----------------------------------------------------------------

def test_vc_examples():
    assert vc_dim_bruteforce(np.ones((4, 4), np.uint8)).dim == 0
    assert vc_dim_bruteforce(np.eye(4, dtype=np.uint8)).dim == 1
    m = comm_matrix(bl.compose(bl.xor(2), bl.gadget_ip(2)))
    r = vc_dim_bruteforce(m)
    assert r.dim >= 2 and shattering_check(m, r.columns)


@given(st.integers(1, 8), st.integers(1, 6), st.data())
def test_vc_vs_brute(R, C, data):
    a = np.array(data.draw(st.lists(st.integers(0, 1), min_size=R * C, max_size=R * C)),
                 np.uint8).reshape(R, C)
    r = vc_dim_bruteforce(a)
    assert r.dim == brute_vc(a)
    assert len(r.columns) == r.dim
    if r.dim:
        assert shattering_check(CommMatrix(a), r.columns)


def test_vc_cap():
    m = comm_matrix(bl.compose(bl.xor(2), bl.gadget_ip(2)))
    r = vc_dim_bruteforce(m, cap_d=1)
    assert r.dim == 1 and r.capped


# --- shattering witness ----------------------------------------------------------

def test_witness_examples():
    for f, b, size in ((bl.xor(3), 2, 3), (bl.maj(3), 3, 6)):
        w = ip_shattering_witness(f, b)
        assert len(w.columns) == w.expected_size == size
        cf = bl.compose(f, bl.gadget_ip(b))
        assert shattering_check(cf, w.columns)
        assert witness_rows_check(f, w)
    with pytest.raises(PreconditionError, match="input 2"):
        ip_shattering_witness(bl.from_callable(2, lambda x: x & 1), 2)
    assert ip_shattering_witness(bl.xor(2), 1).columns == []


@given(tables(1, 3).filter(lambda t: bl.depends_on_all(func(t))[0]), st.integers(2, 3))
def test_witness_property(t, b):
    f = func(t)
    w = ip_shattering_witness(f, b)
    assert len(w.columns) == f.arity * (b - 1)
    assert witness_rows_check(f, w)
    m = comm_matrix(bl.compose(f, bl.gadget_ip(b)))
    assert shattering_check(m, w.columns)
    if b == 2:
        assert one_way_cc(m) >= f.arity * (b - 1)


# --- bounds ----------------------------------------------------------------------

def test_entropy_and_klauck():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0) == 0.0
    assert klauck_bound(6, 1 / 3) == pytest.approx(0.4902249956730629, abs=1e-9)
    assert klauck_bound(6, 1 / 3, entangled=True) == pytest.approx(0.4902249956730629 / 2, abs=1e-9)
    assert klauck_bound(4, 0.0) == 4.0
    with pytest.raises(PreconditionError):
        klauck_bound(3, 0.5)


def test_power_log3_2():
    # r^(log_3 2) <= d  <=>  r <= d^(log_2 3)
    assert power_log3_2_at_most(9, 4)       # 9^(log_3 2) = 4
    assert not power_log3_2_at_most(9, 3)
    assert power_log3_2_at_most(27, 8) and not power_log3_2_at_most(27, 7)
    for r in range(1, 200):
        for d in range(0, 12):
            if r == 1 or d == 0:
                continue
            expect = math.log(r) * math.log(2) <= math.log(d) * math.log(3)
            assert power_log3_2_at_most(r, d) == expect


# --- gadget property and the audit -------------------------------------------------

def test_gadget_property():
    ok, X = gadget_property_check(bl.gadget_ip(2))
    assert ok and set(X) <= {1, 2, 3} and len(X) >= 3
    assert gadget_property_check(bl.gadget_and()) == (False, None)
    ok, X = gadget_property_check(bl.gadget_addr(4))
    assert ok and len(X) >= 3


def determined_oracle(f, I):
    n = f.arity
    vals = {}
    for x in range(1 << n):
        if f.domain_mask[x]:
            key = tuple((x >> i) & 1 for i in range(n) if I >> i & 1)
            if vals.setdefault(key, f.table[x]) != f.table[x]:
                return False
    return True


@given(tables(2, 2))
def test_lift_audit_total_n2(t):
    f = func(t)
    rep = lift_audit(f, 2)
    assert rep["determined"] == determined_oracle(f, rep["agreement_mask"])
    assert rep["determined"]


def test_lift_audit_constant_and_ombp():
    rep = lift_audit(bl.constant(2, 1), 2)
    assert rep["oneway"] == 0 and rep["heavy_part_size"] == 9 and rep["determined"]
    f = bl.ombp(3)
    rep = lift_audit(f, 2)
    assert rep["oneway"] == 4 and rep["q"] == 3
    assert rep["determined"] == determined_oracle(f, rep["agreement_mask"])
    x1, x2 = rep["pair"]
    blocks = lambda x: [(x >> 2 * i) & 3 for i in range(3)]  # noqa: E731
    assert all(b for b in blocks(x1) + blocks(x2))
    agree = [i + 1 for i in range(3) if blocks(x1)[i] == blocks(x2)[i]]
    assert agree == rep["agreement_set"]
    assert rep["precondition_c_below_n_over_30"] is False
    with pytest.raises(PreconditionError):
        lift_audit(f, 1)
