"""Exact chromatic number by saturation-ordered branch and bound.

Graphs are adjacency lists of Python-int bitsets.
"""


def _popcount(v):
    return bin(v).count("1")


def greedy_clique(adj):
    """A clique built by repeatedly taking the highest-degree compatible vertex."""
    V = len(adj)
    order = sorted(range(V), key=lambda v: (-_popcount(adj[v]), v))
    best = []
    for start in order[: min(V, 16)]:
        clique = [start]
        cand = adj[start]
        for v in order:
            if cand >> v & 1:
                clique.append(v)
                cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def dsatur_greedy(adj):
    V = len(adj)
    colors = [-1] * V
    sat = [0] * V
    deg = [_popcount(a) for a in adj]
    for _ in range(V):
        v = max((u for u in range(V) if colors[u] < 0),
                key=lambda u: (_popcount(sat[u]), deg[u], -u))
        c = 0
        while sat[v] >> c & 1:
            c += 1
        colors[v] = c
        nb = adj[v]
        while nb:
            low = nb & -nb
            sat[low.bit_length() - 1] |= 1 << c
            nb ^= low
    return (max(colors) + 1 if V else 0), colors


def chromatic_number(adj):
    """(chi, colouring) with colours 0..chi-1."""
    V = len(adj)
    if V == 0:
        return 0, []
    lb = len(greedy_clique(adj))
    ub, best_colors = dsatur_greedy(adj)
    if lb == ub:
        return ub, best_colors
    best = [ub, best_colors]
    colors = [-1] * V
    deg = [_popcount(a) for a in adj]

    def sat_of(u):
        s = 0
        nb = adj[u]
        while nb:
            low = nb & -nb
            c = colors[low.bit_length() - 1]
            if c >= 0:
                s |= 1 << c
            nb ^= low
        return s

    def rec(ncolored, used):
        if used >= best[0]:
            return
        if ncolored == V:
            best[0], best[1] = used, colors.copy()
            return
        v, vs = -1, 0
        key = None
        for u in range(V):
            if colors[u] < 0:
                s = sat_of(u)
                k = (_popcount(s), deg[u], -u)
                if key is None or k > key:
                    key, v, vs = k, u, s
        for c in range(min(used + 1, best[0] - 1)):
            if vs >> c & 1:
                continue
            colors[v] = c
            rec(ncolored + 1, max(used, c + 1))
            colors[v] = -1
            if best[0] == lb:
                return

    rec(0, 0)
    return best[0], best[1]
