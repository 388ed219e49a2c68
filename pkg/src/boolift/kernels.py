"""Hot inner loops.

Every kernel has a loop implementation (compiled by numba when enabled) and a
vectorised numpy or plain-Python implementation. The public name is bound to
one of the two at import time according to ``_accel.USE_NUMBA``.
"""
import itertools
import math

import numpy as np

from ._accel import USE_NUMBA, jit

# ---------------------------------------------------------------------------
# subset-lattice transforms (length-2^n int64 arrays, modified in place)


@jit
def _mobius_loop(a):
    size = a.shape[0]
    step = 1
    while step < size:
        for x in range(size):
            if x & step:
                a[x] -= a[x ^ step]
        step <<= 1


def _mobius_numpy(a):
    step = 1
    while step < a.shape[0]:
        v = a.reshape(-1, 2, step)
        v[:, 1, :] -= v[:, 0, :]
        step <<= 1


@jit
def _zeta_loop(a):
    size = a.shape[0]
    step = 1
    while step < size:
        for x in range(size):
            if x & step:
                a[x] += a[x ^ step]
        step <<= 1


def _zeta_numpy(a):
    step = 1
    while step < a.shape[0]:
        v = a.reshape(-1, 2, step)
        v[:, 1, :] += v[:, 0, :]
        step <<= 1


@jit
def _walsh_loop(a):
    size = a.shape[0]
    step = 1
    while step < size:
        for x in range(size):
            if x & step == 0:
                u = a[x]
                v = a[x | step]
                a[x] = u + v
                a[x | step] = u - v
        step <<= 1


def _walsh_numpy(a):
    step = 1
    while step < a.shape[0]:
        v = a.reshape(-1, 2, step)
        lo = v[:, 0, :].copy()
        v[:, 0, :] += v[:, 1, :]
        v[:, 1, :] = lo - v[:, 1, :]
        step <<= 1


@jit
def _or_closure_loop(a):
    size = a.shape[0]
    step = 1
    while step < size:
        for x in range(size):
            if x & step:
                a[x] |= a[x ^ step]
        step <<= 1


def _or_closure_numpy(a):
    step = 1
    while step < a.shape[0]:
        v = a.reshape(-1, 2, step)
        v[:, 1, :] |= v[:, 0, :]
        step <<= 1


# ---------------------------------------------------------------------------
# alternating number: longest monotone chain switch count


@jit
def _alternating_loop(table):
    size = table.shape[0]
    best = np.zeros(size, np.int64)
    for x in range(1, size):
        m = 0
        bits = x
        while bits:
            low = bits & -bits
            y = x ^ low
            v = best[y] + (1 if table[y] != table[x] else 0)
            if v > m:
                m = v
            bits ^= low
        best[x] = m
    return best[size - 1]


def _alternating_numpy(table):
    n = table.shape[0].bit_length() - 1
    t = table.astype(np.int64)
    best = np.zeros(table.shape[0], np.int64)
    idx = np.arange(table.shape[0])
    weight = np.zeros(table.shape[0], np.int64)
    for i in range(n):
        weight += (idx >> i) & 1
    for w in range(1, n + 1):
        xs = idx[weight == w]
        m = np.zeros(xs.shape[0], np.int64)
        for i in range(n):
            has = (xs >> i) & 1 == 1
            ys = xs[has] ^ (1 << i)
            cand = best[ys] + (t[ys] != t[xs[has]])
            m[has] = np.maximum(m[has], cand)
        best[xs] = m
    return best[-1]


# ---------------------------------------------------------------------------
# minimum determining family: smallest k candidate sets (given by their
# indicator bitsets over the domain) whose joint values make f constant on
# every class. Candidates are tried in index order so the first hit is the
# lexicographically least family.


@jit
def _min_family_loop(cands, one, zero, k, max_atoms):
    K, W = cands.shape
    chosen = np.full(max(k, 1), -1, np.int64)
    has_one = False
    has_zero = False
    for w in range(W):
        if one[w] != 0:
            has_one = True
        if zero[w] != 0:
            has_zero = True
    if not (has_one and has_zero):
        return True, np.zeros(0, np.int64)
    if k == 0:
        return False, np.zeros(0, np.int64)
    atoms = np.zeros((k + 1, max_atoms, W), np.uint64)
    natoms = np.zeros(k + 1, np.int64)
    pos = np.zeros(k + 1, np.int64)
    for w in range(W):
        atoms[0, 0, w] = one[w] | zero[w]
    natoms[0] = 1
    piece1 = np.zeros(W, np.uint64)
    piece0 = np.zeros(W, np.uint64)
    depth = 0
    while depth >= 0:
        c = pos[depth]
        if K - c < k - depth:
            depth -= 1
            if depth >= 0:
                pos[depth] += 1
            continue
        na = 0
        useful = False
        for a in range(natoms[depth]):
            in1 = False
            in0 = False
            p1_one = False
            p1_zero = False
            p0_one = False
            p0_zero = False
            for w in range(W):
                at = atoms[depth, a, w]
                s = cands[c, w]
                x1 = at & s
                x0 = at & ~s
                piece1[w] = x1
                piece0[w] = x0
                if x1 != 0:
                    in1 = True
                    if x1 & one[w]:
                        p1_one = True
                    if x1 & zero[w]:
                        p1_zero = True
                if x0 != 0:
                    in0 = True
                    if x0 & one[w]:
                        p0_one = True
                    if x0 & zero[w]:
                        p0_zero = True
            if in1 and in0:
                useful = True
            if p1_one and p1_zero:
                for w in range(W):
                    atoms[depth + 1, na, w] = piece1[w]
                na += 1
            if p0_one and p0_zero:
                for w in range(W):
                    atoms[depth + 1, na, w] = piece0[w]
                na += 1
        if not useful:
            pos[depth] += 1
            continue
        chosen[depth] = c
        if na == 0:
            return True, chosen[: depth + 1].copy()
        if depth + 1 == k:
            pos[depth] += 1
            continue
        natoms[depth + 1] = na
        depth += 1
        pos[depth] = c + 1
    return False, np.zeros(0, np.int64)


def _min_family_python(cands, one, zero, k, max_atoms):
    # bitsets as Python ints; same search order as the loop version
    def to_int(words):
        v = 0
        for i, w in enumerate(words):
            v |= int(w) << (64 * i)
        return v

    cs = [to_int(row) for row in cands]
    one_i, zero_i = to_int(one), to_int(zero)
    if not (one_i and zero_i):
        return True, np.zeros(0, np.int64)
    if k == 0:
        return False, np.zeros(0, np.int64)
    K = len(cs)

    def rec(atoms, start, depth, chosen):
        for c in range(start, K - (k - depth) + 1):
            s = cs[c]
            nxt = []
            useful = False
            for at in atoms:
                x1, x0 = at & s, at & ~s
                if x1 and x0:
                    useful = True
                for piece in (x1, x0):
                    if piece & one_i and piece & zero_i:
                        nxt.append(piece)
            if not useful:
                continue
            if not nxt:
                return chosen + [c]
            if depth + 1 < k:
                got = rec(nxt, c + 1, depth + 1, chosen + [c])
                if got is not None:
                    return got
        return None

    got = rec([one_i | zero_i], 0, 0, [])
    if got is None:
        return False, np.zeros(0, np.int64)
    return True, np.array(got, np.int64)


# ---------------------------------------------------------------------------
# modular elimination with float64 arithmetic (p < 2^26 keeps products exact)


@jit
def _rref_mod_loop(a, p):
    m = a.copy()
    R, C = m.shape
    pinv = 1.0 / p
    pivots = np.full(min(R, C), -1, np.int64)
    r = 0
    for c in range(C):
        if r == R:
            break
        piv = -1
        for i in range(r, R):
            if m[i, c] != 0.0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(C):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        inv = 1.0
        b = m[r, c]
        e = int(p) - 2
        while e > 0:
            if e & 1:
                v = inv * b
                inv = v - math.floor(v * pinv) * p
                if inv < 0.0:
                    inv += p
                elif inv >= p:
                    inv -= p
            v = b * b
            b = v - math.floor(v * pinv) * p
            if b < 0.0:
                b += p
            elif b >= p:
                b -= p
            e >>= 1
        for j in range(c, C):
            v = m[r, j] * inv
            v = v - math.floor(v * pinv) * p
            if v < 0.0:
                v += p
            elif v >= p:
                v -= p
            m[r, j] = v
        for i in range(R):
            if i == r:
                continue
            f = m[i, c]
            if f != 0.0:
                f = p - f
                for j in range(c, C):
                    v = m[i, j] + f * m[r, j]
                    v = v - math.floor(v * pinv) * p
                    if v < 0.0:
                        v += p
                    elif v >= p:
                        v -= p
                    m[i, j] = v
        pivots[r] = c
        r += 1
    return r, pivots[:r].copy(), m


def _rref_mod_numpy(a, p):
    m = a.copy()
    R, C = m.shape
    pivots = []
    r = 0
    for c in range(C):
        if r == R:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = float(pow(int(m[r, c]), int(p) - 2, int(p)))
        m[r] = np.mod(m[r] * inv, p)
        f = m[:, c].copy()
        f[r] = 0.0
        m -= np.outer(f, m[r])
        np.mod(m, p, out=m)
        pivots.append(c)
        r += 1
    return r, np.array(pivots, np.int64), m


@jit
def _ratrecon_loop(vals, p, bound):
    # rational reconstruction of each residue: num/den with |num|, den <= bound
    n = vals.shape[0]
    nums = np.zeros(n, np.int64)
    dens = np.zeros(n, np.int64)
    for t in range(n):
        v = vals[t]
        r0, r1 = p, v
        s0, s1 = 0, 1
        while r1 > bound:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        if s1 == 0 or abs(s1) > bound:
            return False, nums, dens
        if s1 < 0:
            nums[t] = -r1
            dens[t] = -s1
        else:
            nums[t] = r1
            dens[t] = s1
    return True, nums, dens


def _ratrecon_python(vals, p, bound):
    nums = np.zeros(len(vals), np.int64)
    dens = np.zeros(len(vals), np.int64)
    for t, v in enumerate(int(x) for x in vals):
        r0, r1, s0, s1 = p, v, 0, 1
        while r1 > bound:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        if s1 == 0 or abs(s1) > bound:
            return False, nums, dens
        nums[t], dens[t] = (-r1, -s1) if s1 < 0 else (r1, s1)
    return True, nums, dens


# ---------------------------------------------------------------------------
# separating-family check: for every i and every k-set K not containing i,
# some member X has i in X and X disjoint from K.


@jit
def _separating_loop(fam, n, k):
    for i in range(n):
        bit = np.int64(1) << i
        cnt = 0
        for t in range(fam.shape[0]):
            if fam[t] & bit:
                cnt += 1
        sub = np.empty(cnt, np.int64)
        cnt = 0
        for t in range(fam.shape[0]):
            if fam[t] & bit:
                sub[cnt] = fam[t]
                cnt += 1
        if k == 0:
            if cnt == 0:
                return i, np.int64(0)
            continue
        K = (np.int64(1) << k) - 1
        top = np.int64(1) << n
        while K < top:
            if K & bit == 0:
                ok = False
                for t in range(cnt):
                    if sub[t] & K == 0:
                        ok = True
                        break
                if not ok:
                    return i, K
            # next mask with the same popcount (Gosper)
            c = K & -K
            r = K + c
            K = (((r ^ K) >> 2) // c) | r
    return -1, np.int64(0)


def _separating_numpy(fam, n, k):
    others = np.array(
        [sum(1 << j for j in comb) for comb in itertools.combinations(range(n), k)],
        dtype=np.int64,
    )
    for i in range(n):
        bit = 1 << i
        sub = fam[(fam & bit) != 0]
        ks = others[(others & bit) == 0]
        if ks.size == 0:
            continue
        for lo in range(0, ks.size, 4096):
            chunk = ks[lo:lo + 4096]
            ok = ((chunk[:, None] & sub[None, :]) == 0).any(axis=1) if sub.size else np.zeros(chunk.size, bool)
            bad = np.flatnonzero(~ok)
            if bad.size:
                return i, np.int64(chunk[bad[0]])
    return -1, np.int64(0)


# ---------------------------------------------------------------------------
# AND patterns of many inputs over a family, packed into uint64 words


@jit
def _and_patterns_loop(xs, fam):
    N = xs.shape[0]
    w = fam.shape[0]
    W = (w + 63) // 64
    out = np.zeros((N, W), np.uint64)
    for a in range(N):
        x = xs[a]
        for t in range(w):
            if x & fam[t] == fam[t]:
                out[a, t >> 6] |= np.uint64(1) << np.uint64(t & 63)
    return out


def _and_patterns_numpy(xs, fam):
    N, w = xs.shape[0], fam.shape[0]
    W = (w + 63) // 64
    out = np.zeros((N, W), np.uint64)
    weights = np.uint64(1) << (np.arange(64, dtype=np.uint64))
    for lo in range(0, N, 2048):
        chunk = xs[lo:lo + 2048]
        hit = (chunk[:, None] & fam[None, :]) == fam[None, :]
        padded = np.zeros((chunk.size, W * 64), bool)
        padded[:, :w] = hit
        words = padded.reshape(chunk.size, W, 64)
        out[lo:lo + 2048] = (words * weights).sum(axis=2, dtype=np.uint64)
    return out


# ---------------------------------------------------------------------------
# ordered-pair union products: h[S|T] += c_S * c_T


@jit
def _union_square_loop(masks, coeffs, size):
    h = np.zeros(size, np.int64)
    s = masks.shape[0]
    for a in range(s):
        for b in range(s):
            h[masks[a] | masks[b]] += coeffs[a] * coeffs[b]
    return h


def _union_square_numpy(masks, coeffs, size):
    h = np.zeros(size, np.int64)
    for lo in range(0, masks.shape[0], 1024):
        ma = masks[lo:lo + 1024]
        ca = coeffs[lo:lo + 1024]
        np.add.at(h, (ma[:, None] | masks[None, :]).ravel(), np.outer(ca, coeffs).ravel())
    return h


# ---------------------------------------------------------------------------
# first shattered d-column set (lexicographic combination order)


@jit
def _first_shattered_loop(m, d, budget):
    R, C = m.shape
    target = 1 << d
    if d == 0:
        return np.zeros(0, np.int64), 0
    if d > C:
        return np.full(1, -1, np.int64), 0
    comb = np.arange(d)
    seen = np.zeros(target, np.int64)
    stamp = 0
    work = 0
    while True:
        stamp += 1
        cnt = 0
        for r in range(R):
            code = 0
            for t in range(d):
                code |= np.int64(m[r, comb[t]]) << t
            if seen[code] != stamp:
                seen[code] = stamp
                cnt += 1
                if cnt == target:
                    break
        work += R * d
        if cnt == target:
            return comb.copy(), work
        if work > budget:
            return np.full(1, -2, np.int64), work
        i = d - 1
        while i >= 0 and comb[i] == C - d + i:
            i -= 1
        if i < 0:
            return np.full(1, -1, np.int64), work
        comb[i] += 1
        for j in range(i + 1, d):
            comb[j] = comb[j - 1] + 1


def _first_shattered_numpy(m, d, budget):
    R, C = m.shape
    if d == 0:
        return np.zeros(0, np.int64), 0
    weights = (1 << np.arange(d)).astype(np.int64)
    work = 0
    for comb in itertools.combinations(range(C), d):
        codes = m[:, comb].astype(np.int64) @ weights
        work += R * d
        if np.unique(codes).size == (1 << d):
            return np.array(comb, np.int64), work
        if work > budget:
            return np.full(1, -2, np.int64), work
    return np.full(1, -1, np.int64), work


# ---------------------------------------------------------------------------
# d-intersecting check over a lexicographically sorted array of strings.
# Trie descent per member, pruning subtrees already agreeing on >= d places.
# Both versions need d <= n so that a row never flags itself.


@jit
def _intersect_violation_loop(rows, d):
    N, n = rows.shape
    stack_lo = np.empty(n * 64 + 64, np.int64)
    stack_hi = np.empty(n * 64 + 64, np.int64)
    stack_lv = np.empty(n * 64 + 64, np.int64)
    stack_ag = np.empty(n * 64 + 64, np.int64)
    for a in range(N):
        top = 0
        stack_lo[0] = 0
        stack_hi[0] = N
        stack_lv[0] = 0
        stack_ag[0] = 0
        top = 1
        while top > 0:
            top -= 1
            lo = stack_lo[top]
            hi = stack_hi[top]
            lv = stack_lv[top]
            ag = stack_ag[top]
            if ag >= d:
                continue
            if ag + (n - lv) < d:
                # every member below disagrees too much; self is never here
                return a, lo
            # split [lo, hi) by the symbol at level lv
            s = lo
            while s < hi:
                sym = rows[s, lv]
                # column lv is sorted inside the node: binary search the run end
                e_lo = s + 1
                e_hi = hi
                while e_lo < e_hi:
                    mid = (e_lo + e_hi) >> 1
                    if rows[mid, lv] > sym:
                        e_hi = mid
                    else:
                        e_lo = mid + 1
                e = e_lo
                if top >= stack_lo.shape[0]:
                    # grow stacks
                    grow = stack_lo.shape[0] * 2
                    nl = np.empty(grow, np.int64)
                    nh = np.empty(grow, np.int64)
                    nv = np.empty(grow, np.int64)
                    ng = np.empty(grow, np.int64)
                    nl[:top] = stack_lo[:top]
                    nh[:top] = stack_hi[:top]
                    nv[:top] = stack_lv[:top]
                    ng[:top] = stack_ag[:top]
                    stack_lo, stack_hi, stack_lv, stack_ag = nl, nh, nv, ng
                stack_lo[top] = s
                stack_hi[top] = e
                stack_lv[top] = lv + 1
                stack_ag[top] = ag + (1 if sym == rows[a, lv] else 0)
                top += 1
                s = e
    return -1, -1


def _intersect_violation_numpy(rows, d):
    N, n = rows.shape
    syms = np.unique(rows)
    onehot = np.concatenate([(rows == s) for s in syms], axis=1).astype(np.float32)
    for lo in range(0, N, 1024):
        agree = onehot[lo:lo + 1024] @ onehot.T
        bad = np.argwhere(agree < d)
        if bad.size:
            return lo + int(bad[0, 0]), int(bad[0, 1])
    return -1, -1


# ---------------------------------------------------------------------------
# bindings

if USE_NUMBA:
    mobius_inplace = _mobius_loop
    zeta_inplace = _zeta_loop
    walsh_inplace = _walsh_loop
    or_closure_inplace = _or_closure_loop
    alternating = _alternating_loop
    min_family = _min_family_loop
    rref_mod = _rref_mod_loop
    ratrecon = _ratrecon_loop
    separating_violation = _separating_loop
    and_patterns = _and_patterns_loop
    union_square = _union_square_loop
    first_shattered = _first_shattered_loop
    intersect_violation = _intersect_violation_loop
else:
    mobius_inplace = _mobius_numpy
    zeta_inplace = _zeta_numpy
    walsh_inplace = _walsh_numpy
    or_closure_inplace = _or_closure_numpy
    alternating = _alternating_numpy
    min_family = _min_family_python
    rref_mod = _rref_mod_numpy
    ratrecon = _ratrecon_python
    separating_violation = _separating_numpy
    and_patterns = _and_patterns_numpy
    union_square = _union_square_numpy
    first_shattered = _first_shattered_numpy
    intersect_violation = _intersect_violation_numpy
