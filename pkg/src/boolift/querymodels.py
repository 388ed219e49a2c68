"""Non-adaptive query complexities, the alternating number, and the sampled
AND-query plan for symmetric functions.

NAADT and NAPDT share one search: given candidate queries (each described by
the set of inputs on which it answers 1), find the fewest candidates whose
joint answers make f constant on every answer class. Candidates are tried in
order, so the first family found at the minimal size is the lexicographically
least one.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import config, kernels
from .bfcore import is_symmetric, popcount, switch_value, symmetric_spectrum
from .errors import CapExceeded, NoSmallPlan, PreconditionError
from .transforms import mobius_support


@dataclass(frozen=True)
class SetFamily:
    arity: int
    sets: tuple

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def masks(self):
        return np.array(self.sets, dtype=np.int64)

    def serialize(self):
        return [format(m, "x") for m in self.sets]


def pack_bits(b):
    """Bool array (..., N) -> uint64 words (..., ceil(N/64)); bit x sits in word x // 64."""
    b = np.asarray(b, dtype=bool)
    N = b.shape[-1]
    W = (N + 63) // 64
    padded = np.zeros(b.shape[:-1] + (W * 64,), bool)
    padded[..., :N] = b
    by = np.packbits(padded, axis=-1, bitorder="little")
    return np.ascontiguousarray(by).view("<u8").astype(np.uint64)


def _min_determining(f, cand_masks, answer, kmin, kmax):
    """Smallest k in [kmin, kmax] and candidate subset determining f, or (None, None)."""
    xs = np.arange(1 << f.arity, dtype=np.int64)
    dom = f.domain_mask
    one = pack_bits(dom & (f.table == 1))
    zero = pack_bits(dom & (f.table == 0))
    cands = np.asarray(cand_masks, dtype=np.int64)
    C = pack_bits(answer(xs[None, :], cands[:, None]))
    ndom = int(dom.sum())
    search_cap = config.caps().max_search
    for k in range(kmin, kmax + 1):
        if math.comb(len(cands), k) > search_cap:
            raise CapExceeded(f"search over C({len(cands)}, {k}) families exceeds the search cap")
        max_atoms = max(1, min(1 << k, ndom // 2))
        found, idx = kernels.min_family(C, one, zero, k, max_atoms)
        if found:
            return len(idx), [int(cands[i]) for i in idx]
    return None, None


def _and_answer(x, s):
    return (x & s) == s


def _parity_answer(x, s):
    return (np.bitwise_count(x & s) & 1).astype(bool)


def naadt_candidates(f, pruned=True):
    """Nonempty submasks of support sets (pruned) or all nonempty masks."""
    n = f.arity
    if not pruned:
        return np.arange(1, 1 << n, dtype=np.int64)
    supp = mobius_support(f)
    mark = np.zeros(1 << n, bool)
    mark[supp] = True
    # downward closure of the support: a mask is kept if some superset is marked
    a = mark.astype(np.int64)
    step = 1
    while step < a.size:
        v = a.reshape(-1, 2, step)
        v[:, 0, :] |= v[:, 1, :]
        step <<= 1
    out = np.flatnonzero(a)
    return out[out != 0].astype(np.int64)


def naadt_exact(f, pruned=True):
    """Minimum number of fixed AND queries determining f, with the least witness family."""
    f.require_total("naadt_exact")
    n = f.arity
    config.check(n, config.caps().naadt_max_arity, "naadt arity")
    spar = mobius_support(f).size
    kmin = 0 if spar <= 1 else math.ceil(math.log2(spar))
    k, sets = _min_determining(f, naadt_candidates(f, pruned), _and_answer, kmin, n)
    if k is None:
        raise RuntimeError("search exhausted below n; singletons should always determine f")
    return k, SetFamily(n, tuple(sets))


def napdt_exact(f):
    """Minimum number of fixed parity queries determining f."""
    f.require_total("napdt_exact")
    n = f.arity
    config.check(n, config.caps().napdt_max_arity, "napdt arity")
    k, sets = _min_determining(f, np.arange(1, 1 << n, dtype=np.int64), _parity_answer, 0, n)
    if k is None:
        raise RuntimeError("parity search exhausted")
    return k, SetFamily(n, tuple(sets))


def nonadaptive_dt(f):
    """Fewest variables I such that f (on its domain) is a function of x_I.

    Returns (k, mask of I); the witness is the lexicographically least
    k-subset of indices.
    """
    n = f.arity
    config.check(n, config.caps().dt_max_arity, "decision-tree arity")
    dom = f.domain_mask
    xs = np.flatnonzero(dom).astype(np.int64)
    vals = f.table[xs].astype(np.int64)
    budget = config.caps().max_search
    work = 0
    for k in range(n + 1):
        for comb in combinations(range(n), k):
            work += xs.size
            if work > budget:
                raise CapExceeded("variable-subset enumeration exceeds the search cap")
            m = sum(1 << i for i in comb)
            keys = (xs & m) * 2 + vals
            u = np.unique(keys)
            # a key class is inconsistent when both parities of the same projection appear
            if not np.any(np.diff(u >> 1) == 0):
                return k, m
    raise RuntimeError("unreachable: all variables determine f")


def alternating_number(f):
    """Most value changes along a monotone path from 0^n to 1^n."""
    f.require_total("alternating_number")
    config.check(f.arity, 22, "alternating-number arity")
    return int(kernels.alternating(np.ascontiguousarray(f.table)))


# ---------------------------------------------------------------------------
# separating families and the symmetric plan


def default_width(n, k):
    """ceil(24 e (log2 C(n, k))^2), the sufficient family size from the sampling argument."""
    L = math.log2(math.comb(n, k))
    return math.ceil(24 * math.e * L * L)


def separating_check(family, n, k):
    """(ok, violation): violation is (i, K) with i in 1..n and K a k-tuple of indices
    such that no member contains i while missing all of K."""
    fam = family.masks() if isinstance(family, SetFamily) else np.asarray(family, np.int64)
    work = n * math.comb(max(n - 1, 0), k) * max(len(fam), 1)
    config.check(work, config.caps().max_search, "separating-check work")
    i, K = kernels.separating_violation(fam.astype(np.int64), n, k)
    if i < 0:
        return True, None
    K = int(K)
    return False, (int(i) + 1, tuple(j + 1 for j in range(n) if K >> j & 1))


def separating_family(n, k, target_w=None, seed=0, max_attempts=64):
    """Sample sets with element probability 1/(2k) until the family is (n, k)-separating.

    Attempt t uses ``np.random.default_rng(seed + t)``. Repeated and empty
    sets are dropped. Returns (SetFamily, attempts used).
    """
    if not (1 <= k and 2 * k < n):
        raise PreconditionError(f"separating family needs 1 <= k < n/2, got n={n}, k={k}")
    w = default_width(n, k) if target_w is None else int(target_w)
    weights = (1 << np.arange(n)).astype(np.int64)
    for attempt in range(max_attempts):
        rng = np.random.default_rng(seed + attempt)
        draws = rng.random((w, n)) < 1.0 / (2 * k)
        masks = draws.astype(np.int64) @ weights
        _, first = np.unique(masks, return_index=True)
        masks = masks[np.sort(first)]
        masks = masks[masks != 0]
        ok, _ = separating_check(masks, n, k)
        if ok:
            return SetFamily(n, tuple(int(m) for m in masks)), attempt + 1
    raise CapExceeded(f"no separating family after {max_attempts} attempts")


@lru_cache(maxsize=32)
def _pattern_classes(n, sets):
    """Class id of every input's AND pattern over ``sets`` and a map from packed
    pattern bytes to class id."""
    fam = np.array(sets, dtype=np.int64)
    words = kernels.and_patterns(np.arange(1 << n, dtype=np.int64), fam)
    rows = np.ascontiguousarray(words).view(np.dtype((np.void, words.shape[1] * 8))).ravel()
    _, first, inv = np.unique(rows, return_index=True, return_inverse=True)
    inv.setflags(write=False)
    key_to_class = {words[i].tobytes(): c for c, i in enumerate(first)}
    return inv, key_to_class


@dataclass(frozen=True)
class SymmetricNaadtPlan:
    n: int
    k: int
    family: SetFamily
    reference_patterns: dict  # packed pattern bytes -> value
    default_value: int
    attempts: int = 1

    def serialize(self):
        return {"n": self.n, "k": self.k, "family": self.family.serialize(),
                "default_value": self.default_value,
                "reference_patterns": {p.hex(): v for p, v in self.reference_patterns.items()}}


def symmetric_naadt(f, seed=0, target_w=None, max_attempts=64):
    """Plan that evaluates a symmetric f from fixed AND queries.

    Inputs of weight >= n-k are told apart by their patterns; everything
    lighter gets the constant value f takes below weight n-k.
    """
    f.require_total("symmetric_naadt")
    if not is_symmetric(f):
        raise PreconditionError("symmetric_naadt needs a symmetric function")
    n = f.arity
    k = switch_value(f)
    if 2 * k >= n:
        raise NoSmallPlan(f"switch {k} >= n/2: no small plan; fall back to the trivial n-query basis")
    spec = symmetric_spectrum(f)
    if k == 0:
        family, attempts = SetFamily(n, ((1 << n) - 1,)), 1
    else:
        family, attempts = separating_family(n, k, target_w, seed, max_attempts)
    xs = np.arange(1 << n, dtype=np.int64)
    heavy = xs[popcount(xs) >= n - k]
    words = kernels.and_patterns(heavy, family.masks())
    ref = {}
    for x, row in zip(heavy, words):
        key = row.tobytes()
        v = int(f.table[x])
        if key in ref:
            raise RuntimeError("two heavy inputs share a pattern; the family is not separating")
        ref[key] = v
    return SymmetricNaadtPlan(n, k, family, ref, int(spec[0]), attempts)


def symmetric_naadt_eval(plan, x):
    row = kernels.and_patterns(np.array([int(x)], np.int64), plan.family.masks())[0]
    return plan.reference_patterns.get(row.tobytes(), plan.default_value)


def symmetric_naadt_eval_all(plan):
    """Plan output on every input, vectorised over pattern classes."""
    inv, key_to_class = _pattern_classes(plan.n, plan.family.sets)
    lut = np.full(len(key_to_class), plan.default_value, np.uint8)
    for key, v in plan.reference_patterns.items():
        c = key_to_class.get(key)
        if c is not None:
            lut[c] = v
    return lut[inv]
