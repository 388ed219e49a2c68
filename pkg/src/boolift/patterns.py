"""Möbius patterns of inputs, pattern counts, partner sets and the growth trace.

The pattern of x is the vector (AND_S(x)) over the Möbius support of f in
increasing mask order. Two inputs have the same pattern exactly when the
union of support sets below them agrees, so counting patterns reduces to
counting masks fixed by that union map (an OR-closure over the subset
lattice). A hashing route over packed pattern rows is kept as a cross-check.
"""
from dataclasses import dataclass, field

import numpy as np

from . import config, kernels
from .errors import PreconditionError
from .transforms import mobius_support

LOG6_OVER_3 = np.log2(6.0) / 3.0


def pattern_of(f, x, support=None):
    s = mobius_support(f) if support is None else support
    x = int(x)
    return ((x & s) == s).astype(np.uint8)


def closure_map(n, sets):
    """cl[x] = union of the given sets that are submasks of x."""
    cl = np.zeros(1 << n, np.int64)
    sets = np.asarray(sets, dtype=np.int64)
    cl[sets] = sets
    kernels.or_closure_inplace(cl)
    return cl


def closed_masks(n, sets):
    cl = closure_map(n, sets)
    return np.flatnonzero(cl == np.arange(1 << n)).astype(np.int64)


def _check_work(f, spar):
    caps = config.caps()
    config.check(f.arity, caps.pattern_max_arity, "pattern arity")
    config.check(max(spar, 1) << f.arity, caps.pattern_work, "pattern work (spar * 2^n)")


def pattern_complexity(f, return_patterns=False):
    """Number of distinct patterns; optionally the patterns as a (Pat, spar) array.

    Rows of the returned array are the patterns of the closed masks, in
    increasing order of those masks.
    """
    f.require_total("pattern complexity")
    supp = mobius_support(f)
    _check_work(f, supp.size)
    reps = closed_masks(f.arity, supp)
    if not return_patterns:
        return int(reps.size)
    pats = ((reps[:, None] & supp[None, :]) == supp[None, :]).astype(np.uint8)
    return int(reps.size), pats


def pattern_complexity_hashed(f):
    """Pattern count by packing every input's pattern and hashing the rows."""
    f.require_total("pattern complexity")
    supp = mobius_support(f)
    _check_work(f, supp.size)
    if supp.size == 0:
        return 1
    seen = set()
    xs = np.arange(1 << f.arity, dtype=np.int64)
    for lo in range(0, xs.size, 1 << 14):
        chunk = xs[lo:lo + (1 << 14)]
        words = kernels.and_patterns(chunk, supp)
        rows = np.ascontiguousarray(words).view(np.dtype((np.void, words.shape[1] * 8))).ravel()
        seen.update(r.tobytes() for r in np.unique(rows))
    return len(seen)


# ---------------------------------------------------------------------------
# partners


@dataclass(frozen=True)
class PartnerSet:
    pair: tuple
    partners: tuple


def partner(f, S, T, support=None):
    """Partner sets of a support pair {S, T}.

    {S u T} when that union is in the support, else the lexicographically
    least other support pair {U, V} with U u V = S u T.
    """
    supp = mobius_support(f) if support is None else np.asarray(support, np.int64)
    S, T = int(S), int(T)
    if S == T:
        raise PreconditionError("partner needs two distinct sets")
    pos = np.searchsorted(supp, [S, T])
    for m, p in zip((S, T), pos):
        if p >= supp.size or supp[p] != m:
            raise PreconditionError(f"mask {m:#x} is not in the Möbius support")
    W = S | T
    pair = (min(S, T), max(S, T))
    p = np.searchsorted(supp, W)
    if p < supp.size and supp[p] == W:
        return PartnerSet(pair, (W,))
    sub = supp[(supp & ~W) == 0]
    for a in range(sub.size):
        hits = np.flatnonzero((sub[a] | sub[a + 1:]) == W)
        for h in hits:
            U, V = int(sub[a]), int(sub[a + 1 + h])
            if (U, V) != pair:
                return PartnerSet(pair, (U, V))
    raise RuntimeError(f"no partner pair for {pair}; the input spectrum is not Boolean")


# ---------------------------------------------------------------------------
# growth trace


@dataclass
class TraceStep:
    iteration: int
    T: list
    partial_patterns: int
    extensions: int
    added: int
    bound_ok: bool
    ext_ok: bool

    def as_json(self):
        return {"iteration": self.iteration, "T_mask_list": [format(m, "x") for m in self.T],
                "partial_pattern_count": self.partial_patterns, "extensions": self.extensions}


@dataclass
class GrowthTrace:
    spar: int
    pat: int
    steps: list = field(default_factory=list)
    final_ok: bool = False

    @property
    def verdict(self):
        return self.final_ok and all(s.bound_ok and s.ext_ok for s in self.steps)


def pattern_growth_trace(f):
    """Grow T by the two least unused support sets plus their partners.

    At each step counts the partial patterns restricted to T and the largest
    number of extensions of one old partial pattern, and checks
    |P|^3 <= 6^|T|, ext^3 <= 6^(sets added) and Pat^3 <= 8 * 6^spar exactly.
    """
    f.require_total("the growth trace")
    n = f.arity
    supp = mobius_support(f)
    spar = int(supp.size)
    if spar <= 1:
        raise PreconditionError("the growth trace needs spar(f) >= 2")
    _check_work(f, spar)
    trace = GrowthTrace(spar=spar, pat=int(closed_masks(n, supp).size))
    T = set()
    prev_cl = closure_map(n, [])
    it = 0
    while len(T) <= spar - 2:
        it += 1
        unused = [int(m) for m in supp if int(m) not in T]
        S, U = unused[0], unused[1]
        ps = partner(f, S, U, supp)
        new = {S, U, *ps.partners}
        added = len(new - T)
        T |= new
        cl = closure_map(n, sorted(T))
        closed = np.flatnonzero(cl == np.arange(1 << n))
        parents = prev_cl[closed]
        ext = int(np.unique(parents, return_counts=True)[1].max())
        count = int(closed.size)
        trace.steps.append(TraceStep(
            iteration=it, T=sorted(T), partial_patterns=count, extensions=ext, added=added,
            bound_ok=count ** 3 <= 6 ** len(T), ext_ok=ext ** 3 <= 6 ** added))
        prev_cl = cl
    trace.final_ok = trace.pat ** 3 <= 8 * 6 ** spar
    return trace
