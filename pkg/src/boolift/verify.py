"""Desk-scale verification suite shared by the CLI and the test-suite.

Each check takes (level, seed) and returns (ok, detail). ``level="full"``
runs the complete populations; ``level="fast"`` shrinks the random samples
and the largest exhaustive sweeps so the suite finishes in a few seconds.
"""
import math
import time
from dataclasses import dataclass

import numpy as np

from . import bfcore as bf
from .comm import (ceil_log2, comm_matrix, ip_shattering_witness, matrix_rank, one_way_cc,
                   power_log3_2_at_most, shattering_check, witness_rows_check)
from .families import (LARGEQ_GRID, agr, br_enumerate, br_size, inter_bound,
                       intersecting_check, largeq_check, packing_check)
from .patterns import pattern_complexity, pattern_growth_trace
from .querymodels import (alternating_number, default_width, naadt_exact, napdt_exact,
                          separating_check, separating_family, symmetric_naadt,
                          symmetric_naadt_eval_all)
from .transforms import MobiusSpectrum, mobius_sparsity, mobius_spectrum, titsworth_check


@dataclass
class CheckResult:
    cid: int
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self):
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.cid:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def all_functions(n):
    """Every total function on n bits, in order of the table's integer value."""
    size = 1 << n
    for v in range(1 << size):
        yield bf.BooleanFunction(n, (v >> np.arange(size)) & 1)


def random_functions(n, count, seed, tag):
    rng = np.random.default_rng([seed, tag, n])
    for _ in range(count):
        yield bf.BooleanFunction(n, rng.integers(0, 2, 1 << n))


def population(level, seed, tag):
    """Exhaustive n <= 3 and seeded random functions for n = 4..8."""
    for n in range(1, 4):
        yield from all_functions(n)
    count = 1000 if level == "full" else 25
    for n in range(4, 9):
        yield from random_functions(n, count, seed, tag)




# ---------------------------------------------------------------------------


def check_pattern_oneway(level, seed):
    count = 0
    for f in population(level, seed, 1):
        d = one_way_cc(comm_matrix(bf.compose(f, bf.gadget_and())))
        pat = pattern_complexity(f)
        count += 1
        if d != ceil_log2(pat):
            return False, f"{f.to_text()}: one-way {d} vs ceil log Pat = {ceil_log2(pat)}"
    return True, f"{count} functions"


def check_sparsity_rank(level, seed):
    count = 0
    for f in population(level, seed, 2):
        s = mobius_sparsity(f)
        r = matrix_rank(comm_matrix(bf.compose(f, bf.gadget_and())))
        count += 1
        if s != r:
            return False, f"{f.to_text()}: spar {s} vs rank {r}"
    return True, f"{count} functions"


def check_pattern_bounds(level, seed):
    count = traced = 0
    for f in population(level, seed, 3):
        s = mobius_sparsity(f)
        pat = pattern_complexity(f)
        count += 1
        if not (s <= pat and pat ** 3 <= 8 * 6 ** s):
            return False, f"{f.to_text()}: spar {s}, Pat {pat}"
        if s >= 2:
            tr = pattern_growth_trace(f)
            traced += 1
            if not tr.verdict:
                bad = next((st for st in tr.steps if not (st.bound_ok and st.ext_ok)), None)
                return False, f"{f.to_text()}: trace step {bad}"
    return True, f"{count} functions, {traced} traces"


def check_omb(level, seed):
    for n in range(1, 13):
        s = mobius_sparsity(bf.omb(n))
        if s != (n if n % 2 == 0 else n + 1):
            return False, f"spar(OMB_{n}) = {s}"
        a = alternating_number(bf.omb(n))
        if a != n:
            return False, f"alternating(OMB_{n}) = {a}"
    for n in range(1, 6):
        k, _ = naadt_exact(bf.omb(n))
        if k != n:
            return False, f"NAADT(OMB_{n}) = {k}"
    for n in range(1, 11):
        d = one_way_cc(comm_matrix(bf.compose(bf.omb(n), bf.gadget_and())))
        if d != ceil_log2(n + 1):
            return False, f"one-way(OMB_{n} o AND) = {d}"
    return True, "spar/alt n<=12, NAADT n<=5, one-way n<=10"


def check_addr(level, seed):
    for n in (2, 4, 8):
        s = mobius_sparsity(bf.addr(n))
        if s != 3 ** (n.bit_length() - 1):
            return False, f"spar(ADDR_{n}) = {s}"
    for n in (2, 4):
        f = bf.addr(n)
        pat = pattern_complexity(f)
        if pat < 2 ** n:
            return False, f"Pat(ADDR_{n}) = {pat}"
        m = comm_matrix(bf.compose(f, bf.gadget_and()))
        d, r = one_way_cc(m), matrix_rank(m)
        if not power_log3_2_at_most(r, d):
            return False, f"one-way {d} < rank {r} ^ log_3 2"
    return True, "n in {2,4,8} sparsity, n in {2,4} patterns and one-way bound"


def _relevant_functions(nmax):
    for n in range(1, nmax + 1):
        for f in all_functions(n):
            if bf.depends_on_all(f)[0]:
                yield f


def check_ip_witness(level, seed):
    count = 0
    for f in _relevant_functions(3):
        n = f.arity
        for b in (2, 3):
            w = ip_shattering_witness(f, b)
            cf = bf.compose(f, bf.gadget_ip(b))
            if len(w.columns) != n * (b - 1) or not shattering_check(cf, w.columns):
                return False, f"{f.to_text()}, b={b}: witness not shattered"
            if not witness_rows_check(f, w):
                return False, f"{f.to_text()}, b={b}: constructed rows miss a pattern"
        d = one_way_cc(comm_matrix(bf.compose(f, bf.gadget_ip(2))))
        if d < n:
            return False, f"{f.to_text()}: one-way(f o IP_2) = {d} < {n}"
        count += 1
    return True, f"{count} functions, b in {{2,3}}"


def check_parity_oneway(level, seed):
    count = 0
    for n in range(1, 4):
        for f in all_functions(n):
            k, _ = napdt_exact(f)
            d = one_way_cc(comm_matrix(bf.compose(f, bf.gadget_xor())))
            count += 1
            if k != d:
                return False, f"{f.to_text()}: NAPDT {k} vs one-way {d}"
    return True, f"{count} functions"


def _symmetric_with_switch(n, k):
    """All symmetric functions on n bits whose switch value is k."""
    for c in (0, 1):
        for top in range(1 << (k + 1)):
            vals = [c] * (n - k) + [(top >> j) & 1 for j in range(k + 1)]
            if vals[n - k] == c:
                continue
            yield bf.sym(vals)


def check_symmetric_plan(level, seed):
    grid = [(n, k) for n in (8, 12, 16) for k in (1, 2, 3)]
    if level != "full":
        grid = [(8, 1), (8, 2), (12, 2)]
    plans = 0
    for n, k in grid:
        fam, attempts = separating_family(n, k, seed=seed)
        if attempts > 8:
            return False, f"n={n}, k={k}: {attempts} attempts"
        ok, viol = separating_check(fam, n, k)
        if not ok:
            return False, f"n={n}, k={k}: not separating at {viol}"
        if len(fam) > default_width(n, k):
            return False, f"n={n}, k={k}: family size {len(fam)}"
        for f in _symmetric_with_switch(n, k):
            plan = symmetric_naadt(f, seed=seed)
            if plan.family != fam:
                return False, f"n={n}, k={k}: plan family differs from the sampled family"
            if not np.array_equal(symmetric_naadt_eval_all(plan), f.table):
                return False, f"{f.name}: plan output differs from f"
            plans += 1
    return True, f"{plans} plans over {len(grid)} (n, k) pairs"


def check_naadt_bounds(level, seed):
    count = 0
    nmax = 4 if level == "full" else 3
    for n in range(1, nmax + 1):
        for f in all_functions(n):
            s = mobius_sparsity(f)
            k, _ = naadt_exact(f)
            ku, _ = naadt_exact(f, pruned=False)
            d = one_way_cc(comm_matrix(bf.compose(f, bf.gadget_and())))
            count += 1
            if k != ku:
                return False, f"{f.to_text()}: pruned {k} vs unrestricted {ku}"
            if not (s <= 2 ** k and k <= s and k <= n):
                return False, f"{f.to_text()}: spar {s}, NAADT {k}"
            if not (k <= 2 ** d and d <= k):
                return False, f"{f.to_text()}: NAADT {k}, one-way {d}"
    return True, f"{count} functions (n <= {nmax})"


def check_families(level, seed):
    cases = 0
    nmax = 9 if level == "full" else 7
    for q in (3, 4):
        for n in range(1, nmax + 1):
            for d in range(1, min(3, n) + 1):
                for r in range(0, (n - d) // 2 + 1):
                    fam = br_enumerate(q, n, d, r)
                    size = br_size(q, n, d, r)
                    if size != len(fam) or size > inter_bound(q, n, d, r):
                        return False, f"q={q} n={n} d={d} r={r}: size {size} vs {len(fam)}"
                    ok, pair = intersecting_check(fam, d)
                    if not ok:
                        return False, f"q={q} n={n} d={d} r={r}: pair {pair}"
                    cases += 1
    if agr(3, 9, 3) != 891 or len(br_enumerate(3, 9, 3, 2)) != 891:
        return False, "q=3, n=9, d=3 size differs from 891"
    packs = 0
    for q in range(3, 11):
        for n in range(3, 61):
            for d in range(1, n // 3 + 1):
                packs += 1
                if not packing_check(q, n, d):
                    return False, f"packing fails at q={q}, n={n}, d={d}"
    for n, d, q in LARGEQ_GRID:
        if not largeq_check(q, n, d):
            return False, f"large-q bound fails at q={q}, n={n}, d={d}"
    return True, f"{cases} B_r cases, {packs} packing checks, {len(LARGEQ_GRID)} large-q points"


def corrupt_spectrum(spec):
    """Copy of a spectrum with its first coefficient increased by one."""
    c = spec.coeffs.copy()
    c[0] += 1
    return MobiusSpectrum(spec.arity, spec.masks.copy(), c)


def check_titsworth(level, seed):
    count = 0
    fs = [f for n in range(1, 4) for f in all_functions(n)]
    fs += list(random_functions(8, 1000 if level == "full" else 25, seed, 11))
    for f in fs:
        ok, w = titsworth_check(f)
        count += 1
        if not ok:
            return False, f"{f.to_text()}: identity fails at W={w:#x}"
    ok, w = titsworth_check(corrupt_spectrum(mobius_spectrum(bf.maj(3))))
    if ok or w is None:
        return False, "corrupted spectrum passed"
    return True, f"{count} functions; corrupted spectrum rejected at W={w:#x}"


def check_symmetric_sparsity(level, seed):
    count = 0
    per = 200 if level == "full" else 20
    for n in (8, 10, 12):
        rng = np.random.default_rng([seed, 12, n])
        done = 0
        while done < per:
            vals = rng.integers(0, 2, n + 1)
            if np.all(vals == vals[0]):
                continue
            f = bf.sym(vals)
            s = mobius_sparsity(f)
            k = bf.switch_value(f)
            rhs = sum(math.comb(n, i) for i in range(n - k, n + 1))
            done += 1
            count += 1
            if s * s < rhs:
                return False, f"{f.name}: spar^2 = {s * s} < {rhs} (k={k})"
    return True, f"{count} symmetric functions"


CHECKS = (
    (1, "one-way cost of f o AND equals ceil log Pat", check_pattern_oneway),
    (2, "Möbius sparsity equals rank of f o AND", check_sparsity_rank),
    (3, "spar <= Pat <= 2^(alpha spar + 1) and growth trace", check_pattern_bounds),
    (4, "OMB suite", check_omb),
    (5, "ADDR suite", check_addr),
    (6, "IP shattering witness and one-way bound", check_ip_witness),
    (7, "parity queries equal one-way cost of f o XOR", check_parity_oneway),
    (8, "sampled AND-query plans for symmetric functions", check_symmetric_plan),
    (9, "NAADT sandwich bounds and pruned search", check_naadt_bounds),
    (10, "intersecting families and packing bounds", check_families),
    (11, "Möbius union identity", check_titsworth),
    (12, "sparsity of symmetric functions vs switch", check_symmetric_sparsity),
)


def run_check(cid, level="full", seed=0):
    _, name, fn = next(c for c in CHECKS if c[0] == cid)
    t0 = time.perf_counter()
    ok, detail = fn(level, seed)
    return CheckResult(cid, name, bool(ok), detail, time.perf_counter() - t0)


def run_suite(level="full", seed=0, only=None):
    ids = [c[0] for c in CHECKS if only is None or c[0] in only]
    return [run_check(cid, level, seed) for cid in sorted(ids)]
