"""Time the hot kernels on the numba path and on the numpy fallback.

Each backend runs in its own interpreter (the switch is read at import time):

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
import boolift as bl
from boolift import kernels
from boolift.comm import comm_matrix, matrix_rank, one_way_cc
from boolift.families import br_enumerate, intersecting_check

rng = np.random.default_rng(0)
repeat = int(sys.argv[1])

def timed(fn):
    fn()  # warm-up (includes compilation on the numba path)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best

f16 = bl.BooleanFunction(16, rng.integers(0, 2, 1 << 16))
f8 = bl.BooleanFunction(8, rng.integers(0, 2, 256))
f4 = [bl.BooleanFunction(4, rng.integers(0, 2, 16)) for _ in range(200)]
fam = br_enumerate(3, 9, 3, 2)
cases = {
    "mobius n=16": lambda: bl.mobius_sparsity(f16),
    "pattern count n=16": lambda: bl.pattern_complexity(f16),
    "alternating n=16": lambda: bl.alternating_number(f16),
    "rank f8 o AND (256x256)": lambda: matrix_rank(comm_matrix(bl.compose(f8, bl.gadget_and()))),
    "naadt x200 (n=4)": lambda: [bl.naadt_exact(f) for f in f4],
    "separating family n=16 k=3": lambda: bl.separating_family(16, 3),
    "intersecting B_r(3,9,3,2)": lambda: intersecting_check(fam, 3),
    "titsworth n=12": lambda: bl.titsworth_check(bl.BooleanFunction(12, rng.integers(0, 2, 4096))),
}
print(json.dumps({"backend": bl.backend(), "times": {k: timed(v) for k, v in cases.items()}}))
"""


def run(no_numba, repeat):
    env = dict(os.environ)
    env.pop("BOOLIFT_NO_NUMBA", None)
    if no_numba:
        env["BOOLIFT_NO_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'kernel workload':32s} {fast['backend']:>10s} {slow['backend']:>10s} {'ratio':>7s}")
    for k, t in fast["times"].items():
        s = slow["times"][k]
        print(f"{k:32s} {t * 1e3:9.2f}ms {s * 1e3:9.2f}ms {s / max(t, 1e-9):7.1f}")


if __name__ == "__main__":
    main()
