"""Command line interface.

    boolift analyze --spec omb:5
    boolift compose --spec omb:5 --gadget and --measures oneway,rank
    boolift query --spec addr:4 --model naadt
    boolift verify --suite paper --level fast

Exit codes: 0 ok, 1 verification failure, 2 usage or precondition error,
3 cap exceeded.
"""
import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import bfcore as bf
from . import config, families, patterns, querymodels, transforms, verify
from .comm import (binary_entropy, ip_shattering_witness, klauck_bound, matrix_rank,
                   one_way_cc, one_way_cc_partial, shattering_check, vc_dim_bruteforce)
from .comm.matrix import comm_matrix
from .errors import BooliftError, CapExceeded
from .grammar import parse_spec, render_spec

__all__ = ["main", "run", "parse_spec", "render_spec"]

ANALYZE_MEASURES = ("spar", "fourier", "pat", "switch", "alt", "depends", "spectrum")
COMPOSE_MEASURES = ("oneway", "rank", "vc", "klauck", "witness")


class UsageError(Exception):
    pass


def _measures(text, allowed, default):
    if not text:
        return list(default)
    got = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in got if m not in allowed]
    if bad:
        raise UsageError(f"unknown measure(s) {', '.join(bad)}; choose from {', '.join(allowed)}")
    return got


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    return v


def flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v)
        else:
            out[key] = v
    return out


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=False)
    flat = flatten(report["results"], "results.")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["command"] + list(flat))
        w.writerow([report["command"]] + [flat[k] for k in flat])
        return buf.getvalue().rstrip("\n")
    lines = [f"{k[len('results.'):]}: {v}" for k, v in flat.items()]
    lines += [f"warning: {w}" for w in report["warnings"]]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args, warnings):
    f = bf.build_named(args.spec)
    xs = args.x or []
    if not xs:
        raise UsageError("eval needs at least one --x")
    return {"values": {str(x): bf.evaluate(f, x) for x in xs}}


def cmd_analyze(args, warnings):
    f = bf.build_named(args.spec)
    f.require_total("analyze")
    res = {"arity": f.arity}
    for m in _measures(args.measures, ANALYZE_MEASURES, ANALYZE_MEASURES[:-1]):
        if m == "spar":
            res["spar"] = transforms.mobius_sparsity(f)
        elif m == "fourier":
            res["fourier"] = {
                "plus_minus": transforms.fourier_sparsity(f, transforms.PLUS_MINUS),
                "zero_one": transforms.fourier_sparsity(f, transforms.ZERO_ONE)}
        elif m == "pat":
            res["pat"] = patterns.pattern_complexity(f)
        elif m == "switch":
            if bf.is_symmetric(f) and f.table.min() != f.table.max():
                res["switch"] = bf.switch_value(f)
            else:
                warnings.append("switch skipped: function is not a non-constant symmetric function")
        elif m == "alt":
            res["alt"] = querymodels.alternating_number(f)
        elif m == "depends":
            res["depends_on_all"] = bf.depends_on_all(f)[0]
        elif m == "spectrum":
            res["spectrum"] = transforms.mobius_spectrum(f).serialize()
    return res


def cmd_compose(args, warnings):
    f = bf.build_named(args.spec)
    g = bf.parse_gadget(args.gadget)
    cf = bf.compose(f, g)
    m = comm_matrix(cf)
    res = {"rows": m.shape[0], "cols": m.shape[1], "total": m.is_total}
    wanted = _measures(args.measures, COMPOSE_MEASURES, ("oneway", "rank"))
    vc = None
    for name in wanted:
        if name == "oneway":
            res["oneway"] = one_way_cc(m) if m.is_total else one_way_cc_partial(m)[0]
        elif name == "rank":
            if m.is_total:
                res["rank"] = matrix_rank(m)
            else:
                warnings.append("rank skipped: matrix is partial")
        elif name in ("vc", "klauck"):
            if not m.is_total:
                warnings.append(f"{name} skipped: matrix is partial")
                continue
            if vc is None:
                vc = vc_dim_bruteforce(m, cap_d=args.vc_cap)
                if vc.capped:
                    warnings.append(f"VC search stopped at the cap d={vc.dim}")
            if name == "vc":
                res["vc"] = {"dim": vc.dim, "columns": list(vc.columns), "capped": vc.capped}
            else:
                res["klauck"] = {"eps": args.eps, "entropy": binary_entropy(args.eps),
                                 "bound": klauck_bound(vc.dim, args.eps),
                                 "bound_entangled": klauck_bound(vc.dim, args.eps, True)}
        elif name == "witness":
            if not g.name or not g.name.startswith("ip:"):
                raise UsageError("the shattering witness needs an ip:b gadget")
            w = ip_shattering_witness(f, g.alice_bits)
            res["witness"] = {"columns": w.columns, "size": len(w.columns),
                              "expected_size": w.expected_size,
                              "shattered": shattering_check(m, w.columns)}
    return res


def cmd_query(args, warnings):
    f = bf.build_named(args.spec)
    if args.model == "ddt":
        k, mask = querymodels.nonadaptive_dt(f)
        return {"model": "ddt", "k": k, "variables": list(bf.mask_to_subset(mask))}
    with config.override(naadt_max_arity=max(config.caps().naadt_max_arity, args.max_arity or 0),
                         napdt_max_arity=max(config.caps().napdt_max_arity, args.max_arity or 0)):
        if args.model == "naadt":
            k, fam = querymodels.naadt_exact(f, pruned=not args.unpruned)
        else:
            k, fam = querymodels.napdt_exact(f)
    return {"model": args.model, "k": k, "basis": fam.serialize()}


def cmd_symmetric(args, warnings):
    f = bf.build_named(args.spec)
    plan = querymodels.symmetric_naadt(f, seed=args.seed)
    agree = bool(np.array_equal(querymodels.symmetric_naadt_eval_all(plan), f.table))
    return {"k": plan.k, "family_size": len(plan.family), "attempts": plan.attempts,
            "width_bound": querymodels.default_width(f.arity, plan.k) if plan.k else 1,
            "default_value": plan.default_value, "agrees_everywhere": agree,
            "family": plan.family.serialize()}


def cmd_families(args, warnings):
    q, n, d, r = args.q, args.n, args.d, args.r
    op = args.op
    if op in ("br-size", "br-enumerate", "intersecting") and r is None:
        raise UsageError(f"{op} needs --r")
    if op == "br-size":
        return {"size": str(families.br_size(q, n, d, r)),
                "inter_bound": str(families.inter_bound(q, n, d, r))}
    if op == "br-enumerate":
        fam = families.br_enumerate(q, n, d, r)
        return {"size": len(fam), "members": fam.lines()}
    if op == "intersecting":
        ok, pair = families.intersecting_check(families.br_enumerate(q, n, d, r), d)
        return {"intersecting": ok, "pair": pair}
    if op == "agr":
        return {"agr": str(families.agr(q, n, d)), "r": families.ft_radius(q, d)}
    if op == "packing":
        return {"packing": families.packing_check(q, n, d)}
    return {"largeq": families.largeq_check(q, n, d)}


def cmd_verify(args, warnings):
    if args.suite != "paper":
        raise UsageError("the only suite is 'paper'")
    only = None if not args.only else {int(t) for t in args.only.split(",")}
    results = verify.run_suite(args.level, args.seed, only)
    for r in results:
        print(r.line(), file=sys.stderr)
    return {"passed": all(r.ok for r in results),
            "criteria": {str(r.cid): {"name": r.name, "ok": r.ok, "detail": r.detail,
                                      "seconds": round(r.seconds, 3)} for r in results}}


COMMANDS = {
    "eval": cmd_eval, "analyze": cmd_analyze, "compose": cmd_compose, "query": cmd_query,
    "symmetric-naadt": cmd_symmetric, "families": cmd_families, "verify": cmd_verify,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap-cells", type=int, help="maximum communication-matrix cells")
    common.add_argument("--cap-rank", type=int, help="maximum rank dimension")
    common.add_argument("--cap-search", type=int, help="maximum search work units")

    p = argparse.ArgumentParser(prog="boolift", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate a function at inputs")
    s.add_argument("--spec", required=True)
    s.add_argument("--x", type=int, action="append", help="input as an integer (x_1 is bit 0)")

    s = sub.add_parser("analyze", parents=[common], help="spectral and pattern measures")
    s.add_argument("--spec", required=True)
    s.add_argument("--measures", help=",".join(ANALYZE_MEASURES))

    s = sub.add_parser("compose", parents=[common], help="measures of the composed matrix")
    s.add_argument("--spec", required=True)
    s.add_argument("--gadget", required=True, help="and | xor | ip:b | addr:b | table:HEX:b1:b2")
    s.add_argument("--measures", help=",".join(COMPOSE_MEASURES))
    s.add_argument("--eps", type=float, default=1 / 3)
    s.add_argument("--vc-cap", type=int, default=None)

    s = sub.add_parser("query", parents=[common], help="non-adaptive query complexity")
    s.add_argument("--spec", required=True)
    s.add_argument("--model", choices=("ddt", "naadt", "napdt"), required=True)
    s.add_argument("--unpruned", action="store_true", help="search all AND masks")
    s.add_argument("--max-arity", type=int, help="raise the exact-search arity cap")

    s = sub.add_parser("symmetric-naadt", parents=[common], help="sampled AND-query plan")
    s.add_argument("--spec", required=True)

    s = sub.add_parser("families", parents=[common], help="q-ary intersecting families")
    s.add_argument("--op", required=True,
                   choices=("br-size", "br-enumerate", "intersecting", "agr", "packing", "largeq"))
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--r", type=int)

    s = sub.add_parser("verify", parents=[common], help="run the verification suite")
    s.add_argument("--suite", default="paper")
    s.add_argument("--level", choices=("fast", "full"), default="fast")
    s.add_argument("--only", help="comma-separated check ids")
    return p


@dataclass
class Outcome:
    code: int
    report: dict = None
    error: str = None
    fmt: str = "json"


def run(argv):
    """Parse and execute a command line; never prints the report itself."""
    parser = build_parser()
    args = parser.parse_args(argv)
    caps = {}
    if args.cap_cells:
        caps["max_cells"] = args.cap_cells
    if args.cap_rank:
        caps["max_rank_dim"] = args.cap_rank
    if args.cap_search:
        caps["max_search"] = args.cap_search
    inputs = {k: v for k, v in vars(args).items() if k not in ("command", "format") and v is not None}
    warnings = []
    try:
        with config.override(**caps):
            results = COMMANDS[args.command](args, warnings)
    except CapExceeded as e:
        return Outcome(3, error=f"cap exceeded: {e}", fmt=args.format)
    except (UsageError, BooliftError, ValueError) as e:
        return Outcome(2, error=f"error: {e}", fmt=args.format)
    report = _jsonable({"command": args.command, "inputs": inputs, "results": results,
                        "warnings": warnings})
    code = 1 if args.command == "verify" and not results["passed"] else 0
    return Outcome(code, report, None, args.format)


def main(argv=None):
    out = run(sys.argv[1:] if argv is None else argv)
    if out.error:
        print(out.error, file=sys.stderr)
    else:
        print(render(out.report, out.fmt))
    return out.code


if __name__ == "__main__":
    sys.exit(main())
