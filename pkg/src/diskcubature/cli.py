"""Command line front end: reproduce tables, integrate, export rules, evaluate bounds."""
import argparse
import json
import math
import sys
import time

from .baselines import midpoint_rule, peirce_rule
from .bounds import SmoothnessData, all_bounds, parse_mode_key
from .cubature import CubatureParams, flatten_cubature, flattened_to_csv, polyharmonic_cubature
from .exceptions import DomainError, NumericError, RuleGenerationError
from .gauss_jacobi import gauss_rule, rules_to_csv
from .reference import CATALOG, FUNCTIONS
from .tables import format_table, run_table
from .weights import load_weight

EXIT_CODES = {DomainError: 2, RuleGenerationError: 3, NumericError: 4, OSError: 5}


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _weight(args, K):
    return load_weight(args.w, R=args.R, k_max=K)


def cmd_table(args):
    result = run_table(args.id, K=args.K)
    _emit(format_table(result, args.format), args.out)


def cmd_integrate(args):
    if args.f not in FUNCTIONS:
        raise DomainError(f"unknown integrand {args.f!r}; choose from {', '.join(FUNCTIONS)}")
    f = FUNCTIONS[args.f]
    K = 1 if args.K is None else args.K
    w = _weight(args, K if args.rule == "poly" else args.K)
    t0 = time.perf_counter()
    info = {"rule": args.rule, "f": args.f, "w": w.name, "N": args.N, "M": args.M}
    if args.rule == "poly":
        res = polyharmonic_cubature(f, w, CubatureParams(args.N, args.M, K, args.R), full=True)
        info.update(K=K, value=res.value, evaluations=res.evaluations, stability_sum=res.stability)
    else:
        g = lambda x, y: f(x, y) * w(x, y)
        if args.rule == "midpoint":
            value = midpoint_rule(g, args.N, args.M, args.R)
        else:
            value = peirce_rule(g, args.N, args.M, args.R, args.alpha)
            info["alpha"] = args.alpha
        info.update(value=value, evaluations=args.N * args.M)
    info["elapsed_s"] = time.perf_counter() - t0
    base = w.name.split(":")[0]
    case = CATALOG.get((args.f, base))
    if case is not None and args.R == 1.0:
        info.update(true_value=case.value, error=abs(info["value"] - case.value))
    if args.json:
        print(json.dumps(info))
    else:
        for k, v in info.items():
            print(f"{k}: {v:.17g}" if isinstance(v, float) else f"{k}: {v}")


def cmd_rule(args):
    w = _weight(args, args.K)
    if args.M is None:
        rules = {m.mode: gauss_rule(m, args.N) for m in w.retained(args.K)}
        text = rules_to_csv(rules)
    else:
        text = flattened_to_csv(flatten_cubature(w, CubatureParams(args.N, args.M, args.K, args.R)))
    _emit(text, args.out)


def _load_sups(path, D, p):
    with open(path) as fh:
        raw = json.load(fh)
    return SmoothnessData(
        mode_sups={parse_mode_key(k): float(v) for k, v in raw.get("mode_sups", {}).items()},
        angular_second_sup=float(raw.get("angular_second_sup", 0.0)),
        radial_sups={parse_mode_key(k): float(v) for k, v in raw.get("radial_sups", {}).items()},
        D=D if D is not None else int(raw.get("D", 1)),
        p=p if p is not None else int(raw.get("p", 1)))


def cmd_bounds(args):
    w = _weight(args, args.K)
    data = _load_sups(args.sups, args.D, args.p)
    res = all_bounds(w, data, args.N, args.M, args.K)
    for k in ("dft", "gauss", "tail", "total"):
        print(f"{k}: {res[k]:.17g}")
    if math.isinf(res["tail"]):
        print("note: tail bound unavailable, the weight's summability norm diverges")


def build_parser():
    p = argparse.ArgumentParser(prog="diskcub", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    t = sub.add_parser("table", help="recompute a benchmark table")
    t.add_argument("id", help="1..11 or mid-w2")
    t.add_argument("--format", choices=("md", "csv"), default="md")
    t.add_argument("--out")
    t.add_argument("--K", type=int, help="override the table's mode truncation")
    t.set_defaults(func=cmd_table)

    i = sub.add_parser("integrate", help="integrate a catalog function against a weight")
    i.add_argument("f")
    i.add_argument("w", help="w1, w2[:kmax], poisson[:kmax], unit, or a weight file")
    i.add_argument("rule", choices=("poly", "midpoint", "peirce"))
    i.add_argument("--N", type=int, required=True)
    i.add_argument("--M", type=int, required=True)
    i.add_argument("--K", type=int)
    i.add_argument("--R", type=float, default=1.0)
    i.add_argument("--alpha", type=float, default=0.0)
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_integrate)

    r = sub.add_parser("rule", help="export Gauss rules, or the flattened cubature with --M")
    r.add_argument("w")
    r.add_argument("--N", type=int, required=True)
    r.add_argument("--K", type=int, required=True)
    r.add_argument("--M", type=int)
    r.add_argument("--R", type=float, default=1.0)
    r.add_argument("--out")
    r.set_defaults(func=cmd_rule)

    b = sub.add_parser("bounds", help="evaluate the a-priori error bounds")
    b.add_argument("w")
    b.add_argument("--K", type=int, required=True)
    b.add_argument("--M", type=int, required=True)
    b.add_argument("--N", type=int, required=True)
    b.add_argument("--D", type=int)
    b.add_argument("--p", type=int)
    b.add_argument("--R", type=float, default=1.0)
    b.add_argument("--sups", required=True, help="JSON file with mode_sups, radial_sups, angular_second_sup")
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except BrokenPipeError:
        # downstream pager or head closed early
        sys.stderr.close()
        return 0
    except tuple(EXIT_CODES) as exc:
        code = next(c for t, c in EXIT_CODES.items() if isinstance(exc, t))
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
