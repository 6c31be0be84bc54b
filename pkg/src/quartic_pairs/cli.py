"""Command-line front end: one JSON document on stdout per run.

Exit status: 0 success, 2 bad input or failed precondition, 3 budget or
quadrature exhaustion, 4 internal consistency failure (TheoremViolation).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings

import numpy as np

from . import arcs, counting, entangled, forms, kernels, local, smooth_sums
from .errors import BudgetExceeded, PreconditionError, QuadratureError, TheoremViolation


def _jsonable(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (tuple, set)):
        return list(obj)
    raise TypeError(f"not JSON serialisable: {type(obj).__name__}")


def _load_system(path: str | None) -> forms.FormPair:
    if path is None:
        raise PreconditionError("--system is required for this subcommand")
    try:
        if path == "-":
            return forms.FormPair.load(sys.stdin)
        if os.path.exists(path):
            with open(path) as fh:
                return forms.FormPair.load(fh)
        return forms.FormPair.from_json(json.loads(path))
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"cannot parse system JSON: {exc}") from None


def _four_ints(text: str) -> tuple[int, int, int, int]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected four comma-separated integers") from None
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("expected four comma-separated integers")
    return vals


def _threads(args) -> int:
    env = os.environ.get("QUARTIC_PAIRS_THREADS")
    n = int(env) if env else args.threads
    if n < 1:
        raise PreconditionError("thread count must be positive")
    return n


def cmd_analyze(args) -> dict:
    pair = _load_system(args.system)
    cls = forms.classify(pair)
    out = {"system": pair.to_json(), **cls.to_json(), "q0_by_minimization": forms.q0_by_minimization(pair)}
    try:
        out["normalized"] = forms.normalize(pair).to_json()
    except forms.SingleClass as exc:
        out["normalized"] = None
        out["note"] = str(exc)
    return out


def cmd_moments(args) -> dict:
    S = smooth_sums.smooth_set(args.P, args.R)
    out = {"P": S.P, "R": S.R, "card": len(S)}
    if args.entangled:
        spec = entangled.EntangledSpec(*args.entangled)
        table = smooth_sums.psi_table(S, budget=args.budget)
        out.update({"a": spec.a, "b": spec.b, "c": spec.c, "d": spec.d,
                    "I": entangled.entangled_from_table(spec, table),
                    "bound_3_sum_psi3": entangled.majorant(table)})
        return out
    mom = smooth_sums.even_moment(S, args.t, budget=args.budget)
    out.update({"t": mom.t, "moment": mom.value})
    if S.P >= 2:
        out["surrogate_delta"] = math.log(mom.value) / math.log(S.P) - (args.t - 4)
    return out


def cmd_local(args) -> dict:
    pair = _load_system(args.system)
    return local.local_report(pair, Q=args.primes, B=args.search_bound).to_json()


def cmd_counterexample(args) -> dict:
    rep = local.verify_counterexample(args.s, args.search_bound, args.primes, threads=_threads(args))
    return rep.to_json()


def cmd_series(args) -> dict:
    pair = _load_system(args.system)
    res = arcs.singular_series(pair, args.X, threads=_threads(args))
    out = res.to_json()
    out["tail_window"] = [args.X // 2, args.X]
    return out


def cmd_integral(args) -> dict:
    pair = _load_system(args.system)
    return arcs.singular_integral(pair, args.P, args.X).to_json()


def cmd_predict(args) -> dict:
    pair = _load_system(args.system)
    out = arcs.predict_main_term(pair, args.P, args.X, threads=_threads(args)).to_json()
    diss = arcs.ArcDissection(args.P, args.tau) if args.P >= 2 else None
    out["dissection"] = {"tau": args.tau, "Q": diss.Q if diss else None}
    return out


def cmd_count(args) -> dict:
    pair = _load_system(args.system)
    if args.predict is not None:
        rep = counting.compare_prediction(pair, args.P, args.predict, budget=args.budget)
    else:
        rep = counting.count_solutions(pair, args.P, budget=args.budget)
    return rep.to_json()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", help="JSON file with integer lists A and B, inline JSON, or - for stdin")
    common.add_argument("--threads", type=int, default=1, help="worker threads (env QUARTIC_PAIRS_THREADS wins)")
    common.add_argument("--budget", type=int, default=kernels.DEFAULT_BUDGET, help="enumeration entry cap")
    common.add_argument("--tau", type=float, default=arcs.DEFAULT_TAU)
    common.add_argument("--output", help="write the JSON document here instead of stdout")

    p = argparse.ArgumentParser(prog="quartic-pairs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[common], help="index classes, q0 and normal form").set_defaults(fn=cmd_analyze)

    m = sub.add_parser("moments", parents=[common], help="smooth Weyl-sum moments")
    m.add_argument("--P", type=int, required=True)
    m.add_argument("--R", type=int)
    m.add_argument("--t", type=int, default=6)
    m.add_argument("--entangled", type=_four_ints, metavar="a,b,c,d")
    m.set_defaults(fn=cmd_moments)

    lo = sub.add_parser("local", parents=[common], help="local solubility evidence for a pair")
    lo.add_argument("--primes", type=int, default=50)
    lo.add_argument("--search-bound", type=int, default=12)
    lo.set_defaults(fn=cmd_local)

    ce = sub.add_parser("counterexample", parents=[common], help="verify the locally soluble counterexample")
    ce.add_argument("--s", type=int, default=9)
    ce.add_argument("--primes", type=int, default=50)
    ce.add_argument("--search-bound", type=int, default=12)
    ce.set_defaults(fn=cmd_counterexample)

    se = sub.add_parser("series", parents=[common], help="partial singular series")
    se.add_argument("--X", type=int, default=64)
    se.set_defaults(fn=cmd_series)

    for name, fn, helptext in (("integral", cmd_integral, "partial singular integral"),
                               ("predict", cmd_predict, "major-arc main term")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--P", type=int, default=16)
        sp.add_argument("--X", type=float, default=8)
        sp.set_defaults(fn=fn)

    co = sub.add_parser("count", parents=[common], help="exact N(P)")
    co.add_argument("--P", type=int, required=True)
    co.add_argument("--predict", type=float, metavar="X")
    co.set_defaults(fn=cmd_count)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            out = args.fn(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceeded, QuadratureError) as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return 3
    except TheoremViolation as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 4
    text = json.dumps(out, sort_keys=True, indent=2, default=_jsonable) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
