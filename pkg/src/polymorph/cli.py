"""Command-line front end.

Reports go to stdout as JSON (CSV for ``scan`` and for ``construct
--decay-csv -``); progress and diagnostics go to stderr.  Exit codes: 0 on
success, 1 when ``reproduce`` observes a failing criterion, 2 on a
precondition violation or malformed input, 3 when a size limit is exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .boolfn import BooleanFunction, coords_of, format_function, fourier_transform, parse_function
from .classify import enumerate_exact, generate_family, match_case, scan_to_csv, stability_scan
from .classify.engine import KINDS
from .compose import agreement_exhaustive, agreement_monte_carlo, is_exact, sides_for
from .connectivity import decompose_product_factors, is_connected_distribution, reorder_for_connectivity
from .constructions import QSpec, build_lower_bound_function, decay_to_csv, empirical_agreement, fourier_decay_series
from .errors import PreconditionError, SizeLimitError
from .gaussian import borell_upper_bound, s_and_quadrature, s_sign_lower_estimate
from .regularity import RegularityConfig, jones_decision_tree, jones_junta

log = logging.getLogger("polymorph")


def parse_function_file(source: str) -> BooleanFunction:
    """Read ``n=<arity> table=<hex>`` from a file path, or parse the argument itself."""
    path = Path(source)
    if "table=" not in source and path.is_file():
        return parse_function(path.read_text())
    return parse_function(source)


def _hex(f: BooleanFunction) -> str:
    return format_function(f)


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, default=_json_default) + "\n")


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)


def _config(args: argparse.Namespace) -> dict:
    return {k: v for k, v in vars(args).items() if k != "handler"}


# subcommands --------------------------------------------------------------


def cmd_fourier(args) -> int:
    f = parse_function_file(args.f)
    e = fourier_transform(f, view=args.view, bias=args.bias)
    coeffs = [
        {"set": list(coords_of(S)), "value": float(c)}
        for S, c in enumerate(e.coefficients) if abs(c) > args.cutoff
    ]
    _emit({"schema": 1, "config": _config(args), "arity": f.arity, "coefficients": coeffs})
    return 0


def _functions(args) -> list[BooleanFunction]:
    return [parse_function_file(s) for s in args.f]


def _kind_for(fs: list[BooleanFunction], m: int) -> str:
    if len(fs) == 1:
        return "plain"
    if len(fs) == 2:
        return "skew"
    if len(fs) == m + 1:
        return "multi"
    raise PreconditionError(f"give 1, 2 or m+1 = {m + 1} functions via --f, got {len(fs)}")


def cmd_agreement(args) -> int:
    g = parse_function_file(args.g)
    fs = _functions(args)
    h = parse_function_file(args.h) if args.h else None
    f0, rest = sides_for(_kind_for(fs, g.arity), fs if len(fs) > 1 else fs[0], g)
    if args.method == "exhaustive":
        r = agreement_exhaustive(f0, rest, g, h=h)
    else:
        r = agreement_monte_carlo(f0, rest, g, args.samples, seed=args.seed, h=h)
    _emit({**r.to_dict(), "config": _config(args)})
    return 0


def cmd_check(args) -> int:
    g = parse_function_file(args.g)
    fs = _functions(args)
    kind = _kind_for(fs, g.arity)
    functions = fs[0] if kind == "plain" else fs
    exact = is_exact(kind, functions, g)
    out = {"schema": 1, "config": _config(args), "kind": kind, "exact": exact}
    if exact:
        out.update(match_case(kind, functions, g).to_dict())
    _emit(out)
    return 0


def _tuple_hex(t) -> list[str]:
    return [_hex(f) for f in t]


def cmd_classify(args) -> int:
    g = parse_function_file(args.g)
    sols = enumerate_exact(args.kind, g, args.n)
    results = [{"functions": _tuple_hex(t), **match_case(args.kind, t, g).to_dict()} for t in sols]
    log.info("%d exact %s solutions", len(results), args.kind)
    _emit({"schema": 1, "config": _config(args), "count": len(results), "results": results})
    return 0


def cmd_enumerate(args) -> int:
    g = parse_function_file(args.g)
    found = enumerate_exact(args.kind, g, args.n)
    family = generate_family(args.kind, g, args.n)
    _emit({
        "schema": 1, "config": _config(args), "count": len(found), "family_count": len(family),
        "equal": found == family, "solutions": [_tuple_hex(t) for t in found],
    })
    return 0


def cmd_scan(args) -> int:
    g = parse_function_file(args.g)
    sys.stdout.write(scan_to_csv(stability_scan(g, args.n)))
    return 0


def cmd_regularity(args) -> int:
    f = parse_function_file(args.f)
    cfg = RegularityConfig(d=args.d, tau=args.tau, delta=args.delta, epsilon=args.epsilon, biases=tuple(args.biases))
    if args.mode == "tree":
        tree, rep = jones_decision_tree(f, cfg)
        structure = tree.to_text()
    else:
        T, rep = jones_junta(f, cfg)
        structure = "{" + " ".join(map(str, T)) + "}"
    _emit({**rep.to_dict(), "structure": structure, "config": _config(args)})
    return 0


def cmd_threshold(args) -> int:
    g = parse_function_file(args.g)
    if args.method == "borell":
        est = borell_upper_bound(g)
    elif args.method == "quad-and":
        if g.arity != 2 or int(g.table.sum()) not in (1, 3):
            raise PreconditionError("quad-and applies only to g = AND/OR of two inputs (up to negation)")
        est = s_and_quadrature(args.tol)
    else:
        est = s_sign_lower_estimate(g, grid=args.grid, mc_samples=args.samples, seed=args.seed)
    _emit({**est.to_dict(), "config": _config(args)})
    return 0


def cmd_construct(args) -> int:
    g = parse_function_file(args.g)
    q = QSpec.parse(args.q)
    c = build_lower_bound_function(g, q, args.N, n=args.n, seed=args.seed)
    r = empirical_agreement(g, c, args.samples, args.seed)
    out = {**r.to_dict(), "slice_threshold": str(c.slice_threshold), "config": _config(args)}
    if args.decay_csv:
        rows = fourier_decay_series(lambda N: build_lower_bound_function(g, q, N, n=args.n, seed=args.seed), args.L, args.decay_N)
        text = decay_to_csv(rows)
        if args.decay_csv == "-":
            sys.stdout.write(text)
        else:
            Path(args.decay_csv).write_text(text)
            out["decay_csv"] = args.decay_csv
    if args.decay_csv != "-":
        _emit(out)
    return 0


def cmd_connectivity(args) -> int:
    g = parse_function_file(args.g)
    blocks = decompose_product_factors(g)
    out = {"schema": 1, "config": _config(args), "decomposition": [list(S) for S in blocks]}
    order, d = reorder_for_connectivity(g)
    c = is_connected_distribution(d)
    out.update({"order": list(order), "connected": c.connected})
    if c.failing_index is not None:
        out["failing_index"] = c.failing_index
    _emit(out)
    return 0


def cmd_reproduce(args) -> int:
    from .reproduce import CRITERIA, run_criterion

    if args.criterion == "all":
        ids = sorted(CRITERIA)
    elif args.criterion.isdigit():
        ids = [int(args.criterion)]
    else:
        raise PreconditionError(f"criterion must be an id or 'all', got {args.criterion!r}")
    results = []
    for cid in ids:
        r = run_criterion(cid)
        log.info(r.line())
        results.append(r.to_dict())
    passed = all(r["passed"] for r in results)
    _emit({"schema": 1, "config": _config(args), "passed": passed, "criteria": results})
    return 0 if passed else 1


# parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polymorph", description="Polymorphisms of Boolean functions.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--threads", type=int, default=1, help="thread cap; results do not depend on it")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help: str, **kw) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help, description=help, **kw)
        sp.set_defaults(handler=handler)
        return sp

    fn_help = "function file or inline 'n=<arity> table=<hex>'"

    sp = add("fourier", cmd_fourier, "Fourier coefficients of f")
    sp.add_argument("--f", required=True, help=fn_help)
    sp.add_argument("--bias", type=float, default=0.5)
    sp.add_argument("--view", choices=("pm", "zero-one"), default="pm")
    sp.add_argument("--cutoff", type=float, default=1e-12, help="omit coefficients at or below this magnitude")

    sp = add("agreement", cmd_agreement, "agreement probability of f o g^n and g o f^m")
    sp.add_argument("--f", action="append", required=True, help="repeat: one f, (f0 f1), or (f0 .. fm)")
    sp.add_argument("--g", required=True, help=fn_help)
    sp.add_argument("--h", help="optional outer function for the generalized composition")
    sp.add_argument("--method", choices=("exhaustive", "monte-carlo"), default="exhaustive")
    sp.add_argument("--samples", type=int, default=100_000)

    sp = add("check", cmd_check, "exact polymorphism test plus case label")
    sp.add_argument("--f", action="append", required=True, help="repeat: one f, (f0 f1), or (f0 .. fm)")
    sp.add_argument("--g", required=True, help=fn_help)

    for name, handler, text in (
        ("classify", cmd_classify, "all exact solutions with their case labels"),
        ("enumerate", cmd_enumerate, "brute-force solutions compared with the case templates"),
    ):
        sp = add(name, handler, text)
        sp.add_argument("--kind", choices=KINDS, default="plain")
        sp.add_argument("--g", required=True, help=fn_help)
        sp.add_argument("--n", type=int, required=True)

    sp = add(
        "scan", cmd_scan, "stability scan over all f of arity n",
        epilog="CSV columns: f_hex, delta (agreement deficit), epsilon (distance to nearest skew template f1), witness_case",
    )
    sp.add_argument("--g", required=True, help=fn_help)
    sp.add_argument("--n", type=int, default=3)

    sp = add("regularity", cmd_regularity, "greedy restriction set or decision tree making f regular")
    sp.add_argument("--f", required=True, help=fn_help)
    sp.add_argument("--mode", choices=("tree", "junta"), default="tree")
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--tau", type=float, default=0.1)
    sp.add_argument("--delta", type=float, default=0.5)
    sp.add_argument("--epsilon", type=float, default=0.1)
    sp.add_argument("--biases", type=float, nargs="+", default=[0.5])

    sp = add("threshold", cmd_threshold, "bounds on the list-decoding threshold of g")
    sp.add_argument("--g", required=True, help=fn_help)
    sp.add_argument("--method", choices=("borell", "quad-and", "sign-mc"), default="borell")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--samples", type=int, default=200_000)
    sp.add_argument("--grid", type=int, default=64)

    sp = add(
        "construct", cmd_construct, "lifted sign/threshold construction and its empirical agreement",
        epilog="decay CSV columns: N, level, max_abs (largest |coefficient| at that level)",
    )
    sp.add_argument("--g", required=True, help=fn_help)
    sp.add_argument("--N", type=int, default=100)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--q", default="sign", help="'sign' or 'threshold:<theta>'")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--decay-csv", help="write the Fourier decay table here ('-' for stdout)")
    sp.add_argument("--L", type=int, default=1)
    sp.add_argument("--decay-N", type=int, nargs="+", default=[4, 8, 16])

    sp = add("connectivity", cmd_connectivity, "factor blocks, reordering and connectivity of (g(x), x)")
    sp.add_argument("--g", required=True, help=fn_help)

    sp = add("reproduce", cmd_reproduce, "run acceptance criteria")
    sp.add_argument("--criterion", default="all", help="criterion id 1..14 or 'all'")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO, format="%(levelname)s %(message)s", stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except SizeLimitError as e:
        log.error("size limit: %s", e)
        return 3
    except PreconditionError as e:
        log.error("%s", e)
        return 2


def main() -> None:
    sys.exit(run())
