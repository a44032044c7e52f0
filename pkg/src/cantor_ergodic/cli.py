"""Command-line front end.

Exit status: 0 on success, 2 on usage errors, 1 when a computation's
contract cannot be met (for example an unknown mixture tail heavier than
the requested precision).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .approx import min_deviation
from .core import Interval, format_rational, parse_point, parse_rational, parse_word
from .ergodic import ergodic_average, ergodic_limit, l1_series, limit_function
from .machines import CatalogError, load_catalog, parse_machine
from .measures import (
    MixtureError,
    exact_mixture,
    mixture_eval,
    mu_e_eval_with_run,
    simulation_budget,
    support_mu_e,
)
from .rademacher import PhiMap, PremiseViolation, range_decode, tail_bound
from .reduction import CheatingBoundOracle, PaddedOracle, decide_halting


def format_decimal(x: Fraction, places: int = 12) -> str:
    """Round half to even at ``places`` decimals, exactly."""
    q = round(Fraction(x) * 10**places)
    sign = "-" if q < 0 else ""
    whole, frac = divmod(abs(q), 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def _two_col(x: Fraction) -> str:
    return f"{x}\t{format_decimal(x)}"


def _arg(parse):
    def wrapped(text):
        try:
            return parse(text)
        except (ValueError, OSError, IndexError, CatalogError) as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc

    wrapped.__name__ = parse.__name__
    return wrapped


def _positive_rational(text):
    x = parse_rational(text)
    if x <= 0:
        raise ValueError(f"{text!r} is not positive")
    return x


def _read_catalog(path):
    with open(path, encoding="utf-8") as fh:
        return load_catalog(fh.read())


def _measure(text):
    """``clock:<s>``, ``never``/``loop`` or ``catalog:<path>`` (annotated; tail never)."""
    if text in ("never", "loop"):
        return support_mu_e(None)
    if text.startswith("clock:"):
        return support_mu_e(int(text[6:]))
    if text.startswith("catalog:"):
        return exact_mixture(_read_catalog(text[8:]))
    raise ValueError(f"bad measure {text!r}; expected clock:<s>, never or catalog:<path>")


def _phi(text):
    return PhiMap(int(v) for v in text.split(",") if v.strip())


def _emit(args, obj, text_lines):
    if args.json:
        print(json.dumps(obj, indent=2))
    else:
        print("\n".join(text_lines))


def cmd_mu_eval(args):
    iv, result = mu_e_eval_with_run(args.machine, args.sigma, args.eps)
    budget = simulation_budget(len(args.sigma), args.eps)
    obj = {
        "sigma": args.sigma,
        "eps": format_rational(args.eps),
        "budget": budget,
        "run": str(result),
        "interval": iv.to_json(),
    }
    _emit(args, obj, [
        f"interval\t{iv}",
        f"lo\t{_two_col(iv.lo)}",
        f"hi\t{_two_col(iv.hi)}",
        f"budget\t{budget}",
        f"run\t{result}",
    ])


def cmd_mixture_eval(args):
    iv = mixture_eval(args.catalog, args.sigma, args.eps, tail=args.tail)
    obj = {"sigma": args.sigma, "eps": format_rational(args.eps), "tail": args.tail, "interval": iv.to_json()}
    _emit(args, obj, [f"interval\t{iv}", f"lo\t{_two_col(iv.lo)}", f"hi\t{_two_col(iv.hi)}"])


def cmd_ergodic(args, parser):
    if args.point is not None:
        p = args.point
        limit = ergodic_limit(p)
        obj = {"point": str(p), "limit": format_rational(limit)}
        lines = []
        if args.n is not None:
            avg = ergodic_average(p, args.n)
            obj.update(n=args.n, average=format_rational(avg))
            lines.append(f"average\t{_two_col(avg)}")
        lines.append(f"limit\t{_two_col(limit)}")
        _emit(args, obj, lines)
        return
    if args.measure is None or args.series is None:
        parser.error("ergodic needs --point [--n N] or --measure M --series NMAX")
    series = list(l1_series(args.measure, args.series))
    if args.json:
        print(json.dumps([{"n": n, "error": format_rational(e)} for n, e in series], indent=2))
        return
    print("n,error,exact")
    for n, e in series:
        print(f"{n},{format_decimal(e)},{format_rational(e)}")


def cmd_best_approx(args):
    m = args.measure
    f = limit_function(m)
    deviation, witness = min_deviation(m, f, args.k, args.delta)
    obj = {
        "k": args.k,
        "delta": format_rational(args.delta),
        "deviation": format_rational(deviation),
        "witness": witness.to_json(),
    }
    lines = [f"k\t{args.k}", f"delta\t{_two_col(args.delta)}", f"deviation\t{_two_col(deviation)}"]
    if args.k <= 6:
        lines.append("witness\t" + " ".join(str(v) for v in witness.values()))
    else:
        lines.append(f"witness\tdefault {witness.default}, {len(witness.entries())} other cylinders")
    _emit(args, obj, lines)


def cmd_halting_demo(args):
    catalog = args.catalog
    oracle = CheatingBoundOracle(catalog)
    if args.pad:
        oracle = PaddedOracle(oracle, args.pad)
    verdicts = [decide_halting(oracle, catalog, e) for e in range(len(catalog))]

    def truth(v):
        return "-" if v.ground_truth is None else ("halts" if v.ground_truth else "never")

    rows = [
        {
            "e": v.e,
            "kind": v.kind,
            "epsilon_e": format_rational(v.epsilon),
            "k_e": v.k,
            "budget": v.budget,
            "decision": "halts" if v.halts else "never",
            "ground_truth": truth(v),
            "match": v.match,
        }
        for v in verdicts
    ]
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        header = list(rows[0]) if rows else ["e"]
        table = [header] + [[str(r[h]) for h in header] for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(header))]
        for row in table:
            print("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip())
    if any(v.match is False for v in verdicts):
        return 1
    return 0


def cmd_rademacher(args, parser):
    phi = args.phi
    if not 0 <= args.n <= len(phi):
        parser.error(f"--n must lie in 0..{len(phi)}")
    res = range_decode(phi, args.n, args.m, args.delta)
    try:
        tail = tail_bound(phi, args.n, args.m)
    except PremiseViolation as exc:
        tail, offending = None, exc.offending
    else:
        offending = []
    verdict = "uncertified" if not res.certified else ("in range" if res.in_range else "not in range")
    obj = {
        "phi": list(phi),
        "n": args.n,
        "m": args.m,
        "delta": format_rational(res.delta),
        "deviation": format_rational(res.deviation),
        "certified": res.certified,
        "verdict": verdict,
        "tail": None if tail is None else format_rational(tail),
        "premise_offending": offending,
        "witness": res.witness.to_json(),
    }
    lines = [
        f"verdict\t{verdict}",
        f"delta\t{_two_col(res.delta)}",
        f"deviation\t{_two_col(res.deviation)}",
        f"tail\t{_two_col(tail)}" if tail is not None else f"tail\tpremise fails at j={offending}",
    ]
    if res.witness.k <= 6:
        lines.append("witness\t" + " ".join(str(v) for v in res.witness.values()))
    _emit(args, obj, lines)


def cmd_selfcheck(args):
    from .selfcheck import run_all

    results = run_all()
    if args.json:
        print(json.dumps([{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results], indent=2))
    else:
        for r in results:
            print(r.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cantor-ergodic",
        description="Computable shift-invariant measures, ergodic limits and their complexity.",
    )
    parser.add_argument("--json", action="store_true", help="emit JSON")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    word = _arg(parse_word)
    rational = _arg(_positive_rational)

    p = sub.add_parser("mu-eval", parents=[common], help="enclose mu_e([sigma]) within eps")
    p.add_argument("--machine", required=True, type=_arg(parse_machine), help="clock:<s> | loop | file:<path>#<index>")
    p.add_argument("--sigma", required=True, type=word)
    p.add_argument("--eps", required=True, type=rational)

    p = sub.add_parser("mixture-eval", parents=[common], help="enclose mu([sigma]) for a catalog mixture")
    p.add_argument("--catalog", required=True, type=_arg(_read_catalog))
    p.add_argument("--tail", choices=["never", "unknown"], default="unknown")
    p.add_argument("--sigma", required=True, type=word)
    p.add_argument("--eps", required=True, type=rational)

    p = sub.add_parser("ergodic", parents=[common], help="ergodic averages and L1 error series")
    p.add_argument("--point", type=_arg(parse_point), help="periodic point '(w)*@r'")
    p.add_argument("--n", type=int)
    p.add_argument("--measure", type=_arg(_measure), help="clock:<s> | never | catalog:<path>")
    p.add_argument("--series", type=int, metavar="NMAX")

    p = sub.add_parser("best-approx", parents=[common], help="minimal deviation over complexity-k functions")
    p.add_argument("--measure", required=True, type=_arg(_measure))
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--delta", type=rational, default=Fraction(1, 8))

    p = sub.add_parser("halting-demo", parents=[common], help="decide halting from complexity bounds")
    p.add_argument("--catalog", required=True, type=_arg(_read_catalog))
    p.add_argument("--pad", type=int, default=0, help="inflate every bound by this much")

    p = sub.add_parser("rademacher", parents=[common], help="decode range(phi) from the Rademacher series")
    p.add_argument("--phi", required=True, type=_arg(_phi), help="phi(1),phi(2),... e.g. 3,0,5")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--delta", type=rational, help="deviation level (default 4^-(m+1))")

    sub.add_parser("selfcheck", parents=[common], help="run the invariant suites")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and args.command == "ergodic" and args.n < 1:
        parser.error("--n must be >= 1")
    if args.command == "best-approx" and args.k < 0:
        parser.error("--k must be >= 0")
    try:
        if args.command == "mu-eval":
            return cmd_mu_eval(args) or 0
        if args.command == "mixture-eval":
            return cmd_mixture_eval(args) or 0
        if args.command == "ergodic":
            return cmd_ergodic(args, parser) or 0
        if args.command == "best-approx":
            return cmd_best_approx(args) or 0
        if args.command == "halting-demo":
            return cmd_halting_demo(args)
        if args.command == "rademacher":
            return cmd_rademacher(args, parser) or 0
        if args.command == "selfcheck":
            return cmd_selfcheck(args)
    except (MixtureError, ValueError, IndexError) as exc:
        print(f"cantor-ergodic: error: {exc}", file=sys.stderr)
        return 1
    parser.error(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
