"""Command-line front end: ``thetasets <command> ...``.

Exit codes: 0 success, 1 a verified law failed, 2 usage or parse error,
3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import census, density, laws
from .arith import divisors, table_budget
from .errors import PreconditionError, ResourceLimitError, SpecParseError
from .genset import members
from .theta import Dense, ThetaSpec, parse_theta

EXIT_OK, EXIT_LAW, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    theta: ThetaSpec
    fmt: str = "csv"
    workers: int = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int(text: str) -> int:
    # accepts 10**6 style and 1e6 style as well as plain integers
    try:
        if "**" in text:
            base, exp = text.split("**")
            return int(base) ** int(exp)
        value = float(text) if "e" in text.lower() else int(text)
        if value != int(value):
            raise ValueError
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _theta(text: str) -> ThetaSpec:
    try:
        return parse_theta(text)
    except SpecParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(rows: list[dict], fmt: str, out, extra: dict | None = None) -> None:
    if fmt == "json":
        payload = dict(extra or {})
        payload["rows"] = rows
        out.write(json.dumps(payload, sort_keys=True, default=_jsonable) + "\n")
        return
    if not rows:
        return
    writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _fmt(v) for k, v in row.items()})


def _jsonable(v):
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    return str(v)


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return v


def _need_primes(limit: int) -> None:
    budget = table_budget()
    if limit > budget:
        raise ResourceLimitError(f"needs primes up to {limit}, budget is {budget}")


def _series_need(spec: ThetaSpec, N: int, q: int) -> int:
    # upper estimate of max theta_q(n) over n <= N, checked before any table is built
    if isinstance(spec, Dense):
        return -(-spec.u * N * q // spec.v)
    m = max(N * q, 16)
    ll = math.log(math.log(m))
    return int(m * (math.exp(0.5772156649) * ll + 0.6483 / ll)) + 2


# --- subcommands -----------------------------------------------------------


def cmd_members(args, cfg: RunConfig):
    _need_primes(args.limit)
    arr = members(cfg.theta, args.limit, cfg.workers)
    if args.mod:
        arr = arr[arr % args.mod == args.residue % args.mod]
    if args.sorted:
        arr = np.sort(arr)
    return [{"n": int(v)} for v in arr.tolist()], EXIT_OK


def cmd_count(args, cfg: RunConfig):
    _need_primes(args.limit)
    spec, x = cfg.theta, args.limit
    row = {"theta": spec.describe(), "limit": x}
    if not args.mod:
        row.update(q=1, selector="all", count=census.count(spec, x, cfg.workers))
    elif args.multiples:
        row.update(q=args.mod, selector="multiples", count=census.count_multiples(spec, x, args.mod))
    elif args.gcd is not None:
        row.update(q=args.mod, selector=f"gcd={args.gcd}", count=census.count_gcd_class(spec, x, args.mod, args.gcd))
    elif args.residue is not None:
        a = args.residue % args.mod
        row.update(q=args.mod, selector=f"residue={a}", count=census.count_class(spec, x, args.mod, a))
    else:
        row.update(q=args.mod, selector="all", count=census.count(spec, x, cfg.workers))
    return [row], EXIT_OK


def cmd_hist(args, cfg: RunConfig):
    _need_primes(args.limit)
    h = census.histogram(cfg.theta, args.limit, args.mod, cfg.workers)
    return [{"residue": a, "count": int(c)} for a, c in enumerate(h.counts.tolist())], EXIT_OK


def _density_guard(spec: ThetaSpec, N: int, qs) -> None:
    _need_primes(max(_series_need(spec, N, q) for q in qs))


def cmd_rq(args, cfg: RunConfig):
    _density_guard(cfg.theta, args.truncation, [args.q])
    est = density.c_theta(cfg.theta, args.truncation)
    r = density.r_q(cfg.theta, args.q, args.truncation, method=args.method)
    row = {
        "theta": cfg.theta.describe(),
        "q": args.q,
        "truncation": args.truncation,
        "method": args.method,
        "r_q": r,
        "c_theta": est.pick(args.method),
        "tail_indicator": est.tail_indicator,
    }
    return [row], EXIT_OK


def cmd_rqa(args, cfg: RunConfig):
    q, a = args.q, args.a
    d = math.gcd(a, q)
    _density_guard(cfg.theta, args.truncation, [d * m for m in divisors(q // d)])
    r = density.r_qa(cfg.theta, q, a, args.truncation, method=args.method)
    row = {"theta": cfg.theta.describe(), "q": q, "a": a % q, "d": d, "truncation": args.truncation, "r_qa": r}
    return [row], EXIT_OK


def cmd_table(args, cfg: RunConfig):
    _density_guard(cfg.theta, args.truncation, range(2, args.qmax + 1))
    rows = density.table_rq(cfg.theta, args.qmax, args.truncation, method=args.method)
    return [{"q": q, "r_q": r} for q, r in rows], EXIT_OK


def cmd_verify(args, cfg: RunConfig):
    spec = cfg.theta
    law = args.law
    if law == "sandwich":
        _need_primes(args.limit)
        qs = [args.q] if args.q else range(2, args.qmax + 1)
        rows = []
        for q in qs:
            rep = census.sandwich_check(spec, args.limit, q)
            rows.append({"x": rep.x, "q": q, "lower": rep.lower, "mid": rep.mid, "upper": rep.upper, "pass": rep.passed})
        return rows, EXIT_OK if all(r["pass"] for r in rows) else EXIT_LAW
    if law == "moebius":
        _need_primes(args.limit)
        qs = [args.q] if args.q else range(1, args.qmax + 1)
        rows = []
        for q in qs:
            for d in divisors(q):
                lhs = census.count_gcd_class(spec, args.limit, q, d)
                rhs = census.mobius_rhs(spec, args.limit, q, d)
                rows.append({"x": args.limit, "q": q, "d": d, "gcd_class": lhs, "moebius_sum": rhs, "pass": lhs == rhs})
        return rows, EXIT_OK if all(r["pass"] for r in rows) else EXIT_LAW
    if law == "inclusion":
        _need_primes(args.mmax * args.q)
        rep = laws.verify_inclusions(spec, args.q, args.mmax)
        return _law_rows(rep), EXIT_OK if rep.passed else EXIT_LAW
    if law == "closure":
        rep = laws.closure_check(spec, args.q, count=args.pairs, cap=args.cap, seed=args.seed)
        return _law_rows(rep), EXIT_OK if rep.passed else EXIT_LAW
    if law == "equidist":
        _need_primes(max(args.limits))
        rep = laws.equidist_report(spec, args.limits, args.q)
        return rep.rows, EXIT_OK
    if law == "classify":
        _need_primes(args.bound)
        pc = laws.classify_progression(spec, args.q, args.a, args.bound)
        row = {
            "theta": spec.describe(),
            "q": pc.q,
            "a": pc.a,
            "verdict": str(pc),
            "members_found": pc.found,
            "bound": pc.search_bound,
        }
        return [row], EXIT_OK
    raise PreconditionError(f"unknown law {law}")


def _law_rows(rep: laws.LawReport) -> list[dict]:
    if rep.counterexamples:
        return [{"law": rep.law, **rep.params, "pass": False, **c} for c in rep.counterexamples]
    return [{"law": rep.law, **rep.params, "pass": True}]


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theta", type=_theta, required=True, help="practical | dense:u[/v] | smooth:y | almost-prime:k | prime-powers")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--workers", type=int, default=1)

    p = _Parser(prog="thetasets", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("members", parents=[common], help="list members of B(x)")
    s.add_argument("--limit", type=_int, required=True)
    s.add_argument("--mod", type=_int)
    s.add_argument("--residue", type=_int, default=0)
    s.add_argument("--sorted", action="store_true")
    s.set_defaults(func=cmd_members)

    s = sub.add_parser("count", parents=[common], help="count members, optionally by class")
    s.add_argument("--limit", type=_int, required=True)
    s.add_argument("--mod", type=_int)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--residue", type=_int)
    g.add_argument("--multiples", action="store_true")
    g.add_argument("--gcd", type=_int)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("hist", parents=[common], help="members per residue class")
    s.add_argument("--limit", type=_int, required=True)
    s.add_argument("--mod", type=_int, required=True)
    s.set_defaults(func=cmd_hist)

    for name, func, help_ in (
        ("rq", cmd_rq, "share of members divisible by q"),
        ("rqa", cmd_rqa, "share of members congruent to a mod q"),
        ("table", cmd_table, "r_q for q = 2..qmax"),
    ):
        s = sub.add_parser(name, parents=[common], help=help_)
        if name == "table":
            s.add_argument("--qmax", type=_int, required=True)
        else:
            s.add_argument("--q", type=_int, required=True)
        if name == "rqa":
            s.add_argument("--a", type=_int, required=True)
        s.add_argument("--truncation", type=_int, default=10**6)
        s.add_argument("--method", choices=("extrapolated", "plain"), default="extrapolated")
        s.set_defaults(func=func)

    s = sub.add_parser("verify", parents=[common], help="check a structural law")
    s.add_argument("law", choices=("sandwich", "moebius", "inclusion", "closure", "equidist", "classify"))
    s.add_argument("--limit", type=_int, default=10**5)
    s.add_argument("--limits", type=lambda t: [_int(v) for v in t.split(",")], default=[10**4, 10**6])
    s.add_argument("--q", type=_int)
    s.add_argument("--qmax", type=_int, default=30)
    s.add_argument("--a", type=_int, default=0)
    s.add_argument("--mmax", type=_int, default=10**4)
    s.add_argument("--pairs", type=_int, default=1000)
    s.add_argument("--cap", type=_int, default=10**4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--bound", type=_int, default=10**6)
    s.set_defaults(func=cmd_verify)
    return p


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if getattr(args, "law", None) in ("inclusion", "closure", "equidist", "classify") and args.q is None:
        print(f"thetasets: error: verify {args.law} needs --q", file=sys.stderr)
        return EXIT_USAGE
    cfg = RunConfig(theta=args.theta, fmt=args.format, workers=max(1, args.workers))
    try:
        rows, code = args.func(args, cfg)
    except ResourceLimitError as exc:
        print(f"thetasets: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (PreconditionError, SpecParseError) as exc:
        print(f"thetasets: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    buf = io.StringIO()
    _emit(rows, cfg.fmt, buf, {"command": args.command})
    out.write(buf.getvalue())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
