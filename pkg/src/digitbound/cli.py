"""digitbound command line.

    digitbound digitsum --factorial 10 --base 10
    digitbound witness --x 100 --mode smooth
    digitbound verify --n 10000 --base 2 --json
    digitbound scan --min 2 --max 3000 --base 2 --csv scan.csv
    digitbound bench --kernel factorial --sizes 10000,100000

Exit status: 0 success, 1 failed check or guard refusal, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import bench as benchmod
from .bigops import digit_sum
from .lcmfact import factorial, lcm_upto
from .verifier import (
    MAX_FACTORIAL_N,
    MAX_LCM_N,
    BudgetError,
    PreconditionError,
    ResourceGuardError,
    running_minima,
    scan_constants,
    verify_theorem,
    write_scan_csv,
)
from .witness import construct_witness

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _natural(text: str) -> int:
    """Decimal digits only; no floats, signs, or exponents."""
    t = text.strip().replace("_", "")
    if not t.isdigit():
        raise argparse.ArgumentTypeError(f"expected a nonnegative decimal integer, got {text!r}")
    return int(t)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a decimal or p/q rational, got {text!r}") from None


def _sizes(text: str) -> list[int]:
    sizes = [_natural(s) for s in text.split(",") if s.strip()]
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("sizes must be a comma list of integers >= 1")
    return sizes


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and stream.isatty()


def _mark(ok: bool, color: bool) -> str:
    word = "PASS" if ok else "FAIL"
    if not color:
        return word
    return f"\033[{'32' if ok else '31'}m{word}\033[0m"


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2))


def _add_guards(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-factorial-n", type=_natural, default=MAX_FACTORIAL_N)
    p.add_argument("--max-lcm-n", type=_natural, default=MAX_LCM_N)


def cmd_digitsum(args) -> int:
    if args.factorial is not None:
        kind, value = "factorial", args.factorial
        if value > args.max_factorial_n:
            raise ResourceGuardError(f"n! refused: n = {value} > max_factorial_n = {args.max_factorial_n}")
    elif args.lcm is not None:
        kind, value = "lcm", args.lcm
        if value < 1:
            raise argparse.ArgumentTypeError("--lcm needs n >= 1")
        if value > args.max_lcm_n:
            raise ResourceGuardError(f"lcm(1..n) refused: n = {value} > max_lcm_n = {args.max_lcm_n}")
    else:
        kind, value = "literal", args.literal
    t0 = time.perf_counter()
    number = {"factorial": factorial, "lcm": lcm_upto}.get(kind, lambda v: v)(value)
    s = digit_sum(number, args.base)
    elapsed = (time.perf_counter() - t0) * 1e3
    if args.json:
        _dump({"input": {"kind": kind, "value": value}, "base": args.base,
               "digit_sum": s, "elapsed_ms": round(elapsed, 3)})
    else:
        print(s)
    return EXIT_OK


def cmd_witness(args) -> int:
    if args.x < 1:
        raise argparse.ArgumentTypeError(f"--x must be >= 1, got {args.x}")
    _dump(construct_witness(args.x, args.mode).to_dict())
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_theorem(args.n, args.base, args.factorial, args.lcm, args.x,
                            max_factorial_n=args.max_factorial_n, max_lcm_n=args.max_lcm_n)
    if args.json:
        _dump(report.to_dict())
    else:
        color = _use_color(sys.stdout)
        w = report.witness
        print(f"n = {report.n}, b = {report.b}, x = {report.x} (~{float(report.x):.6f})")
        print(f"witness m = {w.m} = 2^{w.t} * {w.odd_part}, phi(m) = {w.phi_m}")
        width = max(len(c.name) for c in report.checks)
        for c in report.checks:
            print(f"  {_mark(c.passed, color)}  {c.name:<{width}}  {c.statement}")
        if report.s_b_lcm is not None:
            print(f"s_{report.b}(lcm(1..n)) = {report.s_b_lcm}")
        if report.s_b_factorial is not None:
            print(f"s_{report.b}(n!) = {report.s_b_factorial}")
        print(f"lcm(1..n) divisibility: {report.lcm_divisibility}")
        print(f"overall: {_mark(report.overall, color)} (s_b >= m = {report.m_lower_bound})")
    for c in report.failed():
        print(f"failed link: {c.name}: {c.statement}", file=sys.stderr)
    return EXIT_OK if report.overall else EXIT_FAIL


def _scan_points(lo: int, hi: int, step: int | None, factor: Fraction | None) -> list[int]:
    if factor is None:
        return list(range(lo, hi + 1, step or 1))
    points, v = [], Fraction(lo)
    while v <= hi:
        n = int(v)
        if not points or n != points[-1]:
            points.append(n)
        v *= factor
    return points


def cmd_scan(args) -> int:
    if args.min < 2 or args.min > args.max:
        raise argparse.ArgumentTypeError(f"need 2 <= --min <= --max, got {args.min}..{args.max}")
    if args.step is not None and args.step < 1:
        raise argparse.ArgumentTypeError("--step must be >= 1")
    if args.factor is not None and args.factor <= 1:
        raise argparse.ArgumentTypeError("--factor must be > 1")
    if args.max > args.max_factorial_n:
        raise ResourceGuardError(f"scan refused: n = {args.max} > max_factorial_n = {args.max_factorial_n}")
    rows = scan_constants(_scan_points(args.min, args.max, args.step, args.factor), args.base)
    min_luca, min_thm1 = running_minima(rows)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_scan_csv(rows, fh)
    if args.json:
        _dump({"rows": [r.to_dict() for r in rows],
               "min_ratio_luca": min_luca, "min_ratio_thm1": min_thm1})
    else:
        if not args.csv:
            write_scan_csv(rows, sys.stdout)
        print(f"rows: {len(rows)}", file=sys.stderr)
        print(f"running min s_b(n!)/log n: {min_luca!r} (empirical, not a proven constant)", file=sys.stderr)
        print(f"running min s_b(n!)/(log n log log log n): {min_thm1!r} (empirical)", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = []
    for size in args.sizes:
        row = benchmod.run(args.kernel, size, args.timeout)
        rows.append(row)
        base = "timeout" if row.baseline_s is None else f"{row.baseline_s:.4f}s"
        sp = "" if row.speedup is None else f"  x{row.speedup:.1f}"
        print(f"{row.kernel:<9} size={row.size:<9} optimized={row.optimized_s:.4f}s  baseline={base}{sp}")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            benchmod.write_csv(rows, fh)
    if any(r.optimized_s > args.timeout for r in rows):
        print("optimized kernel exceeded the timeout", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="digitbound", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("digitsum", help="digit sum of n!, lcm(1..n), or a literal")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--factorial", type=_natural, metavar="N")
    src.add_argument("--lcm", type=_natural, metavar="N")
    src.add_argument("--literal", type=_natural, metavar="VALUE")
    p.add_argument("--base", type=_natural, default=10)
    p.add_argument("--json", action="store_true")
    _add_guards(p)
    p.set_defaults(func=cmd_digitsum)

    p = sub.add_parser("witness", help="construct m with phi(m) <= x")
    p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--mode", choices=("pow2", "smooth"), default="pow2")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="certify s_b(n!), s_b(lcm(1..n)) >= m")
    p.add_argument("--n", type=_natural, required=True)
    p.add_argument("--base", type=_natural, default=2)
    p.add_argument("--factorial", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--lcm", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--x", type=_rational, default=None, help="override the budget (must still fit n)")
    p.add_argument("--json", action="store_true")
    _add_guards(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="s_b(n!) and its ratios over a range of n")
    p.add_argument("--min", type=_natural, required=True)
    p.add_argument("--max", type=_natural, required=True)
    steps = p.add_mutually_exclusive_group()
    steps.add_argument("--step", type=_natural)
    steps.add_argument("--factor", type=_rational, help="geometric spacing")
    p.add_argument("--base", type=_natural, default=2)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--json", action="store_true")
    _add_guards(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("bench", help="optimized kernel vs naive baseline")
    p.add_argument("--kernel", choices=benchmod.KERNELS, required=True)
    p.add_argument("--sizes", type=_sizes, required=True)
    p.add_argument("--timeout", type=float, default=10.0, help="seconds")
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "base", 2) < 2:
        parser.error(f"--base must be >= 2, got {args.base}")
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as e:
        parser.error(str(e))
    except (BudgetError, PreconditionError, ResourceGuardError) as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
