"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 resource cap exceeded,
3 internal consistency failure (methods disagree or a check suite fails).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import __version__, kernels
from . import combinatorics as comb
from .checks import MUTATIONS, random_sequence, run_all, values_agree
from .errors import CapExceeded, FaaDiBrunoError
from .exprlang import ParseError, derivative_sequence, parse
from .faa_di_bruno import (
    derivative_of_composition_closed_form,
    derivative_of_composition_combinatorial,
    symbolic_expansion,
)
from .jets import oracle_nth_derivative
from .scalars import EXACT, FLOAT, format_scalar, parse_scalar

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_CONSISTENCY = 0, 1, 2, 3
METHODS = ("combinatorial", "closed", "oracle")


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is reserved for resource caps here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name} must be an integer, got {raw!r}") from None


def _caps(args):
    max_enum = args.max_enum if args.max_enum is not None else _env_int("FDB_MAX_ENUM", comb.DEFAULT_MAX_ENUM)
    max_order = args.max_order if args.max_order is not None else _env_int("FDB_MAX_ORDER", comb.DEFAULT_MAX_ORDER)
    return max_enum, max_order


def _scalar_json(v):
    return format_scalar(v) if v.__class__ is not float else v


def _emit(args, command, inputs, result, timing_ns, lines):
    if args.json:
        record = {"command": command, "inputs": inputs, "result": result, "timing_ns": timing_ns}
        sys.stdout.write(json.dumps(record) + "\n")
    else:
        for line in lines:
            print(line)


def cmd_partitions(args):
    max_enum, _ = _caps(args)
    t0 = time.perf_counter_ns()
    parts = comb.enumerate_set_partitions(args.n, max_enum)
    bell = comb.bell_number(args.n)
    count = 0
    listing = []
    for p in parts:
        count += 1
        if args.json:
            listing.append(p.to_json())
        else:
            print(p)
    elapsed = time.perf_counter_ns() - t0
    ok = count == bell
    footer = f"count={count} bell={bell} {'OK' if ok else 'MISMATCH'}"
    result = {"partitions": listing, "count": count, "bell": bell, "ok": ok}
    _emit(args, "partitions", {"n": args.n}, result, elapsed, [footer])
    return EXIT_OK if ok else EXIT_CONSISTENCY


def cmd_profiles(args):
    _, max_order = _caps(args)
    t0 = time.perf_counter_ns()
    expansion = symbolic_expansion(args.n, max_order)
    elapsed = time.perf_counter_ns() - t0
    total = sum(expansion.multiplicities)
    bell = comb.bell_number(args.n)
    lines = []
    rows = []
    for pf, m in expansion:
        parts = "+".join(map(str, pf.parts)) or "0"
        lines.append(f"k={pf} parts={parts} count={m}")
        rows.append({"k": list(pf.k), "parts": list(pf.parts), "count": m})
    ok = total == bell
    lines.append(f"profiles={len(rows)} total={total} bell={bell} {'OK' if ok else 'MISMATCH'}")
    result = {"profiles": rows, "total": total, "bell": bell, "ok": ok, "formula": expansion.to_text()}
    _emit(args, "profiles", {"n": args.n}, result, elapsed, lines)
    return EXIT_OK if ok else EXIT_CONSISTENCY


def _parse_expr(flag, text):
    try:
        return parse(text)
    except ParseError as err:
        raise UsageError(f"{flag}: {err}\n  {text}\n  {' ' * err.offset}^") from None


def cmd_derive(args):
    max_enum, max_order = _caps(args)
    f_expr = _parse_expr("--f", args.f)
    g_expr = _parse_expr("--g", args.g)
    try:
        at = parse_scalar(args.at, args.kind)
    except ValueError:
        raise UsageError(f"--at: cannot read {args.at!r} as a {args.kind} scalar") from None
    n = args.n
    if n < 0:
        raise UsageError("--n must be nonnegative")
    comb.check_cap("derive", n, max_order)
    methods = METHODS if args.method == "all" else (args.method,)
    if "combinatorial" in methods:
        comb.check_cap("combinatorial evaluator", n, max_enum)

    g_seq = derivative_sequence(g_expr, at, n, args.kind)
    f_seq = derivative_sequence(f_expr, g_seq[0], n, args.kind)
    values, timing = {}, {}
    for m in methods:
        t0 = time.perf_counter_ns()
        if m == "combinatorial":
            values[m] = derivative_of_composition_combinatorial(f_seq, g_seq, n, max_enum)
        elif m == "closed":
            values[m] = derivative_of_composition_closed_form(f_seq, g_seq, n, max_order)
        else:
            values[m] = oracle_nth_derivative(f_seq, g_seq, n, at)
        timing[m] = time.perf_counter_ns() - t0

    inputs = {"f": args.f, "g": args.g, "at": _scalar_json(at), "n": n, "method": args.method, "kind": args.kind}
    result = {"values": {m: _scalar_json(v) for m, v in values.items()}}
    lines = []
    status = EXIT_OK
    if len(methods) == 1:
        lines.append(format_scalar(values[methods[0]]))
        result["value"] = _scalar_json(values[methods[0]])
    else:
        agree = values_agree(list(values.values()), args.kind, args.rtol, args.atol)
        verdict = "agree" if agree else "DISAGREE"
        if args.kind == FLOAT:
            verdict += f" (rtol={args.rtol:g}, atol={args.atol:g})"
        else:
            verdict += " (exact)"
        lines.extend(f"{m}: {format_scalar(v)}" for m, v in values.items())
        lines.append(verdict)
        result["agree"] = agree
        if agree:
            result["value"] = _scalar_json(values["closed"])
        else:
            status = EXIT_CONSISTENCY
    _emit(args, "derive", inputs, result, timing, lines)
    return status


def cmd_check(args):
    max_enum, _ = _caps(args)
    if args.n_max < 0 or args.trials < 0:
        raise UsageError("--n-max and --trials must be nonnegative")
    t0 = time.perf_counter_ns()
    results = run_all(args.n_max, args.trials, args.seed, args.inject_mutation, max_enum)
    elapsed = time.perf_counter_ns() - t0
    ok = all(r.ok for r in results)
    lines = [f"{r.name}: {'PASS' if r.ok else 'FAIL'} ({r.cases} cases; {r.detail})" for r in results]
    lines.append("all suites passed" if ok else "FAILURES detected")
    inputs = {"n_max": args.n_max, "trials": args.trials, "seed": args.seed}
    _emit(args, "check", inputs, {"ok": ok, "suites": [r.to_json() for r in results]}, elapsed, lines)
    return EXIT_OK if ok else EXIT_CONSISTENCY


def _best_time(fn, reps):
    best, value = None, None
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        value = fn()
        dt = time.perf_counter_ns() - t0
        best = dt if best is None else min(best, dt)
    return best, value


def run_bench(n, reps, seed, max_enum, max_order, backends=None):
    """Time the three methods on seeded random rational inputs of order ``n``."""
    rng = random.Random(seed)
    f_seq, g_seq = random_sequence(rng, n), random_sequence(rng, n)
    x0 = 0
    timing, values = {}, {}
    for name in backends or (kernels.BACKEND,):
        key = "combinatorial" if backends is None else f"combinatorial[{name}]"
        timing[key], values[key] = _best_time(
            lambda: derivative_of_composition_combinatorial(f_seq, g_seq, n, max_enum, name), reps
        )
    timing["closed"], values["closed"] = _best_time(
        lambda: derivative_of_composition_closed_form(f_seq, g_seq, n, max_order), reps
    )
    timing["oracle"], values["oracle"] = _best_time(lambda: oracle_nth_derivative(f_seq, g_seq, n, x0), reps)
    terms = {
        "combinatorial": comb.bell_number(n),
        "closed": len(comb.enumerate_block_profiles(n)),
        "integer_partitions": comb.integer_partition_count(n),
    }
    return terms, values, timing


def cmd_bench(args):
    max_enum, max_order = _caps(args)
    if args.reps < 1:
        raise UsageError("--reps must be at least 1")
    comb.check_cap("bench", args.n, max_order)
    comb.check_cap("combinatorial evaluator", args.n, max_enum)
    backends = kernels.available_backends() if args.compare_backends else None
    terms, values, timing = run_bench(args.n, args.reps, args.seed, max_enum, max_order, backends)
    agree = values_agree(list(values.values()), EXACT)
    comb_key = min(k for k in timing if k.startswith("combinatorial"))
    speedup = timing[comb_key] / max(timing["closed"], 1)
    lines = [f"order n={args.n}  backend={kernels.BACKEND}  reps={args.reps}"]
    for m, t in timing.items():
        count = terms["combinatorial"] if m.startswith("combinatorial") else terms.get(m, "-")
        lines.append(f"{m:>26}: {t / 1e6:12.3f} ms  terms={count}")
    lines.append(f"closed-form speedup over {comb_key}: {speedup:.1f}x")
    lines.append(f"all methods agree: {agree}")
    inputs = {"n": args.n, "reps": args.reps, "seed": args.seed, "compare_backends": args.compare_backends}
    result = {
        "backend": kernels.BACKEND,
        "terms": terms,
        "value": format_scalar(values["closed"]),
        "agree": agree,
    }
    timing["speedup_closed_vs_combinatorial"] = speedup
    _emit(args, "bench", inputs, result, timing, lines)
    return EXIT_OK if agree else EXIT_CONSISTENCY


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object on stdout")
    common.add_argument("--max-enum", type=int, default=None, help="partition enumeration cap (env FDB_MAX_ENUM, default 14)")
    common.add_argument("--max-order", type=int, default=None, help="closed-form order cap (env FDB_MAX_ORDER, default 30)")

    parser = _ArgumentParser(
        prog="faadibruno",
        description="Higher-order derivatives of compositions via set partitions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("partitions", parents=[common], help="list all partitions of {1..n}")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("profiles", parents=[common], help="list block profiles of n with their partition counts")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_profiles)

    p = sub.add_parser(
        "derive",
        parents=[common],
        help="n-th derivative of f(g(x)) at a point",
        description="Expressions use x, integers, p/q literals, + - * / ^, exp ln sin cos. "
        "Unary minus binds looser than ^ (-x^2 = -(x^2)); ^ takes an integer literal and does not chain.",
    )
    p.add_argument("--f", required=True, help="outer function of x")
    p.add_argument("--g", required=True, help="inner function of x")
    p.add_argument("--at", required=True, help="evaluation point (p/q; decimals allowed in float kind)")
    p.add_argument("--n", type=int, required=True, help="derivative order")
    p.add_argument("--method", choices=METHODS + ("all",), default="closed")
    p.add_argument("--kind", choices=(EXACT, FLOAT), default=EXACT)
    p.add_argument("--rtol", type=float, default=1e-9, help="relative tolerance for float agreement")
    p.add_argument("--atol", type=float, default=0.0, help="absolute tolerance for float agreement")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("check", parents=[common], help="run the bijection, counting and evaluator suites")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-mutation", choices=MUTATIONS, default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", parents=[common], help="time combinatorial vs closed-form vs oracle evaluation")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--compare-backends",
        action="store_true",
        help="time the combinatorial evaluator on every available kernel backend",
    )
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as err:
        print(f"error: {err} (raise it with --max-enum / --max-order)", file=sys.stderr)
        return EXIT_CAP
    except FaaDiBrunoError as err:
        span = getattr(err, "span", None)
        where = f" [source bytes {span[0]}..{span[1]}]" if span else ""
        print(f"error: {type(err).__name__}: {err}{where}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OverflowError, ZeroDivisionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
