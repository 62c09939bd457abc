"""Compare the compiled and pure-Python partition-sum kernels.

    python benchmarks/bench_kernels.py --n-max 12 --reps 3 [--json]

For each order the exact (rational) and float combinatorial evaluators are
timed on both backends with the same seeded inputs, and the results are
checked for equality (bit-identical in float kind).
"""

import argparse
import json
import random
import time

from faadibruno import kernels
from faadibruno.checks import random_sequence
from faadibruno.combinatorics import bell_number
from faadibruno.faa_di_bruno import derivative_of_composition_combinatorial
from faadibruno.scalars import DerivativeSequence


def best_of(fn, reps):
    best, value = float("inf"), None
    for _ in range(reps):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=6)
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    backends = kernels.available_backends()
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        rng = random.Random(args.seed + n)
        f, g = random_sequence(rng, n), random_sequence(rng, n)
        ff = DerivativeSequence(tuple(float(v) for v in f), "float")
        gf = DerivativeSequence(tuple(float(v) for v in g), "float")
        row = {"n": n, "terms": bell_number(n)}
        results = {}
        for b in backends:
            row[f"exact_{b}_s"], results[("exact", b)] = best_of(
                lambda: derivative_of_composition_combinatorial(f, g, n, backend=b), args.reps
            )
            row[f"float_{b}_s"], results[("float", b)] = best_of(
                lambda: derivative_of_composition_combinatorial(ff, gf, n, backend=b), args.reps
            )
        row["identical"] = all(
            len({results[(kind, b)] for b in backends}) == 1 for kind in ("exact", "float")
        )
        rows.append(row)
        if not args.json:
            cells = "  ".join(f"{k}={v:.4f}" for k, v in row.items() if k.endswith("_s"))
            speed = ""
            if len(backends) == 2:
                speed = "  speedup exact={:.1f}x float={:.1f}x".format(
                    row["exact_python_s"] / row["exact_compiled_s"], row["float_python_s"] / row["float_compiled_s"]
                )
            print(f"n={n:2d} terms={row['terms']:>8d}  {cells}{speed}  identical={row['identical']}")
    if args.json:
        print(json.dumps({"backends": list(backends), "rows": rows}))


if __name__ == "__main__":
    main()
