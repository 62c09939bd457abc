"""Self-checking suites run by ``faadibruno check`` and reused by the tests.

Each suite returns a :class:`SuiteResult`.  ``mutation`` names a deliberate
fault to inject, which lets tests confirm the suites actually catch errors.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import combinatorics as comb
from .faa_di_bruno import (
    derivative_of_composition_closed_form,
    derivative_of_composition_combinatorial,
)
from .jets import oracle_nth_derivative
from .scalars import EXACT, DerivativeSequence

MUTATIONS = ("extend_partition", "profile_count", "closed_form")


@dataclass
class SuiteResult:
    name: str
    ok: bool
    cases: int
    detail: str = ""

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "cases": self.cases, "detail": self.detail}


def random_rational(rng, num_bound=20, den_bound=9):
    return Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound))


def random_sequence(rng, n, num_bound=20, den_bound=9):
    return DerivativeSequence(tuple(random_rational(rng, num_bound, den_bound) for _ in range(n + 1)), EXACT)


def poly_eval(coeffs, x):
    acc = coeffs[0] * 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivatives(coeffs, x, n):
    """Derivatives of orders 0..n of ``sum coeffs[i] x**i`` at ``x``."""
    out = []
    cur = list(coeffs)
    for _ in range(n + 1):
        out.append(poly_eval(cur, x) if cur else coeffs[0] * 0)
        cur = [i * c for i, c in enumerate(cur)][1:]
    return DerivativeSequence(tuple(out), EXACT if isinstance(out[0], Fraction) else "float")


def random_polynomial_pair(rng, n, max_degree=6):
    """Derivative sequences of random rational polynomials f, g composed at a random point."""
    f = [random_rational(rng, 9, 5) for _ in range(rng.randint(0, max_degree) + 1)]
    g = [random_rational(rng, 9, 5) for _ in range(rng.randint(0, max_degree) + 1)]
    x0 = random_rational(rng, 5, 3)
    g_seq = poly_derivatives(g, x0, n)
    f_seq = poly_derivatives(f, g_seq[0], n)
    return f_seq, g_seq, x0


def _mutated_extend(p):
    out = comb.extend_partition(p)
    if p.n >= 2 and p.num_blocks >= 2:
        # adds n+1 to the first block twice instead of once to the last
        out[-1] = out[1]
    return out


def check_bijection(n_max, mutation=None, max_enum=comb.DEFAULT_MAX_ENUM):
    """Extending every partition of {1..n} covers each partition of {1..n+1} exactly once."""
    extend = _mutated_extend if mutation == "extend_partition" else comb.extend_partition
    cases = 0
    for n in range(0, n_max + 1):
        produced = Counter()
        for p in comb.enumerate_set_partitions(n, max_enum):
            children = extend(p)
            if len(children) != p.num_blocks + 1:
                return SuiteResult("bijection", False, cases, f"n={n}: {p} has {len(children)} extensions")
            produced.update(c.rgs for c in children)
        expected = Counter(p.rgs for p in comb.enumerate_set_partitions(n + 1, max_enum))
        cases += 1
        if produced != expected:
            dup = [rgs for rgs, m in produced.items() if m != 1]
            missing = len(expected - produced)
            return SuiteResult("bijection", False, cases, f"n={n}: {len(dup)} repeated, {missing} missing")
    return SuiteResult("bijection", True, cases, f"n=0..{n_max}")


def check_counts(n_max, mutation=None, max_enum=comb.DEFAULT_MAX_ENUM):
    """Profile counts match exhaustive classification and sum to Bell numbers."""

    def count(pf):
        c = comb.profile_count(pf)
        return c + 1 if mutation == "profile_count" and pf.n >= 3 and pf.num_blocks == 2 else c

    cases = 0
    for n in range(1, n_max + 1):
        observed = Counter(comb.block_profile(p) for p in comb.enumerate_set_partitions(n, max_enum))
        profiles = comb.enumerate_block_profiles(n)
        if set(profiles) != set(observed) or len(profiles) != comb.integer_partition_count(n):
            return SuiteResult("counts", False, cases, f"n={n}: profile set differs from classification")
        for pf in profiles:
            cases += 1
            if count(pf) != observed[pf]:
                return SuiteResult("counts", False, cases, f"n={n} k={pf}: formula {count(pf)} vs {observed[pf]}")
        if sum(count(pf) for pf in profiles) != comb.bell_number(n):
            return SuiteResult("counts", False, cases, f"n={n}: counts do not sum to Bell({n})")
    return SuiteResult("counts", True, cases, f"n=1..{n_max}")


def check_evaluators(n_max, trials, seed, mutation=None, max_enum=comb.DEFAULT_MAX_ENUM, backend=None):
    """Combinatorial, closed-form and jet-oracle evaluators agree exactly on random inputs."""
    rng = random.Random(seed)
    cases = 0
    for n in range(1, n_max + 1):
        for _ in range(trials):
            if rng.random() < 0.5:
                f_seq, g_seq = random_sequence(rng, n), random_sequence(rng, n)
                x0 = random_rational(rng)
            else:
                f_seq, g_seq, x0 = random_polynomial_pair(rng, n)
            a = derivative_of_composition_combinatorial(f_seq, g_seq, n, max_enum, backend)
            b = derivative_of_composition_closed_form(f_seq, g_seq, n)
            if mutation == "closed_form" and n >= 2:
                b += Fraction(1, 7)
            c = oracle_nth_derivative(f_seq, g_seq, n, x0)
            cases += 1
            if not a == b == c:
                return SuiteResult("evaluators", False, cases, f"n={n}: {a} / {b} / {c}")
    return SuiteResult("evaluators", True, cases, f"n=1..{n_max}, {trials} trials each")


def run_all(n_max, trials, seed, mutation=None, max_enum=comb.DEFAULT_MAX_ENUM):
    return [
        check_bijection(min(n_max, max_enum - 1), mutation, max_enum) if n_max > 0 else SuiteResult("bijection", True, 0, "vacuous"),
        check_counts(min(n_max, max_enum), mutation, max_enum),
        check_evaluators(min(n_max, max_enum), trials, seed, mutation, max_enum),
    ]


def values_agree(values, kind, rtol=1e-9, atol=0.0):
    """Exact equality in exact kind, ``math.isclose`` pairwise in float kind."""
    if kind == EXACT:
        return all(v == values[0] for v in values)
    return all(math.isclose(a, b, rel_tol=rtol, abs_tol=atol) for a in values for b in values)
