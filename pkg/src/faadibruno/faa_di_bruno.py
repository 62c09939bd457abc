"""n-th derivative of a composition f(g(x)) from derivative values of f and g.

``f_seq[k]`` is the k-th derivative of f at g(x) and ``g_seq[i]`` the i-th
derivative of g at x.  Two evaluators are provided:

* :func:`derivative_of_composition_combinatorial` sums one term per set
  partition of {1..n} (Bell(n) terms), streamed by the partition kernel;
* :func:`derivative_of_composition_closed_form` sums one term per block
  profile (p(n) terms) weighted by the number of partitions with that profile.

For n = 0 both return ``f_seq[0]`` (the empty partition), an extension of the
usual n > 0 statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import kernels
from .combinatorics import (
    DEFAULT_MAX_ENUM,
    DEFAULT_MAX_ORDER,
    BlockProfile,
    check_cap,
    enumerate_block_profiles,
    profile_count,
)
from .errors import KindError, OrderMismatch
from .scalars import EXACT, DerivativeSequence


def _as_sequence(seq):
    if isinstance(seq, DerivativeSequence):
        return seq
    return DerivativeSequence.of(seq)


def _check_inputs(f_seq, g_seq, n):
    f_seq, g_seq = _as_sequence(f_seq), _as_sequence(g_seq)
    if f_seq.kind != g_seq.kind:
        raise KindError(f"f is {f_seq.kind} but g is {g_seq.kind}")
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    for name, seq in (("f", f_seq), ("g", g_seq)):
        if seq.order < n:
            raise OrderMismatch(f"{name} sequence has order {seq.order}, order {n} requested")
    return f_seq, g_seq


def derivative_of_composition_combinatorial(f_seq, g_seq, n, max_enum=DEFAULT_MAX_ENUM, backend=None):
    """Sum over all partitions pi of {1..n} of ``f[|pi|] * prod_{B in pi} g[|B|]``.

    Terms are added in restricted-growth lexicographic order; partitions are
    streamed, never materialised.
    """
    f_seq, g_seq = _check_inputs(f_seq, g_seq, n)
    check_cap("combinatorial evaluator", n, max_enum)
    if n == 0:
        return f_seq[0]
    f = f_seq.values[: n + 1]
    g = g_seq.values[: n + 1]
    if f_seq.kind != EXACT:
        return kernels.partition_sum_float(f, g, n, backend)

    # Clear denominators so the kernel works over the integers:
    # f[k] = F[k] / df, g[i] = G[i] / dg, and each term carries dg**(n-k).
    df = lcm(*(v.denominator for v in f[1:]))
    dg = lcm(*(v.denominator for v in g[1:]))
    F = [0] + [(f[k] * df).numerator * dg ** (n - k) for k in range(1, n + 1)]
    G = [0] + [(g[i] * dg).numerator for i in range(1, n + 1)]
    total = kernels.partition_sum_int(F, G, n, backend)
    return Fraction(total, df * dg**n)


def _closed_form_sum(f, g, profiles, exact):
    total = Fraction(0) if exact else 0.0
    for pf in profiles:
        coeff = profile_count(pf)
        term = (coeff if exact else float(coeff)) * f[pf.num_blocks]
        for i, c in enumerate(pf.k, start=1):
            if c:
                term *= g[i] ** c
        total += term
    return total


def derivative_of_composition_closed_form(f_seq, g_seq, n, max_order=DEFAULT_MAX_ORDER):
    """Sum over block profiles k of ``count(k) * f[sum k] * prod_i g[i]**k_i``."""
    f_seq, g_seq = _check_inputs(f_seq, g_seq, n)
    check_cap("closed-form evaluator", n, max_order)
    if n == 0:
        return f_seq[0]
    return _closed_form_sum(f_seq.values, g_seq.values, enumerate_block_profiles(n), f_seq.kind == EXACT)


def all_derivatives_of_composition(f_seq, g_seq, n, max_order=DEFAULT_MAX_ORDER):
    """Derivatives of orders 0..n of f(g(x)), via the closed form."""
    f_seq, g_seq = _check_inputs(f_seq, g_seq, n)
    check_cap("closed-form evaluator", n, max_order)
    values = [derivative_of_composition_closed_form(f_seq, g_seq, m, max_order) for m in range(n + 1)]
    return DerivativeSequence(tuple(values), f_seq.kind)


@dataclass(frozen=True)
class TermExpansion:
    """Collected closed form: one ``(profile, multiplicity)`` pair per block profile."""

    n: int
    terms: tuple

    @property
    def multiplicities(self):
        return tuple(m for _, m in self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def to_json(self):
        return {
            "n": self.n,
            "terms": [{"k": list(pf.k), "multiplicity": m} for pf, m in self.terms],
        }

    def to_text(self):
        """Render e.g. ``f3*g1^3 + 3*f2*g1*g2 + f1*g3`` (fK = f^(K)(g(x)), gI = g^(I)(x))."""
        if self.n == 0:
            return "f0"
        pieces = []
        for pf, m in self.terms:
            factors = [f"f{pf.num_blocks}"]
            for i, c in enumerate(pf.k, start=1):
                if c == 1:
                    factors.append(f"g{i}")
                elif c > 1:
                    factors.append(f"g{i}^{c}")
            body = "*".join(factors)
            pieces.append(body if m == 1 else f"{m}*{body}")
        return " + ".join(pieces)


def symbolic_expansion(n, max_order=DEFAULT_MAX_ORDER):
    check_cap("symbolic_expansion", n, max_order)
    if n == 0:
        return TermExpansion(0, ((BlockProfile(0, ()), 1),))
    return TermExpansion(n, tuple((pf, profile_count(pf)) for pf in enumerate_block_profiles(n)))
