"""Truncated Taylor series ("jets") and their composition.

A jet of order n around a point p stores ``coeffs[i] = h^(i)(p) / i!`` for
i = 0..n.  Jets form a ring under coefficientwise addition and the truncated
Cauchy product, and compose by Horner's rule.  Nothing here touches set
partitions, which is what makes :func:`oracle_nth_derivative` an independent
check on the partition-based evaluators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import DomainError, KindError, OrderMismatch, PointMismatch
from .scalars import EXACT, FLOAT, DerivativeSequence, check_kind, coerce, parse_scalar

#: absolute tolerance when matching an outer expansion point to an inner value (float kind)
POINT_TOL = 1e-9


@dataclass(frozen=True)
class Jet:
    order: int
    point: object
    coeffs: tuple
    kind: str = EXACT

    def __post_init__(self):
        check_kind(self.kind)
        coeffs = tuple(coerce(c, self.kind) for c in self.coeffs)
        if len(coeffs) != self.order + 1:
            raise OrderMismatch(f"order {self.order} jet needs {self.order + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "point", coerce(self.point, self.kind))

    @classmethod
    def constant(cls, value, point, order, kind=EXACT):
        zero = coerce(0, kind)
        return cls(order, point, (coerce(value, kind),) + (zero,) * order, kind)

    @classmethod
    def variable(cls, point, order, kind=EXACT):
        """Jet of the identity function x -> x around ``point``."""
        coeffs = [coerce(point, kind)] + [coerce(0, kind)] * order
        if order >= 1:
            coeffs[1] = coerce(1, kind)
        return cls(order, point, tuple(coeffs), kind)

    def __getitem__(self, i):
        return self.coeffs[i]

    def _like(self, coeffs):
        return Jet(self.order, self.point, tuple(coeffs), self.kind)

    def to_json(self):
        if self.kind == EXACT:
            return {"order": self.order, "point": str(self.point), "coeffs": [str(c) for c in self.coeffs]}
        return {"order": self.order, "point": self.point, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj, kind=None):
        if kind is None:
            kind = EXACT if isinstance(obj["point"], (str, int)) else FLOAT

        def conv(v):
            return parse_scalar(v, kind) if isinstance(v, str) else coerce(v, kind)

        return cls(obj["order"], conv(obj["point"]), tuple(conv(c) for c in obj["coeffs"]), kind)


def _one(kind):
    return coerce(1, kind)


def _require_compatible(a, b):
    if a.kind != b.kind:
        raise KindError(f"cannot combine {a.kind} and {b.kind} jets")
    if a.order != b.order:
        raise OrderMismatch(f"jet orders differ: {a.order} vs {b.order}")
    if a.point != b.point:
        raise PointMismatch(f"jets expanded around different points: {a.point} vs {b.point}")


def _require_float(u, name):
    if u.kind != FLOAT:
        raise KindError(f"{name} of a jet is only available in float kind")


def jet_from_derivative_sequence(d, point):
    kind = d.kind
    coeffs = []
    for i, v in enumerate(d.values):
        coeffs.append(v / factorial(i) if kind == FLOAT else Fraction(v, factorial(i)))
    return Jet(d.order, point, tuple(coeffs), kind)


def derivative_sequence_from_jet(j):
    return DerivativeSequence(tuple(c * factorial(i) for i, c in enumerate(j.coeffs)), j.kind)


def jet_add(a, b):
    _require_compatible(a, b)
    return a._like(x + y for x, y in zip(a.coeffs, b.coeffs))


def jet_sub(a, b):
    _require_compatible(a, b)
    return a._like(x - y for x, y in zip(a.coeffs, b.coeffs))


def jet_scale(a, c):
    c = coerce(c, a.kind)
    return a._like(c * x for x in a.coeffs)


def _cauchy(a, b, n):
    return [sum((a[j] * b[m - j] for j in range(m + 1)), start=a[0] * 0) for m in range(n + 1)]


def jet_mul(a, b):
    """Truncated Cauchy product: ``out[m] = sum_{j<=m} a[j] * b[m-j]``."""
    _require_compatible(a, b)
    return a._like(_cauchy(a.coeffs, b.coeffs, a.order))


def jet_div(a, b):
    _require_compatible(a, b)
    b0 = b[0]
    if b0 == 0:
        raise DomainError("division by a jet with zero constant term")
    q = []
    for m in range(a.order + 1):
        acc = a[m]
        for j in range(1, m + 1):
            acc -= b[j] * q[m - j]
        q.append(acc / b0)
    return a._like(q)


def jet_int_pow(u, m):
    """``u**m`` by repeated squaring; negative ``m`` goes through :func:`jet_div`."""
    if m < 0:
        return jet_div(Jet.constant(1, u.point, u.order, u.kind), jet_int_pow(u, -m))
    result = Jet.constant(1, u.point, u.order, u.kind)
    base = u
    while m:
        if m & 1:
            result = jet_mul(result, base)
        m >>= 1
        if m:
            base = jet_mul(base, base)
    return result


def jet_exp(u):
    _require_float(u, "exp")
    e = [math.exp(u[0])]
    for m in range(1, u.order + 1):
        e.append(sum(j * u[j] * e[m - j] for j in range(1, m + 1)) / m)
    return u._like(e)


def jet_ln(u):
    _require_float(u, "ln")
    u0 = u[0]
    if not u0 > 0:
        raise DomainError(f"ln needs a positive constant term, got {u0}")
    out = [math.log(u0)]
    for m in range(1, u.order + 1):
        acc = u[m] - sum(j * out[j] * u[m - j] for j in range(1, m)) / m
        out.append(acc / u0)
    return u._like(out)


def jet_sin_cos(u):
    _require_float(u, "sin/cos")
    s = [math.sin(u[0])]
    c = [math.cos(u[0])]
    for m in range(1, u.order + 1):
        s.append(sum(j * u[j] * c[m - j] for j in range(1, m + 1)) / m)
        c.append(-sum(j * u[j] * s[m - j] for j in range(1, m + 1)) / m)
    return u._like(s), u._like(c)


def jet_sin(u):
    return jet_sin_cos(u)[0]


def jet_cos(u):
    return jet_sin_cos(u)[1]


def points_match(outer_point, inner_value, kind, tol=POINT_TOL):
    if kind == EXACT:
        return outer_point == inner_value
    return abs(outer_point - inner_value) <= tol


def jet_compose(outer, inner, tol=POINT_TOL):
    """Jet of ``outer(inner(x))`` around ``inner.point``.

    ``outer`` must be expanded around the value ``inner[0]``.  Evaluated by
    Horner's rule in the series ``inner - inner[0]``, which has no constant
    term, so only truncated ring operations are needed.
    """
    if outer.kind != inner.kind:
        raise KindError(f"cannot compose {outer.kind} and {inner.kind} jets")
    if outer.order != inner.order:
        raise OrderMismatch(f"jet orders differ: {outer.order} vs {inner.order}")
    if not points_match(outer.point, inner[0], inner.kind, tol):
        raise PointMismatch(
            f"outer jet is expanded around {outer.point} but the inner function takes value {inner[0]}"
        )
    n = inner.order
    zero = coerce(0, inner.kind)
    delta = (zero,) + inner.coeffs[1:]
    acc = [outer[n]] + [zero] * n
    for i in range(n - 1, -1, -1):
        acc = _cauchy(acc, delta, n)
        acc[0] += outer[i]
    return Jet(n, inner.point, tuple(acc), inner.kind)


def oracle_nth_derivative(f_seq, g_seq, n, point, tol=POINT_TOL):
    """n-th derivative of f(g(x)) at ``point`` by composing Taylor jets.

    ``f_seq`` holds derivatives of f at ``g_seq[0]``.
    """
    if f_seq.kind != g_seq.kind:
        raise KindError(f"f is {f_seq.kind} but g is {g_seq.kind}")
    f_seq, g_seq = f_seq.truncated(n), g_seq.truncated(n)
    inner = jet_from_derivative_sequence(g_seq, point)
    outer = jet_from_derivative_sequence(f_seq, g_seq[0])
    return derivative_sequence_from_jet(jet_compose(outer, inner, tol))[n]
