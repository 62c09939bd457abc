"""Scalar kinds, rational text format and derivative sequences.

Two scalar kinds are supported everywhere: ``"exact"`` values are
:class:`fractions.Fraction` and ``"float"`` values are Python floats
(IEEE-754 binary64).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import KindError, OrderMismatch

EXACT = "exact"
FLOAT = "float"
KINDS = (EXACT, FLOAT)

_RATIONAL_RE = re.compile(r"([+-]?)(\d+)(?:/(\d+))?\Z")


def parse_rational(text):
    """Parse ``"-3/7"``, ``"+5"`` or ``"12"`` into a Fraction.

    Decimal points, exponents and whitespace are rejected.
    """
    m = _RATIONAL_RE.match(text.strip() if isinstance(text, str) else "")
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, num, den = m.groups()
    den = int(den) if den is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    value = Fraction(int(num), den)
    return -value if sign == "-" else value


def parse_scalar(text, kind):
    """Parse a scalar of the given kind; floats also accept decimal notation."""
    check_kind(kind)
    if kind == EXACT:
        return parse_rational(text)
    try:
        return float(parse_rational(text))
    except ValueError:
        return float(text)


def format_scalar(value):
    """Render a scalar losslessly: ``p/q`` for rationals, 17 significant digits for floats."""
    if isinstance(value, Fraction):
        return str(value)
    return format(value, ".17g")


def check_kind(kind):
    if kind not in KINDS:
        raise KindError(f"unknown scalar kind {kind!r}; expected one of {KINDS}")


def coerce(value, kind):
    """Convert an int/Fraction/float into the scalar type of ``kind``."""
    if kind == EXACT:
        if isinstance(value, float):
            raise KindError("float value given where an exact rational is required")
        return Fraction(value)
    return float(value)


def kind_of(value):
    if isinstance(value, Fraction):
        return EXACT
    if isinstance(value, float):
        return FLOAT
    raise KindError(f"unsupported scalar type {type(value).__name__}")


@dataclass(frozen=True)
class DerivativeSequence:
    """Values ``h(p), h'(p), ..., h^(n)(p)`` of a function at a fixed point."""

    values: tuple
    kind: str = EXACT

    def __post_init__(self):
        check_kind(self.kind)
        if len(self.values) == 0:
            raise OrderMismatch("a derivative sequence needs at least the value itself")
        object.__setattr__(self, "values", tuple(coerce(v, self.kind) for v in self.values))

    @classmethod
    def of(cls, values, kind=None):
        """Build from plain numbers, inferring the kind when not given."""
        values = list(values)
        if kind is None:
            kind = FLOAT if any(isinstance(v, float) for v in values) else EXACT
        return cls(tuple(values), kind)

    @property
    def order(self):
        return len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def truncated(self, n):
        if n > self.order:
            raise OrderMismatch(f"sequence of order {self.order} cannot supply order {n}")
        return DerivativeSequence(self.values[: n + 1], self.kind)

    def to_json(self):
        if self.kind == EXACT:
            vals = [str(v) for v in self.values]
        else:
            vals = list(self.values)
        return {"order": self.order, "values": vals}

    @classmethod
    def from_json(cls, obj, kind=None):
        values = obj["values"]
        if kind is None:
            kind = EXACT if all(isinstance(v, (str, int)) for v in values) else FLOAT
        parsed = [parse_scalar(v, kind) if isinstance(v, str) else coerce(v, kind) for v in values]
        seq = cls(tuple(parsed), kind)
        if "order" in obj and obj["order"] != seq.order:
            raise OrderMismatch(f"declared order {obj['order']} but {len(values)} values given")
        return seq
