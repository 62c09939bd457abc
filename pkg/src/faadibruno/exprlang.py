"""A small expression language in one variable ``x`` and its jet evaluator.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := "-" factor | base ("^" ["-"] integer)?
    base   := number | "x" | name "(" expr ")" | "(" expr ")"
    number := integer | integer "/" integer      (no whitespace inside)

Unary minus binds looser than ``^`` (``-x^2`` is ``-(x^2)``), ``^`` does not
chain (``x^2^3`` is an error) and exponents are integer literals.  The
functions are ``exp``, ``ln``, ``sin`` and ``cos``.  Error offsets are byte
offsets into the UTF-8 encoded source.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import jets
from .errors import DomainError, FaaDiBrunoError, KindError
from .jets import Jet
from .scalars import EXACT, coerce

FUNCTIONS = ("exp", "ln", "sin", "cos")
MAX_DEPTH = 200
MAX_EXPONENT = 10_000


class ParseError(FaaDiBrunoError, ValueError):
    def __init__(self, offset, message, expected=None):
        self.offset = offset
        self.message = message
        self.expected = expected
        text = f"offset {offset}: {message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


# Spans are excluded from equality so trees compare structurally.
@dataclass(frozen=True)
class NumberLiteral:
    value: Fraction
    span: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Variable:
    span: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Unary:
    op: str
    operand: object
    span: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object
    span: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    name: str
    arg: object
    span: tuple = field(default=(0, 0), compare=False, repr=False)


_OPS = {"+": "add", "-": "sub", "*": "mul", "/": "div"}
_SYMBOLS = {v: k for k, v in _OPS.items()} | {"pow": "^"}
_WHITESPACE = b" \t\r\n"


@dataclass
class _Token:
    kind: str  # "num", "name", "op", "eof"
    text: str
    start: int
    end: int
    value: Fraction = None
    is_int: bool = True


def _tokenize(src):
    toks = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c in _WHITESPACE:
            i += 1
            continue
        start = i
        if 48 <= c <= 57:
            while i < n and 48 <= src[i] <= 57:
                i += 1
            is_int = True
            if i + 1 < n and src[i] == 0x2F and 48 <= src[i + 1] <= 57:
                i += 1
                while i < n and 48 <= src[i] <= 57:
                    i += 1
                is_int = False
            text = src[start:i].decode("ascii")
            num, _, den = text.partition("/")
            try:
                num, den = int(num), int(den) if den else 1
            except ValueError:
                raise ParseError(start, "numeric literal too long") from None
            if den == 0:
                raise ParseError(start, "zero denominator in rational literal")
            value = Fraction(num, den)
            toks.append(_Token("num", text, start, i, value, is_int))
        elif c == 0x5F or 65 <= c <= 90 or 97 <= c <= 122:
            while i < n and (src[i] == 0x5F or 65 <= src[i] <= 90 or 97 <= src[i] <= 122 or 48 <= src[i] <= 57):
                i += 1
            toks.append(_Token("name", src[start:i].decode("ascii"), start, i))
        elif c in b"+-*/^()":
            i += 1
            toks.append(_Token("op", chr(c), start, i))
        else:
            raise ParseError(start, f"unexpected byte 0x{c:02x}")
    toks.append(_Token("eof", "", n, n))
    return toks


class _Parser:
    def __init__(self, src):
        self.toks = _tokenize(src)
        self.pos = 0
        self.depth = 0
        self.heights = {}

    def node(self, cls, *args, span, children=()):
        """Build a tree node, refusing trees too tall to evaluate or print recursively."""
        h = 1 + max((self.heights[id(c)] for c in children), default=0)
        if h > MAX_DEPTH:
            raise ParseError(span[0], f"expression nested deeper than {MAX_DEPTH} levels")
        out = cls(*args, span=span)
        self.heights[id(out)] = h
        return out

    @property
    def tok(self):
        return self.toks[self.pos]

    def advance(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def at_op(self, *ops):
        return self.tok.kind == "op" and self.tok.text in ops

    def expect_op(self, op, expected):
        if not self.at_op(op):
            raise ParseError(self.tok.start, f"unexpected {self._describe(self.tok)}", expected)
        return self.advance()

    @staticmethod
    def _describe(t):
        return "end of input" if t.kind == "eof" else repr(t.text)

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError(self.tok.start, f"expression nested deeper than {MAX_DEPTH} levels")

    def parse(self):
        e = self.expr()
        if self.tok.kind != "eof":
            raise ParseError(self.tok.start, f"unexpected {self._describe(self.tok)}", "operator or end of input")
        return e

    def expr(self):
        self.enter()
        left = self.term()
        while self.at_op("+", "-"):
            op = _OPS[self.advance().text]
            right = self.term()
            left = self.node(Binary, op, left, right, span=(left.span[0], right.span[1]), children=(left, right))
        self.depth -= 1
        return left

    def term(self):
        left = self.factor()
        while self.at_op("*", "/"):
            op = _OPS[self.advance().text]
            right = self.factor()
            left = self.node(Binary, op, left, right, span=(left.span[0], right.span[1]), children=(left, right))
        return left

    def factor(self):
        if self.at_op("-"):
            start = self.advance().start
            self.enter()
            operand = self.factor()
            self.depth -= 1
            return self.node(Unary, "neg", operand, span=(start, operand.span[1]), children=(operand,))
        b = self.base()
        if not self.at_op("^"):
            return b
        self.advance()
        neg_start = None
        if self.at_op("-"):
            neg_start = self.advance().start
        t = self.tok
        if t.kind != "num" or not t.is_int:
            raise ParseError(t.start, "exponent must be an integer literal", "integer")
        self.advance()
        value = -t.value if neg_start is not None else t.value
        exponent = self.node(NumberLiteral, value, span=(neg_start if neg_start is not None else t.start, t.end))
        if self.at_op("^"):
            raise ParseError(self.tok.start, "'^' does not chain; add parentheses", "operator or end of input")
        return self.node(Binary, "pow", b, exponent, span=(b.span[0], t.end), children=(b, exponent))

    def base(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return self.node(NumberLiteral, t.value, span=(t.start, t.end))
        if t.kind == "name":
            if t.text == "x":
                self.advance()
                return self.node(Variable, span=(t.start, t.end))
            if t.text not in FUNCTIONS:
                raise ParseError(t.start, f"unknown name {t.text!r}", "x or one of " + ", ".join(FUNCTIONS))
            self.advance()
            self.expect_op("(", "'('")
            arg = self.expr()
            close = self.expect_op(")", "')'")
            return self.node(Call, t.text, arg, span=(t.start, close.end), children=(arg,))
        if self.at_op("("):
            self.advance()
            inner = self.expr()
            self.expect_op(")", "')'")
            return inner
        raise ParseError(t.start, f"unexpected {self._describe(t)}", "expression")


def parse(src):
    """Parse text (or raw bytes) into an expression tree; raises ParseError."""
    if isinstance(src, str):
        src = src.encode("utf-8")
    return _Parser(bytes(src)).parse()


def to_source(e):
    """Render a tree as text that parses back to an equal tree."""
    if isinstance(e, NumberLiteral):
        return str(e.value)
    if isinstance(e, Variable):
        return "x"
    if isinstance(e, Call):
        return f"{e.name}({to_source(e.arg)})"
    if isinstance(e, Unary):
        inner = to_source(e.operand)
        if isinstance(e.operand, Binary) and e.operand.op != "pow":
            inner = f"({inner})"
        return "-" + inner
    if e.op == "pow":
        base = to_source(e.left)
        if not isinstance(e.left, (Variable, Call)) and not (
            isinstance(e.left, NumberLiteral) and e.left.value >= 0
        ):
            base = f"({base})"
        return f"{base}^{e.right.value}"
    left, right = to_source(e.left), to_source(e.right)
    if e.op in ("add", "sub"):
        if isinstance(e.right, Binary) and e.right.op in ("add", "sub"):
            right = f"({right})"
    else:
        if isinstance(e.left, Binary) and e.left.op in ("add", "sub"):
            left = f"({left})"
        if isinstance(e.right, Binary) and e.right.op != "pow":
            right = f"({right})"
    # spaces keep "a / 1 / 2" from re-lexing as a rational literal
    return f"{left} {_SYMBOLS[e.op]} {right}"


def _calls(e):
    if isinstance(e, Call):
        yield e
        yield from _calls(e.arg)
    elif isinstance(e, Unary):
        yield from _calls(e.operand)
    elif isinstance(e, Binary):
        yield from _calls(e.left)
        yield from _calls(e.right)


def _with_span(err, node):
    if getattr(err, "span", None) is None:
        err.span = node.span
    return err


def eval_jet(e, point, order, kind=EXACT):
    """Taylor jet of the expression around ``point``, truncated at ``order``."""
    if kind == EXACT:
        for call in _calls(e):
            raise _with_span(KindError(f"{call.name} is not available in exact kind"), call)
    return _eval(e, coerce(point, kind), order, kind)


def _eval(e, point, order, kind):
    if isinstance(e, NumberLiteral):
        return Jet.constant(coerce(e.value, kind), point, order, kind)
    if isinstance(e, Variable):
        return Jet.variable(point, order, kind)
    try:
        if isinstance(e, Unary):
            return jets.jet_scale(_eval(e.operand, point, order, kind), -1)
        if isinstance(e, Call):
            u = _eval(e.arg, point, order, kind)
            if e.name == "exp":
                return jets.jet_exp(u)
            if e.name == "ln":
                return jets.jet_ln(u)
            if e.name == "sin":
                return jets.jet_sin(u)
            return jets.jet_cos(u)
        a = _eval(e.left, point, order, kind)
        if e.op == "pow":
            m = int(e.right.value)
            if abs(m) > MAX_EXPONENT:
                raise DomainError(f"exponent {m} exceeds the supported magnitude {MAX_EXPONENT}")
            return jets.jet_int_pow(a, m)
        b = _eval(e.right, point, order, kind)
        if e.op == "add":
            return jets.jet_add(a, b)
        if e.op == "sub":
            return jets.jet_sub(a, b)
        if e.op == "mul":
            return jets.jet_mul(a, b)
        return jets.jet_div(a, b)
    except (DomainError, KindError) as err:
        raise _with_span(err, e)


def derivative_sequence(e, point, order, kind=EXACT):
    """Derivatives of orders 0..order of the expression at ``point``."""
    return jets.derivative_sequence_from_jet(eval_jet(e, point, order, kind))
