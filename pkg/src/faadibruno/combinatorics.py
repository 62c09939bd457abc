"""Set partitions of {1,...,n}, block profiles and their counts.

A set partition is stored canonically as a restricted-growth string (RGS):
element ``j`` (1-based) belongs to block ``rgs[j-1]``, blocks are numbered
0, 1, 2, ... in order of their least element.  Block lists are derived views.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .errors import CapExceeded

DEFAULT_MAX_ENUM = 14
DEFAULT_MAX_ORDER = 30


def is_restricted_growth(rgs):
    top = -1
    for v in rgs:
        if not isinstance(v, int) or v < 0 or v > top + 1:
            return False
        top = max(top, v)
    return True


@dataclass(frozen=True)
class SetPartition:
    """A partition of ``{1, ..., n}`` in restricted-growth form."""

    rgs: tuple

    def __post_init__(self):
        rgs = tuple(self.rgs)
        if not is_restricted_growth(rgs):
            raise ValueError(f"not a restricted-growth string: {rgs}")
        object.__setattr__(self, "rgs", rgs)

    @property
    def n(self):
        return len(self.rgs)

    @property
    def num_blocks(self):
        return max(self.rgs) + 1 if self.rgs else 0

    def __len__(self):
        return self.num_blocks

    @property
    def blocks(self):
        """Blocks ordered by least element, elements ascending, 1-based."""
        out = [[] for _ in range(self.num_blocks)]
        for j, b in enumerate(self.rgs, start=1):
            out[b].append(j)
        return tuple(tuple(b) for b in out)

    @property
    def block_sizes(self):
        sizes = [0] * self.num_blocks
        for b in self.rgs:
            sizes[b] += 1
        return tuple(sizes)

    @classmethod
    def from_blocks(cls, blocks, n=None):
        """Build from any iterable of blocks covering ``{1, ..., n}``."""
        blocks = [sorted(b) for b in blocks]
        elems = sorted(e for b in blocks for e in b)
        if n is None:
            n = len(elems)
        if any(len(b) == 0 for b in blocks):
            raise ValueError("blocks must be nonempty")
        if elems != list(range(1, n + 1)):
            raise ValueError(f"blocks do not partition {{1..{n}}}: {blocks}")
        owner = {}
        for idx, b in enumerate(sorted(blocks, key=lambda b: b[0])):
            for e in b:
                owner[e] = idx
        return cls(tuple(owner[j] for j in range(1, n + 1)))

    def to_json(self):
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, obj):
        return cls.from_blocks(obj["blocks"], obj["n"])

    def __str__(self):
        if not self.rgs:
            return "{}"
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


@dataclass(frozen=True)
class BlockProfile:
    """Block-size multiplicities ``k`` with ``k[i-1]`` blocks of size ``i``."""

    n: int
    k: tuple

    def __post_init__(self):
        k = tuple(self.k)
        object.__setattr__(self, "k", k)
        if len(k) != self.n or any(not isinstance(c, int) or c < 0 for c in k):
            raise ValueError(f"profile for n={self.n} needs {self.n} nonnegative counts, got {k}")
        if sum(i * c for i, c in enumerate(k, start=1)) != self.n:
            raise ValueError(f"profile {k} does not sum to n={self.n}")

    @classmethod
    def from_parts(cls, parts):
        n = sum(parts)
        k = [0] * n
        for p in parts:
            k[p - 1] += 1
        return cls(n, tuple(k))

    @property
    def num_blocks(self):
        return sum(self.k)

    @property
    def parts(self):
        """Block sizes as a non-increasing list, e.g. ``(2, 1)`` for ``k=(1,1,0)``."""
        out = []
        for i in range(self.n, 0, -1):
            out.extend([i] * self.k[i - 1])
        return tuple(out)

    def to_json(self):
        return {"n": self.n, "k": list(self.k)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["n"], tuple(obj["k"]))

    def __str__(self):
        return "(" + ",".join(map(str, self.k)) + ")"


def check_cap(what, n, cap):
    if n < 0:
        raise ValueError(f"{what}: n must be nonnegative, got {n}")
    if n > cap:
        raise CapExceeded(what, n, cap)


def iter_rgs(n):
    """Yield every restricted-growth string of length ``n`` in lexicographic order.

    The same list object is mutated and yielded each time; copy it to keep it.
    """
    if n == 0:
        yield []
        return
    a = [0] * n
    # bound[j] = 1 + max(a[:j]) for j >= 1, the largest value a[j] may take
    bound = [0] + [1] * (n - 1)
    while True:
        yield a
        j = n - 1
        while j > 0 and a[j] == bound[j]:
            j -= 1
        if j == 0:
            return
        a[j] += 1
        nb = max(bound[j], a[j] + 1)
        for t in range(j + 1, n):
            a[t] = 0
            bound[t] = nb


def enumerate_set_partitions(n, max_enum=DEFAULT_MAX_ENUM):
    """Return an iterator over all partitions of ``{1..n}`` in RGS lexicographic order.

    Raises CapExceeded immediately (not on first iteration) when ``n > max_enum``.
    """
    check_cap("enumerate_set_partitions", n, max_enum)
    return (SetPartition(tuple(a)) for a in iter_rgs(n))


@lru_cache(maxsize=None)
def _bell_row(n):
    if n == 0:
        return (1,)
    prev = _bell_row(n - 1)
    row = [prev[-1]]
    for v in prev:
        row.append(row[-1] + v)
    return tuple(row)


def bell_number(n):
    """Number of partitions of an n-element set, via the Bell triangle."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _bell_row(n)[0]


def extend_partition(p):
    """Partitions of ``{1..n+1}`` that restrict to ``p`` on ``{1..n}``.

    The first one adds ``{n+1}`` as a new block; then, for each block of ``p``
    in block order, one adds ``n+1`` to that block.  Every partition of
    ``{1..n+1}`` arises from exactly one ``p`` in exactly one of these ways.
    """
    k = p.num_blocks
    out = [SetPartition(p.rgs + (k,))]
    out.extend(SetPartition(p.rgs + (i,)) for i in range(k))
    return out


def block_profile(p):
    k = [0] * p.n
    for size in p.block_sizes:
        k[size - 1] += 1
    return BlockProfile(p.n, tuple(k))


def _parts_ascending(n, largest):
    if n == 0:
        yield ()
        return
    for first in range(1, min(n, largest) + 1):
        for rest in _parts_ascending(n - first, first):
            yield (first,) + rest


def enumerate_block_profiles(n):
    """All block profiles of ``n``.

    Order: profiles are read as non-increasing part lists and listed in
    ascending lexicographic order of those lists, so ``1+1+...+1`` comes first
    and the single block ``n`` comes last.  For n=4 this gives
    1111, 211, 22, 31, 4.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [BlockProfile.from_parts(parts) for parts in _parts_ascending(n, n)]


def profile_count(pf):
    """Number of partitions of ``{1..n}`` with block profile ``pf``.

    ``n! / prod_i (k_i! * (i!)**k_i)``, computed exactly.
    """
    den = 1
    for i, c in enumerate(pf.k, start=1):
        den *= factorial(c) * factorial(i) ** c
    num = factorial(pf.n)
    q, r = divmod(num, den)
    assert r == 0
    return q


@lru_cache(maxsize=None)
def integer_partition_count(n):
    """p(n) by the standard coin-change recurrence (independent of profile enumeration)."""
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]
