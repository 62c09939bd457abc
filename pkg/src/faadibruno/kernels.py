"""Backend selection for the partition-sum hot loop.

The compiled Cython core is used when it imports; otherwise the pure-Python
fallback.  Set ``FDB_BACKEND=python`` to force the fallback.

Exact sums on the compiled path are computed modulo several primes below
2**32 and recombined by the Chinese remainder theorem; the number of primes
is chosen from an a-priori bound on the result, so the answer is exact.
"""

from __future__ import annotations

import os
from functools import lru_cache

from . import _pykernels
from .combinatorics import bell_number

try:
    from . import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None

COMPILED = "compiled"
PYTHON = "python"


def available_backends():
    return (COMPILED, PYTHON) if _ckernels is not None else (PYTHON,)


def _default_backend():
    forced = os.environ.get("FDB_BACKEND", "").strip().lower()
    if forced == PYTHON or _ckernels is None:
        return PYTHON
    return COMPILED


BACKEND = _default_backend()


def _resolve(backend):
    backend = backend or BACKEND
    if backend not in (COMPILED, PYTHON):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == COMPILED and _ckernels is None:
        raise RuntimeError("compiled kernels are not built; reinstall the package with a C compiler")
    return backend


def _is_prime(m):
    if m < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if m % p == 0:
            return m == p
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # these bases make the test deterministic far beyond 2**64
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _primes(count):
    out = []
    m = 2**32 - 1
    while len(out) < count:
        if _is_prime(m):
            out.append(m)
        m -= 2
    return tuple(out)


def _crt(residues, primes):
    x, M = 0, 1
    for r, p in zip(residues, primes):
        # x' = x + M * ((r - x) * M^-1 mod p)
        x += M * ((r - x) * pow(M, -1, p) % p)
        M *= p
    return x, M


def partition_sum_float(f, g, n, backend=None):
    """Sum of ``f[k] * prod_b g[|B_b|]`` over partitions of {1..n}, in RGS order."""
    if _resolve(backend) == COMPILED:
        return _ckernels.partition_sum_float(f, g, n)
    return _pykernels.partition_sum_float(f, g, n)


def partition_sum_int(F, G, n, backend=None):
    """Exact integer version of :func:`partition_sum_float`."""
    if _resolve(backend) == PYTHON:
        return _pykernels.partition_sum_int(F, G, n)
    F = [int(x) for x in F[: n + 1]]
    G = [int(x) for x in G[: n + 1]]
    if n == 0:
        return F[0]
    gmax = max(abs(x) for x in G[1:]) or 1
    bound = bell_number(n) * max(abs(F[k]) * gmax**k for k in range(1, n + 1))
    if bound == 0:
        return 0
    count = 1
    while True:
        primes = _primes(count)
        M = 1
        for p in primes:
            M *= p
        if M > 2 * bound:
            break
        count += 1
    residues = _ckernels.partition_sum_mod(
        [[x % p for x in F] for p in primes],
        [[x % p for x in G] for p in primes],
        list(primes),
        n,
    )
    x, M = _crt(residues, primes)
    return x - M if x > M // 2 else x
