import os
import random
import subprocess
import sys

import pytest

from faadibruno import kernels
from faadibruno.combinatorics import bell_number

from _oracles import brute_partitions

BACKENDS = kernels.available_backends()


def brute_sum(F, G, n):
    total = 0
    for p in brute_partitions(list(range(n))):
        t = F[len(p)]
        for b in p:
            t *= G[len(b)]
        total += t
    return total


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("n", range(0, 9))
def test_int_sum_matches_brute_force(backend, n):
    rng = random.Random(n)
    F = [rng.randint(-10**9, 10**9) for _ in range(n + 1)]
    G = [rng.randint(-10**9, 10**9) for _ in range(n + 1)]
    assert kernels.partition_sum_int(F, G, n, backend) == brute_sum(F, G, n)


@pytest.mark.parametrize("backend", BACKENDS)
def test_all_ones_counts_partitions(backend):
    for n in range(0, 12):
        assert kernels.partition_sum_int([1] * (n + 1), [1] * (n + 1), n, backend) == bell_number(n)


@pytest.mark.parametrize("backend", BACKENDS)
def test_zero_and_huge_values(backend):
    n = 7
    assert kernels.partition_sum_int([0] * 8, [5] * 8, n, backend) == 0
    F = [0] + [-(10**60)] * n
    G = [0] + [10**40 + i for i in range(n)]
    assert kernels.partition_sum_int(F, G, n, backend) == brute_sum(F, G, n)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
@pytest.mark.parametrize("n", range(0, 12))
def test_backends_bit_identical_float(n):
    rng = random.Random(100 + n)
    f = [rng.uniform(-3, 3) for _ in range(n + 1)]
    g = [rng.uniform(-3, 3) for _ in range(n + 1)]
    a = kernels.partition_sum_float(f, g, n, "compiled")
    b = kernels.partition_sum_float(f, g, n, "python")
    assert a == b


def test_crt_reconstructs_negative_values():
    primes = kernels._primes(3)
    for x in (0, 1, -1, 12345678901234567890, -(10**25)):
        r, M = kernels._crt([x % p for p in primes], primes)
        assert (r - M if r > M // 2 else r) == x


def test_primes_are_prime_and_below_2_32():
    ps = kernels._primes(5)
    assert all(p < 2**32 for p in ps)
    for p in ps:
        assert all(p % d for d in range(3, 2000, 2))


def test_forced_python_backend():
    env = dict(os.environ, FDB_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "from faadibruno import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
