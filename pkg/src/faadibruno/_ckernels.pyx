# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled partition-sum kernels.

Same walk as ``_pykernels``: restricted-growth strings in lexicographic order,
one term ``F[k] * G[s_0] * ... * G[s_{k-1}]`` per partition.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free


cdef int _advance(int n, int* a, int* bound, int* sizes, int* k) noexcept nogil:
    """Step to the next RGS; returns 0 when the walk is finished."""
    cdef int j = n - 1
    cdef int v, t, nb
    while j > 0 and a[j] == bound[j]:
        j -= 1
    if j == 0:
        return 0
    v = a[j]
    sizes[v] -= 1
    sizes[v + 1] += 1
    a[j] = v + 1
    nb = bound[j] if bound[j] > v + 2 else v + 2
    for t in range(j + 1, n):
        sizes[a[t]] -= 1
        a[t] = 0
        bound[t] = nb
    sizes[0] += n - 1 - j
    k[0] = nb
    return 1


cdef int* _alloc_state(int n):
    cdef int* buf = <int*>malloc(3 * (n + 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef int i
    for i in range(3 * (n + 1)):
        buf[i] = 0
    # layout: a[0..n], bound[0..n], sizes[0..n]
    for i in range(1, n):
        buf[(n + 1) + i] = 1
    buf[2 * (n + 1)] = n
    return buf


def partition_sum_float(f, g, int n):
    """Float partition sum; f and g need at least n+1 entries."""
    if n == 0:
        return float(f[0])
    cdef double* fv = <double*>malloc((n + 1) * sizeof(double))
    cdef double* gv = <double*>malloc((n + 1) * sizeof(double))
    cdef int* st = _alloc_state(n)
    cdef int i, b, k = 1
    cdef double t, acc = 0.0
    try:
        for i in range(n + 1):
            fv[i] = f[i]
            gv[i] = g[i]
        with nogil:
            while True:
                t = fv[k]
                for b in range(k):
                    t *= gv[st[2 * (n + 1) + b]]
                acc += t
                if not _advance(n, st, st + (n + 1), st + 2 * (n + 1), &k):
                    break
    finally:
        free(fv)
        free(gv)
        free(st)
    return acc


def partition_sum_mod(F_res, G_res, primes, int n):
    """Residues of the integer partition sum modulo each prime.

    ``F_res[p]`` and ``G_res[p]`` hold the inputs reduced modulo ``primes[p]``;
    every prime must be below 2**32 so products fit in 64 bits.
    """
    cdef int P = len(primes)
    cdef int w = n + 1
    if n == 0:
        return [int(F_res[p][0]) % int(primes[p]) for p in range(P)]
    cdef uint64_t* fv = <uint64_t*>malloc(P * w * sizeof(uint64_t))
    cdef uint64_t* gv = <uint64_t*>malloc(P * w * sizeof(uint64_t))
    cdef uint64_t* mods = <uint64_t*>malloc(P * sizeof(uint64_t))
    cdef uint64_t* acc = <uint64_t*>malloc(P * sizeof(uint64_t))
    cdef int* st = _alloc_state(n)
    cdef int p, i, b, k = 1
    cdef uint64_t t, m
    cdef int* sizes = st + 2 * w
    try:
        for p in range(P):
            m = primes[p]
            if m >= 4294967296 or m < 2:
                raise ValueError("moduli must lie in [2, 2**32)")
            mods[p] = m
            acc[p] = 0
            for i in range(w):
                fv[p * w + i] = F_res[p][i] % m
                gv[p * w + i] = G_res[p][i] % m
        with nogil:
            while True:
                for p in range(P):
                    m = mods[p]
                    t = fv[p * w + k]
                    for b in range(k):
                        t = (t * gv[p * w + sizes[b]]) % m
                    t += acc[p]
                    if t >= m:
                        t -= m
                    acc[p] = t
                if not _advance(n, st, st + w, sizes, &k):
                    break
        return [int(acc[p]) for p in range(P)]
    finally:
        free(fv)
        free(gv)
        free(mods)
        free(acc)
        free(st)
