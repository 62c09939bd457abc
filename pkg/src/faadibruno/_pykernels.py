"""Pure-Python partition-sum kernels, used when the compiled core is unavailable.

Both kernels walk restricted-growth strings in lexicographic order while
keeping block sizes up to date, and add one term per partition:
``F[k] * G[s_0] * ... * G[s_{k-1}]`` with ``k`` blocks of sizes ``s_b`` in
block order.  The order of multiplications and additions matches the
compiled kernels exactly, so float results are bit-identical.
"""


def partition_sum(F, G, n):
    if n == 0:
        return F[0]
    a = [0] * n
    bound = [0] + [1] * (n - 1)
    sizes = [0] * (n + 1)
    sizes[0] = n
    k = 1
    total = 0
    while True:
        t = F[k]
        for b in range(k):
            t *= G[sizes[b]]
        total += t

        j = n - 1
        while j > 0 and a[j] == bound[j]:
            j -= 1
        if j == 0:
            return total
        v = a[j]
        sizes[v] -= 1
        sizes[v + 1] += 1
        a[j] = v + 1
        k = bound[j] if bound[j] > v + 2 else v + 2
        for r in range(j + 1, n):
            sizes[a[r]] -= 1
            a[r] = 0
            bound[r] = k
        sizes[0] += n - 1 - j


def partition_sum_float(f, g, n):
    return float(partition_sum([float(x) for x in f], [float(x) for x in g], n))


def partition_sum_int(F, G, n):
    return partition_sum([int(x) for x in F], [int(x) for x in G], n)
