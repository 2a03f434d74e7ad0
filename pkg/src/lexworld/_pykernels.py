"""Pure-Python fallbacks for the compiled kernels in ``_ckernels.pyx``.

Both implementations share one signature and must return identical results.
"""


def count_backtrack(alpha: bytes, beta: bytes, n: int) -> int:
    """Count words w of length n whose every suffix s satisfies
    beta[:|s|] <= s <= alpha[:|s|] (lexicographically).

    ``alpha`` and ``beta`` are prefixes of length >= n given as bytes of 0/1
    values. The search keeps, for every open start position, whether the
    suffix from there is still equal to the corresponding bound prefix.
    """
    if n <= 0:
        return 1
    # tight_a[d] / tight_b[d]: starts k whose suffix w[k:d] equals the bound prefix
    tight_a = [[] for _ in range(n + 1)]
    tight_b = [[] for _ in range(n + 1)]

    def extend(d: int) -> int:
        total = 0
        ta, tb = tight_a[d], tight_b[d]
        for s in (0, 1):
            ok = True
            na, nb = [], []
            for k in ta + [d]:
                c = alpha[d - k]
                if s > c:
                    ok = False
                    break
                if s == c:
                    na.append(k)
            if not ok:
                continue
            for k in tb + [d]:
                c = beta[d - k]
                if s < c:
                    ok = False
                    break
                if s == c:
                    nb.append(k)
            if not ok:
                continue
            if d + 1 == n:
                total += 1
            else:
                tight_a[d + 1], tight_b[d + 1] = na, nb
                total += extend(d + 1)
        return total

    return extend(0)


def balanced_count(p: int, q: int) -> int:
    """Number of cyclically balanced binary words of length q with p ones."""
    count = 0
    for mask in range(1 << q):
        if bin(mask).count("1") != p:
            continue
        bits = [(mask >> (q - 1 - i)) & 1 for i in range(q)]
        ww = bits + bits
        good = True
        for m in range(2, q + 1):
            s = sum(ww[:m])
            lo = hi = s
            for i in range(1, len(ww) - m + 1):
                s += ww[i + m - 1] - ww[i - 1]
                lo, hi = min(lo, s), max(hi, s)
            if hi - lo > 1:
                good = False
                break
        if good:
            count += 1
    return count
