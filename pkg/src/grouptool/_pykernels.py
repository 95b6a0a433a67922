"""Pure-Python word kernels.

Letters are nonzero ints: generator ``i`` (0-based) is ``i + 1`` and its
inverse is ``-(i + 1)``.  ``_ckernels.pyx`` implements the same functions;
``grouptool.kernels`` picks one at import time.
"""


def free_reduce(letters):
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def dehn_reduce(letters, cycles):
    """Dehn's algorithm against the cyclic words in ``cycles``.

    ``cycles`` holds the relator and its inverse (all of equal length L).
    Any subword matching more than L/2 consecutive letters of a cyclic
    permutation is replaced by the inverse of the complementary piece.
    """
    w = free_reduce(letters)
    if not cycles:
        return w
    L = len(cycles[0])
    starts = {}
    for c in cycles:
        for o in range(L):
            starts.setdefault(c[o], []).append((c, o))
    i = 0
    while i < len(w):
        hit = None
        n = len(w)
        for c, o in starts.get(w[i], ()):
            k = 1
            while k < L and i + k < n and w[i + k] == c[(o + k) % L]:
                k += 1
            if 2 * k > L:
                hit = (c, o, k)
                break
        if hit is None:
            i += 1
            continue
        c, o, k = hit
        repl = [-c[(o + j) % L] for j in range(L - 1, k - 1, -1)]
        new = free_reduce(w[:i] + repl + w[i + k:])
        # rescan from just before the first changed position
        d = 0
        m = min(len(new), len(w))
        while d < m and new[d] == w[d]:
            d += 1
        w = new
        i = max(0, d - L)
    return w


def prefix_min(letters, values):
    """Return (min over prefixes of the running sum, total) with values per generator."""
    acc = 0
    low = 0
    for x in letters:
        if x > 0:
            acc += values[x - 1]
        else:
            acc -= values[-x - 1]
        if acc < low:
            low = acc
    return low, acc


def exponent_sums(letters, ngens):
    out = [0] * ngens
    for x in letters:
        if x > 0:
            out[x - 1] += 1
        else:
            out[-x - 1] -= 1
    return out
