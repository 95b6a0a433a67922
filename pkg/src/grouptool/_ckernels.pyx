# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled word kernels; same contracts as ``_pykernels``."""

from libc.stdlib cimport malloc, free


cdef Py_ssize_t _reduce_into(long *buf, Py_ssize_t n) nogil:
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t j
    for j in range(n):
        if top > 0 and buf[top - 1] == -buf[j]:
            top -= 1
        else:
            buf[top] = buf[j]
            top += 1
    return top


def free_reduce(letters):
    cdef Py_ssize_t n = len(letters)
    cdef long *buf = <long *> malloc((n + 1) * sizeof(long))
    cdef Py_ssize_t j, top
    if buf == NULL:
        raise MemoryError()
    try:
        j = 0
        for x in letters:
            buf[j] = x
            j += 1
        top = _reduce_into(buf, n)
        return [buf[j] for j in range(top)]
    finally:
        free(buf)


def dehn_reduce(letters, cycles):
    w = free_reduce(letters)
    if not cycles:
        return w
    cdef Py_ssize_t L = len(cycles[0])
    cdef Py_ssize_t nc = len(cycles)
    cdef long *cyc = <long *> malloc(nc * L * sizeof(long))
    cdef long *buf = NULL
    cdef long *tmp = NULL
    cdef Py_ssize_t cap, n, i, ci, o, k, j, t, d, m, newn
    cdef bint found
    if cyc == NULL:
        raise MemoryError()
    try:
        for ci in range(nc):
            c = cycles[ci]
            for o in range(L):
                cyc[ci * L + o] = c[o]
        n = len(w)
        cap = n + L + 1
        buf = <long *> malloc(cap * sizeof(long))
        tmp = <long *> malloc(cap * sizeof(long))
        if buf == NULL or tmp == NULL:
            raise MemoryError()
        for j in range(n):
            buf[j] = w[j]
        i = 0
        while i < n:
            found = False
            for ci in range(nc):
                for o in range(L):
                    if cyc[ci * L + o] != buf[i]:
                        continue
                    k = 1
                    while k < L and i + k < n and buf[i + k] == cyc[ci * L + (o + k) % L]:
                        k += 1
                    if 2 * k > L:
                        found = True
                        break
                if found:
                    break
            if not found:
                i += 1
                continue
            # tmp = buf[:i] + inverse(complement) + buf[i+k:]
            t = 0
            for j in range(i):
                tmp[t] = buf[j]
                t += 1
            for j in range(L - 1, k - 1, -1):
                tmp[t] = -cyc[ci * L + (o + j) % L]
                t += 1
            for j in range(i + k, n):
                tmp[t] = buf[j]
                t += 1
            newn = _reduce_into(tmp, t)
            d = 0
            m = newn if newn < n else n
            while d < m and tmp[d] == buf[d]:
                d += 1
            for j in range(newn):
                buf[j] = tmp[j]
            n = newn
            i = d - L if d > L else 0
        return [buf[j] for j in range(n)]
    finally:
        free(cyc)
        if buf != NULL:
            free(buf)
        if tmp != NULL:
            free(tmp)


def prefix_min(letters, values):
    cdef object acc = 0
    cdef object low = 0
    for x in letters:
        if x > 0:
            acc = acc + values[x - 1]
        else:
            acc = acc - values[-x - 1]
        if acc < low:
            low = acc
    return low, acc


def exponent_sums(letters, Py_ssize_t ngens):
    out = [0] * ngens
    cdef long x
    for x in letters:
        if x > 0:
            out[x - 1] += 1
        else:
            out[-x - 1] -= 1
    return out
