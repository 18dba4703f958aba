# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Fincke–Pohst kernel: same recursion as _enum_py, in 128-bit integers.

The caller guarantees that every intermediate fits (see shortvec._fits_int128);
otherwise it uses the Python kernel.
"""

from libc.stdlib cimport malloc, free
from libc.math cimport sqrt

cdef extern from *:
    ctypedef long long int128 "__int128"


cdef inline int128 isqrt128(int128 w):
    cdef int128 r
    if w <= 0:
        return 0
    r = <int128>sqrt(<double>w)
    while r * r > w:
        r -= 1
    while (r + 1) * (r + 1) <= w:
        r += 1
    return r


cdef inline long long floordiv(int128 a, long long b):
    # b > 0
    cdef int128 q = a / b
    if (a % b) != 0 and a < 0:
        q -= 1
    return <long long>q


def enumerate_short(list d_in, list lam_in, long long bound, bint count_only=False):
    cdef int n = len(d_in) - 1
    if n == 0:
        return {} if count_only else []
    cdef long long *d = <long long *>malloc((n + 1) * sizeof(long long))
    cdef long long *lam = <long long *>malloc(n * n * sizeof(long long))
    cdef long long *x = <long long *>malloc(n * sizeof(long long))
    cdef long long *hi = <long long *>malloc(n * sizeof(long long))
    cdef long long *s = <long long *>malloc(n * sizeof(long long))
    cdef int128 *N = <int128 *>malloc((n + 1) * sizeof(int128))
    cdef int *nz_above = <int *>malloc((n + 1) * sizeof(int))
    cdef int i, j, k
    cdef long long sj, lo, up, r
    cdef int128 w, t
    out = {} if count_only else []
    try:
        for i in range(n + 1):
            d[i] = d_in[i]
            N[i] = 0
        for i in range(n):
            x[i] = 0
            for k in range(n):
                lam[i * n + k] = lam_in[i][k]
        nz_above[n] = 0
        j = n - 1
        # descend into level j: compute range
        while True:
            sj = 0
            for k in range(j + 1, n):
                if x[k]:
                    sj += lam[k * n + j] * x[k]
            s[j] = sj
            nz_above[j] = nz_above[j + 1] or (x[j + 1] != 0 if j + 1 < n else 0)
            w = <int128>d[j] * (<int128>bound * d[j + 1] - N[j + 1])
            if w >= 0:
                r = <long long>isqrt128(w)
                lo = -floordiv(<int128>r + sj, d[j + 1])
                up = floordiv(<int128>r - sj, d[j + 1])
                if not nz_above[j] and lo < 0:
                    lo = 0
            else:
                lo, up = 1, 0
            x[j] = lo
            hi[j] = up
            # advance at this level (and climb when exhausted)
            while True:
                if x[j] > hi[j]:
                    x[j] = 0
                    j += 1
                    if j == n:
                        return out
                    x[j] += 1
                    continue
                t = <int128>d[j + 1] * x[j] + s[j]
                N[j] = (<int128>d[j] * N[j + 1] + t * t) / d[j + 1]
                if j == 0:
                    if N[0] != 0:
                        if count_only:
                            key = <long long>N[0]
                            out[key] = out.get(key, 0) + 1
                        else:
                            out.append((tuple([x[i] for i in range(n)]), <long long>N[0]))
                    x[0] += 1
                    continue
                break
            j -= 1
    finally:
        free(d); free(lam); free(x); free(hi); free(s); free(N); free(nz_above)
