# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""64-bit Smith normal form kernel with overflow guards.

Runs the same elimination as the pure-Python path in ``sglink.smith``
(smallest-absolute-value pivot, lexicographic ties, elementary operations
only) over C int64, with every intermediate checked against +-2**62.
Instead of wrapping, an out-of-range value raises OverflowError so the
caller can fall back to exact arbitrary-precision arithmetic.  Both
backends therefore produce bit-identical certificates whenever this one
succeeds.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef long long LIMIT = 4611686018427387904  # 2**62


cdef inline long long chk(i128 x) except? -1:
    if x > <i128> LIMIT or x < -(<i128> LIMIT):
        raise OverflowError("SNF intermediate exceeds the 64-bit safe range")
    return <long long> x


cdef inline long long fdiv(long long x, long long y) noexcept nogil:
    # Floor division, matching Python's // for negative operands.
    cdef long long q = x / y
    if x % y != 0 and ((x < 0) != (y < 0)):
        q -= 1
    return q


cdef void _swap_rows(long long * m, Py_ssize_t width, Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t t
    cdef long long tmp
    for t in range(width):
        tmp = m[i * width + t]
        m[i * width + t] = m[j * width + t]
        m[j * width + t] = tmp


cdef void _swap_cols(long long * m, Py_ssize_t height, Py_ssize_t width,
                     Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t t
    cdef long long tmp
    for t in range(height):
        tmp = m[t * width + i]
        m[t * width + i] = m[t * width + j]
        m[t * width + j] = tmp


cdef int _row_add(long long * m, Py_ssize_t width, Py_ssize_t i, Py_ssize_t j,
                  long long q) except -1:
    # row i += q * row j
    cdef Py_ssize_t t
    for t in range(width):
        m[i * width + t] = chk(<i128> m[i * width + t] + <i128> q * m[j * width + t])
    return 0


cdef int _col_add(long long * m, Py_ssize_t height, Py_ssize_t width,
                  Py_ssize_t i, Py_ssize_t j, long long q) except -1:
    # col i += q * col j
    cdef Py_ssize_t t
    for t in range(height):
        m[t * width + i] = chk(<i128> m[t * width + i] + <i128> q * m[t * width + j])
    return 0


def snf_i64(entries, Py_ssize_t m, Py_ssize_t n):
    """Reduce a row-major integer list to Smith normal form.

    Returns (d, u, v) as flat Python int lists of sizes m*n, m*m, n*n with
    u @ input @ v == d.  Raises OverflowError if the input or any
    intermediate leaves the safe 64-bit range.
    """
    if m < 0 or n < 0 or len(entries) != m * n:
        raise ValueError("entry count does not match dimensions")
    cdef long long * a = <long long *> malloc(max(m * n, 1) * sizeof(long long))
    cdef long long * u = <long long *> malloc(max(m * m, 1) * sizeof(long long))
    cdef long long * v = <long long *> malloc(max(n * n, 1) * sizeof(long long))
    if a == NULL or u == NULL or v == NULL:
        free(a); free(u); free(v)
        raise MemoryError()

    cdef Py_ssize_t i, j, t, k, pi, pj, bad
    cdef Py_ssize_t limit = m if m < n else n
    cdef long long x, p, q, best
    cdef bint clean, have
    try:
        for t in range(m * n):
            a[t] = chk(<i128> <long long> entries[t])
        for i in range(m):
            for j in range(m):
                u[i * m + j] = 1 if i == j else 0
        for i in range(n):
            for j in range(n):
                v[i * n + j] = 1 if i == j else 0

        k = 0
        while k < limit:
            have = False
            best = 0
            pi = pj = 0
            for i in range(k, m):
                for j in range(k, n):
                    x = a[i * n + j]
                    if x != 0:
                        if x < 0:
                            x = -x
                        if not have or x < best:
                            have = True
                            best = x
                            pi = i
                            pj = j
            if not have:
                break
            if pi != k:
                _swap_rows(a, n, k, pi)
                _swap_rows(u, m, k, pi)
            if pj != k:
                _swap_cols(a, m, n, k, pj)
                _swap_cols(v, n, n, k, pj)
            if a[k * n + k] < 0:
                for t in range(n):
                    a[k * n + t] = -a[k * n + t]
                for t in range(m):
                    u[k * m + t] = -u[k * m + t]

            p = a[k * n + k]
            clean = True
            for i in range(k + 1, m):
                if a[i * n + k] != 0:
                    q = fdiv(a[i * n + k], p)
                    if q != 0:
                        _row_add(a, n, i, k, -q)
                        _row_add(u, m, i, k, -q)
                    if a[i * n + k] != 0:
                        clean = False
            for j in range(k + 1, n):
                if a[k * n + j] != 0:
                    q = fdiv(a[k * n + j], p)
                    if q != 0:
                        _col_add(a, m, n, j, k, -q)
                        _col_add(v, n, n, j, k, -q)
                    if a[k * n + j] != 0:
                        clean = False
            if not clean:
                continue

            bad = -1
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if a[i * n + j] % p != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad >= 0:
                _row_add(a, n, k, bad, 1)
                _row_add(u, m, k, bad, 1)
                continue
            k += 1

        d_out = [a[t] for t in range(m * n)]
        u_out = [u[t] for t in range(m * m)]
        v_out = [v[t] for t in range(n * n)]
        return d_out, u_out, v_out
    finally:
        free(a)
        free(u)
        free(v)
