# cython: language_level=3
"""Compiled twin of ``_kernels_py``.

Entries stay generic Python objects (exact rationals or jets); Cython only
compiles away the loop bookkeeping, which is what dominates the pure-Python
version at the small matrix sizes this package lives on.  The contract is
identical to ``_kernels_py`` -- the test suite runs both backends against
each other.
"""


def mat_mul(list a, list b):
    """Product of two list-of-list matrices; inner dimension must be >= 1."""
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t inner = len(b)
    cdef Py_ssize_t p = len(<list>b[0])
    cdef Py_ssize_t i, j, k
    cdef list arow, orow, out
    out = []
    for i in range(n):
        arow = <list>a[i]
        orow = []
        for j in range(p):
            acc = arow[0] * (<list>b[0])[j]
            for k in range(1, inner):
                acc = acc + arow[k] * (<list>b[k])[j]
            orow.append(acc)
        out.append(orow)
    return out


def rref_in_place(list m):
    """Reduce ``m`` to reduced row echelon form in place; return pivot columns."""
    cdef Py_ssize_t rows = len(m)
    cdef Py_ssize_t cols = len(<list>m[0]) if rows else 0
    cdef Py_ssize_t pr = 0
    cdef Py_ssize_t pc, i, j, hit
    cdef list prow, row, pivots
    pivots = []
    for pc in range(cols):
        if pr == rows:
            break
        hit = -1
        for i in range(pr, rows):
            if (<list>m[i])[pc]:
                hit = i
                break
        if hit < 0:
            continue
        if hit != pr:
            m[pr], m[hit] = m[hit], m[pr]
        prow = <list>m[pr]
        pv = prow[pc]
        for j in range(pc, cols):
            prow[j] = prow[j] / pv
        for i in range(rows):
            if i == pr:
                continue
            f = (<list>m[i])[pc]
            if f:
                row = <list>m[i]
                for j in range(pc, cols):
                    row[j] = row[j] - f * prow[j]
        pivots.append(pc)
        pr += 1
    return tuple(pivots)
