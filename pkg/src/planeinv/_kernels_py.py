"""Pure-Python matrix kernels.

These two routines are the arithmetic inner loops of the whole package:
every inverse, nullspace, solve and word-trace ultimately bottoms out in
``mat_mul`` and ``rref_in_place``.  A compiled twin with the exact same
contract lives in ``_kernels_cy.pyx``; :mod:`planeinv.linalg` picks
whichever is importable (see ``kernel_backend``).

Both kernels work on plain list-of-lists whose entries belong to any exact
field type (``fractions.Fraction`` or :class:`planeinv.linalg.Jet`).  Pivot
selection uses truthiness of entries, so a ``Jet`` pivots on its value part
alone -- that is exactly what keeps differentiation consistent with the
undifferentiated computation.
"""


def mat_mul(a, b):
    """Product of two list-of-list matrices; inner dimension must be >= 1."""
    n = len(a)
    inner = len(b)
    p = len(b[0])
    out = []
    for i in range(n):
        arow = a[i]
        orow = []
        for j in range(p):
            acc = arow[0] * b[0][j]
            for k in range(1, inner):
                acc = acc + arow[k] * b[k][j]
            orow.append(acc)
        out.append(orow)
    return out


def rref_in_place(m):
    """Reduce ``m`` to reduced row echelon form in place.

    Gauss-Jordan with first-nonzero pivoting (no magnitude comparisons:
    entries are exact, any nonzero pivot is as good as another).  Returns
    the tuple of pivot column indices.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    pr = 0
    for pc in range(cols):
        if pr == rows:
            break
        hit = -1
        for i in range(pr, rows):
            if m[i][pc]:
                hit = i
                break
        if hit < 0:
            continue
        if hit != pr:
            m[pr], m[hit] = m[hit], m[pr]
        prow = m[pr]
        pv = prow[pc]
        for j in range(pc, cols):
            prow[j] = prow[j] / pv
        for i in range(rows):
            if i == pr:
                continue
            f = m[i][pc]
            if f:
                row = m[i]
                for j in range(pc, cols):
                    row[j] = row[j] - f * prow[j]
        pivots.append(pc)
        pr += 1
    return tuple(pivots)
