"""Exact linear algebra over the rationals (and over jets of rationals).

Everything downstream -- subspace normal forms, invariant letters, Jacobian
ranks -- is built from the handful of operations here.  There is no floating
point anywhere: scalars are ``fractions.Fraction`` (gcd-reduced arbitrary
precision rationals from the stdlib, exposed as :data:`Rat`) or
:class:`Jet` dual numbers over them.

The two hot loops (``mat_mul``, ``rref_in_place``) live in a kernel module
with a compiled Cython build and a pure-Python fallback; whichever is
importable is selected once at import time.  Set ``PLANEINV_KERNEL=py`` or
``=cy`` to force a backend (``cy`` raises if the extension is missing).
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import DimensionMismatchError, RankDeficientError, SingularMatrixError

Rat = Fraction
"""Exact rational scalar type: arbitrary precision, always gcd-reduced."""

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _load_kernels():
    forced = os.environ.get("PLANEINV_KERNEL", "").strip().lower()
    if forced == "py":
        from . import _kernels_py

        return _kernels_py
    if forced == "cy":
        from . import _kernels_cy

        return _kernels_cy
    try:
        from . import _kernels_cy

        return _kernels_cy
    except ImportError:
        from . import _kernels_py

        return _kernels_py


_kernels = _load_kernels()
_mat_mul = _kernels.mat_mul
_rref_in_place = _kernels.rref_in_place


def kernel_backend() -> str:
    """Name of the active kernel backend: ``"compiled"`` or ``"pure-python"``."""
    return "compiled" if _kernels.__name__.endswith("_kernels_cy") else "pure-python"


class Jet:
    """Dual number ``value + deriv * eps`` with ``eps**2 == 0``.

    Carrying a jet through an exact computation yields the exact partial
    derivative of every output with respect to one input coordinate.
    Truthiness (hence every pivot decision in the kernels) looks only at
    ``value``, so a differentiated run takes the same elimination path as
    the plain run it shadows.
    """

    __slots__ = ("value", "deriv")

    def __init__(self, value, deriv=_ZERO):
        self.value = value
        self.deriv = deriv

    @classmethod
    def variable(cls, value) -> "Jet":
        return cls(value, _ONE)

    @classmethod
    def constant(cls, value) -> "Jet":
        return cls(value, _ZERO)

    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        if isinstance(other, (int, Fraction)):
            return Jet(Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.value + o.value, self.deriv + o.deriv)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.value - o.value, self.deriv - o.deriv)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(o.value - self.value, o.deriv - self.deriv)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.value * o.value, self.value * o.deriv + self.deriv * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.value:
            raise ZeroDivisionError("division by a jet with zero value")
        v = self.value / o.value
        return Jet(v, (self.deriv - v * o.deriv) / o.value)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return Jet(-self.value, -self.deriv)

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.value == o.value and self.deriv == o.deriv

    def __hash__(self):
        return hash((self.value, self.deriv))

    def __repr__(self):
        return f"Jet({self.value!r}, {self.deriv!r})"


def as_scalar(x):
    """Coerce ``x`` to a package scalar (``Rat`` or ``Jet``)."""
    if isinstance(x, (Fraction, Jet)):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def zero_like(x):
    return Jet(_ZERO) if isinstance(x, Jet) else _ZERO


def one_like(x):
    return Jet(_ONE) if isinstance(x, Jet) else _ONE


class Mat:
    """Dense rows*cols matrix over exact scalars.

    Immutable by convention: operations return new matrices and never alias
    the receiver's rows.  A matrix may have zero columns (kernels of
    injective maps) but never zero rows.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        rows = [[as_scalar(x) for x in row] for row in data]
        if not rows:
            raise DimensionMismatchError("matrix needs at least one row")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionMismatchError("ragged rows")
        self.rows = len(rows)
        self.cols = cols
        self.data = rows

    @classmethod
    def _raw(cls, data: list) -> "Mat":
        """Wrap already-validated list-of-lists without copying or coercion."""
        m = object.__new__(cls)
        m.rows = len(data)
        m.cols = len(data[0]) if data else 0
        m.data = data
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, like=None) -> "Mat":
        z = zero_like(like) if like is not None else _ZERO
        return cls._raw([[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int, like=None) -> "Mat":
        z = zero_like(like) if like is not None else _ZERO
        o = one_like(like) if like is not None else _ONE
        return cls._raw([[o if i == j else z for j in range(n)] for i in range(n)])

    def copy_data(self) -> list:
        return [row[:] for row in self.data]

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Mat[{self.rows}x{self.cols}: {body}]"

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows or self.cols == 0:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        return Mat._raw(_mat_mul(self.data, other.data))

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat._raw(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat._raw(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        )

    def __neg__(self) -> "Mat":
        return Mat._raw([[-a for a in row] for row in self.data])

    def _same_shape(self, other: "Mat"):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatchError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def scale(self, c) -> "Mat":
        c = as_scalar(c)
        return Mat._raw([[c * a for a in row] for row in self.data])

    def map(self, fn: Callable) -> "Mat":
        return Mat._raw([[fn(a) for a in row] for row in self.data])

    def transpose(self) -> "Mat":
        if self.cols == 0:
            raise DimensionMismatchError("cannot transpose a matrix with no columns")
        return Mat._raw([list(col) for col in zip(*self.data)])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        """Submatrix of rows ``r0:r1`` and columns ``c0:c1`` (half-open)."""
        if not (0 <= r0 < r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise IndexError(
                f"block [{r0}:{r1}, {c0}:{c1}] out of range for {self.rows}x{self.cols}"
            )
        return Mat._raw([row[c0:c1] for row in self.data[r0:r1]])

    def trace(self):
        if self.rows != self.cols:
            raise DimensionMismatchError("trace needs a square matrix")
        acc = self.data[0][0]
        for i in range(1, self.rows):
            acc = acc + self.data[i][i]
        return acc

    def is_zero(self) -> bool:
        return not any(any(x for x in row) for row in self.data)

    def rref(self) -> tuple["Mat", tuple[int, ...]]:
        """Reduced row echelon form and its pivot columns."""
        if self.cols == 0:
            return self, ()
        work = self.copy_data()
        pivots = _rref_in_place(work)
        return Mat._raw(work), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise DimensionMismatchError("only square matrices can be inverted")
        n = self.rows
        like = self.data[0][0]
        z, o = zero_like(like), one_like(like)
        work = [
            row[:] + [o if i == j else z for j in range(n)]
            for i, row in enumerate(self.data)
        ]
        pivots = _rref_in_place(work)
        if len(pivots) < n or pivots[n - 1] != n - 1:
            raise SingularMatrixError(f"matrix of size {n} is singular")
        return Mat._raw([row[n:] for row in work])

    def solve(self, rhs: "Mat") -> "Mat":
        """Unique solution X of ``self @ X == rhs``.

        Raises :class:`RankDeficientError` when the system is inconsistent
        or has more than one solution.
        """
        if rhs.rows != self.rows:
            raise DimensionMismatchError("right-hand side has wrong number of rows")
        n, m = self.rows, self.cols
        work = [row[:] + rrow[:] for row, rrow in zip(self.data, rhs.data)]
        pivots = _rref_in_place(work)
        lead = [p for p in pivots if p < m]
        if any(p >= m for p in pivots):
            raise RankDeficientError("inconsistent linear system")
        if len(lead) < m:
            raise RankDeficientError("underdetermined linear system")
        like = self.data[0][0]
        z = zero_like(like)
        out = [[z] * rhs.cols for _ in range(m)]
        for r, p in enumerate(lead):
            out[p] = work[r][m:]
        return Mat._raw(out)

    def nullspace_basis(self) -> "Mat":
        """Canonical kernel basis, one column per free variable.

        Basis vector for free column ``f`` has entry 1 at ``f``, 0 at every
        other free column, and the negated reduced-echelon entries at the
        pivot rows.  This normal form depends only on the column span
        relations, which is what makes downstream letters well defined.
        """
        m = self.cols
        red, pivots = self.rref()
        free = [j for j in range(m) if j not in pivots]
        like = self.data[0][0]
        z, o = zero_like(like), one_like(like)
        cols = []
        for f in free:
            v = [z] * m
            v[f] = o
            for r, p in enumerate(pivots):
                v[p] = -red.data[r][f]
            cols.append(v)
        data = [[cols[c][r] for c in range(len(free))] for r in range(m)]
        if not free:
            data = [[] for _ in range(m)]
        return Mat._raw(data)


def hstack(mats: Iterable[Mat]) -> Mat:
    mats = list(mats)
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise DimensionMismatchError("hstack needs equal row counts")
    return Mat._raw(
        [sum((m.data[i] for m in mats), []) for i in range(rows)]
    )


def vstack(mats: Iterable[Mat]) -> Mat:
    mats = list(mats)
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise DimensionMismatchError("vstack needs equal column counts")
    return Mat._raw([row[:] for m in mats for row in m.data])


def trace_word(letters: Sequence[Mat], word: Sequence[int]):
    """Trace of the product ``letters[word[0]] @ letters[word[1]] @ ...``.

    Letter indices are 0-based; an out-of-range index raises ``IndexError``.
    """
    if not word:
        raise IndexError("empty word")
    for k in word:
        if not 0 <= k < len(letters):
            raise IndexError(f"letter index {k} out of range for alphabet of {len(letters)}")
    acc = letters[word[0]]
    for k in word[1:]:
        acc = acc @ letters[k]
    return acc.trace()
