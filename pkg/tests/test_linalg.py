"""Exact linear algebra: Mat, Jet dual numbers, and the swappable kernels."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planeinv.errors import (
    DimensionMismatchError,
    RankDeficientError,
    SingularMatrixError,
)
from planeinv.linalg import Jet, Mat, hstack, kernel_backend, trace_word, vstack

# ---------------------------------------------------------------------------
# strategies
# ---------------------------------------------------------------------------

rationals = st.fractions(
    min_value=-20, max_value=20, max_denominator=7
)


def matrices(rows, cols):
    return st.lists(
        st.lists(rationals, min_size=cols, max_size=cols),
        min_size=rows,
        max_size=rows,
    ).map(Mat)


square = st.integers(min_value=1, max_value=4).flatmap(lambda n: matrices(n, n))

# ---------------------------------------------------------------------------
# Mat basics
# ---------------------------------------------------------------------------


class TestMatBasics:
    def test_identity_shape(self):
        e = Mat.identity(3)
        assert e.rows == 3 and e.cols == 3
        assert e.data[0] == [1, 0, 0]
        assert e.data[2] == [0, 0, 1]

    def test_zero_cols_rejected_in_matmul(self):
        empty = Mat._raw([[], []])
        with pytest.raises(DimensionMismatchError):
            empty @ Mat.identity(2)

    def test_shape_mismatch(self):
        a = Mat([[1, 2]])
        b = Mat([[1, 2]])
        with pytest.raises(DimensionMismatchError):
            a @ b
        with pytest.raises(DimensionMismatchError):
            a + Mat([[1], [2]])

    def test_matmul_golden(self):
        a = Mat([[1, 2], [3, 4]])
        b = Mat([[0, 1], [1, 0]])
        assert (a @ b).data == [[2, 1], [4, 3]]

    def test_block(self):
        m = Mat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        assert m.block(0, 2, 1, 3).data == [[2, 3], [5, 6]]

    def test_transpose(self):
        m = Mat([[1, 2, 3], [4, 5, 6]])
        assert m.transpose().data == [[1, 4], [2, 5], [3, 6]]

    def test_trace(self):
        assert Mat([[1, 2], [3, 4]]).trace() == 5

    def test_hstack_vstack(self):
        a = Mat([[1], [2]])
        b = Mat([[3], [4]])
        assert hstack([a, b]).data == [[1, 3], [2, 4]]
        assert vstack([a, b]).data == [[1], [2], [3], [4]]


# ---------------------------------------------------------------------------
# inverse / solve / nullspace: golden examples first, then properties
# ---------------------------------------------------------------------------


class TestInverse:
    def test_golden_2x2(self):
        m = Mat([[1, 2], [3, 4]])
        inv = m.inverse()
        assert inv.data == [
            [Fraction(-2), Fraction(1)],
            [Fraction(3, 2), Fraction(-1, 2)],
        ]

    def test_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            Mat([[1, 2], [2, 4]]).inverse()

    @given(square)
    @settings(max_examples=60, deadline=None)
    def test_inverse_roundtrip(self, m):
        try:
            inv = m.inverse()
        except SingularMatrixError:
            return
        assert (m @ inv).data == Mat.identity(m.rows).data
        assert (inv @ m).data == Mat.identity(m.rows).data


class TestSolve:
    def test_golden(self):
        a = Mat([[2, 0], [0, 4]])
        b = Mat([[1], [1]])
        x = a.solve(b)
        assert x.data == [[Fraction(1, 2)], [Fraction(1, 4)]]

    def test_inconsistent_raises(self):
        a = Mat([[1, 0], [1, 0]])
        b = Mat([[0], [1]])
        with pytest.raises(RankDeficientError):
            a.solve(b)

    def test_underdetermined_raises(self):
        a = Mat([[1, 1]])
        b = Mat([[1]])
        with pytest.raises(RankDeficientError):
            a.solve(b)

    def test_overdetermined_consistent(self):
        # three equations, two unknowns, consistent system
        a = Mat([[1, 0], [0, 1], [1, 1]])
        b = Mat([[2], [3], [5]])
        assert a.solve(b).data == [[2], [3]]


class TestRrefAndNullspace:
    def test_rref_golden(self):
        m = Mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
        red, pivots = m.rref()
        assert pivots == (0, 1)
        assert red.data == [
            [Fraction(1), Fraction(0), Fraction(1)],
            [Fraction(0), Fraction(1), Fraction(1)],
            [Fraction(0), Fraction(0), Fraction(0)],
        ]

    @given(st.integers(1, 4).flatmap(lambda r: matrices(r, 3)))
    @settings(max_examples=60, deadline=None)
    def test_rref_idempotent(self, m):
        once, _ = m.rref()
        twice, _ = once.rref()
        assert once.data == twice.data

    def test_nullspace_golden(self):
        m = Mat([[1, 1, 0], [0, 0, 1]])
        basis = m.nullspace_basis()
        assert basis.cols == 1
        # canonical: free variable set to 1
        assert basis.data == [[Fraction(-1)], [Fraction(1)], [Fraction(0)]]

    def test_full_rank_nullspace_empty(self):
        basis = Mat.identity(3).nullspace_basis()
        assert basis.rows == 3 and basis.cols == 0

    @given(st.tuples(st.integers(1, 3), st.integers(1, 4)).flatmap(
        lambda rc: matrices(rc[0], rc[1])
    ))
    @settings(max_examples=60, deadline=None)
    def test_nullspace_annihilated(self, m):
        basis = m.nullspace_basis()
        if basis.cols == 0:
            assert m.rank() == m.cols
            return
        prod = m @ basis
        assert prod.is_zero()
        assert m.rank() + basis.cols == m.cols

    @given(matrices(3, 3), matrices(3, 3), matrices(3, 3))
    @settings(max_examples=40, deadline=None)
    def test_matmul_associative(self, a, b, c):
        assert ((a @ b) @ c).data == (a @ (b @ c)).data


# ---------------------------------------------------------------------------
# Jet dual numbers
# ---------------------------------------------------------------------------


class TestJet:
    def test_product_rule_golden(self):
        # (2 + eps)(3 + eps) = 6 + 5 eps
        a = Jet(Fraction(2), Fraction(1))
        b = Jet(Fraction(3), Fraction(1))
        p = a * b
        assert p.value == 6 and p.deriv == 5

    def test_quotient_rule(self):
        # d/dx (x / (x + 1)) at x = 1 is 1/4
        x = Jet.variable(Fraction(1))
        q = x / (x + Jet.constant(Fraction(1)))
        assert q.value == Fraction(1, 2)
        assert q.deriv == Fraction(1, 4)

    def test_bool_follows_value(self):
        assert not Jet(Fraction(0), Fraction(5))
        assert Jet(Fraction(1), Fraction(0))

    def test_mixed_arithmetic_with_ints(self):
        x = Jet.variable(Fraction(3))
        y = 2 * x + 1 - x / 3
        assert y.value == 6
        assert y.deriv == Fraction(5, 3)

    def test_epsilon_squared_vanishes(self):
        eps = Jet(Fraction(0), Fraction(1))
        sq = eps * eps
        assert sq.value == 0 and sq.deriv == 0

    @given(rationals, rationals, rationals, rationals)
    def test_addition_componentwise(self, a, b, da, db):
        s = Jet(a, da) + Jet(b, db)
        assert s.value == a + b and s.deriv == da + db

    def test_matrix_inverse_derivative(self):
        # d/dt inv(1 + t) at t = 1 is -1/4; embed as a 1x1 matrix of Jets
        m = Mat([[Jet(Fraction(2), Fraction(1))]])
        inv = m.inverse()
        assert inv.data[0][0].value == Fraction(1, 2)
        assert inv.data[0][0].deriv == Fraction(-1, 4)


# ---------------------------------------------------------------------------
# word traces
# ---------------------------------------------------------------------------


class TestTraceWord:
    def test_single_letter(self):
        a = Mat([[1, 2], [3, 4]])
        assert trace_word([a], (0,)) == 5

    def test_word_order_matters_in_product_but_not_trace_of_cycle(self):
        a = Mat([[1, 1], [0, 1]])
        b = Mat([[1, 0], [1, 1]])
        # tr(ab) == tr(ba) always
        assert trace_word([a, b], (0, 1)) == trace_word([a, b], (1, 0))

    def test_bad_index(self):
        with pytest.raises(IndexError):
            trace_word([Mat.identity(2)], (1,))


# ---------------------------------------------------------------------------
# swappable kernels: both implementations agree
# ---------------------------------------------------------------------------


def _load_backends():
    from planeinv import _kernels_py

    backends = [("pure-python", _kernels_py)]
    try:
        from planeinv import _kernels_cy

        backends.append(("compiled", _kernels_cy))
    except ImportError:
        pass
    return backends


BACKENDS = _load_backends()


@pytest.mark.parametrize("name,mod", BACKENDS, ids=[n for n, _ in BACKENDS])
class TestKernelBackends:
    def test_mat_mul(self, name, mod):
        a = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
        b = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(1)]]
        assert mod.mat_mul(a, b) == [
            [Fraction(2), Fraction(3)],
            [Fraction(4), Fraction(7)],
        ]

    def test_rref(self, name, mod):
        rows = [
            [Fraction(0), Fraction(2), Fraction(4)],
            [Fraction(1), Fraction(1), Fraction(1)],
        ]
        pivots = mod.rref_in_place(rows)
        assert tuple(pivots) == (0, 1)
        assert rows == [
            [Fraction(1), Fraction(0), Fraction(-1)],
            [Fraction(0), Fraction(1), Fraction(2)],
        ]

    @given(
        st.lists(
            st.lists(rationals, min_size=3, max_size=3), min_size=2, max_size=4
        )
    )
    @settings(max_examples=40, deadline=None)
    def test_backends_agree_on_rref(self, name, mod, rows):
        mine = [list(r) for r in rows]
        ref = [list(r) for r in rows]
        from planeinv import _kernels_py

        p1 = mod.rref_in_place(mine)
        p2 = _kernels_py.rref_in_place(ref)
        assert mine == ref and tuple(p1) == tuple(p2)


def test_backend_reported():
    assert kernel_backend() in ("compiled", "pure-python")
