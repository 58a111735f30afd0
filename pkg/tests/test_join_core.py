"""Continuity-raising joins: bidiagonal accessors, C0 gluing, the coefficient
triangle of a single join, and the no-subtraction recurrence.

The full first join of the space (2_1 2_2 4_3 3) on [0, 4] is pinned entry by
entry to hand-checked rationals; the bidiagonal application is compared
against an explicitly assembled dense matrix.
"""

from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdspline import EXACT, FLOAT, MDSpace, NumericalInconsistencyError, cr_join, section_bundle
from mdspline.join_core import (JoinRecord, RKICoefficients, apply_bidiagonal,
                                c0_join_integrals, c0_join_matrices,
                                join_spaces, make_coefficients)


def test_accessor_plain_window():
    co = RKICoefficients(2, 3, (F(1, 3), F(2, 5)), (F(2, 3), F(3, 5)))
    assert [co.alpha(i) for i in range(1, 5)] == [1, F(1, 3), F(2, 5), 0]
    assert [co.beta(i) for i in range(1, 5)] == [0, F(2, 3), F(3, 5), 1]
    assert co.window == (2, 3)
    assert co.nontrivial_count == 2


def test_accessor_merge():
    # empty window with ib = ie + 1 adds rows ie and ie + 1
    co = RKICoefficients(3, 2, (), ())
    out = apply_bidiagonal(np.eye(4), co, FLOAT)
    assert out.shape == (3, 4)
    assert np.array_equal(out, [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]])


def test_accessor_drop():
    # ib >= ie + 2 deletes row ie + 1
    co = RKICoefficients(4, 2, (), ())
    out = apply_bidiagonal(np.eye(4), co, FLOAT)
    assert np.array_equal(out, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]])


def test_make_coefficients_validates():
    make_coefficients(2, 2, [F(1, 2)], [F(1, 2)], EXACT)
    with pytest.raises(NumericalInconsistencyError):
        make_coefficients(2, 2, [F(1, 2)], [F(1, 3)], EXACT)
    with pytest.raises(NumericalInconsistencyError):
        make_coefficients(2, 2, [F(3, 2)], [F(-1, 2)], EXACT)
    with pytest.raises(NumericalInconsistencyError):
        make_coefficients(2, 2, [0.5], [0.5 + 1e-9], FLOAT)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_apply_matches_dense_product(data):
    m = data.draw(st.integers(2, 7))
    cols = data.draw(st.integers(1, 5))
    ib = data.draw(st.integers(1, m + 1))
    ie = data.draw(st.integers(ib - 1, m - 1)) if ib <= m - 1 else ib - 1
    alphas = tuple(data.draw(st.floats(0.05, 1.0)) for _ in range(ib, ie + 1))
    betas = tuple(1.0 - a for a in alphas)
    co = RKICoefficients(ib, ie, alphas, betas)
    dense = np.zeros((m - 1, m))
    for i in range(1, m):
        dense[i - 1, i - 1] = co.alpha(i)
        dense[i - 1, i] = co.beta(i + 1)
    mat = np.array([[data.draw(st.floats(-2, 2)) for _ in range(cols)]
                    for _ in range(m)])
    assert np.allclose(apply_bidiagonal(mat, co, FLOAT), dense @ mat,
                       atol=1e-14, rtol=0)


def test_c0_join_integrals():
    assert list(c0_join_integrals(np.array([1.0, 2.0]), np.array([3.0, 4.0]))) \
        == [1.0, 5.0, 4.0]


def test_c0_join_matrices_identities():
    out = c0_join_matrices(np.eye(2), np.eye(3), FLOAT)
    assert np.array_equal(out, np.eye(4))


def test_c0_join_matrices_corner_disagreement():
    left = np.eye(2)
    left[1, 1] = 0.5
    with pytest.raises(NumericalInconsistencyError):
        c0_join_matrices(left, np.eye(2), FLOAT)


def test_join_spaces_dimensions():
    left = MDSpace.create((2.0, 3.0), (), (4,), ())
    right = MDSpace.create((3.0, 4.0), (), (3,), ())
    for k in range(4):
        sp = join_spaces(left, right, k)
        assert sp.dimension == left.dimension + right.dimension - 1 - k


def first_join(field):
    left = section_bundle(MDSpace.create((2.0, 3.0), (), (4,), ()), field)
    right = section_bundle(MDSpace.create((3.0, 4.0), (), (3,), ()), field)
    rec = JoinRecord(3.0, 3, left.space, right.space)
    return cr_join(left, right, 3, field, rec), rec


def test_first_join_cell_fractions():
    _, rec = first_join(EXACT)
    got = {(c.n, c.k): (c.coefficients.window, c.coefficients.alphas)
           for c in rec.cells}
    assert got[(1, 1)] == ((3, 3), (F(1, 3),))
    assert got[(2, 1)] == ((4, 4), (F(2, 5),))
    assert got[(2, 2)] == ((3, 4), (F(3, 8), F(5, 14)))
    assert got[(3, 1)] == ((5, 5), (F(3, 7),))
    assert got[(3, 2)] == ((4, 5), (F(5, 12), F(7, 17)))
    assert got[(3, 3)] == ((3, 5), (F(2, 5), F(21, 55), F(17, 45)))


def test_first_join_integral_vectors():
    _, rec = first_join(EXACT)
    def iv(n, k):
        return list(rec.matrices[(n, k)].dot(rec.integrals0[n]))
    assert iv(1, 1) == [F(1, 3), F(8, 9), F(7, 9)]
    assert iv(2, 1) == [F(1, 4), F(1, 4), F(3, 5), F(17, 30), F(1, 3)]
    assert iv(2, 2) == [F(1, 4), F(5, 8), F(33, 56), F(15, 28)]


def test_first_join_matrices():
    _, rec = first_join(EXACT)
    m11 = [[1, 0, 0, 0], [0, 1, F(2, 3), 0], [0, 0, F(1, 3), 1]]
    assert rec.matrices[(1, 1)].tolist() == m11
    m22 = [[1, 0, 0, 0, 0, 0],
           [0, 1, F(5, 8), F(3, 8), 0, 0],
           [0, 0, F(3, 8), F(27, 56), F(9, 14), 0],
           [0, 0, 0, F(1, 7), F(5, 14), 1]]
    assert rec.matrices[(2, 2)].tolist() == m22
    m33 = [[1, 0, 0, 0, 0, 0, 0, 0],
           [0, 1, F(3, 5), F(7, 20), F(1, 5), 0, 0, 0],
           [0, 0, F(2, 5), F(27, 55), F(24, 55), F(4, 11), 0, 0],
           [0, 0, 0, F(7, 44), F(49, 165), F(238, 495), F(28, 45), 0],
           [0, 0, 0, 0, F(1, 15), F(7, 45), F(17, 45), 1]]
    assert rec.matrices[(3, 3)].tolist() == m33


def test_first_join_float_matches_exact():
    exact, _ = first_join(EXACT)
    dbl, _ = first_join(FLOAT)
    diff = np.abs(dbl.matrix - np.array(exact.matrix, dtype=float))
    assert diff.max() <= 1e-15


def test_join_emits_decreasing_orders():
    bundle, _ = first_join(EXACT)
    assert set(bundle.orders) == {0, 1, 2, 3}
    base = bundle.space.dimension
    for rho, od in bundle.orders.items():
        assert od.matrix.shape[0] == base - rho


def test_zero_continuity_join_keeps_two_orders():
    left = section_bundle(MDSpace.create((0.0, 1.0), (), (2,), ()), EXACT)
    right = section_bundle(MDSpace.create((1.0, 2.0), (), (3,), ()), EXACT)
    bundle = cr_join(left, right, 0, EXACT)
    assert set(bundle.orders) >= {0, 1}
    assert bundle.alpha_count == 0
    assert np.array_equal(bundle.matrix, np.array(np.eye(6), dtype=object))


def test_alpha_count_formula():
    for r in range(1, 7):
        d = r + 1
        left = section_bundle(MDSpace.create((0.0, 1.0), (), (d,), ()), FLOAT)
        right = section_bundle(MDSpace.create((1.0, 2.0), (), (d,), ()), FLOAT)
        bundle = cr_join(left, right, r, FLOAT)
        assert bundle.alpha_count == r * (r + 1) * (r + 2) // 6


def test_pair_sums_exact():
    _, rec = first_join(EXACT)
    for cell in rec.cells:
        co = cell.coefficients
        assert all(a + b == 1 for a, b in zip(co.alphas, co.betas))
        assert all(0 < a <= 1 for a in co.alphas)
