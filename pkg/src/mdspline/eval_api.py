"""Evaluation, abscissae and single knot insertion on top of built bundles."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ._scalars import FLOAT, dtype_of, is_exact, zeros
from .c0_engine import BasisValues, build_layout, eval_c0_basis
from .errors import NumericalInconsistencyError, UnsupportedSpaceError
from .join_core import Bundle
from .spaces import MDSpace


def _band(bundle: Bundle) -> tuple[np.ndarray, np.ndarray]:
    """Per-row first/last nonzero column (0-based) of the order-0 matrix."""
    cached = getattr(bundle, "_band", None)
    if cached is None:
        m = bundle.matrix
        lo = np.empty(m.shape[0], dtype=int)
        hi = np.empty(m.shape[0], dtype=int)
        for i in range(m.shape[0]):
            nz = [j for j in range(m.shape[1]) if m[i, j] != 0]
            lo[i], hi[i] = nz[0], nz[-1]
        cached = (lo, hi)
        bundle._band = cached
    return cached


def _ref_layout(bundle: Bundle):
    cached = getattr(bundle, "_ref_layout", None)
    if cached is None:
        cached = build_layout(bundle.orders[0].ref)
        bundle._ref_layout = cached
    return cached


def eval_basis(bundle: Bundle, x, field=None) -> BasisValues:
    """Window of basis values of the represented space at x."""
    field = field or bundle.field
    ref_vals = eval_c0_basis(bundle.orders[0].ref, x, field, _ref_layout(bundle))
    if len(ref_vals.values) == 0:
        return BasisValues(1, ref_vals.values, bundle.space.dimension)
    c0 = ref_vals.first - 1
    c1 = ref_vals.last - 1
    lo, hi = _band(bundle)
    rows = [i for i in range(bundle.matrix.shape[0]) if lo[i] <= c1 and hi[i] >= c0]
    assert rows == list(range(rows[0], rows[-1] + 1))
    block = bundle.matrix[rows[0]:rows[-1] + 1, c0:c1 + 1]
    vals = block.dot(ref_vals.values)
    return BasisValues(rows[0] + 1, vals, bundle.space.dimension)


def eval_spline(bundle: Bundle, coefficients, x, field=None):
    field = field or bundle.field
    coefficients = np.asarray(coefficients, dtype=dtype_of(field))
    if len(coefficients) != bundle.space.dimension:
        raise ValueError(f"expected {bundle.space.dimension} coefficients")
    w = eval_basis(bundle, x, field)
    return coefficients[w.first - 1:w.last].dot(w.values)


def greville(bundle: Bundle) -> np.ndarray:
    """Abscissae xi with xi_1 = a and xi_K = b: successive differences are the
    integrals of the first derivative basis."""
    space = bundle.space
    if min(space.degrees) < 1:
        raise UnsupportedSpaceError(
            "abscissae need every interval degree to be at least 1")
    if 1 not in bundle.orders:
        raise UnsupportedSpaceError("bundle lacks first-derivative data")
    steps = bundle.orders[1].integrals
    field = bundle.field
    out = zeros(space.dimension, field)
    conv = Fraction if is_exact(field) else float
    acc = conv(space.a)
    out[0] = acc
    for i, dv in enumerate(steps, 1):
        if not dv > 0:
            raise NumericalInconsistencyError(f"abscissa step not positive: {dv!r}")
        acc = acc + dv
        out[i] = acc
    out[-1] = conv(space.b)
    return out


def insert_knot_coeffs(space: MDSpace, hat_space: MDSpace, coefficients,
                       index: int, field=FLOAT) -> np.ndarray:
    """Coefficients of a spline of `space` re-expressed in `hat_space`, which
    must equal `space` with the continuity at breakpoint `index` lowered by 1.
    The conversion weights come from the two abscissae vectors."""
    from .assembler import build_matrix_rki

    exp = list(space.continuities)
    exp[index - 1] -= 1
    if (hat_space.degrees != space.degrees
            or tuple(exp) != hat_space.continuities
            or hat_space.breakpoints != space.breakpoints):
        raise ValueError("hat space is not a single-insertion refinement")
    coefficients = np.asarray(coefficients, dtype=dtype_of(field))
    if len(coefficients) != space.dimension:
        raise ValueError(f"expected {space.dimension} coefficients")

    xi = greville(build_matrix_rki(space, field))
    xi_hat = greville(build_matrix_rki(hat_space, field))
    kl = space.restrict(0, index).dimension
    kj = space.continuities[index - 1]
    ib, ie = kl - kj + 1, kl

    out = np.empty(hat_space.dimension, dtype=dtype_of(field))
    out[:ib - 1] = coefficients[:ib - 1]
    for i in range(ib, ie + 1):
        den = xi[i - 1] - xi[i - 2]
        alpha = (xi_hat[i - 1] - xi[i - 2]) / den
        if not 0 < alpha <= 1:
            raise NumericalInconsistencyError(f"insertion weight {alpha!r} out of range")
        out[i - 1] = alpha * coefficients[i - 1] + (1 - alpha) * coefficients[i - 2]
    out[ie:] = coefficients[ie - 1:]
    return out
