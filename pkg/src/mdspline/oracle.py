"""Exact rational replay of every construction, plus error measures.

All kernels are written over a generic scalar field, so running them with
Fraction scalars gives bit-exact references: the only rounding in a reported
error is the final conversion of an exact difference to a double. Three
identities that must hold exactly in rational arithmetic double as algorithm
cross-checks: the integral-ratio coefficients against the abscissa-difference
quotients, the same coefficients against the derivative-jump route, and, on
conventional spaces, against the classical single-knot insertion weights.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ._scalars import EXACT
from .assembler import BuildRecord, build_matrix_rki
from .errors import NumericalInconsistencyError
from .eval_api import eval_basis
from .join_core import Bundle, JoinRecord, c0_join_integrals
from .legacy import LegacyRecord, build_matrix_derivative
from .spaces import MDSpace


def exact_bundle(space: MDSpace, builder=build_matrix_rki, **kwargs) -> Bundle:
    return builder(space, EXACT, **kwargs)


def to_exact(matrix: np.ndarray) -> np.ndarray:
    out = np.empty(matrix.shape, dtype=object)
    flat_in, flat_out = matrix.ravel(), out.ravel()
    for i, v in enumerate(flat_in):
        flat_out[i] = v if isinstance(v, Fraction) else Fraction(v)
    return out


def matrix_error(computed: np.ndarray, exact: np.ndarray) -> float:
    """Largest column sum of absolute entry differences, exactly accumulated
    and rounded once."""
    if computed.shape != exact.shape:
        raise ValueError(f"shape mismatch: {computed.shape} vs {exact.shape}")
    ce = to_exact(computed)
    worst = Fraction(0)
    for j in range(ce.shape[1]):
        col = sum(abs(ce[i, j] - exact[i, j]) for i in range(ce.shape[0]))
        worst = max(worst, col)
    return float(worst)


def value_error(computed: float, exact: Fraction) -> tuple[float, float]:
    """(absolute, relative) error; the relative part falls back to absolute
    when the exact value is zero."""
    diff = abs(Fraction(computed) - exact)
    if exact == 0:
        return float(diff), float(diff)
    return float(diff), float(diff / abs(exact))


def eval_exact(bundle: Bundle, x) -> np.ndarray:
    """Exact full basis vector at x (bundle must be rational)."""
    w = eval_basis(bundle, Fraction(x), EXACT)
    return w.scatter()


def _prefix_abscissae(a: Fraction, integrals) -> list[Fraction]:
    out = [a]
    for v in integrals:
        out.append(out[-1] + v)
    return out


def abscissa_crosscheck(record: JoinRecord) -> int:
    """Verify every join coefficient against the abscissa-difference formula.

    For the cell at row n, column k, the pre and post abscissae follow from
    the integral vectors one row down at columns k-2 and k-1; column -1 is the
    unmerged concatenation of the operand integrals. Exact equality or raise.
    """
    a = Fraction(record.left_space.a)
    checked = 0
    for cell in record.cells:
        n, k, co = cell.n, cell.k, cell.coefficients
        if k == 1:
            inl, inr = record.operand_integrals[n - 1]
            pre = np.concatenate([inl, inr])
        else:
            pre = record.matrices[(n - 1, k - 2)].dot(record.integrals0[n - 1])
        post = record.matrices[(n - 1, k - 1)].dot(record.integrals0[n - 1])
        xi_hat = _prefix_abscissae(a, pre)
        xi = _prefix_abscissae(a, post)
        for i in range(co.ib, co.ie + 1):
            expected = (xi_hat[i - 1] - xi[i - 2]) / (xi[i - 1] - xi[i - 2])
            if co.alpha(i) != expected:
                raise NumericalInconsistencyError(
                    f"cell ({n},{k}) alpha_{i}: {co.alpha(i)} != {expected}")
            checked += 1
    return checked


def greville_crosscheck(space: MDSpace) -> int:
    """Exact build of `space`; every coefficient of every join must match the
    abscissa-difference formula. Returns the number checked."""
    record = BuildRecord.empty()
    build_matrix_rki(space, EXACT, record)
    return sum(abscissa_crosscheck(jr) for jr in record.joins)


def derivative_formula_crosscheck(space: MDSpace) -> int:
    """Exact equality of the derivative-jump route with the integral-ratio
    route: final matrices and every bottom-row coefficient."""
    record = BuildRecord.empty()
    stable = build_matrix_rki(space, EXACT, record)
    lrecord = LegacyRecord()
    legacy = build_matrix_derivative(space, EXACT, lrecord)
    if not np.array_equal(stable.matrix, legacy.matrix):
        raise NumericalInconsistencyError("routes disagree on the final matrix")
    bottom = {}
    for jr in record.joins:
        for cell in jr.cells:
            if cell.n == jr.r:
                bottom[(jr.seam, cell.k)] = cell.coefficients
    checked = 0
    for step in lrecord.steps:
        co = bottom[(step.seam, step.k)]
        ref = step.coefficients
        if (co.ib, co.ie) != (ref.ib, ref.ie) or co.alphas != ref.alphas:
            raise NumericalInconsistencyError(
                f"routes disagree at seam {step.seam}, order {step.k}: "
                f"{ref.alphas} != {co.alphas}")
        checked += len(ref.alphas)
    return checked


def boehm_crosscheck(space: MDSpace, index: int) -> int:
    """On a conventional space, the insertion weights from the abscissae must
    equal (x_j - s_i) / (s_{i+d} - s_i) over the extended partition, with b
    appended degree+1 times. Exact equality or raise."""
    from .eval_api import greville

    if len(set(space.degrees)) != 1:
        raise ValueError("classical insertion weights need one global degree")
    d = space.degrees[0]
    xj = Fraction(space.xs[index])
    s, _ = space.extended_partitions()
    s = [Fraction(v) for v in s] + [Fraction(space.b)] * (d + 1)

    hat = MDSpace.create((space.a, space.b), space.breakpoints, space.degrees,
                         tuple(k - (1 if i + 1 == index else 0)
                               for i, k in enumerate(space.continuities)))
    xi = greville(build_matrix_rki(space, EXACT))
    xi_hat = greville(build_matrix_rki(hat, EXACT))
    kl = space.restrict(0, index).dimension
    kj = space.continuities[index - 1]
    checked = 0
    for i in range(kl - kj + 1, kl + 1):
        via_abscissae = (xi_hat[i - 1] - xi[i - 2]) / (xi[i - 1] - xi[i - 2])
        classical = (xj - s[i - 1]) / (s[i + d - 1] - s[i - 1])
        if via_abscissae != classical:
            raise NumericalInconsistencyError(
                f"weight {i}: {via_abscissae} != {classical}")
        checked += 1
    return checked


def fraction_matrix_strings(matrix: np.ndarray) -> list[list[str]]:
    """Exact matrix as fraction strings, ready for JSON export."""
    return [[str(Fraction(v)) for v in row] for row in matrix]
