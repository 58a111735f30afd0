"""Continuity-raising joins built from reverse knot insertion.

A bundle represents one space by matrices over directly evaluable reference
spaces, one matrix per derivative order: row i of the order-rho matrix gives
the coefficients of the i-th basis function of the rho-th derivative space in
the basis of the order-rho reference. Joining two bundles with continuity r
runs a triangular family of reverse knot insertion steps whose coefficients
come from ratios of basis integrals only; no subtraction is ever formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from ._scalars import FLOAT, dtype_of, eye, is_exact
from .c0_engine import c0_integrals
from .errors import NumericalInconsistencyError, UnsupportedSpaceError
from .spaces import MDSpace

OVERLAP_TOL = 1e-14
PAIR_SUM_TOL = 1e-13


@dataclass(frozen=True)
class RKICoefficients:
    """Bidiagonal step coefficients on window ib..ie (1-based, empty if ib > ie).

    Outside the window the step is trivial: alpha(i) = 1 below it and 0 above,
    beta(i) = 0 below and 1 above, so that row i of the combined basis is
    alpha(i) * row i + beta(i+1) * row i+1 of the finer one. Degenerate windows
    encode the two boundary cases of a vanishing function count: ib = ie + 1
    merges rows ie and ie + 1, while ib >= ie + 2 drops row ie + 1.
    """
    ib: int
    ie: int
    alphas: tuple
    betas: tuple

    def alpha(self, i: int):
        ib_eff = min(self.ib, self.ie + 2)
        if i <= min(ib_eff - 1, self.ie):
            return 1
        if self.ib <= i <= self.ie:
            return self.alphas[i - self.ib]
        return 0

    def beta(self, i: int):
        ib_eff = min(self.ib, self.ie + 2)
        if i < ib_eff:
            return 0
        if self.ib <= i <= self.ie:
            return self.betas[i - self.ib]
        return 1

    @property
    def window(self) -> tuple[int, int]:
        return (self.ib, self.ie)

    @property
    def nontrivial_count(self) -> int:
        return len(self.alphas)


def make_coefficients(ib: int, ie: int, alphas, betas, field=FLOAT) -> RKICoefficients:
    alphas = tuple(alphas)
    betas = tuple(betas)
    if len(alphas) != len(betas) or len(alphas) != max(0, ie - ib + 1):
        raise ValueError("window size does not match coefficient count")
    for a, b in zip(alphas, betas):
        if is_exact(field):
            if a + b != 1:
                raise NumericalInconsistencyError(f"alpha + beta != 1 exactly: {a} + {b}")
            if not (0 < a <= 1 and 0 <= b < 1):
                raise NumericalInconsistencyError(f"coefficient out of range: {a}, {b}")
        else:
            if not (0.0 < a <= 1.0 + 1e-12 and -1e-12 <= b < 1.0):
                raise NumericalInconsistencyError(f"coefficient out of range: {a}, {b}")
            if abs(a + b - 1.0) > PAIR_SUM_TOL:
                raise NumericalInconsistencyError(f"alpha + beta = {a + b} drifts from 1")
    return RKICoefficients(ib, ie, alphas, betas)


def apply_bidiagonal(matrix: np.ndarray, co: RKICoefficients, field=FLOAT) -> np.ndarray:
    """Combine adjacent rows: out[i] = alpha(i) * in[i] + beta(i+1) * in[i+1]."""
    k1 = matrix.shape[0]
    out = np.empty((k1 - 1, matrix.shape[1]), dtype=dtype_of(field))
    for i in range(1, k1):
        a = co.alpha(i)
        b = co.beta(i + 1)
        if a == 1 and b == 0:
            out[i - 1] = matrix[i - 1]
        elif a == 0 and b == 1:
            out[i - 1] = matrix[i]
        else:
            out[i - 1] = a * matrix[i - 1] + b * matrix[i]
    return out


def c0_join_integrals(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Concatenate integral vectors, summing over the shared seam function."""
    out = np.concatenate([left, right])
    out[len(left) - 1] = left[-1] + right[0]
    return np.delete(out, len(left))


def c0_join_matrices(left: np.ndarray, right: np.ndarray, field=FLOAT) -> np.ndarray:
    """Block-join two matrices with a single shared corner entry."""
    la, lb = left.shape
    ra, rb = right.shape
    corner_l, corner_r = left[-1, -1], right[0, 0]
    if is_exact(field):
        if corner_l != corner_r:
            raise NumericalInconsistencyError("seam entries disagree exactly")
    elif abs(corner_l - corner_r) > OVERLAP_TOL * max(1.0, abs(corner_l)):
        raise NumericalInconsistencyError(
            f"seam entries disagree: {corner_l!r} vs {corner_r!r}")
    out = np.zeros((la + ra - 1, lb + rb - 1), dtype=dtype_of(field))
    if is_exact(field):
        out[:] = Fraction(0)
    out[:la, :lb] = left
    out[la - 1:, lb - 1:] = right
    return out


def block_diag(left: np.ndarray, right: np.ndarray, field=FLOAT) -> np.ndarray:
    la, lb = left.shape
    ra, rb = right.shape
    out = np.zeros((la + ra, lb + rb), dtype=dtype_of(field))
    if is_exact(field):
        out[:] = Fraction(0)
    out[:la, :lb] = left
    out[la:, lb:] = right
    return out


def join_spaces(left: MDSpace, right: MDSpace, k: int, internal=None) -> MDSpace:
    if left.b != right.a:
        raise ValueError(f"spaces do not abut: {left.b} vs {right.a}")
    if internal is None:
        internal = left.internal or right.internal or k < 0
    joined = MDSpace.create(
        (left.a, right.b),
        left.breakpoints + (left.b,) + right.breakpoints,
        left.degrees + right.degrees,
        left.continuities + (k,) + right.continuities,
        internal=internal)
    assert joined.dimension == left.dimension + right.dimension - 1 - k
    return joined


@dataclass(frozen=True)
class OrderData:
    """One derivative order of a bundle: basis of `space` expressed over the
    directly evaluable `ref` by `matrix`; `integrals0` are the ref integrals."""
    space: MDSpace
    matrix: np.ndarray
    ref: MDSpace
    integrals0: np.ndarray

    @property
    def integrals(self) -> np.ndarray:
        return self.matrix.dot(self.integrals0)


@dataclass
class Bundle:
    space: MDSpace
    orders: dict[int, OrderData]
    field: object = FLOAT
    alpha_count: int = 0
    strategy: str = "section"

    @property
    def matrix(self) -> np.ndarray:
        return self.orders[0].matrix

    @property
    def ref(self) -> MDSpace:
        return self.orders[0].ref


@dataclass
class CellRecord:
    n: int
    k: int
    coefficients: RKICoefficients


@dataclass
class JoinRecord:
    seam: float
    r: int
    left_space: MDSpace
    right_space: MDSpace
    cells: list[CellRecord] = dc_field(default_factory=list)
    matrices: dict = dc_field(default_factory=dict)     # (n, k) -> matrix
    integrals0: dict = dc_field(default_factory=dict)   # n -> joined C0 integrals
    operand_integrals: dict = dc_field(default_factory=dict)  # n -> (IN_L, IN_R)


class LazyIntegrals:
    """Per-index integrals of a represented basis: row of M dotted with IN0."""

    def __init__(self, matrix: np.ndarray, in0: np.ndarray):
        self.matrix = matrix
        self.in0 = in0
        self._cache: dict[int, object] = {}

    def value(self, i: int):
        if i not in self._cache:
            self._cache[i] = self.matrix[i - 1].dot(self.in0)
        return self._cache[i]

    def full(self) -> np.ndarray:
        return self.matrix.dot(self.in0)


def section_bundle(section: MDSpace, field=FLOAT) -> Bundle:
    """Identity bundle of a directly evaluable space, orders 0..max(degree, 1)."""
    if not section.is_directly_evaluable():
        raise UnsupportedSpaceError(f"{section} is not directly evaluable")
    top = max(max(section.degrees), 1)
    orders = {}
    for rho in range(top + 1):
        sp = section.derivative_space(rho) if rho else section
        orders[rho] = OrderData(sp, eye(sp.dimension, field), sp,
                                c0_integrals(sp, field))
    return Bundle(section, orders, field)


def rki_window(space11: MDSpace, xj: float) -> int:
    """First nontrivial index for a join, read off the order r-1 continuity-1
    join space: the count of left extended partition entries <= xj, minus the
    degree right of xj, plus one."""
    s, _ = space11.extended_partitions()
    ell = sum(1 for v in s if v <= xj)
    dright = space11.degrees[space11.find_interval(xj)]
    return ell - dright + 1


def _check_positive(value, field, what: str):
    if is_exact(field):
        if value <= 0:
            raise NumericalInconsistencyError(f"{what} is not positive: {value}")
    elif not value > 0.0:
        raise NumericalInconsistencyError(f"{what} is not positive: {value!r}")


def cr_join(left: Bundle, right: Bundle, r: int, field=FLOAT,
            record: JoinRecord | None = None) -> Bundle:
    """Join two bundles with continuity r at the seam left.space.b.

    Requires operand orders 0..max(r, 1). The result carries orders 0..r, or
    0..1 for r = 0 where the order-1 data is the independent block join of the
    operand order-1 data.
    """
    if left.field is not field or right.field is not field:
        raise ValueError("operand bundles use a different scalar field")
    seam = left.space.b
    need = max(r, 1)
    for op in (left, right):
        missing = [rho for rho in range(need + 1) if rho not in op.orders]
        if missing:
            raise UnsupportedSpaceError(
                f"operand lacks derivative orders {missing} for a C^{r} join")

    joined = join_spaces(left.space, right.space, r)
    alpha_count = left.alpha_count + right.alpha_count

    if r == 0:
        l0, r0 = left.orders[0], right.orders[0]
        l1, r1 = left.orders[1], right.orders[1]
        orders = {
            0: OrderData(joined,
                         c0_join_matrices(l0.matrix, r0.matrix, field),
                         join_spaces(l0.ref, r0.ref, 0),
                         c0_join_integrals(l0.integrals0, r0.integrals0)),
            1: OrderData(joined.derivative_space(1),
                         block_diag(l1.matrix, r1.matrix, field),
                         join_spaces(l1.ref, r1.ref, -1),
                         np.concatenate([l1.integrals0, r1.integrals0])),
        }
        return Bundle(joined, orders, field, alpha_count, "rki")

    kl = left.orders[0].matrix.shape[0]
    ibstart = kl - r + 1

    mats: dict[tuple[int, int], np.ndarray] = {}
    in0: dict[int, np.ndarray] = {}
    refs: dict[int, MDSpace] = {}
    op_in: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for n in range(r + 1):
        lo, ro = left.orders[r - n], right.orders[r - n]
        mats[(n, 0)] = c0_join_matrices(lo.matrix, ro.matrix, field)
        refs[n] = join_spaces(lo.ref, ro.ref, 0)
        in0[n] = c0_join_integrals(lo.integrals0, ro.integrals0)
        if n < r:
            op_in[n] = (lo.integrals, ro.integrals)

    if record is not None:
        record.integrals0.update(in0)
        record.operand_integrals.update(op_in)

    check = rki_window(join_spaces(left.orders[r - 1].space,
                                   right.orders[r - 1].space, 1), seam)
    assert check == ibstart, f"window start {check} != {ibstart}"

    lazy: dict[tuple[int, int], LazyIntegrals] = {}

    def integrals(n: int, k: int) -> LazyIntegrals:
        if (n, k) not in lazy:
            lazy[(n, k)] = LazyIntegrals(mats[(n, k)], in0[n])
        return lazy[(n, k)]

    prev_coeffs: dict[int, RKICoefficients] = {}
    for n in range(1, r + 1):
        cur_coeffs: dict[int, RKICoefficients] = {}
        inl, inr = op_in[n - 1]
        seam_pair = {ibstart + n - 2: inl[-1], ibstart + n - 1: inr[0]}
        for k in range(1, n + 1):
            ib = ibstart + (n - 1) - (k - 1)
            ie = ib + k - 1
            den_vec = integrals(n - 1, k - 1)
            alphas, betas = [], []
            for i in range(ib, ie + 1):
                if k == 1:
                    a_prev = b_prev = 1
                    num_a, num_b = seam_pair[i - 1], seam_pair[i]
                else:
                    pc = prev_coeffs[k - 1]
                    a_prev, b_prev = pc.alpha(i - 1), pc.beta(i)
                    vec = integrals(n - 1, k - 2)
                    num_a, num_b = vec.value(i - 1), vec.value(i)
                den = den_vec.value(i - 1)
                _check_positive(den, field, "basis integral")
                alphas.append(a_prev * num_a / den)
                betas.append(b_prev * num_b / den)
            co = make_coefficients(ib, ie, alphas, betas, field)
            alpha_count += co.nontrivial_count
            mats[(n, k)] = apply_bidiagonal(mats[(n, k - 1)], co, field)
            cur_coeffs[k] = co
            if record is not None:
                record.cells.append(CellRecord(n, k, co))
        prev_coeffs = cur_coeffs

    if record is not None:
        record.matrices.update(mats)

    orders = {}
    for n in range(r + 1):
        rho = r - n
        sp = joined.derivative_space(rho) if rho else joined
        orders[rho] = OrderData(sp, mats[(n, n)], refs[n], in0[n])
    return Bundle(joined, orders, field, alpha_count, "rki")
