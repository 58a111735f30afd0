"""Reverse degree elevation: represent a space inside the uniform-degree space
of its maximum degree by lowering one interval degree at a time.

The construction runs on a rectangular family of spaces: row k holds the
(r - k)-th derivative images of the degree-lowering chain, row r the chain
itself. Each lowering step is a bidiagonal row combination whose window sits
over the affected interval; its coefficients follow from the row below by the
same integral ratio recurrence used for continuity-raising joins. Row 0 never
needs coefficients of its own when r is at least the maximum degree minus one,
because there every step window is empty; the optional "difference" mode keeps
r at the largest continuity instead and seeds row 1 from signed sums of row 0
integrals, which reintroduces cancellation and exists for comparison only.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from ._scalars import FLOAT, eye, is_exact
from .c0_engine import c0_integrals
from .errors import NumericalInconsistencyError
from .join_core import (Bundle, LazyIntegrals, OrderData, RKICoefficients,
                        apply_bidiagonal, make_coefficients)
from .spaces import MDSpace

RATIO = "ratio"
DIFFERENCE = "difference"


@dataclass
class StepRecord:
    n: int
    j: int
    h: int
    cells: dict = dc_field(default_factory=dict)   # level k -> RKICoefficients


@dataclass
class RDERecord:
    space: MDSpace
    r: int = 0
    mode: str = RATIO
    steps: list[StepRecord] = dc_field(default_factory=list)


def rde_schedule(space: MDSpace) -> list[tuple[int, int]]:
    """Steps (j, h): interval j is lowered to degree h, one unit at a time,
    left to right."""
    m = max(space.degrees)
    return [(j, h) for j, d in enumerate(space.degrees)
            for h in range(m - 1, d - 1, -1)]


def level_space(space: MDSpace, degrees, drop: int) -> MDSpace:
    return MDSpace.create(
        (space.a, space.b), space.breakpoints,
        tuple(d - drop for d in degrees),
        tuple(k - drop for k in space.continuities),
        internal=True)


def window_bounds(post: MDSpace, j: int) -> tuple[int, int]:
    """Raw window of a lowering step on interval j of the post space: ie is
    the unclamped count of basis slots starting at or before the interval."""
    d, ks = post.degrees, post.continuities
    ie = d[0] + 1 + sum(d[i] - ks[i - 1] for i in range(1, j + 1))
    return ie - d[j] + 1, ie


def _degenerate(ib_raw: int, ie_raw: int, pre_rows: int) -> RKICoefficients:
    ie = max(ie_raw, 0)
    if ie + 1 > pre_rows or (ib_raw == ie_raw + 1 and ie < 1):
        raise NumericalInconsistencyError("degenerate window out of range")
    return RKICoefficients(min(ib_raw, ie + 2), ie, (), ())


def _check_positive(value, field):
    if is_exact(field):
        if value <= 0:
            raise NumericalInconsistencyError(f"basis integral not positive: {value}")
    elif not value > 0.0:
        raise NumericalInconsistencyError(f"basis integral not positive: {value!r}")


def rde_build(space: MDSpace, field=FLOAT, mode: str = RATIO, min_orders: int = 1,
              record: RDERecord | None = None) -> Bundle:
    """Bundle representing `space` over uniform-degree references.

    Emits derivative orders 0..r-1 where r = max(2, max degree - 1,
    min_orders + 1) in ratio mode and r = max(2, max continuity,
    min_orders + 1) in difference mode.
    """
    if mode not in (RATIO, DIFFERENCE):
        raise ValueError(f"unknown mode {mode!r}")
    if min(space.degrees) < 1:
        raise ValueError("degree lowering needs every interval degree to be at least 1")
    m = max(space.degrees)
    if mode == RATIO:
        r = max(2, m - 1, min_orders + 1)
    else:
        r = max(2, max(space.continuities, default=1), min_orders + 1)
    if record is not None:
        record.r, record.mode = r, mode

    uniform = [m] * (space.q + 1)
    refs = {k: level_space(space, uniform, r - k) for k in range(1, r + 1)}
    in_ref = {k: c0_integrals(refs[k], field) for k in range(1, r + 1)}

    mats = {k: eye(refs[k].dimension, field) for k in range(1, r + 1)}
    lazy = {k: LazyIntegrals(mats[k], in_ref[k]) for k in range(1, r + 1)}
    alpha_count = 0

    degrees = list(uniform)
    level0_in = c0_integrals(level_space(space, degrees, r), field)
    for n, (j, h) in enumerate(rde_schedule(space), 1):
        degrees[j] = h
        level0_old = level0_in
        level0_space = level_space(space, degrees, r)
        level0_in = c0_integrals(level0_space, field)
        coeffs: dict[int, RKICoefficients] = {}
        if mode == RATIO:
            ib0, ie0 = window_bounds(level0_space, j)
            coeffs[0] = _degenerate(ib0, ie0, len(level0_old))
        lazy_new: dict[int, LazyIntegrals] = {}
        for k in range(1, r + 1):
            post = level_space(space, degrees, r - k)
            ib, ie = window_bounds(post, j)
            if ib > ie:
                co = _degenerate(ib, ie, mats[k].shape[0])
            else:
                alphas, betas = [], []
                for i in range(ib, ie + 1):
                    if k == 1 and mode == DIFFERENCE:
                        lo = ib - 1
                        sum_old = sum(level0_old[v - 1] for v in range(lo, i))
                        sum_new_lo = sum(level0_in[v - 1] for v in range(lo, i - 1))
                        den = level0_in[i - 2]
                        _check_positive(den, field)
                        alpha = (sum_old - sum_new_lo) / den
                        beta = (sum_new_lo + level0_in[i - 2] - sum_old) / den
                    else:
                        if k == 1:
                            pc = coeffs[0]
                            num_a, num_b = level0_old[i - 2], level0_old[i - 1]
                            den = level0_in[i - 2]
                        else:
                            pc = coeffs[k - 1]
                            num_a = lazy[k - 1].value(i - 1)
                            num_b = lazy[k - 1].value(i)
                            den = lazy_new[k - 1].value(i - 1)
                        _check_positive(den, field)
                        alpha = pc.alpha(i - 1) * num_a / den
                        beta = pc.beta(i) * num_b / den
                    alphas.append(alpha)
                    betas.append(beta)
                co = make_coefficients(ib, ie, alphas, betas, field)
                alpha_count += co.nontrivial_count
            mats[k] = apply_bidiagonal(mats[k], co, field)
            lazy_new[k] = LazyIntegrals(mats[k], in_ref[k])
            coeffs[k] = co
        lazy = lazy_new
        if record is not None:
            record.steps.append(StepRecord(n, j, h, dict(coeffs)))

    orders = {}
    for rho in range(r):
        k = r - rho
        sp = space.derivative_space(rho) if rho else space
        assert mats[k].shape == (sp.dimension, refs[k].dimension)
        orders[rho] = OrderData(sp, mats[k], refs[k], in_ref[k])
    return Bundle(space, orders, field, alpha_count, "rde")
