"""Scalar-field helpers.

Every numerical kernel in this package is written against a generic scalar
field so the same code runs in float64 (production) and in exact rational
arithmetic (the built-in oracle). A field is identified by the callable used
to convert plain Python numbers: ``float`` or ``fractions.Fraction``.
Fraction(float) is exact, so converting the stored double-precision
breakpoints loses nothing.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

FLOAT = float
EXACT = Fraction


def is_exact(field) -> bool:
    return field is Fraction


def dtype_of(field):
    return object if field is Fraction else np.float64


def zeros(shape, field) -> np.ndarray:
    if field is Fraction:
        arr = np.empty(shape, dtype=object)
        arr[...] = Fraction(0)
        return arr
    return np.zeros(shape, dtype=np.float64)


def eye(n: int, field) -> np.ndarray:
    if field is Fraction:
        arr = zeros((n, n), Fraction)
        for i in range(n):
            arr[i, i] = Fraction(1)
        return arr
    return np.eye(n, dtype=np.float64)


def asarray(values, field) -> np.ndarray:
    if field is Fraction:
        arr = np.empty(len(values), dtype=object)
        for i, v in enumerate(values):
            arr[i] = v if isinstance(v, Fraction) else Fraction(v)
        return arr
    return np.asarray([float(v) for v in values], dtype=np.float64)
