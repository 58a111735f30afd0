"""Piecewise polynomial spaces with per-interval degrees and joint continuities.

A space is described by an interval [a, b], interior breakpoints
x_1 < ... < x_q, one degree per interval (q+1 of them) and one continuity
order per breakpoint. Public spaces require 0 <= k_i <= min(d_{i-1}, d_i);
internal spaces (derivative spaces and intermediate construction spaces) may
carry negative degrees and continuities, which are kept raw because the
dimension bookkeeping uses them verbatim.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

from .errors import SpaceValidationError


@dataclass(frozen=True)
class MDSpace:
    a: float
    b: float
    breakpoints: tuple[float, ...]
    degrees: tuple[int, ...]
    continuities: tuple[int, ...]
    internal: bool = False

    # -- construction ------------------------------------------------------

    @staticmethod
    def create(interval: Sequence[float], breakpoints: Sequence[float],
               degrees: Sequence[int], continuities: Sequence[int],
               internal: bool = False) -> "MDSpace":
        space = MDSpace(float(interval[0]), float(interval[1]),
                        tuple(float(x) for x in breakpoints),
                        tuple(int(d) for d in degrees),
                        tuple(int(k) for k in continuities),
                        internal)
        space.validate()
        return space

    def validate(self) -> None:
        q = len(self.breakpoints)
        if not self.b > self.a:
            raise SpaceValidationError(f"empty interval [{self.a}, {self.b}]")
        if len(self.degrees) != q + 1:
            raise SpaceValidationError(
                f"{q} breakpoints need {q + 1} degrees, got {len(self.degrees)}")
        if len(self.continuities) != q:
            raise SpaceValidationError(
                f"{q} breakpoints need {q} continuities, got {len(self.continuities)}")
        xs = (self.a,) + self.breakpoints + (self.b,)
        for left, right in zip(xs, xs[1:]):
            if not right > left:
                raise SpaceValidationError(
                    f"breakpoints must be strictly increasing inside ({self.a}, {self.b})")
        if not self.internal:
            for j, d in enumerate(self.degrees):
                if d < 0:
                    raise SpaceValidationError(f"degree of interval {j} is negative: {d}")
            for i, k in enumerate(self.continuities, start=1):
                dmin = min(self.degrees[i - 1], self.degrees[i])
                if not 0 <= k <= dmin:
                    raise SpaceValidationError(
                        f"continuity {k} at breakpoint {i} outside [0, {dmin}]")
        else:
            # Raw multiset multiplicities must stay nonnegative; every space
            # reachable through derivatives or degree steps satisfies this.
            for i, k in enumerate(self.continuities, start=1):
                if self.degrees[i] - k < 0 or self.degrees[i - 1] - k < 0:
                    raise SpaceValidationError(
                        f"inconsistent internal continuity {k} at breakpoint {i}")

    # -- basic queries -------------------------------------------------------

    @property
    def q(self) -> int:
        return len(self.breakpoints)

    @property
    def xs(self) -> tuple[float, ...]:
        """All knots including endpoints: x_0 = a, ..., x_{q+1} = b."""
        return (self.a,) + self.breakpoints + (self.b,)

    @property
    def dimension(self) -> int:
        return self.degrees[0] + 1 + sum(
            d - k for d, k in zip(self.degrees[1:], self.continuities))

    def zero_intervals(self) -> tuple[int, ...]:
        """Intervals on which the space contains only the zero function."""
        return tuple(j for j, d in enumerate(self.degrees) if d < 0)

    def find_interval(self, x: float) -> int:
        """Index j with x_j <= x < x_{j+1}; the last interval is closed at b."""
        if not self.a <= x <= self.b:
            raise ValueError(f"point {x} outside [{self.a}, {self.b}]")
        if x == self.b:
            return self.q
        return bisect_right(self.xs, x) - 1

    # -- derived spaces ------------------------------------------------------

    def extended_partitions(self) -> tuple[tuple[float, ...], tuple[float, ...]]:
        """Left/right extended partitions (support starts s and ends t).

        Both have exactly `dimension` entries; the i-th basis function is
        supported on [s_i, t_i]. Entries with s_i >= t_i mark zero-function
        slots (these occur only in internal spaces).
        """
        xs = self.xs
        d, k = self.degrees, self.continuities
        s: list[float] = [xs[0]] * max(0, d[0] + 1)
        for i in range(1, self.q + 1):
            s.extend([xs[i]] * (d[i] - k[i - 1]))
        del s[:max(0, -(d[0] + 1))]
        t: list[float] = []
        for i in range(1, self.q + 1):
            t.extend([xs[i]] * (d[i - 1] - k[i - 1]))
        t.extend([xs[-1]] * max(0, d[-1] + 1))
        if max(0, -(d[-1] + 1)):
            del t[-max(0, -(d[-1] + 1)):]
        if len(s) != self.dimension or len(t) != self.dimension:
            raise SpaceValidationError("extended partition length mismatch")
        return tuple(s), tuple(t)

    def associated_c0(self) -> "MDSpace":
        """The smallest containing space glued with C0 continuity at degree changes."""
        k0 = []
        for i, k in enumerate(self.continuities, start=1):
            if k < 0:
                k0.append(-1)
            elif self.degrees[i - 1] != self.degrees[i]:
                k0.append(0)
            else:
                k0.append(k)
        return MDSpace(self.a, self.b, self.breakpoints, self.degrees,
                       tuple(k0), self.internal)

    def derivative_space(self, r: int = 1) -> "MDSpace":
        """Descriptor of the r-th derivative space (raw shifted integers)."""
        if r < 0:
            raise ValueError("derivative order must be nonnegative")
        if r == 0:
            return self
        return MDSpace(self.a, self.b, self.breakpoints,
                       tuple(d - r for d in self.degrees),
                       tuple(k - r for k in self.continuities),
                       internal=True)

    def is_directly_evaluable(self) -> bool:
        """True when every degree change happens at a continuity <= 0."""
        return all(k <= 0 or self.degrees[i - 1] == self.degrees[i]
                   for i, k in enumerate(self.continuities, start=1))

    # -- sections -------------------------------------------------------------

    def section_decomposition(self) -> "SectionDecomposition":
        if self.internal:
            raise SpaceValidationError("section decomposition is for public spaces")
        boundaries = [0]
        for i in range(1, self.q + 1):
            if self.degrees[i - 1] != self.degrees[i]:
                boundaries.append(i)
        boundaries.append(self.q + 1)
        sections = tuple(self.restrict(j0, j1)
                         for j0, j1 in zip(boundaries, boundaries[1:]))
        joins = tuple(JoinSpec(index=i, x=self.xs[i], continuity=self.continuities[i - 1])
                      for i in boundaries[1:-1])
        order = tuple(sorted(joins, key=lambda jn: (-jn.continuity, jn.index)))
        return SectionDecomposition(self, tuple(boundaries), sections, order)

    def restrict(self, j0: int, j1: int) -> "MDSpace":
        """Sub-space covering intervals j0..j1-1 (public restriction)."""
        xs = self.xs
        return MDSpace(xs[j0], xs[j1], self.breakpoints[j0:j1 - 1],
                       self.degrees[j0:j1], self.continuities[j0:j1 - 1],
                       self.internal)

    # -- serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        return {"interval": [self.a, self.b],
                "breakpoints": list(self.breakpoints),
                "degrees": list(self.degrees),
                "continuities": list(self.continuities)}

    @staticmethod
    def from_dict(data: dict) -> "MDSpace":
        try:
            return MDSpace.create(data["interval"], data.get("breakpoints", []),
                                  data["degrees"], data.get("continuities", []))
        except (KeyError, TypeError, IndexError) as exc:
            raise SpaceValidationError(f"malformed space description: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_json(text: str) -> "MDSpace":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpaceValidationError(f"invalid JSON: {exc}") from exc
        return MDSpace.from_dict(data)

    def __str__(self) -> str:
        parts = [str(self.degrees[0])]
        for k, d in zip(self.continuities, self.degrees[1:]):
            parts.append(f"_{k} {d}")
        return "(" + "".join(parts) + f") on [{self.a}, {self.b}]"


@dataclass(frozen=True)
class JoinSpec:
    """A section boundary: breakpoint index (1-based), location and continuity."""
    index: int
    x: float
    continuity: int


@dataclass(frozen=True)
class SectionDecomposition:
    space: MDSpace
    boundaries: tuple[int, ...]        # 0 = j_0 < j_1 < ... < j_{v+1} = q+1
    sections: tuple[MDSpace, ...]      # one conventional space per section
    join_order: tuple[JoinSpec, ...]   # decreasing continuity, ties left first

    @property
    def joins(self) -> tuple[JoinSpec, ...]:
        """Seams left to right; joins[i] separates sections i and i + 1."""
        return tuple(sorted(self.join_order, key=lambda jn: jn.index))

    def section_of_interval(self, j: int) -> int:
        for h in range(len(self.sections)):
            if self.boundaries[h] <= j < self.boundaries[h + 1]:
                return h
        raise IndexError(f"interval {j} out of range")
