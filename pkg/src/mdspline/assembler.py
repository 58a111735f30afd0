"""Assembly of full-space representations from per-section building blocks.

Three strategies produce a bundle for the same space. "rki" joins the maximal
equal-degree sections pairwise, highest seam continuity first. "rde" embeds
the whole space in its uniform maximum-degree cover in one sweep. "mixed"
partitions the sections into groups, builds every group marked for degree
lowering in one sweep each, and then joins the resulting blocks pairwise, again
highest continuity first. The reference of the final bundle is checked against
the continuity-zero shadow of the target space when no group spans a seam.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._scalars import FLOAT
from .errors import UnsupportedSpaceError
from .join_core import Bundle, JoinRecord, cr_join, section_bundle
from .rde_core import (RATIO, RDERecord, level_space, rde_build, rde_schedule,
                       window_bounds)
from .spaces import MDSpace

RKI = "rki"
RDE = "rde"
MIXED = "mixed"


@dataclass
class BuildRecord:
    joins: list[JoinRecord]
    rde_runs: list[RDERecord]

    @staticmethod
    def empty() -> "BuildRecord":
        return BuildRecord([], [])


def _join_pairwise(units: list[tuple[int, Bundle]], joins, field,
                   record: BuildRecord | None) -> Bundle:
    """units: (section range end, bundle) blocks left to right; joins: the
    seams between them as (continuity, seam index, x). Highest continuity
    first, ties left to right."""
    units = list(units)
    pending = sorted(joins, key=lambda v: (-v[0], v[1]))
    for r, _, x in pending:
        pos = next(i for i, (end, b) in enumerate(units) if b.space.b == x)
        left, right = units[pos][1], units[pos + 1][1]
        jr = None
        if record is not None:
            jr = JoinRecord(x, r, left.space, right.space)
            record.joins.append(jr)
        merged = cr_join(left, right, r, field, jr)
        units[pos:pos + 2] = [(units[pos + 1][0], merged)]
    assert len(units) == 1
    return units[0][1]


def build_matrix_rki(space: MDSpace, field=FLOAT,
                     record: BuildRecord | None = None) -> Bundle:
    dec = space.section_decomposition()
    units = [(i, section_bundle(s, field)) for i, s in enumerate(dec.sections)]
    joins = [(j.continuity, j.index, j.x) for j in dec.join_order]
    out = _join_pairwise(units, joins, field, record)
    out.strategy = RKI
    _check_reference(out, space)
    return out


def build_matrix_rde(space: MDSpace, field=FLOAT, mode: str = RATIO,
                     record: BuildRecord | None = None) -> Bundle:
    if min(space.degrees) < 1:
        raise UnsupportedSpaceError(
            "degree lowering needs every interval degree to be at least 1")
    rr = None
    if record is not None:
        rr = RDERecord(space)
        record.rde_runs.append(rr)
    out = rde_build(space, field, mode, record=rr)
    assert out.space == space
    return out


def rde_cost(space: MDSpace, min_orders: int = 1) -> int:
    """Nontrivial coefficient count of a ratio-mode sweep over `space`."""
    m = max(space.degrees)
    r = max(2, m - 1, min_orders + 1)
    total = 0
    degrees = [m] * (space.q + 1)
    for j, h in rde_schedule(space):
        degrees[j] = h
        for k in range(1, r + 1):
            post = level_space(space, degrees, r - k)
            ib, ie = window_bounds(post, j)
            total += max(0, ie - ib + 1)
    return total


def join_cost(r: int) -> int:
    """Nontrivial coefficient count of a single continuity-r join."""
    return r * (r + 1) * (r + 2) // 6


def auto_plan(space: MDSpace) -> list[str]:
    """Per-section strategy labels chosen by greedy cost descent: merging a
    maximal block of adjacent sections into one degree-lowering sweep must
    beat building its pieces and joining them."""
    dec = space.section_decomposition()
    n = len(dec.sections)
    if n == 1:
        return [RKI]
    bounds = dec.boundaries

    def group_cost(lo: int, hi: int) -> int:
        if lo == hi:
            return 0
        need = [dec.joins[i].continuity for i in (lo - 1, hi) if 0 <= i < len(dec.joins)]
        sub = space.restrict(bounds[lo], bounds[hi + 1])
        return rde_cost(sub, max(need, default=1))

    kind = [[RKI, i, i] for i in range(n)]       # strategy, lo section, hi section
    improved = True
    while improved:
        improved = False
        best = None
        for p in range(len(kind) - 1):
            (sa, la, ha), (sb, lb, hb) = kind[p], kind[p + 1]
            if min(space.degrees[bounds[la]:bounds[hb + 1]]) < 1:
                continue
            now = group_cost(la, ha) + group_cost(lb, hb) + \
                join_cost(dec.joins[ha].continuity)
            merged = group_cost(la, hb)
            if merged < now and (best is None or merged - now < best[0]):
                best = (merged - now, p, la, hb)
        if best is not None:
            _, p, la, hb = best
            kind[p:p + 2] = [[RDE, la, hb]]
            improved = True
    plan = [RKI] * n
    for s, lo, hi in kind:
        if s == RDE:
            for i in range(lo, hi + 1):
                plan[i] = RDE
    return plan


def build_matrix_mixed(space: MDSpace, field=FLOAT, plan: list[str] | None = None,
                       record: BuildRecord | None = None) -> Bundle:
    dec = space.section_decomposition()
    n = len(dec.sections)
    if plan is None:
        plan = auto_plan(space)
    if len(plan) != n or any(p not in (RKI, RDE) for p in plan):
        raise ValueError(f"plan must assign '{RKI}' or '{RDE}' to each of {n} sections")

    groups: list[tuple[int, int, str]] = []
    lo = 0
    for i in range(1, n + 1):
        if i == n or plan[i] != plan[lo] or plan[lo] == RKI:
            groups.append((lo, i - 1, plan[lo]))
            lo = i
    units = []
    for (glo, ghi, kind) in groups:
        if kind == RKI or glo == ghi and _is_uniform(dec.sections[glo]):
            if glo != ghi:
                raise AssertionError("rki groups are single sections")
            units.append((ghi, section_bundle(dec.sections[glo], field)))
            continue
        sub = space.restrict(dec.boundaries[glo], dec.boundaries[ghi + 1])
        need = [dec.joins[i].continuity
                for i in (glo - 1, ghi) if 0 <= i < len(dec.joins)]
        rr = None
        if record is not None:
            rr = RDERecord(sub)
            record.rde_runs.append(rr)
        units.append((ghi, rde_build(sub, field, RATIO, max(need, default=1), rr)))
    outer = []
    for (_, ghi, _kind) in groups[:-1]:
        j = dec.joins[ghi]
        outer.append((j.continuity, j.index, j.x))
    out = _join_pairwise(units, outer, field, record)
    out.strategy = MIXED
    assert out.space == space
    return out


def _is_uniform(section: MDSpace) -> bool:
    return all(d == section.degrees[0] for d in section.degrees)


def _check_reference(bundle: Bundle, space: MDSpace) -> None:
    ref = bundle.orders[0].ref
    shadow = space.associated_c0()
    assert ref.degrees == shadow.degrees
    assert ref.continuities == shadow.continuities


def build_matrix(space: MDSpace, strategy: str = RKI, field=FLOAT,
                 record: BuildRecord | None = None, plan=None) -> Bundle:
    if strategy == RKI:
        return build_matrix_rki(space, field, record)
    if strategy == RDE:
        return build_matrix_rde(space, field, record=record)
    if strategy == MIXED:
        return build_matrix_mixed(space, field, plan, record)
    raise ValueError(f"unknown strategy {strategy!r}")
