"""Space descriptors: dimensions, partitions, sections, serialization."""

import pytest
from hypothesis import given, settings

from conftest import space_strategy
from mdspline import MDSpace, SpaceValidationError


def worked_space():
    return MDSpace.create((0.0, 4.0), (1.0, 2.0, 3.0), (2, 2, 4, 3), (1, 2, 3))


def test_dimension_worked_space():
    sp = worked_space()
    assert sp.dimension == 6
    assert sp.associated_c0().dimension == 11


def test_dimension_known_spaces():
    from mdspline.presets import cox, table7, test1, test3, test5, test6
    sub = MDSpace.create((2.0, 4.0), (3.0,), (4, 3), (3,))
    assert sub.dimension == 5
    assert sub.associated_c0().dimension == 8
    assert test1().dimension == 9
    assert test3().dimension == 17
    assert test3().associated_c0().dimension == 53
    assert test5().dimension == 43
    assert test6().dimension == 41
    assert test6().associated_c0().dimension == 71
    assert cox().dimension == 43
    for k1 in range(5, 20):
        assert table7(k1).dimension == 40 - k1


def test_extended_partitions_by_hand():
    s, t = worked_space().extended_partitions()
    assert s == (0.0, 0.0, 0.0, 1.0, 2.0, 2.0)
    assert t == (1.0, 3.0, 4.0, 4.0, 4.0, 4.0)
    # no zero slots in a public space
    assert all(si < ti for si, ti in zip(s, t))


def test_extended_partitions_internal_head_deficit():
    # d_0 + 1 < 0 deletes the shortfall from the front of s
    sp = MDSpace.create((0.0, 2.0), (1.0,), (-2, 1), (-2,), internal=True)
    assert sp.dimension == 2
    s, t = sp.extended_partitions()
    assert s == (1.0, 1.0)
    assert t == (2.0, 2.0)


def test_extended_partitions_match_dimension_under_derivatives():
    sp = worked_space()
    for r in range(4):
        dsp = sp.derivative_space(r)
        s, t = dsp.extended_partitions()
        assert len(s) == len(t) == dsp.dimension == sp.dimension - r


def test_derivative_space_shifts_raw():
    dsp = worked_space().derivative_space(2)
    assert dsp.internal
    assert dsp.degrees == (0, 0, 2, 1)
    assert dsp.continuities == (-1, 0, 1)
    assert dsp.zero_intervals() == ()
    assert worked_space().derivative_space(3).zero_intervals() == (0, 1)


def test_associated_c0():
    c0 = worked_space().associated_c0()
    assert c0.continuities == (1, 0, 0)
    assert c0.degrees == worked_space().degrees
    # equal-degree seams keep their continuity
    conv = MDSpace.create((0.0, 2.0), (1.0,), (2, 2), (1,))
    assert conv.associated_c0() == conv


def test_directly_evaluable():
    assert not worked_space().is_directly_evaluable()
    assert worked_space().associated_c0().is_directly_evaluable()
    assert MDSpace.create((0.0, 2.0), (1.0,), (2, 1), (0,)).is_directly_evaluable()
    assert not MDSpace.create((0.0, 2.0), (1.0,), (2, 1), (1,)).is_directly_evaluable()


def test_section_decomposition():
    dec = worked_space().section_decomposition()
    assert dec.boundaries == (0, 2, 3, 4)
    assert [str(s) for s in dec.sections] == [
        "(2_1 2) on [0.0, 2.0]", "(4) on [2.0, 3.0]", "(3) on [3.0, 4.0]"]
    assert [(j.x, j.continuity) for j in dec.join_order] == [(3.0, 3), (2.0, 2)]
    assert [(j.x, j.continuity) for j in dec.joins] == [(2.0, 2), (3.0, 3)]
    assert dec.section_of_interval(0) == dec.section_of_interval(1) == 0
    assert dec.section_of_interval(3) == 2


def test_find_interval():
    sp = worked_space()
    assert sp.find_interval(0.0) == 0
    assert sp.find_interval(1.0) == 1
    assert sp.find_interval(2.5) == 2
    assert sp.find_interval(4.0) == 3
    with pytest.raises(ValueError):
        sp.find_interval(4.5)


def test_restrict():
    sub = worked_space().restrict(1, 3)
    assert (sub.a, sub.b) == (1.0, 3.0)
    assert sub.degrees == (2, 4)
    assert sub.continuities == (2,)
    head = worked_space().restrict(0, 2)
    assert str(head) == "(2_1 2) on [0.0, 2.0]"


def test_json_round_trip():
    sp = worked_space()
    assert MDSpace.from_json(sp.to_json()) == sp
    assert MDSpace.from_dict(sp.to_dict()) == sp


@pytest.mark.parametrize("kwargs", [
    dict(interval=(0.0, 0.0), breakpoints=(), degrees=(2,), continuities=()),
    dict(interval=(0.0, 2.0), breakpoints=(1.0,), degrees=(2,), continuities=(1,)),
    dict(interval=(0.0, 2.0), breakpoints=(1.0,), degrees=(2, 2), continuities=()),
    dict(interval=(0.0, 2.0), breakpoints=(3.0,), degrees=(2, 2), continuities=(1,)),
    dict(interval=(0.0, 2.0), breakpoints=(1.0, 1.0), degrees=(2, 2, 2),
         continuities=(1, 1)),
    dict(interval=(0.0, 2.0), breakpoints=(1.0,), degrees=(2, -1), continuities=(0,)),
    dict(interval=(0.0, 2.0), breakpoints=(1.0,), degrees=(3, 1), continuities=(2,)),
])
def test_validation_rejects(kwargs):
    with pytest.raises(SpaceValidationError):
        MDSpace.create(**kwargs)


def test_internal_invariant_rejects():
    # k <= min degree but d_i - k_i < 0 is still inconsistent
    with pytest.raises(SpaceValidationError):
        MDSpace.create((0.0, 2.0), (1.0,), (3, 1), (2,), internal=True)


def test_malformed_json():
    with pytest.raises(SpaceValidationError):
        MDSpace.from_json("{not json")
    with pytest.raises(SpaceValidationError):
        MDSpace.from_dict({"interval": [0, 1]})


@settings(max_examples=25, deadline=None)
@given(space_strategy())
def test_partition_lengths_and_supports(sp):
    s, t = sp.extended_partitions()
    assert len(s) == len(t) == sp.dimension
    assert all(si < ti for si, ti in zip(s, t))
    assert s[0] == sp.a and t[-1] == sp.b
    # support starts and ends are both nondecreasing
    assert all(x <= y for x, y in zip(s, s[1:]))
    assert all(x <= y for x, y in zip(t, t[1:]))


@settings(max_examples=25, deadline=None)
@given(space_strategy())
def test_sections_are_conventional_and_cover(sp):
    dec = sp.section_decomposition()
    assert sum(s.q + 1 for s in dec.sections) == sp.q + 1
    for s in dec.sections:
        assert all(d == s.degrees[0] for d in s.degrees)
    assert [j.x for j in dec.joins] == sorted(j.x for j in dec.join_order)
    ks = [j.continuity for j in dec.join_order]
    assert ks == sorted(ks, reverse=True)
