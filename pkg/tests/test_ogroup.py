from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from defectlab.errors import DescriptorError, DivisibilityError
from defectlab.ogroup import INFINITY, GroupDesc, GroupElement, Kind, Ordering, compare


def test_kinds_and_membership():
    g = GroupDesc.of(3, "Z", "Z[1/p]", "Q")
    assert g.rank == 3
    assert g.contains((F(1), F(1, 9), F(2, 7)))
    assert not g.contains((F(1, 2), F(0), F(0)))
    assert not g.contains((F(0), F(1, 2), F(0)))
    assert g.hull().is_divisible
    assert g.hull().extends(g)
    assert not g.extends(g.hull())


def test_bad_descriptors():
    with pytest.raises(DescriptorError):
        GroupDesc(4, (Kind.INTEGERS,))
    with pytest.raises(DescriptorError):
        GroupDesc(2, ())
    with pytest.raises(DivisibilityError):
        GroupDesc.of(2, "Z").element(F(1, 2))


def test_lexicographic_order():
    g = GroupDesc.of(2, "Q", "Q")
    a, b = g.element(0, 5), g.element(1, -5)
    assert a < b and compare(a, b) is Ordering.LT
    assert compare(b, b) is Ordering.EQ
    assert a < INFINITY and not INFINITY < a
    assert (b - a).sign() == 1


def test_embed_and_json_round_trip():
    g = GroupDesc.of(5, "Z", "Q")
    x = g.element(2, "3/4")
    assert GroupElement.from_json(g, x.to_json()) == x
    assert GroupDesc.from_json(g.to_json()) == g
    assert x.embed(g.hull()).desc == g.hull()


rat = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@given(st.lists(st.tuples(rat, rat), min_size=3, max_size=3))
def test_ordered_group_axioms(triple):
    g = GroupDesc.of(3, "Q", "Q")
    a, b, c = (g.element(*t) for t in triple)
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + (-a) == g.zero()
    if a < b:
        assert a + c < b + c
    assert (a < b) + (a == b) + (a > b) == 1
