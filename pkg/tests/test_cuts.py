from fractions import Fraction as F

import pytest

from defectlab.cuts import (
    Cut,
    Membership,
    Side,
    cut_add,
    cut_compare,
    cut_nfold,
    element_vs_cut,
    is_idempotent,
    is_subgroup_edge,
)
from defectlab.ogroup import GroupDesc, Ordering
from support import idempotency_disagreements, grid_oracle_disagreements

ZQ = GroupDesc.of(2, "Z", "Q")
QQ = ZQ.hull()


def test_normal_form_in_discrete_quotient():
    lam = Cut.make(ZQ.zero(), 1, Side.MINUS)
    assert str(lam) == "([-1,0],H1,+)"
    assert lam == Cut.edge(ZQ, 1, "-")


def test_rank_one_formatting_and_top_bottom():
    q = GroupDesc.of(3, "Q")
    c = Cut.point(q.element(0), "-")
    assert str(c) == "(0,-)"
    assert Cut.bottom(q) < c < Cut.top(q)
    assert Cut.top(q).is_top and Cut.bottom(q).is_bottom


def test_subgroup_edge_not_idempotent_in_discrete_group():
    lam = Cut.edge(ZQ, 1, Side.MINUS)
    double = cut_add(lam, lam)
    assert double == Cut.make(ZQ.element(-2, 0), 1, Side.PLUS)
    assert cut_compare(double, lam) is Ordering.LT
    assert not is_idempotent(lam)
    assert is_subgroup_edge(lam)
    up = lam.embed(QQ)
    assert not is_subgroup_edge(up)
    assert element_vs_cut(QQ.element(F(-1, 2), 0), up) is Membership.IN_RIGHT
    assert element_vs_cut(QQ.element(-1, 0), up) is Membership.IN_LEFT


def test_edges_idempotent_in_divisible_group():
    for j in range(QQ.rank + 1):
        for side in Side:
            assert is_idempotent(Cut.edge(QQ, j, side))


def test_nfold_matches_repeated_addition():
    c = Cut.make(QQ.element(F(1, 3), 2), 2, "-")
    acc = c
    for n in range(2, 6):
        acc = cut_add(acc, c)
        assert acc == cut_nfold(n, c)
    with pytest.raises(ValueError):
        cut_nfold(0, c)


def test_json_round_trip():
    c = Cut.make(QQ.element(F(1, 3), 2), 1, "+")
    assert Cut.from_json(QQ, c.to_json()) == c


def test_idempotency_battery_agrees():
    assert idempotency_disagreements(20261016, 1000) == []


def test_cut_add_against_grid_oracle():
    assert grid_oracle_disagreements(7, 1000) == []
