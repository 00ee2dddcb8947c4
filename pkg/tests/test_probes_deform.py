from fractions import Fraction as F

import pytest

from defectlab.asdefect import (
    DeformationQuery,
    Dependence,
    InseparableForm,
    Kind,
    Outcome,
    PForm,
    TowerField,
    deform,
    eta_distance,
    extremality_probe,
    newton_improve,
    poly_derivative,
    poly_eval,
)
from defectlab.errors import NewtonDomainError, PreconditionError
from defectlab.hahnfield import MonomialField
from defectlab.ogroup import INFINITY


@pytest.fixture(scope="module", params=[2, 3])
def tower(request):
    return TowerField.make(request.param, depth=10)


def test_inseparable_probe_over_tower(tower):
    p = tower.p
    res = extremality_probe(InseparableForm(tower.ring.t(-1)), tower, 16)
    assert res.outcome is Outcome.INCREASING_WITNESS
    assert [v.entries[0] for v in res.values] == [p * F(-1, p**i) for i in range(1, 12)]
    assert "depth" in res.note


@pytest.mark.parametrize("p", [2, 3, 5])
def test_inseparable_probe_over_rational_field(p):
    k = MonomialField.rational(p)
    res = extremality_probe(InseparableForm(k.ring.t(-1)), k)
    assert res.outcome is Outcome.MAX_FOUND
    assert res.value.entries[0] == -1


def test_probe_finds_exact_pth_power():
    k = MonomialField.perfect(3)
    res = extremality_probe(InseparableForm(k.ring.t()), k)
    assert res.outcome is Outcome.MAX_FOUND and res.value is INFINITY
    assert res.witness[0] == k.ring.t(F(1, 3))


def test_multi_variable_probe():
    k = MonomialField.rational(2)
    ring = k.ring
    # the multiplier t lets odd exponents be stripped
    form = InseparableForm(ring.t(1) + ring.t(2), (ring.one(), ring.t(1)))
    res = extremality_probe(form, k)
    assert res.outcome is Outcome.MAX_FOUND and res.value is INFINITY
    stuck = InseparableForm(ring.t(-1), (ring.one(), ring.t(2)))
    assert extremality_probe(stuck, k).outcome is Outcome.INCONCLUSIVE


def test_pform_probe():
    k = MonomialField.rational(3)
    ring = k.ring
    res = extremality_probe(PForm(ring.t(-3) - ring.t(-1)), k)
    assert res.outcome is Outcome.MAX_FOUND and res.value is INFINITY
    res = extremality_probe(PForm(ring.t(1)), k, 5)
    assert res.outcome is Outcome.INCREASING_WITNESS
    assert [v.entries[0] for v in res.values] == [1, 3, 9, 27, 81, 243]
    assert extremality_probe(PForm(ring.t(-1)), k).outcome is Outcome.MAX_FOUND
    with pytest.raises(ValueError):
        extremality_probe(PForm(ring.t(1)), k, 0)


@pytest.mark.parametrize("p", [3, 5])
def test_newton_quadratic_convergence(p):
    k = MonomialField.rational(p)
    ring = k.ring
    g = [-(ring.one() + ring.t()), ring.zero(), ring.one()]  # X^2 - (1 + t)
    steps = newton_improve(g, ring.one(), 5, 64)
    vals = [v.entries[0] for _, v in steps]
    assert vals == [1, 2, 4, 8, 16, 32]
    dg = poly_derivative(g)
    for (c, v), (_, w) in zip(steps, steps[1:]):
        vd = poly_eval(dg, c).valuation()
        assert w > v and w >= (v - vd) * 2


def test_newton_domain_and_exact_root():
    k = MonomialField.rational(3)
    ring = k.ring
    g = [-(ring.one() + ring.t()), ring.zero(), ring.one()]
    with pytest.raises(NewtonDomainError):
        newton_improve(g, ring.zero(), 3, 10)
    lin = [-ring.t(), ring.one()]
    assert newton_improve(lin, ring.t(), 3, 10) == [(ring.t(), INFINITY)]


def test_eta_distance_over_tower(tower):
    p = tower.p
    eta = eta_distance(tower.ring.t(-1), tower, 16)
    assert str(eta.cut) == "(0,-)"
    assert [v.entries[0] for v in eta.values] == [F(-1, p**i) for i in range(1, 12)]


def test_eta_distance_rejects_pth_powers():
    k = MonomialField.perfect(2)
    with pytest.raises(PreconditionError):
        eta_distance(k.ring.t(-1), k)


def test_deformation_dependent_defect(tower):
    res = deform(DeformationQuery.with_value(tower.ring.t(-1), tower, 1), 16)
    assert res.condition_holds and res.similarity_verified and res.approximants_agree
    cls = res.classification
    assert cls.kind is Kind.DEFECT and str(cls.distance) == "(-1,-)"
    assert cls.dependence is Dependence.DEPENDENT


def test_deformation_sweep_boundary(tower):
    a = tower.ring.t(-1)
    for vb in (-2, -1, 0, 1, 2):
        res = deform(DeformationQuery.with_value(a, tower, vb), 16)
        assert res.condition_holds == (vb >= 1)
        assert res.similarity_verified == res.condition_holds


def test_deformation_branch_a(tower):
    p = tower.p
    a = tower.ring.t(-1)
    for vb in (-2, -1):
        res = deform(DeformationQuery.with_value(a, tower, vb), 16)
        assert res.classification.kind is Kind.SPLIT_HENSELIAN
    res = deform(DeformationQuery.with_value(a, tower, F(-1, p)), 16)
    assert res.classification.kind is Kind.RESIDUAL_DEGREE_P
    assert not res.similarity_verified
