import random
from fractions import Fraction as F

import pytest

from defectlab.asdefect import TowerField, as_root, as_root_negative, as_root_positive, as_root_value
from defectlab.errors import DepthExhaustedError, PreconditionError, PrecisionError
from defectlab.hahnfield import SeriesRing
from defectlab.ogroup import INFINITY
from support import random_series, root_value_closed_form


def test_value_formula_and_back_substitution_on_random_series():
    rng = random.Random(3)
    seen = {"neg": 0, "pos": 0}
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        ring = SeriesRing.make(p)
        a = random_series(rng, ring)
        assert as_root_value(a).entries[0] == root_value_closed_form(a)
        if a.valuation().sign() > 0:
            seen["pos"] += 1
            target = a.valuation() + ring.exponent(6)
            x = as_root_positive(a, target)
            assert x.valuation().entries[0] == root_value_closed_form(a)
            check = (x.frobenius() - x - a).truncate(target)
            assert not check.terms
        else:
            seen["neg"] += 1
    assert seen["pos"] > 20 and seen["neg"] > 20


def test_full_root_back_substitutes():
    rng = random.Random(11)
    checked = 0
    for _ in range(100):
        p = rng.choice([2, 3])
        ring = SeriesRing.make(p)
        a = random_series(rng, ring)
        target, neg_target = ring.exponent(4), ring.exponent(F(-1, p**6))
        x = as_root(a, target, neg_target)
        if x is None:
            assert not ring.coeffs.as_roots(a.split()[1])
            continue
        checked += 1
        res = x.frobenius() - x - a
        assert not res.terms or not res.terms[0][0] < min(neg_target, target)
    assert checked > 50


def test_negative_root_needs_negative_target():
    ring = SeriesRing.make(2)
    with pytest.raises(PrecisionError):
        as_root_negative(ring.t(-1), 0)
    with pytest.raises(PreconditionError):
        as_root_negative(ring.t(1), -1)
    with pytest.raises(PreconditionError):
        as_root_positive(ring.t(-1), 3)


def test_root_value_of_zero():
    ring = SeriesRing.make(3)
    assert as_root_value(ring.zero()) is INFINITY


@pytest.mark.parametrize("p", [2, 3])
def test_tower_generators(p):
    tower = TowerField.make(p, depth=4)
    for i in range(1, 5):
        a = tower.generator(i)
        assert a.valuation().entries[0] == F(-1, p**i)
        prev = -tower.ring.t(-1) if i == 1 else tower.generator(i - 1)
        res = (a.frobenius() - a + prev).truncate(a.precision)
        assert not res.terms
    with pytest.raises(DepthExhaustedError):
        tower.generator(5)
    with pytest.raises(DepthExhaustedError):
        tower.power_pair(tower.ring.exponent(F(-1, p**6)), 1)
    y, yp = tower.power_pair(tower.ring.exponent(F(-5, p**2)), 1)
    assert y.valuation().entries[0] == F(-5, p**2)
    assert yp.valuation().entries[0] == F(-5, p)
