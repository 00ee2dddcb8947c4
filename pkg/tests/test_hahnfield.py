from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from defectlab.errors import DescriptorError, NotIntegralError, PrecisionError
from defectlab.hahnfield import FiniteField, MonomialField, SeriesRing
from defectlab.ogroup import INFINITY


@pytest.mark.parametrize("p,m", [(2, 1), (2, 3), (3, 2), (5, 1), (7, 2)])
def test_finite_field_axioms(p, m):
    f = FiniteField.get(p, m)
    els = list(f.elements())
    assert len(els) == p**m
    for a in els[:20]:
        assert f.add(a, f.neg(a)) == 0
        assert f.frobenius(f.pth_root(a)) == a
        if a:
            assert f.mul(a, f.inv(a)) == 1
            assert f.pow(a, f.q - 1) == 1
        for b in els[:10]:
            assert f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b))
            assert f.mul(a, b) == f.mul(b, a)


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_as_roots_brute_force(p, m):
    f = FiniteField.get(p, m)
    for c in f.elements():
        roots = f.as_roots(c)
        naive = [x for x in f.elements() if f.sub(f.pow(x, p), x) == c]
        assert sorted(roots) == sorted(naive)
        assert len(roots) in (0, p)


def test_format_parse_round_trip():
    f = FiniteField.get(3, 2)
    for a in f.elements():
        assert f.parse(f.format(a)) == a


def naive_product(x, y):
    # independent convolution, straight from the definition
    ring = x.ring
    acc = {}
    for e1, c1 in x.terms:
        for e2, c2 in y.terms:
            e = e1 + e2
            acc[e] = (acc.get(e, 0) + c1 * c2) % ring.p
    return {e: c for e, c in acc.items() if c}


exp_st = st.fractions(min_value=-3, max_value=3, max_denominator=6)
terms_st = st.lists(st.tuples(exp_st, st.integers(1, 4)), min_size=1, max_size=6)


@settings(max_examples=150, deadline=None)
@given(terms_st, terms_st, st.sampled_from([2, 3, 5]))
def test_exact_product_matches_convolution(t1, t2, p):
    ring = SeriesRing.make(p)
    x, y = ring.series(t1), ring.series(t2)
    if not x.terms or not y.terms:
        return
    prod = x * y
    assert prod.is_exact
    assert dict(prod.terms) == naive_product(x, y)
    assert prod == y * x


@settings(max_examples=150, deadline=None)
@given(terms_st, terms_st, st.sampled_from([2, 3, 5]))
def test_ultrametric_and_multiplicative_value(t1, t2, p):
    ring = SeriesRing.make(p)
    x, y = ring.series(t1), ring.series(t2)
    if not x.terms or not y.terms:
        return
    assert (x * y).valuation() == x.valuation() + y.valuation()
    s = x + y
    if s.terms:
        assert s.valuation() >= min(x.valuation(), y.valuation())


@settings(max_examples=100, deadline=None)
@given(terms_st, st.sampled_from([2, 3]))
def test_invert_to_precision(t1, p):
    ring = SeriesRing.make(p)
    x = ring.series(t1)
    if not x.terms:
        return
    target = x.valuation() * -1 + ring.exponent(4)
    inv = x.invert(target)
    prod = (x * inv).truncate(ring.exponent(4))
    assert prod.terms == ring.one().terms


@settings(max_examples=100, deadline=None)
@given(terms_st, st.sampled_from([2, 3, 5]))
def test_frobenius_is_additive_and_invertible(t1, p):
    ring = SeriesRing.make(p)
    x = ring.series(t1)
    y = ring.series([(e + 1, c) for e, c in t1])
    assert (x + y).frobenius() == x.frobenius() + y.frobenius()
    assert x.frobenius().pth_root() == x
    if x.terms:
        assert x.frobenius() == x ** p


def test_residue_is_multiplicative():
    ring = SeriesRing.make(5)
    x = ring.series([(0, 2), (F(1, 3), 1)])
    y = ring.series([(0, 3), (2, 4)])
    f = ring.coeffs
    assert (x * y).residue() == f.mul(x.residue(), y.residue())
    with pytest.raises(NotIntegralError):
        ring.t(-1).residue()


def test_precision_propagation():
    ring = SeriesRing.make(3)
    x = ring.series([(-1, 1)], precision=1)
    y = ring.series([(0, 1)], precision=2)
    # min(pi_x + pi_y, v x + pi_y, v y + pi_x)
    assert (x * y).precision == ring.exponent(1)
    assert x.frobenius().precision == ring.exponent(3)
    with pytest.raises(PrecisionError):
        ring.zero(precision=0).valuation()
    assert ring.zero().valuation() is INFINITY


def test_json_and_str():
    ring = SeriesRing.make(3)
    x = ring.series([(F(-1, 3), 1), (2, 2)], precision=5)
    assert ring.from_json(x.to_json()) == x
    assert str(ring.t()) == "t"
    assert "O(t^5)" in str(x)
    with pytest.raises(DescriptorError):
        ring.from_json({"nope": 1})


def test_monomial_fields():
    fp = MonomialField.rational(3)
    perf = MonomialField.perfect(3)
    g = fp.ring.exponent(F(1, 3))
    assert fp.power_pair(g, 1) is None
    y, yp = perf.power_pair(g, 1)
    assert yp == y.frobenius()
    w, wp = perf.wp_preimage(perf.ring.exponent(-1), 1)
    assert wp == w.frobenius() - w
    rank2 = MonomialField.make(2, ["Z[1/p]", "Z"])
    assert rank2.ring.exps.rank == 2
    assert rank2.admits(rank2.ring.exponent((F(-1, 4), 3)))
    assert not rank2.admits(rank2.ring.exponent((0, F(1, 2))))
