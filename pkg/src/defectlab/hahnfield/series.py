"""Truncated sparse generalized power series.

A :class:`HahnSeries` is a finite sorted list of ``(exponent, coefficient)``
pairs together with a precision bound ``precision``: every term with
exponent below the bound is present, nothing at or above it is known.
``precision is INFINITY`` means the series is exact.

Exponents live in the divisible hull Q^r of a value group; which exponents
a particular field admits is the business of the field descriptors in
:mod:`defectlab.hahnfield.fields`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from defectlab.errors import (
    DescriptorError,
    DivisibilityError,
    NotIntegralError,
    PrecisionError,
)
from defectlab.hahnfield.gf import FiniteField
from defectlab.ogroup import INFINITY, GroupDesc, GroupElement, to_fraction

Precision = Union[GroupElement, type(INFINITY)]

# hard cap on geometric-series terms, guards against infinitesimal units
_MAX_INVERT_TERMS = 10_000


@dataclass(frozen=True)
class SeriesRing:
    """Ambient ring: exponents in ``exps`` (divisible), coefficients in ``coeffs``."""

    exps: GroupDesc
    coeffs: FiniteField

    def __post_init__(self):
        if not self.exps.is_divisible:
            object.__setattr__(self, "exps", self.exps.hull())
        if self.exps.p != self.coeffs.p:
            raise DescriptorError("exponent group and coefficient field disagree on p")

    @classmethod
    def make(cls, p: int, m: int = 1, rank: int = 1) -> "SeriesRing":
        return cls(GroupDesc(p, ("Q",) * rank), FiniteField.get(p, m))

    @property
    def p(self) -> int:
        return self.coeffs.p

    def exponent(self, e) -> GroupElement:
        if isinstance(e, GroupElement):
            if e.desc == self.exps:
                return e
            return e.embed(self.exps)
        if isinstance(e, (int, Fraction, str)):
            e = (e,)
        return GroupElement(self.exps, tuple(to_fraction(x) for x in e))

    def precision(self, prec) -> Precision:
        if prec is None or prec is INFINITY:
            return INFINITY
        return self.exponent(prec)

    def series(self, terms: Mapping | Iterable = (), precision=None) -> "HahnSeries":
        """Build a series from ``{exponent: coeff}`` or ``[(exponent, coeff), ...]``."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[GroupElement, int] = {}
        f = self.coeffs
        for e, c in items:
            e = self.exponent(e)
            c = f.parse(c) if isinstance(c, str) else f.from_int(c) if f.m == 1 else c
            acc[e] = f.add(acc.get(e, 0), c)
        return HahnSeries._build(self, acc, self.precision(precision))

    def zero(self, precision=None) -> "HahnSeries":
        return HahnSeries(self, (), self.precision(precision))

    def one(self) -> "HahnSeries":
        return self.monomial(0)

    def monomial(self, e, coeff: int = 1, precision=None) -> "HahnSeries":
        return self.series([(e, coeff)], precision)

    def t(self, e=1) -> "HahnSeries":
        return self.monomial(e)

    def constant(self, c: int) -> "HahnSeries":
        return self.series([(0, c)])

    def from_json(self, obj) -> "HahnSeries":
        try:
            terms = [(self.exponent(_exp_entries(d["exp"])), self.coeffs.parse(d["coef"])) for d in obj["terms"]]
            prec = obj.get("precision")
            return self.series(terms, None if prec is None else _exp_entries(prec))
        except (KeyError, TypeError, ValueError) as exc:
            raise DescriptorError(f"bad series {obj!r}: {exc}") from None


def _exp_entries(obj):
    if isinstance(obj, (str, int)):
        return (obj,)
    return tuple(obj)


@dataclass(frozen=True)
class HahnSeries:
    ring: SeriesRing
    terms: tuple[tuple[GroupElement, int], ...]
    precision: Precision

    @classmethod
    def _build(cls, ring: SeriesRing, acc: Mapping[GroupElement, int], prec: Precision) -> "HahnSeries":
        terms = tuple(sorted(((e, c) for e, c in acc.items() if c and e < prec), key=lambda ec: ec[0].entries))
        return cls(ring, terms, prec)

    def _check(self, other: "HahnSeries") -> None:
        if not isinstance(other, HahnSeries):
            raise TypeError(f"expected HahnSeries, got {type(other).__name__}")
        if other.ring != self.ring:
            raise DescriptorError("series over different rings")

    # -- inspection --------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.precision is INFINITY

    def is_exact_zero(self) -> bool:
        return not self.terms and self.precision is INFINITY

    def valuation(self):
        """Least exponent; INFINITY for the exact zero series."""
        if self.terms:
            return self.terms[0][0]
        if self.precision is INFINITY:
            return INFINITY
        raise PrecisionError(f"series is zero below precision {self.precision}; value unknown")

    def leading(self) -> tuple[GroupElement, int]:
        if not self.terms:
            self.valuation()
            raise ValueError("the zero series has no leading term")
        return self.terms[0]

    def coefficient(self, e) -> int:
        e = self.ring.exponent(e)
        if not e < self.precision:
            raise PrecisionError(f"coefficient at {e} is beyond precision {self.precision}")
        for x, c in self.terms:
            if x == e:
                return c
        return 0

    def residue(self) -> int:
        zero = self.ring.exps.zero()
        if self.terms and self.terms[0][0] < zero:
            raise NotIntegralError(f"value {self.terms[0][0]} is negative; no residue")
        if not zero < self.precision:
            raise PrecisionError("precision too low to read the residue")
        return self.coefficient(zero)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        self._check(other)
        f = self.ring.coeffs
        prec = min(self.precision, other.precision)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = f.add(acc.get(e, 0), c)
        return HahnSeries._build(self.ring, acc, prec)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.coeffs
        return HahnSeries(self.ring, tuple((e, f.neg(c)) for e, c in self.terms), self.precision)

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "HahnSeries":
        """Multiply by a coefficient-field element."""
        f = self.ring.coeffs
        if c == 0:
            return self.ring.zero(self.precision)
        return HahnSeries(self.ring, tuple((e, f.mul(x, c)) for e, x in self.terms), self.precision)

    def shift(self, e) -> "HahnSeries":
        """Multiply by ``t^e``."""
        e = self.ring.exponent(e)
        return HahnSeries(self.ring, tuple((x + e, c) for x, c in self.terms), self.precision + e)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.ring.coeffs.from_int(other))
        self._check(other)
        cands = [self.precision + other.precision]
        if self.terms:
            cands.append(self.terms[0][0] + other.precision)
        if other.terms:
            cands.append(other.terms[0][0] + self.precision)
        prec = min(cands)
        f = self.ring.coeffs
        acc: dict[GroupElement, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if not e < prec:
                    break
                acc[e] = f.add(acc.get(e, 0), f.mul(c1, c2))
        return HahnSeries._build(self.ring, acc, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("use invert() for negative powers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, prec) -> "HahnSeries":
        prec = min(self.precision, self.ring.precision(prec))
        return HahnSeries(self.ring, tuple((e, c) for e, c in self.terms if e < prec), prec)

    def frobenius(self) -> "HahnSeries":
        f = self.ring.coeffs
        p = self.ring.p
        prec = self.precision if self.precision is INFINITY else self.precision * p
        return HahnSeries(self.ring, tuple((e * p, f.frobenius(c)) for e, c in self.terms), prec)

    def pth_root(self, admits=None) -> "HahnSeries":
        """Inverse of :meth:`frobenius`.

        ``admits`` is an optional predicate on exponents (the target field's
        value group); a refused exponent raises :class:`DivisibilityError`.
        """
        f = self.ring.coeffs
        inv_p = Fraction(1, self.ring.p)
        terms = []
        for e, c in self.terms:
            r = e.scale(inv_p)
            if admits is not None and not admits(r):
                raise DivisibilityError(f"exponent {e} has no p-th root in the target field")
            terms.append((r, f.pth_root(c)))
        prec = self.precision if self.precision is INFINITY else self.precision.scale(inv_p)
        return HahnSeries(self.ring, tuple(terms), prec)

    def invert(self, target=None) -> "HahnSeries":
        """Multiplicative inverse known below ``min(target, precision - 2 v)``."""
        e, c = self.leading()
        f = self.ring.coeffs
        c_inv = f.inv(c)
        unit = (self.shift(-e)).scale(c_inv)  # 1 + u
        u = unit - self.ring.one()
        if u.is_exact_zero():
            return self.ring.monomial(-e, c_inv)
        target = self.ring.precision(target)
        cands = [target]
        if self.precision is not INFINITY:
            cands.append(self.precision - e - e)
        res_prec = min(cands)
        if res_prec is INFINITY:
            raise PrecisionError("inverse is an infinite series; give a target precision")
        rel = res_prec + e
        neg_u = -u
        w = self.ring.one().truncate(rel)
        term = w
        for _ in range(_MAX_INVERT_TERMS):
            term = (term * neg_u).truncate(rel)
            if not term.terms:
                break
            w = w + term
        else:
            raise PrecisionError("geometric series did not reach the target precision")
        return w.shift(-e).scale(c_inv).truncate(res_prec)

    # -- decomposition -----------------------------------------------------

    def split(self) -> tuple["HahnSeries", int, "HahnSeries"]:
        """``(negative part, constant coefficient, positive part)``.

        The negative part is exact, the positive part keeps the precision.
        """
        zero = self.ring.exps.zero()
        neg = tuple((e, c) for e, c in self.terms if e < zero)
        pos = tuple((e, c) for e, c in self.terms if e > zero)
        if not zero < self.precision:
            raise PrecisionError("precision does not reach the constant term")
        const = self.coefficient(zero)
        return (
            HahnSeries(self.ring, neg, INFINITY),
            const,
            HahnSeries(self.ring, pos, self.precision),
        )

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        f = self.ring.coeffs
        return {
            "terms": [{"exp": e.to_json(), "coef": f.format(c)} for e, c in self.terms],
            "precision": None if self.precision is INFINITY else self.precision.to_json(),
        }

    def __str__(self):
        parts = []
        for e, c in self.terms:
            if e.is_zero():
                parts.append(str(c))
                continue
            mono = "t" if e.entries == (1,) else f"t^{_fmt_exp(e)}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        if self.precision is not INFINITY:
            parts.append(f"O(t^{_fmt_exp(self.precision)})")
        return " + ".join(parts) if parts else "0"


def _fmt_exp(e: GroupElement) -> str:
    if len(e.entries) == 1:
        q = e.entries[0]
        return str(q) if q.denominator == 1 and q >= 0 else f"({q})"
    return str(e)
